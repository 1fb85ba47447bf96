"""Replica amplitudes of the fractional Talbot effect.

At a reduced propagation distance zeta = q/r (in units of twice the Talbot
length, gcd(q, r) = 1) a periodic field revives as a superposition of r
copies of itself shifted by multiples of period/r.  The copy weights are
quadratic Gauss sums; this module computes them directly and via closed
forms, which exist whenever q = 1.
"""

from dataclasses import dataclass
from math import gcd

import numpy as np

__all__ = [
    "GaussCoefficients",
    "gauss_coefficients",
    "closed_form_even",
    "closed_form_odd",
    "jacobi_symbol",
]


@dataclass(frozen=True)
class GaussCoefficients:
    """Shift-copy weights b_0 .. b_{r-1} at reduced distance q/r."""

    q: int
    r: int
    values: np.ndarray

    def __post_init__(self):
        self.values.setflags(write=False)

    def __len__(self) -> int:
        return self.r

    def __getitem__(self, j):
        return self.values[j]

    def __array__(self, dtype=None, copy=None):
        if dtype is not None:
            return self.values.astype(dtype)
        return self.values.copy() if copy else self.values


def gauss_coefficients(q: int, r: int) -> GaussCoefficients:
    """Weights b_j = (1/r) sum_n exp(-2i pi (q n^2 - j n) / r).

    The q in the exponent multiplies only the quadratic term; this is what
    makes the defining property

        sum_j b_j exp(-2i pi m j / r) = exp(-2i pi m^2 q / r)

    hold for every integer mode index m, i.e. the shifted copies resum to
    the quadratic mode phases of paraxial propagation.

    Requires r >= 1 and gcd(q, r) = 1; reduce the fraction q/r first.
    """
    if r < 1:
        raise ValueError(f"denominator must be positive, got r={r}")
    if gcd(q, r) != 1:
        raise ValueError(
            f"q/r must be in lowest terms, got q={q}, r={r} with gcd {gcd(q, r)}"
        )
    n = np.arange(r)
    j = np.arange(r)
    # Integer exponents mod r keep each phase exact to one ulp.
    exponent = (q * n[None, :] ** 2 - j[:, None] * n[None, :]) % r
    values = np.exp(-2j * np.pi * exponent / r).mean(axis=1)
    return GaussCoefficients(q=q % r if r > 1 else 0, r=r, values=values)


def closed_form_even(D: int) -> GaussCoefficients:
    """Evaluate b at zeta = 1/(2D) for even D without summing.

    Only even shifts survive: b_{2d} = exp(-i pi/4) exp(i pi d^2 / D) / sqrt(D),
    odd entries are exactly zero.  Agrees with gauss_coefficients(1, 2*D).
    """
    if D < 2 or D % 2:
        raise ValueError(f"D must be even and >= 2, got {D}")
    d = np.arange(D)
    values = np.zeros(2 * D, dtype=complex)
    values[::2] = np.exp(-1j * np.pi / 4) * np.exp(1j * np.pi * d**2 / D) / np.sqrt(D)
    return GaussCoefficients(q=1, r=2 * D, values=values)


def closed_form_odd(D: int) -> GaussCoefficients:
    """Evaluate b at zeta = 1/D for odd D without summing.

    b_d = c_D exp(i pi (D+1)^2 d^2 / (2 D)) / sqrt(D)

    with c_D = 1 for D = 1 mod 4 and -i for D = 3 mod 4; equivalently
    c_D = (2|D) exp(i pi (D-1)/4) with (2|D) the Jacobi symbol.  The
    quadratic phase can be read as exp(2i pi h^2 d^2 / D) with
    h = (D+1)/2, the inverse of 2 mod D.  Agrees with
    gauss_coefficients(1, D) exactly (global phase 1, not just up to phase).
    """
    if D < 1 or D % 2 == 0:
        raise ValueError(f"D must be odd and >= 1, got {D}")
    d = np.arange(D)
    prefactor = (1.0 if D % 4 == 1 else -1j) / np.sqrt(D)
    # (D+1)^2 d^2 / (2D): half-integer multiples of 1/D, reduced mod 4D to
    # keep the argument small and exact.
    exponent = ((D + 1) ** 2 * d**2) % (4 * D)
    values = prefactor * np.exp(1j * np.pi * exponent / (2 * D))
    return GaussCoefficients(q=1 % D if D > 1 else 0, r=D, values=values)


def jacobi_symbol(a: int, n: int) -> int:
    """Jacobi symbol (a|n) for odd positive n, by quadratic reciprocity."""
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"n must be odd and positive, got {n}")
    a %= n
    result = 1
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0
