"""Qudit gates generated by fractional Talbot propagation.

A grating with D slits per period, illuminated so that each slit carries one
basis amplitude, evolves under free propagation by circulant unitaries: the
shift-copy weights of the fractional Talbot effect become the matrix columns.
Propagating by the canonical step (zeta = 1/(2D) for even D, 1/D for odd D)
and repeating generates a cyclic group of order 2D (even) or D (odd).
Interleaving propagation with programmable phase masks then yields the
Fourier transform, the qubit Hadamard, and general single-qudit circuits.
"""

from dataclasses import dataclass

import numpy as np

from .gauss import closed_form_even, closed_form_odd, gauss_coefficients, jacobi_symbol

__all__ = [
    "pauli_shift",
    "talbot_cycle_length",
    "talbot_step_coefficients",
    "talbot_unitary",
    "circulant",
    "diagonal_gate",
    "clifford_phases",
    "qft_matrix",
    "qft_decomposition_even",
    "qft_decomposition_odd",
    "DecompositionReport",
    "align_phase",
    "phase_aligned_distance",
]


def pauli_shift(D: int, power: int = 1) -> np.ndarray:
    """Cyclic shift X^power on D levels: |d> -> |d + power mod D>."""
    if D < 1:
        raise ValueError(f"dimension must be positive, got {D}")
    return np.roll(np.eye(D), power, axis=0)


def talbot_cycle_length(D: int) -> int:
    """Order of the canonical Talbot step: 2D for even D, D for odd D."""
    if D < 1:
        raise ValueError(f"dimension must be positive, got {D}")
    return 2 * D if D % 2 == 0 else D


def talbot_step_coefficients(D: int) -> np.ndarray:
    """First column of the canonical single-step Talbot unitary.

    Even D: the surviving even-shift weights at zeta = 1/(2D), which land
    the r = 2D copies on the D slit sites.  Odd D: the weights at
    zeta = 1/D directly.
    """
    if D % 2 == 0:
        return np.asarray(closed_form_even(D))[::2].copy()
    return np.asarray(closed_form_odd(D)).copy()


def circulant(column: np.ndarray) -> np.ndarray:
    """Circulant matrix whose j-th column is the cyclic roll of `column` by j."""
    column = np.asarray(column)
    return np.column_stack([np.roll(column, j) for j in range(len(column))])


def talbot_unitary(D: int, q: int = 1) -> np.ndarray:
    """Unitary for q canonical Talbot steps on D levels.

    q may be any integer; it is reduced mod the cycle length (2D even,
    D odd), so q = 0 gives the identity and negative q the inverse gate.
    The result is circulant by construction: column j equals column 0
    rolled by j, bitwise.
    """
    r = talbot_cycle_length(D)
    step = talbot_step_coefficients(D)
    column = np.zeros(D, dtype=complex)
    column[0] = 1.0
    for _ in range(q % r):
        column = _cyclic_convolve(step, column)
    return circulant(column)


def _cyclic_convolve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    D = len(a)
    idx = np.arange(D)
    # c_i = sum_k a_{i-k} b_k, indices mod D.  O(D^2) but exact ordering,
    # no FFT round-off asymmetry between columns.
    return np.asarray([(a[(i - idx) % D] * b).sum() for i in range(D)])


def diagonal_gate(phases: np.ndarray) -> np.ndarray:
    """diag(exp(i phi_d)) for a real phase vector."""
    phases = np.asarray(phases, dtype=float)
    if phases.ndim != 1:
        raise ValueError(f"phase vector must be 1-d, got shape {phases.shape}")
    return np.diag(np.exp(1j * phases))


def clifford_phases(D: int) -> np.ndarray:
    """Phase mask pi d (d - 1) / D whose diagonal gate normalizes the shift group."""
    d = np.arange(D)
    return np.pi * d * (d - 1) / D


def qft_matrix(D: int) -> np.ndarray:
    """Discrete Fourier transform F[d, j] = exp(-2i pi d j / D) / sqrt(D)."""
    if D < 1:
        raise ValueError(f"dimension must be positive, got {D}")
    d = np.arange(D)
    return np.exp(-2j * np.pi * np.outer(d, d) / D) / np.sqrt(D)


@dataclass(frozen=True)
class DecompositionReport:
    """Residual bookkeeping for a mask/propagate/mask factorization."""

    dim: int
    step_power: int
    residual: float
    global_phase: complex
    jacobi: int | None = None
    branch: int | None = None


def qft_decomposition_even(D: int) -> tuple[np.ndarray, np.ndarray, DecompositionReport]:
    """Phase masks (pre, post) such that post * U_step * pre = F for even D.

    Both masks equal Xi_d = pi/8 - pi d^2 / D and the sandwich reproduces
    the Fourier matrix exactly (not only up to global phase), because for
    even D the squared index difference (d - j)^2 is well defined mod 2D.
    """
    if D < 2 or D % 2:
        raise ValueError(f"D must be even and >= 2, got {D}")
    d = np.arange(D)
    xi = np.pi / 8 - np.pi * d**2 / D
    sandwich = diagonal_gate(xi) @ talbot_unitary(D, 1) @ diagonal_gate(xi)
    target = qft_matrix(D)
    residual = float(np.abs(sandwich - target).max())
    report = DecompositionReport(
        dim=D, step_power=1, residual=residual, global_phase=1.0 + 0j
    )
    return xi, xi, report


def qft_decomposition_odd(D: int) -> tuple[np.ndarray, np.ndarray, DecompositionReport]:
    """Phase masks (pre, post) such that post * U_step^h * pre = F for odd D.

    Here h = (D + 1)/2, the inverse of 2 mod D.  A single step cannot work
    for odd D: the step's quadratic mode phase exp(-2i pi h m^2 / D) would
    contribute cross terms exp(-2i pi h d j / D), and h = 1 mod D has no
    solution with 2h = 1 mod D except D = 1.  Powering the step to h fixes
    the cross term to the Fourier kernel, and the masks

        pre_d  = -pi (d^2 + D d) / D
        post_d = -pi (d^2 - D d) / D

    (equal mod 2 pi; the +-D d split keeps each entry in a symmetric range)
    cancel the remaining index-squared phases.  The sandwich equals F up to
    a constant from the quadratic Gauss sum of the powered step; the sign
    branch of the sqrt(Jacobi) prefactor is resolved numerically, folded
    into `post`, and reported, and the leftover global phase is reported.
    """
    if D < 1 or D % 2 == 0:
        raise ValueError(f"D must be odd and >= 1, got {D}")
    h = (D + 1) // 2
    d = np.arange(D)
    pre = -np.pi * (d**2 + D * d) / D
    post = -np.pi * (d**2 - D * d) / D
    powered = talbot_unitary(D, h)
    target = qft_matrix(D)

    jac = jacobi_symbol(2, D)
    candidates = (0.0, np.pi) if jac == 1 else (np.pi / 2, -np.pi / 2)
    best = None
    for branch_index, angle in enumerate(candidates):
        sandwich = diagonal_gate(post + angle) @ powered @ diagonal_gate(pre)
        raw = float(np.abs(sandwich - target).max())
        if best is None or raw < best[0]:
            best = (raw, branch_index, angle, sandwich)
    _, branch_index, angle, sandwich = best

    phase, residual = phase_aligned_distance(target, sandwich)
    report = DecompositionReport(
        dim=D,
        step_power=h,
        residual=residual,
        global_phase=phase,
        jacobi=jac,
        branch=1 - 2 * branch_index,
    )
    return pre, post + angle, report


def align_phase(reference: np.ndarray, candidate: np.ndarray) -> tuple[complex, np.ndarray]:
    """Rotate `candidate` by the global phase that best matches `reference`.

    The phase is that of the overlap <reference, candidate>; returns
    (applied phase, rotated candidate).  Raises if the overlap vanishes,
    since then no global phase can relate the two.
    """
    overlap = np.vdot(reference, candidate)
    magnitude = abs(overlap)
    if magnitude < 1e-12 * np.linalg.norm(reference) * np.linalg.norm(candidate):
        raise ValueError("arrays are orthogonal; no global phase relates them")
    phase = overlap / magnitude
    return phase, candidate / phase


def phase_aligned_distance(reference: np.ndarray, candidate: np.ndarray) -> tuple[complex, float]:
    """Max elementwise deviation after global-phase alignment, with the phase."""
    phase, rotated = align_phase(reference, candidate)
    return phase, float(np.abs(rotated - reference).max())
