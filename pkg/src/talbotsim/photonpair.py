"""Two-photon interference on slit-resolved beam splitters.

Two photons occupy paths a and b, each carrying a D-level slit encoding.
A slitwise beam splitter mixes the same level of both paths with its own
transmission/reflection pair, which makes Hong-Ou-Mandel interference
level-selective.  Post-selecting on one photon per path after a
transmission-dominated splitter and balancing filters yields a probabilistic
controlled-Z gate on the pair.

Mode convention: extended index p * D + d for path p (0 = a, 1 = b) and
level d.  A two-photon state is a symmetric matrix psi over extended modes
with unit Frobenius norm, |state> = 2^{-1/2} sum_ij psi_ij c_i^+ c_j^+ |0>.
"""

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SDBSSpec",
    "balanced_splitter",
    "control_splitter",
    "filter_splitter",
    "sdbs_mode_map",
    "TwoPhotonState",
    "apply_mode_map",
    "apply_sdbs",
    "post_select_coincidence",
    "PostSelectedOperator",
    "build_cz",
    "ideal_cz_matrix",
    "interaction_phase_signature",
    "schmidt_coefficients",
    "hadamard_input_pair",
]


def _wrap(angles) -> np.ndarray:
    """Wrap angles to (-pi, pi]."""
    return np.angle(np.exp(1j * np.asarray(angles)))


@dataclass(frozen=True)
class SDBSSpec:
    """Slitwise dual beam splitter: per-level transmission t_d, reflection r_d.

    Level d of path a mixes only with level d of path b through the block
    [[t_d, i r_d], [i r_d, t_d]]; unitarity requires |t_d|^2 + |r_d|^2 = 1
    with t_d conj(r_d) real.
    """

    dim: int
    transmission: np.ndarray
    reflection: np.ndarray

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"dimension must be positive, got {self.dim}")
        t = np.asarray(self.transmission, dtype=complex)
        r = np.asarray(self.reflection, dtype=complex)
        if t.shape != (self.dim,) or r.shape != (self.dim,):
            raise ValueError(
                f"transmission/reflection must have shape ({self.dim},), "
                f"got {t.shape} and {r.shape}"
            )
        power = np.abs(t) ** 2 + np.abs(r) ** 2
        if np.abs(power - 1.0).max() > 1e-12:
            raise ValueError("each level needs |t|^2 + |r|^2 = 1")
        if np.abs((t * r.conj()).imag).max() > 1e-12:
            raise ValueError("t_d conj(r_d) must be real for a unitary block")
        t.setflags(write=False)
        r.setflags(write=False)
        object.__setattr__(self, "transmission", t)
        object.__setattr__(self, "reflection", r)


def balanced_splitter(D: int) -> SDBSSpec:
    """50/50 on every level: pairwise Hong-Ou-Mandel on the whole register."""
    amp = np.full(D, 1.0 / math.sqrt(2.0))
    return SDBSSpec(dim=D, transmission=amp, reflection=amp.copy())


def control_splitter(D: int, k: int) -> SDBSSpec:
    """Level k transmits with amplitude 1/sqrt(3); every other level reflects."""
    if not 0 <= k < D:
        raise ValueError(f"control level must satisfy 0 <= k < {D}, got {k}")
    t = np.zeros(D)
    r = np.ones(D)
    t[k] = 1.0 / math.sqrt(3.0)
    r[k] = math.sqrt(2.0 / 3.0)
    return SDBSSpec(dim=D, transmission=t, reflection=r)


def filter_splitter(D: int, k: int) -> SDBSSpec:
    """Balancing filter: level k passes, others attenuate to 1/sqrt(3)."""
    if not 0 <= k < D:
        raise ValueError(f"control level must satisfy 0 <= k < {D}, got {k}")
    t = np.full(D, 1.0 / math.sqrt(3.0))
    r = np.full(D, math.sqrt(2.0 / 3.0))
    t[k] = 1.0
    r[k] = 0.0
    return SDBSSpec(dim=D, transmission=t, reflection=r)


def sdbs_mode_map(spec: SDBSSpec) -> np.ndarray:
    """Single-photon unitary of the splitter on extended modes (2D x 2D)."""
    D = spec.dim
    U = np.zeros((2 * D, 2 * D), dtype=complex)
    for d in range(D):
        t = spec.transmission[d]
        r = spec.reflection[d]
        U[d, d] = t
        U[d, D + d] = 1j * r
        U[D + d, d] = 1j * r
        U[D + d, D + d] = t
    return U


def _swap_matrix(D: int, swapped_levels) -> np.ndarray:
    """Path relabeling a_d <-> b_d on the given levels, identity elsewhere."""
    P = np.eye(2 * D)
    for d in swapped_levels:
        P[[d, D + d]] = P[[D + d, d]]
    return P


@dataclass(frozen=True)
class TwoPhotonState:
    """Symmetric two-photon amplitude matrix over extended modes."""

    dim: int
    amplitudes: np.ndarray

    def __post_init__(self):
        psi = np.asarray(self.amplitudes, dtype=complex)
        n = 2 * self.dim
        if psi.shape != (n, n):
            raise ValueError(f"amplitudes must be {n}x{n}, got {psi.shape}")
        if np.abs(psi - psi.T).max() > 1e-12:
            raise ValueError("two-photon amplitudes must be symmetric")
        norm = np.linalg.norm(psi)
        if abs(norm - 1.0) > 1e-9:
            raise ValueError(f"amplitude norm {norm!r} deviates from 1")
        psi.setflags(write=False)
        object.__setattr__(self, "amplitudes", psi)

    @classmethod
    def coincident_pair(cls, D: int, d: int, f: int) -> "TwoPhotonState":
        """One photon in (a, d), one in (b, f)."""
        if not (0 <= d < D and 0 <= f < D):
            raise ValueError(f"levels must be in [0, {D}), got {d}, {f}")
        psi = np.zeros((2 * D, 2 * D), dtype=complex)
        i, j = d, D + f
        psi[i, j] = psi[j, i] = 1.0 / math.sqrt(2.0)
        return cls(dim=D, amplitudes=psi)

    @classmethod
    def from_product(cls, state_a: np.ndarray, state_b: np.ndarray) -> "TwoPhotonState":
        """Independent photons: `state_a` on path a levels, `state_b` on path b."""
        u = np.asarray(state_a, dtype=complex)
        v = np.asarray(state_b, dtype=complex)
        if u.ndim != 1 or v.shape != u.shape:
            raise ValueError("path states must be equal-length vectors")
        D = len(u)
        ea = np.concatenate([u, np.zeros(D)])
        eb = np.concatenate([np.zeros(D), v])
        psi = (np.outer(ea, eb) + np.outer(eb, ea)) / math.sqrt(2.0)
        psi /= np.linalg.norm(psi)
        return cls(dim=D, amplitudes=psi)


def apply_mode_map(state: TwoPhotonState, U: np.ndarray) -> TwoPhotonState:
    """Evolve both photons by the single-photon unitary U: psi -> U psi U^T."""
    n = 2 * state.dim
    U = np.asarray(U, dtype=complex)
    if U.shape != (n, n):
        raise ValueError(f"mode map must be {n}x{n}, got {U.shape}")
    if np.abs(U @ U.conj().T - np.eye(n)).max() > 1e-12:
        raise ValueError("mode map must be unitary")
    return TwoPhotonState(dim=state.dim, amplitudes=U @ state.amplitudes @ U.T)


def apply_sdbs(state: TwoPhotonState, spec: SDBSSpec) -> TwoPhotonState:
    """Send both photons through the slitwise splitter."""
    if spec.dim != state.dim:
        raise ValueError(f"dimension mismatch: state {state.dim}, splitter {spec.dim}")
    return apply_mode_map(state, sdbs_mode_map(spec))


def post_select_coincidence(state: TwoPhotonState) -> tuple[np.ndarray, float]:
    """Coincidence amplitudes C[d, f] for one photon in (a, d) and one in (b, f).

    C = sqrt(2) psi[a-block, b-block]; the success probability is |C|_F^2.
    Bunched components (both photons in one path) are discarded, which is
    what coincidence counting does.
    """
    D = state.dim
    C = math.sqrt(2.0) * state.amplitudes[:D, D:]
    return C, float(np.linalg.norm(C) ** 2)


@dataclass(frozen=True)
class PostSelectedOperator:
    """Coincidence-heralded two-qudit operation (not trace preserving).

    `matrix` maps input coincidence amplitudes (flattened D x D, index
    d * D + f) to unnormalized output ones; `success_probabilities` lists
    |column|^2 per basis input.  `local_corrections` are single-path phase
    masks (alpha on a, beta on b, plus a global angle) that rotate the
    matrix onto its ideal target; they commute with any later slit-basis
    processing and are declared rather than physically applied.
    """

    dim: int
    control_level: int
    matrix: np.ndarray
    success_probabilities: np.ndarray
    path_swap_levels: tuple
    correction_alpha: np.ndarray
    correction_beta: np.ndarray
    correction_global: float

    @property
    def path_swap_applied(self) -> bool:
        return len(self.path_swap_levels) > 0

    def corrected_matrix(self) -> np.ndarray:
        """Matrix after the declared local phase corrections."""
        phase = np.exp(1j * self.correction_global) * np.outer(
            np.exp(1j * self.correction_alpha), np.exp(1j * self.correction_beta)
        )
        return phase.reshape(-1)[:, None] * self.matrix

    def apply(self, state_a: np.ndarray, state_b: np.ndarray) -> tuple[np.ndarray, float]:
        """Output coincidence amplitudes and success probability for a product input."""
        u = np.asarray(state_a, dtype=complex)
        v = np.asarray(state_b, dtype=complex)
        out = (self.matrix @ np.kron(u, v)).reshape(self.dim, self.dim)
        return out, float(np.linalg.norm(out) ** 2)


def ideal_cz_matrix(D: int, k: int) -> np.ndarray:
    """Controlled-Z on levels: phase -1 exactly when both photons sit at k."""
    diag = np.ones(D * D)
    diag[k * D + k] = -1.0
    return np.diag(diag)


def build_cz(D: int, k: int) -> PostSelectedOperator:
    """Post-selected controlled-Z at control level k.

    Construction: the control splitter (t_k = 1/sqrt(3), full reflection
    elsewhere), a declared path relabeling on the fully reflected levels
    (each such block is i times a path swap, so relabeling the outputs
    absorbs it into i times the identity), then per-path balancing filters
    whose surviving-amplitude action scales coincidences by t_d on each
    side.  Every basis input succeeds with probability 1/9 and the
    heralded matrix is diagonal with uniform modulus 1/3; the residual
    phases are returned as declared local corrections, after which the
    matrix is exactly (1/3) ideal_cz_matrix(D, k).
    """
    if not 0 <= k < D:
        raise ValueError(f"control level must satisfy 0 <= k < {D}, got {k}")
    swap_levels = tuple(d for d in range(D) if d != k)
    mode_map = _swap_matrix(D, swap_levels) @ sdbs_mode_map(control_splitter(D, k))
    filter_t = filter_splitter(D, k).transmission.real

    matrix = np.zeros((D * D, D * D), dtype=complex)
    success = np.zeros(D * D)
    for d in range(D):
        for f in range(D):
            state = TwoPhotonState.coincident_pair(D, d, f)
            evolved = apply_mode_map(state, mode_map)
            C, _ = post_select_coincidence(evolved)
            C = filter_t[:, None] * C * filter_t[None, :]
            column = C.reshape(-1)
            matrix[:, d * D + f] = column
            success[d * D + f] = float(np.linalg.norm(column) ** 2)

    alpha, beta, gamma = _diagonal_corrections(matrix, D, k)
    return PostSelectedOperator(
        dim=D,
        control_level=k,
        matrix=matrix,
        success_probabilities=success,
        path_swap_levels=swap_levels,
        correction_alpha=alpha,
        correction_beta=beta,
        correction_global=gamma,
    )


def _diagonal_corrections(matrix: np.ndarray, D: int, k: int) -> tuple[np.ndarray, np.ndarray, float]:
    """Phases alpha_d + beta_f + gamma turning diag(matrix) into the CZ pattern.

    Solvable because the interaction signature of the heralded matrix
    already matches the ideal gate; the split uses the d = 0 row/column as
    gauge, target phase pi at (k, k) and 0 elsewhere.
    """
    diag = np.diagonal(matrix).reshape(D, D)
    target = np.where(
        (np.arange(D)[:, None] == k) & (np.arange(D)[None, :] == k), np.pi, 0.0
    )
    needed = target - np.angle(diag)
    gamma = needed[0, 0]
    alpha = needed[:, 0] - gamma
    beta = needed[0, :] - alpha[0] - gamma
    return _wrap(alpha), _wrap(beta), float(_wrap(gamma))


def interaction_phase_signature(matrix: np.ndarray, atol: float = 1e-10) -> np.ndarray:
    """Gauge-invariant two-photon phases chi[d, f] of a diagonal operator.

    chi[d, f] = arg g_df - arg g_d0 - arg g_0f + arg g_00, wrapped to
    (-pi, pi], where g is the operator diagonal.  Single-path phase masks
    on either side cancel out of chi, so it isolates the genuine
    interaction.  Requires an (off-diagonal free, uniform modulus) matrix.
    """
    matrix = np.asarray(matrix, dtype=complex)
    n = matrix.shape[0]
    D = math.isqrt(n)
    if matrix.shape != (n, n) or D * D != n:
        raise ValueError(f"expected a D^2 x D^2 matrix, got shape {matrix.shape}")
    off = matrix - np.diag(np.diagonal(matrix))
    off_norm = float(np.abs(off).max())
    if off_norm > atol:
        raise ValueError(
            f"matrix is not diagonal: max off-diagonal {off_norm:.3e} > {atol}"
        )
    moduli = np.abs(np.diagonal(matrix))
    if moduli.min() <= 0 or (moduli.max() - moduli.min()) / moduli.max() > 1e-8:
        raise ValueError("diagonal moduli must be uniform and nonzero")
    phases = np.angle(np.diagonal(matrix)).reshape(D, D)
    chi = phases - phases[:, :1] - phases[:1, :] + phases[0, 0]
    return _wrap(chi)


def schmidt_coefficients(amplitudes) -> np.ndarray:
    """Normalized Schmidt spectrum of a coincidence amplitude matrix.

    Accepts a D x D matrix or a TwoPhotonState (its coincidence block is
    used).  Returns singular values scaled to unit 2-norm, descending.
    """
    if isinstance(amplitudes, TwoPhotonState):
        amplitudes, _ = post_select_coincidence(amplitudes)
    C = np.asarray(amplitudes, dtype=complex)
    if C.ndim != 2 or C.shape[0] != C.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {C.shape}")
    s = np.linalg.svd(C, compute_uv=False)
    norm = np.linalg.norm(s)
    if norm == 0:
        raise ValueError("zero matrix has no Schmidt spectrum")
    return s / norm


def hadamard_input_pair(D: int) -> TwoPhotonState:
    """Both photons in the uniform superposition over levels."""
    plus = np.full(D, 1.0 / math.sqrt(D))
    return TwoPhotonState.from_product(plus, plus)
