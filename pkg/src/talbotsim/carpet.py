"""Talbot carpets: intensity maps over one transverse period.

A carpet samples |psi(x, zeta)|^2 on a rectangular grid, x across one
grating period and zeta along the propagation axis in carpet periods
(twice the Talbot length per unit).  Programs interleave phase masks;
at each mask plane the field is projected onto the slit basis, the mask
phases applied, and the field resynthesized, with the projection residual
recorded so a mask placed away from a revival plane is visible.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .grating import GratingSpec, ModeField, basis_wavefunction, grating_coefficients
from .programs import OpticalProgram, PhaseMask, Propagate
from .propagation import propagate_paraxial

__all__ = [
    "CarpetImage",
    "Revival",
    "render_carpet",
    "render_program_carpet",
    "detect_revivals",
]


@dataclass(frozen=True)
class CarpetImage:
    """Intensity carpet normalized to peak 1, rows ordered by zeta."""

    intensity: np.ndarray
    zeta: np.ndarray
    x: np.ndarray
    mask_positions: tuple = ()
    mask_residuals: tuple = ()

    def __post_init__(self):
        for name in ("intensity", "zeta", "x"):
            arr = np.asarray(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if self.intensity.shape != (len(self.zeta), len(self.x)):
            raise ValueError(
                f"intensity shape {self.intensity.shape} does not match "
                f"{len(self.zeta)} zeta rows and {len(self.x)} x columns"
            )


def _sample_grid(z_steps: int, x_steps: int, zeta_span) -> tuple[np.ndarray, np.ndarray]:
    if z_steps < 2 or x_steps < 2:
        raise ValueError(f"need at least a 2x2 grid, got {z_steps}x{x_steps}")
    lo, hi = (float(zeta_span[0]), float(zeta_span[1]))
    if not hi > lo:
        raise ValueError(f"zeta span must increase, got {zeta_span}")
    return np.linspace(lo, hi, z_steps), np.arange(x_steps) / x_steps


def _intensity_rows(segments, zeta_grid, x_grid) -> np.ndarray:
    """segments: list of (zeta_start, ModeField); last segment extends to the end."""
    rows = np.empty((len(zeta_grid), len(x_grid)))
    starts = [s for s, _ in segments]
    for i, z in enumerate(zeta_grid):
        index = int(np.searchsorted(starts, z, side="right")) - 1
        index = max(index, 0)
        z0, start_field = segments[index]
        here = propagate_paraxial(start_field, z - z0)
        rows[i] = np.abs(here.evaluate(x_grid)) ** 2
    peak = rows.max()
    if peak > 0:
        rows /= peak
    return rows


def render_carpet(
    spec: GratingSpec,
    zeta_span=(0.0, 1.0),
    z_steps: int = 257,
    x_steps: int = 256,
) -> CarpetImage:
    """Free carpet of the bare grating over `zeta_span` carpet periods."""
    zeta_grid, x_grid = _sample_grid(z_steps, x_steps, zeta_span)
    start = grating_coefficients(spec).normalized()
    rows = _intensity_rows([(0.0, start)], zeta_grid, x_grid)
    return CarpetImage(intensity=rows, zeta=zeta_grid, x=x_grid)


def render_program_carpet(
    spec: GratingSpec,
    program: OpticalProgram,
    z_steps: int = 257,
    x_steps: int = 256,
    initial_level: int = 0,
) -> CarpetImage:
    """Carpet of a program acting on one slit state of a D-level encoding.

    The transverse period hosts D slits (program.dim); the input occupies
    slit `initial_level`.  Masks act at their cumulative positions.
    """
    D = program.dim
    basis = np.column_stack(
        [basis_wavefunction(spec, D, d).coefficients for d in range(D)]
    )
    start = basis_wavefunction(spec, D, initial_level).normalized()

    segments = [(Fraction(0), start)]
    positions: list[float] = []
    residuals: list[float] = []
    z = Fraction(0)
    for step in program.steps:
        if isinstance(step, Propagate):
            z += step.distance
            continue
        z0, seg_field = segments[-1]
        arrived = propagate_paraxial(seg_field, z - z0)
        weights, _, _, _ = np.linalg.lstsq(basis, arrived.coefficients, rcond=None)
        fit = basis @ weights
        residuals.append(
            float(
                np.linalg.norm(fit - arrived.coefficients)
                / np.linalg.norm(arrived.coefficients)
            )
        )
        positions.append(float(z))
        masked = basis @ (weights * np.exp(1j * np.asarray(step.phases)))
        segments.append((z, ModeField(masked, spec.mode_truncation)))

    total = program.total_distance
    if total == 0:
        raise ValueError("program has zero total propagation distance")
    zeta_grid, x_grid = _sample_grid(z_steps, x_steps, (0.0, float(total)))
    float_segments = [(float(s), f) for s, f in segments]
    rows = _intensity_rows(float_segments, zeta_grid, x_grid)
    return CarpetImage(
        intensity=rows,
        zeta=zeta_grid,
        x=x_grid,
        mask_positions=tuple(positions),
        mask_residuals=tuple(residuals),
    )


@dataclass(frozen=True)
class Revival:
    """A carpet row matching row zero up to a cyclic shift."""

    zeta: float
    shift: float
    similarity: float


def detect_revivals(image: CarpetImage, threshold: float = 1.0 - 1e-9) -> list[Revival]:
    """Rows whose intensity equals row zero up to a cyclic shift.

    Similarity is the cosine overlap of intensity rows maximized over
    integer grid shifts (computed by FFT cross-correlation); `shift` is in
    periods, meaning row ~= roll(row0, shift * x_steps).  Row zero itself
    is skipped.
    """
    base = image.intensity[0]
    base_spectrum = np.fft.rfft(base)
    base_norm = float(np.linalg.norm(base))
    out: list[Revival] = []
    n = len(base)
    for i in range(1, len(image.zeta)):
        row = image.intensity[i]
        corr = np.fft.irfft(np.fft.rfft(row) * np.conj(base_spectrum), n=n)
        shift_index = int(np.argmax(corr))
        row_norm = float(np.linalg.norm(row))
        if row_norm == 0 or base_norm == 0:
            continue
        similarity = float(corr[shift_index]) / (row_norm * base_norm)
        if similarity >= threshold:
            out.append(
                Revival(
                    zeta=float(image.zeta[i]),
                    shift=shift_index / n,
                    similarity=similarity,
                )
            )
    return out
