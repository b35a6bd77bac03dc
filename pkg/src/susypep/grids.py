"""Uniform radial grids, channel constants and grid quadrature.

All lengths are fm, energies MeV. Grids start one step away from the
origin: transformed potentials carry a c/r^2 singularity there, so r = 0
is never a mesh point; quadrature routines account for the [0, r_1]
sliver explicitly.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DomainError

DEFAULT_STEP = 0.01     # fm
DEFAULT_R_MAX = 35.0    # fm


@dataclass(frozen=True)
class RadialGrid:
    """Uniform mesh r_k = k*step for k = 1..n_points."""

    step: float
    n_points: int

    def __post_init__(self):
        if not self.step > 0.0:
            raise DomainError(f"grid step must be > 0, got {self.step}")
        if self.n_points < 100:
            raise DomainError(f"need at least 100 grid points, got {self.n_points}")

    @classmethod
    def from_extent(cls, step: float = DEFAULT_STEP, r_max: float = DEFAULT_R_MAX) -> "RadialGrid":
        if not step > 0.0:
            raise DomainError(f"grid step must be > 0, got {step}")
        return cls(step=step, n_points=int(round(r_max / step)))

    @property
    def r_min(self) -> float:
        return self.step

    @property
    def r_max(self) -> float:
        return self.n_points * self.step

    @cached_property
    def r(self) -> np.ndarray:
        """Grid points as an immutable array."""
        pts = self.step * np.arange(1, self.n_points + 1, dtype=float)
        pts.flags.writeable = False
        return pts

    def index_of(self, radius: float) -> int:
        """Index of the grid point closest to `radius`."""
        k = int(round(radius / self.step)) - 1
        if k < 0 or k >= self.n_points:
            raise DomainError(f"radius {radius} fm outside grid (r_max={self.r_max} fm)")
        return k

    def halved(self) -> "RadialGrid":
        """Grid with half the step and the same extent."""
        return RadialGrid(step=self.step / 2.0, n_points=2 * self.n_points)


def default_grid() -> RadialGrid:
    return RadialGrid.from_extent(DEFAULT_STEP, DEFAULT_R_MAX)


@dataclass(frozen=True)
class ChannelConstants:
    """Kinematic constant hbar^2/(2 mu) of a two-body channel, MeV fm^2."""

    hbar2_over_2mu: float
    label: str = ""

    def __post_init__(self):
        if not self.hbar2_over_2mu > 0.0:
            raise DomainError(f"hbar2_over_2mu must be > 0, got {self.hbar2_over_2mu}")


def integrate(values: np.ndarray, grid: RadialGrid) -> float:
    """Trapezoidal integral over [0, r_max], with the integrand taken as 0 at r=0.

    This is the single quadrature convention of the package; normalization,
    radii and transfer strengths all use it so that exported numbers are
    mutually consistent.
    """
    v = np.asarray(values, dtype=float)
    if v.shape != (grid.n_points,):
        raise DomainError(f"values shape {v.shape} does not match grid ({grid.n_points},)")
    h = grid.step
    core = h * (0.5 * (v[0] + v[-1]) + v[1:-1].sum())
    return core + 0.5 * h * v[0]   # [0, r_1] sliver with value 0 at the origin


def overlap(u1: np.ndarray, u2: np.ndarray, grid: RadialGrid) -> float:
    """<u1|u2> on the grid."""
    return integrate(np.asarray(u1) * np.asarray(u2), grid)
