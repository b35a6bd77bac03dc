"""Radii, s-wave phase shifts and the zero-range transfer strength.

Phase shifts come from matching the log-derivative of the regular solution
to the free s-wave form at a radius where the potential has died off;
curves are unwrapped into a continuous branch anchored at n_bound * pi at
threshold. The transfer strength is

    D0 = sqrt(4 pi) * int_0^inf r V(r) u0(r) dr,

finite also for the singular phase-equivalent potential because u0 ~ r^3
beats the r^-2 core.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .grids import ChannelConstants, RadialGrid, integrate
from .potentials import PotentialModel, values_on_grid
from .solver import (
    BoundState,
    _grid_for,
    _series_start,
    count_bound_states,
    origin_power,
)
from . import _kernels

log = logging.getLogger(__name__)

DEFAULT_R_MATCH = 20.0        # fm
POTENTIAL_DEAD = 1e-6         # MeV, |V| below which the free form applies

_COORDINATE_FACTORS = {"quarter": 0.25, "unit": 1.0}


def rms_radius(state: BoundState, coordinate_factor: str = "unit") -> float:
    """R = sqrt(f * int r^2 u^2 dr) with f = 1/4 or 1.

    The quarter factor converts the relative n-p coordinate to the
    center-of-mass frame of the two-cluster system.
    """
    try:
        factor = _COORDINATE_FACTORS[coordinate_factor]
    except KeyError:
        raise DomainError(
            f"coordinate_factor must be one of {sorted(_COORDINATE_FACTORS)}"
        ) from None
    g = state.grid
    moment = integrate(g.r**2 * state.u**2, g)
    radius = math.sqrt(factor * moment)
    tail = state.u[-1] ** 2 * g.r_max**3
    if tail > 1e-6 * radius**2:
        log.warning(
            "rms tail truncation: u(r_max)^2 r_max^3 = %.3g exceeds 1e-6 R^2; "
            "the grid may be too short for this halo state", tail
        )
    return radius


def charge_radius(r_proton: float, r_rms: float) -> float:
    """R_charge = sqrt(R_p^2 / 2 + R_rms^2 / 4)."""
    if r_proton < 0.0 or r_rms < 0.0:
        raise DomainError("radii must be >= 0")
    return math.sqrt(0.5 * r_proton**2 + 0.25 * r_rms**2)


def matter_radius(core_mass_number: int, r_core: float, r_rms: float) -> float:
    """R_matter from the core radius and the valence-nucleon rms distance.

    R_m^2 = W/(W+1) R_core^2 + W/(W+1)^2 R_rms^2 with W the core mass number.
    """
    if core_mass_number < 1:
        raise DomainError(f"core mass number must be >= 1, got {core_mass_number}")
    if r_core < 0.0 or r_rms < 0.0:
        raise DomainError("radii must be >= 0")
    w = float(core_mass_number)
    return math.sqrt(w / (w + 1.0) * r_core**2 + w / (w + 1.0) ** 2 * r_rms**2)


def _match_index(v: np.ndarray, grid: RadialGrid, r_match: float | None) -> int:
    """Grid index where the free-wave matching is performed."""
    alive = np.nonzero(np.abs(v) >= POTENTIAL_DEAD)[0]
    first_dead = int(alive[-1]) + 1 if alive.size else 0
    if r_match is not None:
        idx = grid.index_of(r_match)
        if idx < first_dead:
            raise DomainError(
                f"|V| >= {POTENTIAL_DEAD} MeV at requested r_match={r_match} fm; "
                f"potential dies out only at {grid.r[min(first_dead, grid.n_points - 1)]:.2f} fm"
            )
    else:
        idx = max(grid.index_of(min(DEFAULT_R_MATCH, grid.r_max)), first_dead)
    if idx > grid.n_points - 2:
        raise DomainError(
            "no matching radius with a vanished potential inside the grid; "
            "increase r_max"
        )
    return idx


def phase_shift(
    potential: PotentialModel,
    channel: ChannelConstants,
    energy: float,
    r_match: float | None = None,
    grid: RadialGrid | None = None,
) -> float:
    """s-wave phase shift in radians, principal branch (-pi/2, pi/2].

    For the singular transformed potentials the regular solution starts as
    r^(1+l_eff), but the matching is always against the physical s-wave
    free forms; branch bookkeeping across energies is done by
    :func:`phase_shift_curve`.
    """
    if energy <= 0.0:
        raise DomainError(f"scattering energy must be > 0, got {energy}")
    c = channel.hbar2_over_2mu
    g = _grid_for(potential, grid)
    v = values_on_grid(potential, g)
    mi = _match_index(v, g, r_match)
    f = (v - energy) / c
    p = origin_power(potential)
    u1, u2 = _series_start(f, p, g)
    u, _ = _kernels.sweep_outward(f, g.step, u1, u2, mi + 1)
    t = g.step**2 / 12.0
    du = (u[mi + 1] * (1.0 - 2.0 * t * f[mi + 1]) - u[mi - 1] * (1.0 - 2.0 * t * f[mi - 1])) / (
        2.0 * g.step
    )
    k = math.sqrt(energy / c)
    theta = math.atan2(k * u[mi], du)
    delta = (theta - k * g.r[mi]) % math.pi
    if delta > math.pi / 2.0:
        delta -= math.pi
    return delta


@dataclass(frozen=True)
class PhaseShiftCurve:
    """Continuous-branch phase shifts over an ascending energy sweep."""

    energies: np.ndarray
    deltas: np.ndarray
    provenance: str = ""

    def __post_init__(self):
        e = np.asarray(self.energies, dtype=float).copy()
        d = np.asarray(self.deltas, dtype=float).copy()
        if e.shape != d.shape:
            raise DomainError("energies and deltas must have matching shapes")
        if np.any(np.diff(e) <= 0.0):
            raise DomainError("energies must be strictly ascending")
        jumps = np.abs(np.diff(d))
        if jumps.size and np.max(jumps) > math.pi / 2.0:
            log.warning(
                "phase-shift curve has a %.3f rad jump between samples; "
                "sweep step may be too coarse", float(np.max(jumps))
            )
        e.flags.writeable = False
        d.flags.writeable = False
        object.__setattr__(self, "energies", e)
        object.__setattr__(self, "deltas", d)


def phase_shift_curve(
    potential: PotentialModel,
    channel: ChannelConstants,
    energies,
    r_match: float | None = None,
    grid: RadialGrid | None = None,
    provenance: str = "",
) -> PhaseShiftCurve:
    """Sweep phase shifts and unwrap them onto the Levinson branch.

    The absolute branch is anchored at threshold where the continuous
    s-wave phase shift equals (number of bound states) * pi; successive
    samples are continued to the nearest branch.
    """
    e = np.asarray(list(energies), dtype=float)
    if e.size == 0:
        raise DomainError("energy sweep is empty")
    raw = np.array([phase_shift(potential, channel, float(en), r_match, grid) for en in e])
    n_bound = count_bound_states(potential, channel, grid=grid)
    deltas = np.empty_like(raw)
    anchor = n_bound * math.pi
    deltas[0] = raw[0] + math.pi * round((anchor - raw[0]) / math.pi)
    for j in range(1, raw.size):
        deltas[j] = raw[j] + math.pi * round((deltas[j - 1] - raw[j]) / math.pi)
    return PhaseShiftCurve(energies=e, deltas=deltas, provenance=provenance)


def mod_pi_distance(a: float, b: float) -> float:
    """Distance between two phases on the circle of circumference pi."""
    d = abs(a - b) % math.pi
    return min(d, math.pi - d)


@dataclass(frozen=True)
class TransferStrength:
    """Zero-range strength D0 (MeV fm^(3/2)) and its square."""

    d0: float
    provenance: str
    d0_squared: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "d0_squared", self.d0 * self.d0)


def zero_range_strength(
    potential_np: PotentialModel,
    u0: BoundState,
    provenance: str | None = None,
) -> TransferStrength:
    """D0 = sqrt(4 pi) int r V(r) u0(r) dr on u0's grid."""
    g = u0.grid
    v = values_on_grid(potential_np, g)
    integrand = g.r * v * u0.u
    tail = np.max(np.abs(integrand[-10:]))
    if tail > 1e-8:
        log.warning(
            "zero-range integrand still %.3g at the grid edge; "
            "D0 may not be converged, increase r_max", float(tail)
        )
    d0 = math.sqrt(4.0 * math.pi) * integrate(integrand, g)
    if provenance is None:
        singular = getattr(potential_np, "singular_coefficient", 0.0)
        provenance = "pep" if singular > 0.0 else "deep"
    return TransferStrength(d0=d0, provenance=provenance)


def cross_section_ratio(deep: TransferStrength, pep: TransferStrength) -> float:
    """dsigma(deep)/dsigma(pep) ~= D0^2(deep)/D0^2(pep).

    Valid because the remaining amplitude factor is insensitive to the
    interior node structure (the wave functions coincide outside the core).
    """
    if pep.d0_squared == 0.0:
        raise DomainError("pep transfer strength vanishes; ratio undefined")
    return deep.d0_squared / pep.d0_squared


@dataclass(frozen=True)
class ObservableReport:
    """Bundle of computed observables for one system preset."""

    system: str
    rms_fm: dict
    charge_radius_fm: float | None = None
    matter_radius_fm: float | None = None
    transfer: dict | None = None
    cross_section_ratio: float | None = None
    notes: tuple = ()

    def __post_init__(self):
        for key, value in self.rms_fm.items():
            if not value > 0.0:
                raise DomainError(f"rms_fm[{key!r}] must be > 0, got {value}")
        for name in ("charge_radius_fm", "matter_radius_fm"):
            value = getattr(self, name)
            if value is not None and not value > 0.0:
                raise DomainError(f"{name} must be > 0, got {value}")

    def to_dict(self) -> dict:
        out = {"system": self.system, "rms_fm": dict(self.rms_fm)}
        if self.charge_radius_fm is not None:
            out["charge_radius_fm"] = self.charge_radius_fm
        if self.matter_radius_fm is not None:
            out["matter_radius_fm"] = self.matter_radius_fm
        if self.transfer is not None:
            out["transfer"] = self.transfer
        if self.cross_section_ratio is not None:
            out["cross_section_ratio"] = self.cross_section_ratio
        if self.notes:
            out["notes"] = list(self.notes)
        return out
