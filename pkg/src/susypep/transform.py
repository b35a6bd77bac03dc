"""Two-step supersymmetric removal of the lowest bound state.

Step one builds the intermediate potential

    V2 = V1 - 2 c (d^2/dr^2) ln u0 = -V1 + 2 E0 + 2 c (u0'/u0)^2,

which drops the ground state at E0 but changes the phase shifts. Step two
builds the phase-equivalent partner from the integral form

    V3 = V1 - 2 c (d^2/dr^2) ln I,    I(r) = int_0^r u0^2 dr',

using the analytic identity (ln I)'' = 2 u0 u0'/I - (u0^2/I)^2 so that no
second numerical derivative is ever taken. The equivalent route through
the regular solution of V2 at E0 (``build_pep_via_intermediate``) is kept
as an independent cross-check of the production path.

Near the origin the transformed potentials follow an exact c_sing/r^2 law
(l_eff grows by 1 for V2 and by 2 for V3); the first three mesh points are
represented as that law plus a quadratically extrapolated smooth
remainder, which avoids the cancellation-dominated region where I ~ r^3.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .grids import ChannelConstants, RadialGrid
from .potentials import PotentialModel, Tabulated, values_on_grid
from .solver import (
    BoundState,
    count_bound_states,
    numerov_first_derivative,
    origin_power,
    series_log_derivative,
    solve_at_energy,
    solve_bound_state,
)

log = logging.getLogger(__name__)

INTERMEDIATE = "intermediate"
PHASE_EQUIVALENT = "phase_equivalent"

_N_REPLACED = 3       # leading mesh points represented by the singular law
_N_FIT = 3            # points of the parabola for the smooth remainder


@dataclass(frozen=True)
class SusyTransformRecord:
    """Provenance of one transformed potential."""

    source: PotentialModel
    removed_energy: float
    step_kind: str
    result: Tabulated
    singular_coefficient: float

    def sidecar(self) -> dict:
        return {
            "removed_energy_MeV": self.removed_energy,
            "step_kind": self.step_kind,
            "singular_coefficient": self.singular_coefficient,
        }


def _ground_log_derivative(
    ground: BoundState, v_source: np.ndarray, p_source: float, c: float
) -> np.ndarray:
    """u0'/u0 on the grid with series/asymptotic endpoint values.

    Once the source potential has decayed to numerical irrelevance the
    log-derivative is pinned to its exact asymptote -kappa; the O(h^4)
    truncation of the discrete derivative would otherwise leave a constant
    noise floor ~h^4 kappa^5 in the transformed potential's tail.
    """
    g = ground.grid
    f = (v_source - ground.energy) / c
    y_left = series_log_derivative(f, p_source, g)
    du = numerov_first_derivative(ground.u, f, g.step, y_left=y_left, y_right=-ground.kappa)
    y = du / ground.u
    threshold = 1e-12 * max(1.0, float(np.max(np.abs(v_source))))
    alive = np.nonzero(np.abs(v_source) >= threshold)[0]
    if alive.size and alive[-1] + 1 < y.size:
        y[alive[-1] + 1:] = -ground.kappa
    return y


def _with_origin_law(v: np.ndarray, c_sing: float, c: float, grid: RadialGrid) -> np.ndarray:
    """Replace the first mesh points by the exact singular law + smooth remainder."""
    r = grid.r
    k0, k1 = _N_REPLACED, _N_REPLACED + _N_FIT
    smooth = v[k0:k1] - c_sing * c / r[k0:k1] ** 2
    coeffs = np.polyfit(r[k0:k1], smooth, 2)
    out = v.copy()
    out[:k0] = c_sing * c / r[:k0] ** 2 + np.polyval(coeffs, r[:k0])
    return out


def _require_nodeless(ground: BoundState):
    if ground.nodes != 0:
        raise DomainError(
            f"state to remove has {ground.nodes} interior nodes; the log-derivative "
            "construction needs the nodeless lowest state"
        )


def build_intermediate(
    source: PotentialModel, ground: BoundState, channel: ChannelConstants
) -> Tabulated:
    """One-step partner: same spectrum as the source minus the ground state."""
    _require_nodeless(ground)
    c = channel.hbar2_over_2mu
    g = ground.grid
    v1 = values_on_grid(source, g)
    p = origin_power(source)
    y = _ground_log_derivative(ground, v1, p, c)
    v2 = -v1 + 2.0 * ground.energy + 2.0 * c * y * y
    ell = p - 1.0
    c_sing = (ell + 1.0) * (ell + 2.0)
    v2 = _with_origin_law(v2, c_sing, c, g)
    return Tabulated(grid=g, values=v2, singular_coefficient=c_sing, hbar2_over_2mu=c)


def _cumulative_norm(ground: BoundState, y: np.ndarray, p_source: float) -> np.ndarray:
    """I(r) = int_0^r u0^2, Euler-Maclaurin-corrected cumulative trapezoid."""
    g = ground.grid
    h = g.step
    u = ground.u
    dens = u * u
    dens_prime = 2.0 * dens * y
    core = np.concatenate([[0.0], np.cumsum(0.5 * h * (dens[1:] + dens[:-1]))])
    sliver = dens[0] * g.r[0] / (2.0 * p_source + 1.0)   # u ~ r^p below r_1
    return sliver + core - (h * h / 12.0) * (dens_prime - dens_prime[0])


def build_pep(
    source: PotentialModel, ground: BoundState, channel: ChannelConstants
) -> Tabulated:
    """Phase-equivalent partner from the integral form (production path)."""
    _require_nodeless(ground)
    c = channel.hbar2_over_2mu
    g = ground.grid
    v1 = values_on_grid(source, g)
    p = origin_power(source)
    y = _ground_log_derivative(ground, v1, p, c)
    cum = _cumulative_norm(ground, y, p)
    dens = ground.u * ground.u
    ratio = dens / cum
    # (ln I)'' = 2 u u'/I - (u^2/I)^2, with u' = y u
    ln_cum_dd = 2.0 * dens * y / cum - ratio * ratio
    v3 = v1 - 2.0 * c * ln_cum_dd
    ell = p - 1.0
    c_sing = (ell + 2.0) * (ell + 3.0)
    v3 = _with_origin_law(v3, c_sing, c, g)
    return Tabulated(grid=g, values=v3, singular_coefficient=c_sing, hbar2_over_2mu=c)


def build_pep_via_intermediate(
    source: PotentialModel,
    ground: BoundState,
    channel: ChannelConstants,
    intermediate: Tabulated | None = None,
) -> Tabulated:
    """Phase-equivalent partner through the regular solution of V2 at E0.

    Independent of :func:`build_pep`'s integral route; the two must agree
    pointwise, which the test suite enforces as a cross-check oracle.
    Uses V3 = V1 + 2 c (y2^2 - y1^2) with y_i the log-derivatives of the
    source ground state and of the V2 regular solution at the removed energy.
    """
    _require_nodeless(ground)
    c = channel.hbar2_over_2mu
    g = ground.grid
    v1 = values_on_grid(source, g)
    p = origin_power(source)
    y1 = _ground_log_derivative(ground, v1, p, c)

    v2 = intermediate if intermediate is not None else build_intermediate(source, ground, channel)
    psi2 = solve_at_energy(v2, channel, ground.energy, grid=g)
    f2 = (values_on_grid(v2, g) - ground.energy) / c
    y_left = series_log_derivative(f2, psi2.origin_power, g)
    du2 = numerov_first_derivative(psi2.u, f2, g.step, y_left=y_left, y_right=ground.kappa)
    y2 = du2 / psi2.u

    v3 = v1 + 2.0 * c * (y2 * y2 - y1 * y1)
    ell = p - 1.0
    c_sing = (ell + 2.0) * (ell + 3.0)
    v3 = _with_origin_law(v3, c_sing, c, g)
    return Tabulated(grid=g, values=v3, singular_coefficient=c_sing, hbar2_over_2mu=c)


def remove_lowest(
    source: PotentialModel,
    channel: ChannelConstants,
    grid: RadialGrid | None = None,
) -> tuple[SusyTransformRecord, SusyTransformRecord]:
    """Solve the lowest state of ``source`` and build both partner records."""
    ground = solve_bound_state(source, channel, target_nodes=0, grid=grid)
    v2 = build_intermediate(source, ground, channel)
    v3 = build_pep(source, ground, channel)
    rec2 = SusyTransformRecord(
        source=source,
        removed_energy=ground.energy,
        step_kind=INTERMEDIATE,
        result=v2,
        singular_coefficient=v2.singular_coefficient,
    )
    rec3 = SusyTransformRecord(
        source=source,
        removed_energy=ground.energy,
        step_kind=PHASE_EQUIVALENT,
        result=v3,
        singular_coefficient=v3.singular_coefficient,
    )
    return rec2, rec3


def iterate_removals(
    source: PotentialModel,
    channel: ChannelConstants,
    k: int,
    grid: RadialGrid | None = None,
) -> list[SusyTransformRecord]:
    """Remove the k lowest states, two records (V2, V3) per removal."""
    if k < 0:
        raise DomainError(f"number of removals must be >= 0, got {k}")
    if k == 0:
        return []
    available = count_bound_states(source, channel, grid=grid)
    if k > available:
        raise DomainError(
            f"cannot remove {k} states: potential has only {available} bound state(s)"
        )
    records: list[SusyTransformRecord] = []
    current: PotentialModel = source
    for _ in range(k):
        rec2, rec3 = remove_lowest(current, channel, grid=grid)
        records.extend([rec2, rec3])
        current = rec3.result
    return records
