"""Radial bound-state eigensolver and fixed-energy regular solutions.

The radial equation is integrated as u'' = f(r) u with
f = (V - E) / (hbar^2/2mu) using Numerov sweeps (see ``_kernels``).
Eigenvalues are located by bisection: interior node counts of the outward
sweep bracket the requested quantum number, and the final state is
assembled from an outward sweep up to the outermost classical turning
point matched against an inward sweep seeded with the exp(-kappa r) tail.

Near the origin every sweep is started from the Frobenius series
u = r^p (1 + a2 r^2 + a4 r^4), p = 1 + l_eff, which keeps the start error
below the integrator's own O(h^4); this is what makes the singular
transformed potentials (p = 2, 3, ...) solvable without special cases.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import BracketError, ConvergenceError, DomainError, NoSuchStateError
from .grids import ChannelConstants, RadialGrid, default_grid, integrate
from .potentials import (
    Gaussian,
    PotentialModel,
    SechSquared,
    Tabulated,
    analytic_levels,
    sech,
    values_on_grid,
)

log = logging.getLogger(__name__)

ENERGY_TOL = 1e-8           # MeV, bisection bracket width at termination
MAX_BISECTIONS = 300


@dataclass(frozen=True)
class BoundState:
    """Normalized eigensolution on a radial grid.

    ``u`` carries dimension fm^(-1/2); the sign convention is a positive
    tail (asymptotic amplitude > 0). ``kappa`` is the asymptotic decay
    constant sqrt(-E 2mu / hbar^2).
    """

    energy: float
    nodes: int
    u: np.ndarray
    kappa: float
    grid: RadialGrid
    norm_residual: float = 0.0

    def __post_init__(self):
        if self.energy >= 0.0:
            raise DomainError(f"bound-state energy must be negative, got {self.energy}")
        arr = np.asarray(self.u, dtype=float).copy()
        arr.flags.writeable = False
        object.__setattr__(self, "u", arr)

    def summary(self) -> dict:
        return {
            "energy_MeV": self.energy,
            "nodes": self.nodes,
            "kappa_per_fm": self.kappa,
            "norm_residual": self.norm_residual,
        }


@dataclass(frozen=True)
class RegularSolution:
    """Unnormalized regular solution u ~ r^origin_power at the origin."""

    energy: float
    u: np.ndarray
    origin_power: float
    grid: RadialGrid

    def __post_init__(self):
        arr = np.asarray(self.u, dtype=float).copy()
        arr.flags.writeable = False
        object.__setattr__(self, "u", arr)


def count_nodes(u) -> int:
    """Strict sign changes over the array (exact zeros are skipped)."""
    arr = np.asarray(u, dtype=float)
    nz = arr[arr != 0.0]
    if nz.size < 2:
        return 0
    return int(np.count_nonzero(nz[1:] * nz[:-1] < 0.0))


def node_positions(u, grid: RadialGrid) -> np.ndarray:
    """Radii of interior zero crossings, linearly interpolated."""
    arr = np.asarray(u, dtype=float)
    r = grid.r
    s = arr[:-1] * arr[1:]
    idx = np.nonzero(s < 0.0)[0]
    return r[idx] - arr[idx] * grid.step / (arr[idx + 1] - arr[idx])


def origin_power(potential: PotentialModel) -> float:
    """Exponent p of the regular solution, p = 1 + l_eff."""
    c_sing = getattr(potential, "singular_coefficient", 0.0)
    return 1.0 + 0.5 * (-1.0 + math.sqrt(1.0 + 4.0 * c_sing))


def _check_channel(potential: PotentialModel, channel: ChannelConstants) -> float:
    carried = getattr(potential, "hbar2_over_2mu", None)
    if carried is not None and not math.isclose(
        carried, channel.hbar2_over_2mu, rel_tol=1e-12
    ):
        raise DomainError(
            f"potential carries hbar2_over_2mu={carried} but channel has "
            f"{channel.hbar2_over_2mu}"
        )
    return channel.hbar2_over_2mu


def _series_coefficients(f: np.ndarray, p: float, grid: RadialGrid):
    """Frobenius coefficients (a2, a4) from the smooth part of f near r=0."""
    r1, r2 = grid.r[0], grid.r[1]
    ell = p - 1.0
    cent = ell * (ell + 1.0)
    fs1 = f[0] - cent / r1**2
    fs2 = f[1] - cent / r2**2
    f2 = (fs2 - fs1) / (r2**2 - r1**2)
    f0 = fs1 - f2 * r1**2
    a2 = f0 / (4.0 * p + 2.0)
    a4 = (f2 + f0 * a2) / (8.0 * p + 12.0)
    return a2, a4


def _series_start(f: np.ndarray, p: float, grid: RadialGrid):
    a2, a4 = _series_coefficients(f, p, grid)
    r1, r2 = grid.r[0], grid.r[1]
    u1 = r1**p * (1.0 + a2 * r1**2 + a4 * r1**4)
    u2 = r2**p * (1.0 + a2 * r2**2 + a4 * r2**4)
    return u1, u2


def series_log_derivative(f: np.ndarray, p: float, grid: RadialGrid) -> float:
    """u'/u at the first grid point from the origin series."""
    a2, a4 = _series_coefficients(f, p, grid)
    r1 = grid.r[0]
    num = p + (p + 2.0) * a2 * r1**2 + (p + 4.0) * a4 * r1**4
    den = r1 * (1.0 + a2 * r1**2 + a4 * r1**4)
    return num / den


def numerov_first_derivative(
    u: np.ndarray,
    f: np.ndarray,
    h: float,
    y_left: float | None = None,
    y_right: float | None = None,
) -> np.ndarray:
    """O(h^4) first derivative consistent with the Numerov solution.

    Interior points use u'_i = [u_{i+1}(1 - 2T_{i+1}) - u_{i-1}(1 - 2T_{i-1})]
    / (2h) with T = h^2 f / 12.  Endpoints take analytic log-derivatives when
    supplied (origin series, asymptotic kappa), else one-sided differences.
    """
    t = h * h / 12.0
    du = np.empty_like(u)
    w = u * (1.0 - 2.0 * t * f)
    du[1:-1] = (w[2:] - w[:-2]) / (2.0 * h)
    du[0] = y_left * u[0] if y_left is not None else (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h)
    du[-1] = (
        y_right * u[-1] if y_right is not None else (3.0 * u[-1] - 4.0 * u[-2] + u[-3]) / (2.0 * h)
    )
    return du


def _grid_for(potential: PotentialModel, grid: RadialGrid | None) -> RadialGrid:
    if grid is not None:
        return grid
    if isinstance(potential, Tabulated):
        return potential.grid
    return default_grid()


def default_energy_bracket(
    potential: PotentialModel, channel: ChannelConstants, grid: RadialGrid | None = None
) -> tuple[float, float]:
    """(-1.05 * depth, -1e-6) MeV from the potential's sampled minimum."""
    if isinstance(potential, (SechSquared, Gaussian)):
        depth = potential.depth
    else:
        g = _grid_for(potential, grid)
        depth = max(0.0, -float(np.min(values_on_grid(potential, g))))
    return (-1.05 * depth, -1e-6)


def _outward_node_count(f: np.ndarray, p: float, grid: RadialGrid) -> int:
    u1, u2 = _series_start(f, p, grid)
    u, _ = _kernels.sweep_outward(f, grid.step, u1, u2, grid.n_points - 1)
    return count_nodes(u)


def solve_bound_state(
    potential: PotentialModel,
    channel: ChannelConstants,
    target_nodes: int,
    energy_bracket: tuple[float, float] | None = None,
    grid: RadialGrid | None = None,
) -> BoundState:
    """Find the bound state with the requested interior node count.

    Bisection on the interior node count of the outward sweep; the count
    steps by one exactly at each eigenvalue of the r_max-truncated problem,
    so the bracket converges to the eigenvalue itself. The returned state
    is assembled from matched outward/inward sweeps and normalized.
    """
    if target_nodes < 0:
        raise DomainError(f"target_nodes must be >= 0, got {target_nodes}")
    c = _check_channel(potential, channel)
    g = _grid_for(potential, grid)
    v = values_on_grid(potential, g)
    p = origin_power(potential)
    h = g.step
    n = g.n_points

    elo, ehi = energy_bracket if energy_bracket is not None else default_energy_bracket(
        potential, channel, g
    )
    if not elo < ehi < 0.0:
        raise BracketError(f"invalid energy bracket ({elo}, {ehi})")

    count_lo = _outward_node_count((v - elo) / c, p, g)
    count_hi = _outward_node_count((v - ehi) / c, p, g)
    if not (count_lo <= target_nodes < count_hi):
        raise BracketError(
            f"bracket ({elo:.6g}, {ehi:.6g}) MeV does not straddle the n={target_nodes} "
            f"state: node counts at ends are {count_lo} and {count_hi}"
        )

    for _ in range(MAX_BISECTIONS):
        em = 0.5 * (elo + ehi)
        if em == elo or em == ehi or (ehi - elo) < ENERGY_TOL:
            break
        if _outward_node_count((v - em) / c, p, g) > target_nodes:
            ehi = em
        else:
            elo = em
    else:
        raise ConvergenceError(
            f"eigenvalue search did not reach {ENERGY_TOL} MeV within {MAX_BISECTIONS} bisections"
        )

    energy = 0.5 * (elo + ehi)
    f = (v - energy) / c

    allowed = np.nonzero(f < 0.0)[0]
    m = int(allowed[-1]) if allowed.size else n // 2
    m = min(max(m, 2), n - 3)

    u1, u2 = _series_start(f, p, g)
    uo, _ = _kernels.sweep_outward(f, h, u1, u2, m + 1)
    kappa = math.sqrt(-energy / c)
    ui, _ = _kernels.sweep_inward(f, h, 1.0, math.exp(kappa * h), m - 1)
    if ui[1] == 0.0 or uo[m] == 0.0:
        raise ConvergenceError("vanishing amplitude at the matching point")
    ui = ui * (uo[m] / ui[1])
    u = np.concatenate([uo[:m], ui[1:]])

    norm = math.sqrt(integrate(u * u, g))
    u /= norm
    tail_idx = _tail_index(u)
    if u[tail_idx] < 0.0:
        u = -u

    nodes = count_nodes(u)
    if nodes != target_nodes:
        raise ConvergenceError(
            f"matched solution has {nodes} nodes, expected {target_nodes} "
            f"(E={energy:.6g} MeV); refine the grid or bracket"
        )
    residual = abs(integrate(u * u, g) - 1.0)
    return BoundState(energy=energy, nodes=nodes, u=u, kappa=kappa, grid=g,
                      norm_residual=residual)


def _tail_index(u: np.ndarray) -> int:
    """Last index where |u| is still appreciable; defines the tail sign."""
    threshold = 1e-3 * float(np.max(np.abs(u)))
    idx = np.nonzero(np.abs(u) > threshold)[0]
    return int(idx[-1]) if idx.size else len(u) - 1


def solve_at_energy(
    potential: PotentialModel,
    channel: ChannelConstants,
    energy: float,
    grid: RadialGrid | None = None,
    stop_index: int | None = None,
) -> RegularSolution:
    """Outward regular solution at a fixed energy (bound or scattering region).

    The amplitude is fixed by u(r_1) = r_1^p unless the sweep had to rescale
    against overflow, in which case the rescaled profile is returned as-is
    (shape and log-derivatives remain valid).
    """
    if energy == 0.0:
        raise DomainError("energy must be nonzero; use count_bound_states for the E=0 probe")
    c = _check_channel(potential, channel)
    g = _grid_for(potential, grid)
    v = values_on_grid(potential, g)
    p = origin_power(potential)
    f = (v - energy) / c
    stop = g.n_points - 1 if stop_index is None else stop_index
    u1, u2 = _series_start(f, p, g)
    u, log_scale = _kernels.sweep_outward(f, g.step, u1, u2, stop)
    if log_scale == 0.0:
        u = u * (g.r_min**p / u[0])
    else:
        log.warning(
            "outward sweep rescaled by exp(%.1f) to avoid overflow; "
            "returning the rescaled profile", log_scale
        )
    return RegularSolution(energy=energy, u=u, origin_power=p, grid=g)


def count_bound_states(
    potential: PotentialModel, channel: ChannelConstants, grid: RadialGrid | None = None
) -> int:
    """Number of bound states = interior nodes of the zero-energy regular solution."""
    c = _check_channel(potential, channel)
    g = _grid_for(potential, grid)
    v = values_on_grid(potential, g)
    p = origin_power(potential)
    return _outward_node_count(v / c, p, g)


def analytic_pt_state(
    a_tilde: float,
    beta: float,
    channel: ChannelConstants,
    n: int,
    grid: RadialGrid | None = None,
) -> BoundState:
    """Closed-form sech^2 eigenstate for n = 0 or 1, normalized on the grid.

    n = 0:  u ∝ tanh(beta r) sech^(At-1)(beta r)
    n = 1:  u ∝ sech^(At-3)(beta r) tanh(beta r) [(2 At - 1) tanh^2(beta r) - 3]
    """
    if n not in (0, 1):
        raise NoSuchStateError(f"closed form implemented for n in (0, 1); got n={n}")
    energy = analytic_levels(a_tilde, beta, channel, n)   # raises if absent
    g = grid if grid is not None else default_grid()
    x = beta * g.r
    t = np.tanh(x)
    if n == 0:
        u = t * sech(x) ** (a_tilde - 1.0)
    else:
        u = sech(x) ** (a_tilde - 3.0) * t * ((2.0 * a_tilde - 1.0) * t**2 - 3.0)
    u = u / math.sqrt(integrate(u * u, g))
    if u[_tail_index(u)] < 0.0:
        u = -u
    kappa = math.sqrt(-energy / channel.hbar2_over_2mu)
    residual = abs(integrate(u * u, g) - 1.0)
    return BoundState(energy=energy, nodes=count_nodes(u), u=u, kappa=kappa, grid=g,
                      norm_residual=residual)
