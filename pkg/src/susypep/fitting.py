"""Determine (a_tilde, beta) from a target binding energy and rms radius.

The closed-form spectrum makes the fit one-dimensional: for any beta the
strength follows from the energy target exactly,

    a_tilde(beta) = 2n + 1 + sqrt(-E 2mu/hbar^2) / beta,

so only the rms condition is searched, by bisection on beta. The rms of
the candidate is evaluated from the closed-form eigenstate (n <= 1), so a
fit costs milliseconds and its energy residual is rounding-level.
"""
from __future__ import annotations

import contextlib
import logging
import math
from dataclasses import dataclass, replace

from .errors import BracketError, ConfigError, ConvergenceError, DomainError
from .grids import ChannelConstants, RadialGrid, default_grid
from .observables import rms_radius
from .potentials import analytic_levels
from .solver import analytic_pt_state, solve_bound_state

log = logging.getLogger(__name__)

DEFAULT_BETA_BRACKET = (0.2, 5.0)   # fm^-1
BETA_TOL = 1e-8                     # fm^-1, bisection interval at termination
MAX_FIT_ITERATIONS = 200


class _TailFilter(logging.Filter):
    def filter(self, record):
        return "tail truncation" not in record.getMessage()


@contextlib.contextmanager
def _quiet_tail_warnings():
    """Mute the rms tail warning for trial states inside the fit loop.

    The final fitted state is evaluated without this, so a genuinely short
    grid still warns exactly once per fit.
    """
    target = logging.getLogger("susypep.observables")
    flt = _TailFilter()
    target.addFilter(flt)
    try:
        yield
    finally:
        target.removeFilter(flt)


@contextlib.contextmanager
def _no_op():
    yield


@dataclass(frozen=True)
class SystemPreset:
    """A two-body system: channel constant, fit targets and bookkeeping.

    ``canonical_a_tilde/beta`` hold the established parameter pair used for
    observable tables (the fit serves to reproduce or replace them);
    ``fixed`` marks presets whose parameters are prescribed rather than
    fitted. ``reference_pair`` records a quoted parameter pair that fails
    the defining constraints, so reports can flag the inconsistency.
    """

    name: str
    channel: ChannelConstants
    target_energy: float
    target_rms: float | None
    physical_node_count: int
    coordinate_factor: str
    canonical_a_tilde: float | None = None
    canonical_beta: float | None = None
    fixed: bool = False
    r_proton: float | None = None
    core_mass_number: int | None = None
    r_core: float | None = None
    reference_pair: tuple[float, float] | None = None

    def __post_init__(self):
        if not self.target_energy < 0.0:
            raise DomainError(f"target energy must be < 0, got {self.target_energy}")
        if self.target_rms is not None and not self.target_rms > 0.0:
            raise DomainError(f"target rms must be > 0, got {self.target_rms}")
        if self.coordinate_factor not in ("quarter", "unit"):
            raise DomainError("coordinate_factor must be 'quarter' or 'unit'")


def deuteron_preset() -> SystemPreset:
    return SystemPreset(
        name="deuteron",
        channel=ChannelConstants(41.47, "n-p"),
        target_energy=-2.226,
        target_rms=1.95,
        physical_node_count=1,
        coordinate_factor="quarter",
        canonical_a_tilde=3.146,
        canonical_beta=1.587,
        r_proton=0.88,
    )


def be11_preset() -> SystemPreset:
    return SystemPreset(
        name="be11",
        channel=ChannelConstants(22.81, "n-Be10"),
        target_energy=-0.503,
        target_rms=6.70,
        physical_node_count=1,
        coordinate_factor="unit",
        core_mass_number=10,
        r_core=2.3,
        reference_pair=(3.124, 0.694),
    )


def alpha_preset() -> SystemPreset:
    channel = ChannelConstants(10.375, "alpha-alpha")
    a_tilde, beta = 5.945, 0.535
    return SystemPreset(
        name="alpha",
        channel=channel,
        target_energy=analytic_levels(a_tilde, beta, channel, 2),
        target_rms=None,
        physical_node_count=2,
        coordinate_factor="unit",
        canonical_a_tilde=a_tilde,
        canonical_beta=beta,
        fixed=True,
    )


PRESETS = {
    "deuteron": deuteron_preset,
    "be11": be11_preset,
    "alpha": alpha_preset,
}


def get_preset(name: str) -> SystemPreset:
    try:
        return PRESETS[name]()
    except KeyError:
        raise ConfigError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None


@dataclass(frozen=True)
class FitResult:
    a_tilde: float
    beta: float
    achieved_energy: float
    achieved_rms: float
    energy_residual: float
    rms_residual: float
    iterations: int

    def to_dict(self) -> dict:
        return {
            "a_tilde": self.a_tilde,
            "beta_per_fm": self.beta,
            "achieved_energy_MeV": self.achieved_energy,
            "achieved_rms_fm": self.achieved_rms,
            "energy_residual_MeV": self.energy_residual,
            "rms_residual_fm": self.rms_residual,
            "iterations": self.iterations,
        }


def a_tilde_from_energy(energy: float, beta: float, channel: ChannelConstants, n: int) -> float:
    """Exact inversion of the level formula for the strength parameter."""
    if not energy < 0.0:
        raise DomainError(f"bound energy must be < 0, got {energy}")
    if not beta > 0.0:
        raise DomainError(f"beta must be > 0, got {beta}")
    if n < 0:
        raise DomainError(f"state index must be >= 0, got {n}")
    return 2.0 * n + 1.0 + math.sqrt(-energy / channel.hbar2_over_2mu) / beta


def _state_rms(
    preset: SystemPreset, a_tilde: float, beta: float, grid: RadialGrid
) -> float:
    n = preset.physical_node_count
    if n <= 1:
        state = analytic_pt_state(a_tilde, beta, preset.channel, n, grid=grid)
    else:
        from .potentials import SechSquared

        potential = SechSquared(a_tilde, beta, preset.channel.hbar2_over_2mu)
        state = solve_bound_state(potential, preset.channel, target_nodes=n, grid=grid)
    return rms_radius(state, preset.coordinate_factor)


def fit_parameters(
    preset: SystemPreset,
    beta_bracket: tuple[float, float] = DEFAULT_BETA_BRACKET,
    grid: RadialGrid | None = None,
) -> FitResult:
    """Outer bisection on beta with the closed-form a_tilde(beta) inside."""
    if preset.fixed:
        raise ConfigError(
            f"preset {preset.name!r} has fixed parameters and is not fitted"
        )
    if preset.target_rms is None:
        raise ConfigError(f"preset {preset.name!r} has no rms target to fit")
    g = grid if grid is not None else default_grid()
    channel = preset.channel
    n = preset.physical_node_count
    target_e = preset.target_energy
    target_r = preset.target_rms

    lo, hi = beta_bracket
    if not 0.0 < lo < hi:
        raise BracketError(f"invalid beta bracket ({lo}, {hi})")

    def rms_at(beta: float, quiet: bool = True) -> float:
        try:
            a_tilde = a_tilde_from_energy(target_e, beta, channel, n)
            with _quiet_tail_warnings() if quiet else _no_op():
                return _state_rms(preset, a_tilde, beta, g)
        except DomainError as exc:
            raise ConvergenceError(f"state disappeared at beta={beta}: {exc}") from exc

    iterations = 3
    rms_lo, rms_mid, rms_hi = rms_at(lo), rms_at(0.5 * (lo + hi)), rms_at(hi)
    log.info(
        "fit monotonicity probe: rms(%.3g)=%.4f rms(%.3g)=%.4f rms(%.3g)=%.4f",
        lo, rms_lo, 0.5 * (lo + hi), rms_mid, hi, rms_hi,
    )
    if not rms_lo > rms_mid > rms_hi:
        raise ConvergenceError(
            "rms is not strictly decreasing with beta over the bracket "
            f"({rms_lo:.4f}, {rms_mid:.4f}, {rms_hi:.4f}); aborting rather than "
            "picking a branch"
        )
    if not rms_hi < target_r < rms_lo:
        raise BracketError(
            f"beta bracket does not straddle the rms target {target_r} fm: "
            f"rms({lo})={rms_lo:.4f}, rms({hi})={rms_hi:.4f}"
        )

    while hi - lo > BETA_TOL:
        if iterations >= MAX_FIT_ITERATIONS:
            raise ConvergenceError(
                f"fit exceeded {MAX_FIT_ITERATIONS} iterations (bracket {lo}, {hi})"
            )
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        iterations += 1
        if rms_at(mid) > target_r:
            lo = mid
        else:
            hi = mid

    beta = 0.5 * (lo + hi)
    achieved_r = rms_at(beta, quiet=False)   # final state may warn (halo tails)
    a_tilde = a_tilde_from_energy(target_e, beta, channel, n)
    achieved_e = analytic_levels(a_tilde, beta, channel, n)
    result = FitResult(
        a_tilde=a_tilde,
        beta=beta,
        achieved_energy=achieved_e,
        achieved_rms=achieved_r,
        energy_residual=achieved_e - target_e,
        rms_residual=achieved_r - target_r,
        iterations=iterations,
    )
    if abs(result.rms_residual) > 1e-4:
        raise ConvergenceError(
            f"fit finished with rms residual {result.rms_residual:.2e} fm > 1e-4 fm"
        )
    return result


def fitted_preset(preset: SystemPreset, result: FitResult) -> SystemPreset:
    """Preset with the canonical pair replaced by fitted parameters."""
    return replace(preset, canonical_a_tilde=result.a_tilde, canonical_beta=result.beta)


def load_preset_config(path) -> SystemPreset:
    """Read a plain key=value preset file ('#' starts a comment).

    Required keys: name, hbar2_over_2mu, target_energy, target_rms, nodes,
    coordinate_factor.
    """
    entries: dict[str, str] = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                body = line.split("#", 1)[0].strip()
                if not body:
                    continue
                if "=" not in body:
                    raise ConfigError(f"{path}:{lineno}: expected key=value, got {line.strip()!r}")
                key, value = body.split("=", 1)
                entries[key.strip()] = value.strip()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc

    required = ["name", "hbar2_over_2mu", "target_energy", "target_rms", "nodes",
                "coordinate_factor"]
    missing = [key for key in required if key not in entries]
    if missing:
        raise ConfigError(f"config {path} is missing keys: {', '.join(missing)}")
    try:
        return SystemPreset(
            name=entries["name"],
            channel=ChannelConstants(float(entries["hbar2_over_2mu"]), entries["name"]),
            target_energy=float(entries["target_energy"]),
            target_rms=float(entries["target_rms"]),
            physical_node_count=int(entries["nodes"]),
            coordinate_factor=entries["coordinate_factor"],
        )
    except (ValueError, DomainError) as exc:
        raise ConfigError(f"config {path} is invalid: {exc}") from exc
