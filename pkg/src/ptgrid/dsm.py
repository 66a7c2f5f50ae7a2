"""N-consumer demand-side-management participation game: each consumer picks
an evening start hour for load shifting or opts out entirely; hourly prices
scale with the total post-shift load, and every consumer pays its own bill.

A participant starting at hour t relocates the flexible share of its load in
hours [t, t + shift_span) uniformly onto the overnight trough; opting out
leaves its profile untouched. Action convention: actions 0..k-1 are the k
window start hours in ascending order, action k is opt-out.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .games import EquilibriumResult, FiniteGame, MixedProfile, solve_fixed_point
from .prospects import PtProfile

HOURS = 24


@dataclass(frozen=True)
class LoadProfile:
    """A consumer's 24-hour demand and the share of its peak-window load that
    participation can shift."""

    hourly_demand: np.ndarray
    flexible_fraction: float

    def __post_init__(self):
        demand = np.asarray(self.hourly_demand, dtype=float)
        if demand.shape != (HOURS,):
            raise ValueError(f"hourly_demand needs exactly {HOURS} entries")
        if np.any(demand < 0.0) or not np.all(np.isfinite(demand)):
            raise ValueError("hourly_demand must be finite and non-negative")
        if not (0.0 <= self.flexible_fraction <= 1.0):
            raise ValueError("flexible_fraction must lie in [0, 1]")
        demand = demand.copy()
        demand.setflags(write=False)
        object.__setattr__(self, "hourly_demand", demand)

    def daily_energy(self) -> float:
        return float(self.hourly_demand.sum())


@dataclass(frozen=True)
class DsmConfig:
    """Parameters of the participation game.

    The hourly price is price_coeff * (total hourly load) ** price_exponent.
    alphas carries the consumers' Prelec rationality parameters (None means
    all rational).
    """

    n_consumers: int = 6
    start_window: tuple = (18, 19, 20)
    include_opt_out: bool = True
    price_coeff: float = 0.02
    price_exponent: float = 1.0
    shift_span: int = 5
    offpeak_hours: tuple = (1, 2, 3, 4, 5)
    alphas: tuple | None = None

    def __post_init__(self):
        if self.n_consumers < 2:
            raise ValueError("need at least 2 consumers")
        if not self.start_window:
            raise ValueError("start_window must be non-empty")
        if any(not (0 <= h < HOURS) for h in self.start_window):
            raise ValueError("start_window hours must lie in [0, 23]")
        if any(not (0 <= h < HOURS) for h in self.offpeak_hours):
            raise ValueError("offpeak_hours must lie in [0, 23]")
        if self.shift_span < 1:
            raise ValueError("shift_span must be at least 1")
        if self.price_coeff < 0.0:
            raise ValueError("price_coeff must be non-negative")
        if self.alphas is not None and len(self.alphas) != self.n_consumers:
            raise ValueError("alphas must list one value per consumer")

    @property
    def n_actions(self) -> int:
        return len(self.start_window) + (1 if self.include_opt_out else 0)

    @property
    def opt_out_action(self) -> int | None:
        return len(self.start_window) if self.include_opt_out else None

    def behaviors(self) -> list:
        if self.alphas is None:
            return [PtProfile.eut()] * self.n_consumers
        return [PtProfile.weighting_only(float(a)) for a in self.alphas]


def shifted_load(profile: LoadProfile, start_hour: int, config: DsmConfig) -> np.ndarray:
    """The consumer's 24-hour load after joining at start_hour: the flexible
    share of each hour in [start_hour, start_hour + span) moves uniformly
    onto the off-peak hours."""
    span_hours = [h for h in range(start_hour, start_hour + config.shift_span) if h < HOURS]
    load = np.array(profile.hourly_demand)
    moved = profile.flexible_fraction * load[span_hours].sum()
    load[span_hours] *= 1.0 - profile.flexible_fraction
    load[list(config.offpeak_hours)] += moved / len(config.offpeak_hours)
    return load


def action_load_table(profiles, config: DsmConfig) -> np.ndarray:
    """Per-consumer, per-action 24-hour load vectors, shape (n, A, 24)."""
    table = np.zeros((len(profiles), config.n_actions, HOURS))
    for i, p in enumerate(profiles):
        for a, start in enumerate(config.start_window):
            table[i, a] = shifted_load(p, start, config)
        if config.include_opt_out:
            table[i, config.opt_out_action] = p.hourly_demand
    return table


def build_dsm_game(profiles, config: DsmConfig) -> FiniteGame:
    """Payoff tensor of the participation game: consumer i's payoff at a
    joint action is the negative of its bill, sum_h price(h) * own_load(h),
    with price(h) = price_coeff * total_load(h) ** price_exponent."""
    profiles = tuple(profiles)
    if len(profiles) != config.n_consumers:
        raise ValueError(
            f"expected {config.n_consumers} load profiles, got {len(profiles)}"
        )
    table = action_load_table(profiles, config)
    n, A = len(profiles), config.n_actions
    joint = np.indices((A,) * n).reshape(n, -1).T  # (A^n, n)
    loads = table[np.arange(n)[None, :], joint, :]  # (A^n, n, 24)
    total = loads.sum(axis=1)  # (A^n, 24)
    price = config.price_coeff * total**config.price_exponent
    bills = (price[:, None, :] * loads).sum(axis=2)  # (A^n, n)
    payoffs = -bills.T.reshape((n,) + (A,) * n)
    return FiniteGame(payoffs)


def solve_dsm(
    profiles,
    config: DsmConfig,
    alphas=None,
    game: FiniteGame | None = None,
    step: float = 0.1,
    tol: float = 1e-9,
    max_iter: int = 10000,
) -> EquilibriumResult:
    """Solve the participation game by damped fixed-point iteration under the
    given rationality parameters (config.alphas when omitted)."""
    if game is None:
        game = build_dsm_game(profiles, config)
    if alphas is None:
        behaviors = config.behaviors()
    else:
        behaviors = [PtProfile.weighting_only(float(a)) for a in alphas]
    return solve_fixed_point(
        game, behaviors, step=step, tol=tol, max_iter=max_iter
    )


def nonparticipating_load(
    result: EquilibriumResult | MixedProfile, profiles, config: DsmConfig
) -> np.ndarray:
    """Expected hourly load of consumers who opt out: per hour, the sum of
    each consumer's raw demand weighted by its opt-out probability."""
    if config.opt_out_action is None:
        return np.zeros(HOURS)
    profile = result.profile if isinstance(result, EquilibriumResult) else result
    out = np.zeros(HOURS)
    for mix, p in zip(profile, profiles):
        out += mix[config.opt_out_action] * p.hourly_demand
    return out


@dataclass(frozen=True)
class HourlyLoadReport:
    """Expected nonparticipating load per hour under the rational baseline
    and under the behavioral parameterization."""

    eut: np.ndarray
    pt: np.ndarray
    eut_converged: bool
    pt_converged: bool

    def rows(self):
        return [(h, float(self.eut[h]), float(self.pt[h])) for h in range(HOURS)]


def hourly_load_report(
    profiles,
    config: DsmConfig,
    tol: float = 1e-9,
    max_iter: int = 10000,
) -> HourlyLoadReport:
    """Solve the game under EUT and under config.alphas, and report both
    expected nonparticipating load profiles."""
    game = build_dsm_game(profiles, config)
    eut = solve_dsm(profiles, config, alphas=[1.0] * config.n_consumers, game=game,
                    tol=tol, max_iter=max_iter)
    pt = solve_dsm(profiles, config, game=game, tol=tol, max_iter=max_iter)
    return HourlyLoadReport(
        eut=nonparticipating_load(eut, profiles, config),
        pt=nonparticipating_load(pt, profiles, config),
        eut_converged=eut.converged,
        pt_converged=pt.converged,
    )


@dataclass(frozen=True)
class RationalitySweep:
    """Expected nonparticipating load at one hour across homogeneous
    rationality levels, next to the constant EUT value."""

    hour: int
    alphas: np.ndarray
    pt_loads: np.ndarray
    eut_load: float
    converged: np.ndarray = field(repr=False)

    def rows(self):
        return [
            (float(a), float(self.eut_load), float(v))
            for a, v in zip(self.alphas, self.pt_loads)
        ]


def rationality_sweep(
    profiles,
    config: DsmConfig,
    alpha_grid,
    hour: int,
    tol: float = 1e-9,
    max_iter: int = 10000,
) -> RationalitySweep:
    """For each alpha applied to every consumer, the expected
    nonparticipating load at `hour` under the behavioral equilibrium."""
    if not (0 <= hour < HOURS):
        raise ValueError("hour must lie in [0, 23]")
    game = build_dsm_game(profiles, config)
    n = config.n_consumers
    eut = solve_dsm(profiles, config, alphas=[1.0] * n, game=game, tol=tol, max_iter=max_iter)
    eut_load = float(nonparticipating_load(eut, profiles, config)[hour])
    alphas = np.asarray(list(alpha_grid), dtype=float)
    loads = np.zeros(alphas.size)
    converged = np.zeros(alphas.size, dtype=bool)
    for k, alpha in enumerate(alphas):
        res = solve_dsm(profiles, config, alphas=[float(alpha)] * n, game=game,
                        tol=tol, max_iter=max_iter)
        loads[k] = nonparticipating_load(res, profiles, config)[hour]
        converged[k] = res.converged
    return RationalitySweep(
        hour=hour, alphas=alphas, pt_loads=loads, eut_load=eut_load, converged=converged
    )


# ---------------------------------------------------------------------------
# synthetic load profiles (stand-in for the unavailable metered dataset)

_PEAK_HOUR = 19.0
_PEAK_WIDTH = 2.2
_MORNING_HOUR = 8.0
_MORNING_WIDTH = 2.0
_TROUGH_HOUR = 3.5
_TROUGH_WIDTH = 2.0


def synth_profile(
    seed: int,
    n_consumers: int,
    flexible_range: tuple = (0.72, 0.92),
) -> list:
    """Deterministic evening-peaked household profiles, reproducible from the
    seed: a base level plus evening and morning bumps, a shallow overnight
    trough, and mild noise; flexible fractions drawn from flexible_range."""
    if n_consumers < 1:
        raise ValueError("need at least one consumer")
    rng = np.random.default_rng(seed)
    hours = np.arange(HOURS, dtype=float)
    lo, hi = flexible_range
    profiles = []
    for _ in range(n_consumers):
        base = 0.6 + 0.3 * rng.random()
        evening = (2.5 + 1.5 * rng.random()) * np.exp(
            -0.5 * ((hours - _PEAK_HOUR) / _PEAK_WIDTH) ** 2
        )
        morning = (0.6 + 0.5 * rng.random()) * np.exp(
            -0.5 * ((hours - _MORNING_HOUR) / _MORNING_WIDTH) ** 2
        )
        trough = -0.35 * np.exp(-0.5 * ((hours - _TROUGH_HOUR) / _TROUGH_WIDTH) ** 2)
        noise = 0.05 * rng.standard_normal(HOURS)
        demand = np.maximum(base + evening + morning + trough + noise, 0.05)
        ff = lo + (hi - lo) * rng.random()
        profiles.append(LoadProfile(hourly_demand=demand, flexible_fraction=float(ff)))
    return profiles
