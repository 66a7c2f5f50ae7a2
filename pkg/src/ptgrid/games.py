"""Finite normal-form games evaluated under expected utility or prospect
theory, with best responses, a closed-form-backed 2x2 solver, a damped
fixed-point solver for n players, and a simplex-grid brute-force oracle.

Behavioral evaluation follows the opponent-observation model: the evaluating
player i replaces each opponent joint-action probability q with its Prelec
weight w(q, alpha_i) and each payoff with its framed value, while its own
mixing probabilities enter unweighted:

    U_i = sum_a sum_o  p_i(a) * w(q(o)) * v_i(payoff(i, a, o))

Weighted opponent probabilities are deliberately not renormalized (decision
weights apply directly; renormalizing would cancel the weighting in 2-action
games). Set renormalize=True to get the normalized variant. The joint
opponent probability is weighted after taking the product over opponents;
per_opponent=True weights each opponent's probability separately and
multiplies the weights instead.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .prospects import PtProfile, frame_value, prelec_inverse, prelec_weight

PROB_TOL = 1e-9


class GameFormatError(ValueError):
    """Raised when a game file cannot be parsed."""


class BudgetExceededError(RuntimeError):
    """Raised when a brute-force enumeration would exceed its budget."""


class FiniteGame:
    """An n-player game given by a payoff tensor of shape
    (n_players, actions_1, ..., actions_n)."""

    __slots__ = ("payoffs", "n_players", "action_counts")

    def __init__(self, payoffs):
        arr = np.asarray(payoffs, dtype=float)
        if arr.ndim < 3:
            raise ValueError("payoff tensor needs shape (n_players, a_1, ..., a_n)")
        n = arr.shape[0]
        if n < 2 or arr.ndim != n + 1:
            raise ValueError(
                f"payoff tensor shape {arr.shape} inconsistent: first axis must "
                "index the players and one axis per player must follow"
            )
        if any(a < 2 for a in arr.shape[1:]):
            raise ValueError("every player needs at least 2 actions")
        if not np.all(np.isfinite(arr)):
            raise ValueError("payoffs must be finite")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "payoffs", arr)
        object.__setattr__(self, "n_players", n)
        object.__setattr__(self, "action_counts", tuple(arr.shape[1:]))

    def __setattr__(self, name, value):
        raise AttributeError("FiniteGame is immutable")

    def __repr__(self):
        return f"FiniteGame(players={self.n_players}, actions={self.action_counts})"

    @classmethod
    def from_bimatrix(cls, a, b) -> "FiniteGame":
        """Two-player game from the row player's and column player's payoff
        matrices."""
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        if a.shape != b.shape or a.ndim != 2:
            raise ValueError("bimatrix payoffs must be two equal-shape matrices")
        return cls(np.stack([a, b]))

    def payoff_matrix(self, player: int) -> np.ndarray:
        return self.payoffs[player]


class MixedProfile:
    """One probability vector over actions per player."""

    __slots__ = ("mixes",)

    def __init__(self, mixes):
        vecs = []
        for m in mixes:
            v = np.asarray(m, dtype=float)
            if v.ndim != 1 or v.size < 2:
                raise ValueError("each mix must be a probability vector over >= 2 actions")
            if np.any(v < 0.0):
                raise ValueError("mixing probabilities must be non-negative")
            if abs(v.sum() - 1.0) > PROB_TOL:
                raise ValueError(f"mixing probabilities sum to {v.sum()!r}, not 1")
            v = v.copy()
            v.setflags(write=False)
            vecs.append(v)
        if len(vecs) < 2:
            raise ValueError("a profile needs at least 2 players")
        object.__setattr__(self, "mixes", tuple(vecs))

    def __setattr__(self, name, value):
        raise AttributeError("MixedProfile is immutable")

    def __getitem__(self, player: int) -> np.ndarray:
        return self.mixes[player]

    def __len__(self) -> int:
        return len(self.mixes)

    def __iter__(self):
        return iter(self.mixes)

    def __repr__(self):
        body = ", ".join(np.array2string(m, precision=6) for m in self.mixes)
        return f"MixedProfile({body})"

    @classmethod
    def uniform(cls, game: FiniteGame) -> "MixedProfile":
        return cls([np.full(a, 1.0 / a) for a in game.action_counts])

    @classmethod
    def pure(cls, game: FiniteGame, actions) -> "MixedProfile":
        actions = tuple(actions)
        if len(actions) != game.n_players:
            raise ValueError("one action per player required")
        vecs = []
        for a, count in zip(actions, game.action_counts):
            if not (0 <= a < count):
                raise ValueError(f"action {a} out of range for {count} actions")
            v = np.zeros(count)
            v[a] = 1.0
            vecs.append(v)
        return cls(vecs)

    def replace(self, player: int, mix) -> "MixedProfile":
        vecs = list(self.mixes)
        vecs[player] = mix
        return MixedProfile(vecs)


@dataclass(frozen=True)
class EquilibriumResult:
    """A candidate equilibrium with its certificate: residual is the largest
    payoff any player could gain by a unilateral pure deviation."""

    profile: MixedProfile
    residual: float
    iterations: int
    converged: bool

    def __post_init__(self):
        if self.residual < 0.0:
            raise ValueError("residual must be non-negative")


def _check_player(game: FiniteGame, player: int) -> None:
    if not (0 <= player < game.n_players):
        raise IndexError(f"player {player} out of range for {game.n_players} players")


def _check_profile(game: FiniteGame, profile: MixedProfile) -> None:
    if len(profile) != game.n_players:
        raise ValueError("profile has wrong number of players")
    for m, a in zip(profile, game.action_counts):
        if m.size != a:
            raise ValueError("profile mix length does not match action count")


def eut_utility(game: FiniteGame, player: int, profile: MixedProfile) -> float:
    """Objective expected payoff: the payoff tensor contracted with the full
    joint action distribution."""
    _check_player(game, player)
    _check_profile(game, profile)
    joint = np.array(1.0)
    for m in profile:
        joint = np.multiply.outer(joint, m)
    return float(np.sum(joint * game.payoffs[player]))


def _opponent_weights(
    game: FiniteGame,
    player: int,
    profile: MixedProfile,
    alpha: float,
    renormalize: bool,
    per_opponent: bool,
) -> np.ndarray:
    """Perceived weights over opponent joint actions, flattened in the
    opponents' axis order."""
    if per_opponent:
        w = np.array(1.0)
        for j, m in enumerate(profile):
            if j == player:
                continue
            w = np.multiply.outer(w, prelec_weight(m, alpha))
    else:
        q = np.array(1.0)
        for j, m in enumerate(profile):
            if j == player:
                continue
            q = np.multiply.outer(q, m)
        w = prelec_weight(q, alpha)
    if renormalize:
        total = w.sum()
        if total > 0.0:
            w = w / total
    return w.ravel()


def pure_action_values(
    game: FiniteGame,
    player: int,
    profile: MixedProfile,
    behaviors,
    renormalize: bool = False,
    per_opponent: bool = False,
) -> np.ndarray:
    """Perceived value of each of the player's pure actions against the
    opponents' mixes, under the player's own behavioral profile."""
    _check_player(game, player)
    _check_profile(game, profile)
    b = behaviors[player]
    w = _opponent_weights(game, player, profile, b.weighting.alpha, renormalize, per_opponent)
    framed = frame_value(game.payoffs[player], b.frame)
    own_first = np.moveaxis(framed, player, 0)
    return own_first.reshape(own_first.shape[0], -1) @ w


def pt_utility(
    game: FiniteGame,
    player: int,
    profile: MixedProfile,
    behaviors,
    renormalize: bool = False,
    per_opponent: bool = False,
) -> float:
    """Perceived expected payoff under prospect-theoretic evaluation; equals
    eut_utility when the player's behavior is the EUT profile."""
    vals = pure_action_values(game, player, profile, behaviors, renormalize, per_opponent)
    return float(vals @ profile[player])


def best_response(
    game: FiniteGame,
    player: int,
    profile: MixedProfile,
    behaviors,
    renormalize: bool = False,
    per_opponent: bool = False,
    tie_tol: float = 1e-12,
) -> tuple:
    """Indices of the player's pure actions maximizing perceived value,
    ascending; ties within tie_tol of the maximum are all reported."""
    vals = pure_action_values(game, player, profile, behaviors, renormalize, per_opponent)
    best = vals.max()
    return tuple(int(i) for i in np.flatnonzero(vals >= best - tie_tol))


def equilibrium_residual(
    game: FiniteGame,
    profile: MixedProfile,
    behaviors,
    renormalize: bool = False,
    per_opponent: bool = False,
) -> float:
    """Largest unilateral-improvement gap across players; zero certifies a
    perceived-utility equilibrium."""
    worst = 0.0
    for i in range(game.n_players):
        vals = pure_action_values(game, i, profile, behaviors, renormalize, per_opponent)
        gap = float(vals.max() - vals @ profile[i])
        worst = max(worst, gap)
    return worst


def _eut_behaviors(n: int):
    return [PtProfile.eut()] * n


# ---------------------------------------------------------------------------
# 2x2 solver


def solve_2x2(
    game: FiniteGame,
    behaviors=None,
    renormalize: bool = False,
    per_opponent: bool = False,
    tol: float = 1e-9,
) -> list:
    """All equilibria of a 2-player, 2-action game: pure ones by
    best-response checks, plus the interior mixed one when the perceived
    indifference conditions admit a solution inside (0, 1).

    Each player's mixing probability is pinned by the *opponent's*
    indifference condition. With Prelec weights the condition
    w(q) * A = w(1-q) * B is transcendental, so the root is bracketed and
    refined numerically (the rational case reduces to q = B / (A + B), and
    the weighted-complement form q = w^-1(B / (A + B)) seeds the search).
    Returns [] when no equilibrium certifies within tol; an absent interior
    solution is reported by omission, never fabricated.
    """
    if game.n_players != 2 or game.action_counts != (2, 2):
        raise ValueError("solve_2x2 handles exactly 2 players with 2 actions each")
    if behaviors is None:
        behaviors = _eut_behaviors(2)
    kw = dict(renormalize=renormalize, per_opponent=per_opponent)
    results = []

    for a1, a2 in itertools.product(range(2), range(2)):
        prof = MixedProfile.pure(game, (a1, a2))
        res = equilibrium_residual(game, prof, behaviors, **kw)
        if res <= tol:
            results.append(EquilibriumResult(prof, res, 0, True))

    mix = _interior_2x2(game, behaviors, **kw)
    if mix is not None:
        prof = MixedProfile(mix)
        res = equilibrium_residual(game, prof, behaviors, **kw)
        if res <= tol:
            results.append(EquilibriumResult(prof, res, 0, True))
    return results


def _interior_2x2(game, behaviors, renormalize, per_opponent):
    """Interior mixed equilibrium of a 2x2 game, or None."""
    probs = [None, None]
    for i in (0, 1):
        # player i's indifference fixes the *other* player's mix
        q = _indifference_prob(game, i, behaviors[i], renormalize, per_opponent)
        if q is None or not (0.0 < q < 1.0):
            return None
        probs[1 - i] = np.array([q, 1.0 - q])
    return probs


def _indifference_prob(game, player, behavior, renormalize, per_opponent):
    """Probability q on the opponent's first action making `player`
    indifferent between its two actions, under the player's perception."""
    framed = frame_value(game.payoffs[player], behavior.frame)
    own_first = np.moveaxis(framed, player, 0)
    # A: perceived advantage of own action 0 against opponent action 0,
    # B: perceived advantage of own action 1 against opponent action 1
    a_gap = own_first[0, 0] - own_first[1, 0]
    b_gap = own_first[1, 1] - own_first[0, 1]
    alpha = behavior.weighting.alpha

    def gap(q):
        w = prelec_weight(np.array([q, 1.0 - q]), alpha)
        if renormalize:
            s = w.sum()
            if s > 0.0:
                w = w / s
        return w[0] * a_gap - w[1] * b_gap

    if a_gap == 0.0 and b_gap == 0.0:
        return None  # degenerate: every mix is indifferent, nothing interior to pin
    if alpha == 1.0 and not renormalize:
        total = a_gap + b_gap
        if total == 0.0:
            return None
        q = b_gap / total
        return q if 0.0 < q < 1.0 else None
    lo, hi = gap(0.0), gap(1.0)
    if lo == 0.0 or hi == 0.0 or np.sign(lo) == np.sign(hi):
        return None
    # seed from the weighted-complement closed form, then polish
    total = a_gap + b_gap
    if total != 0.0 and 0.0 < b_gap / total < 1.0:
        seed = prelec_inverse(b_gap / total, alpha)
    else:
        seed = 0.5
    lo_b, hi_b = 0.0, 1.0
    if 0.0 < seed < 1.0 and gap(seed) != 0.0:
        if np.sign(gap(seed)) == np.sign(lo):
            lo_b = seed
        else:
            hi_b = seed
    return float(brentq(gap, lo_b, hi_b, xtol=1e-14, rtol=8.9e-16))


# ---------------------------------------------------------------------------
# n-player damped fixed-point solver


def solve_fixed_point(
    game: FiniteGame,
    behaviors=None,
    init: MixedProfile | None = None,
    step: float = 0.1,
    tol: float = 1e-9,
    max_iter: int = 10000,
    renormalize: bool = False,
    per_opponent: bool = False,
    temperature: float = 0.2,
    temp_decay: float = 0.995,
    temp_floor: float = 1e-3,
) -> EquilibriumResult:
    """Damped best-response iteration: every player's mix moves a fraction
    `step` toward a smoothed best response each round.

    The smoothing is a softmax over perceived action values whose temperature
    follows a fixed geometric schedule; once it falls below temp_floor the
    target hardens to the argmax (lowest index on ties). Stops as soon as the
    unilateral-improvement residual drops to tol; the result always carries
    the final residual, and non-convergence is reported, not raised.
    """
    if behaviors is None:
        behaviors = _eut_behaviors(game.n_players)
    if not (0.0 < step <= 1.0):
        raise ValueError("step must be in (0, 1]")
    profile = init if init is not None else MixedProfile.uniform(game)
    _check_profile(game, profile)
    kw = dict(renormalize=renormalize, per_opponent=per_opponent)

    mixes = [m.copy() for m in profile]
    for iteration in range(max_iter + 1):
        prof = MixedProfile(mixes)
        values = [
            pure_action_values(game, i, prof, behaviors, **kw)
            for i in range(game.n_players)
        ]
        residual = max(
            float(v.max() - v @ m) for v, m in zip(values, mixes)
        )
        residual = max(residual, 0.0)
        if residual <= tol:
            return EquilibriumResult(prof, residual, iteration, True)
        if iteration == max_iter:
            return EquilibriumResult(prof, residual, iteration, False)
        temp = temperature * temp_decay**iteration
        new_mixes = []
        for v, m in zip(values, mixes):
            if temp < temp_floor:
                target = np.zeros_like(m)
                target[int(np.argmax(v))] = 1.0
            else:
                spread = float(v.max() - v.min())
                scale = max(spread, 1e-12) * temp
                z = (v - v.max()) / scale
                e = np.exp(z)
                target = e / e.sum()
            new_mixes.append((1.0 - step) * m + step * target)
        mixes = new_mixes
    raise AssertionError("unreachable")


# ---------------------------------------------------------------------------
# brute-force oracle


def _simplex_grid(n_actions: int, grid: int) -> np.ndarray:
    """All probability vectors over n_actions with entries k/grid."""
    out = []
    for comp in itertools.combinations_with_replacement(range(n_actions), grid):
        v = np.zeros(n_actions)
        for c in comp:
            v[c] += 1.0
        out.append(v / grid)
    return np.array(out)


def grid_enumeration_size(game: FiniteGame, grid: int) -> int:
    size = 1
    for a in game.action_counts:
        size *= math.comb(grid + a - 1, a - 1)
    return size


def brute_force_equilibrium(
    game: FiniteGame,
    behaviors=None,
    grid: int = 100,
    budget: int = 2_000_000,
    renormalize: bool = False,
    per_opponent: bool = False,
) -> list:
    """Approximate equilibria by exhaustive search over a uniform simplex
    grid: returns the profiles whose improvement residual is a local minimum
    among axis neighbors and within grid slack of the global minimum.

    Meant as an independent oracle for small games (<= 3 players, <= 3
    actions); raises BudgetExceededError when the enumeration would exceed
    `budget` profiles.
    """
    if behaviors is None:
        behaviors = _eut_behaviors(game.n_players)
    total = grid_enumeration_size(game, grid)
    if total > budget:
        raise BudgetExceededError(
            f"{total} grid profiles exceed the budget of {budget}"
        )
    grids = [_simplex_grid(a, grid) for a in game.action_counts]
    counts = [g.shape[0] for g in grids]
    kw = dict(renormalize=renormalize, per_opponent=per_opponent)

    if game.n_players == 2:
        residual = _residual_surface_2p(game, behaviors, grids, **kw)
    else:
        residual = np.empty(counts)
        for idx in np.ndindex(*counts):
            prof = MixedProfile([g[i] for g, i in zip(grids, idx)])
            residual[idx] = equilibrium_residual(game, prof, behaviors, **kw)

    minima = _local_minima(residual)
    # a grid cell adjacent to a true equilibrium has residual of order
    # slope * spacing; anything above that is a flat-valley artifact, not an
    # equilibrium the grid can certify
    keep = _grid_slack(game, grid)
    out = []
    for idx in zip(*np.nonzero(minima)):
        if residual[idx] <= keep:
            out.append(MixedProfile([g[i] for g, i in zip(grids, idx)]))
    return out


def _residual_surface_2p(game, behaviors, grids, renormalize, per_opponent):
    """Residual at every grid profile pair, fully vectorized."""
    g1, g2 = grids
    surfaces = []
    for player, (own, opp) in enumerate(((g1, g2), (g2, g1))):
        b = behaviors[player]
        alpha = b.weighting.alpha
        w = prelec_weight(opp, alpha)  # (n_opp, a_opp)
        if renormalize:
            s = w.sum(axis=1, keepdims=True)
            w = np.divide(w, s, out=w.copy(), where=s > 0.0)
        framed = frame_value(game.payoffs[player], b.frame)
        if player == 1:
            framed = framed.T
        vals = w @ framed.T  # (n_opp, a_own): value of each own action
        util = own @ vals.T  # (n_own, n_opp)
        gap = vals.max(axis=1)[None, :] - util
        surfaces.append(gap if player == 0 else gap.T)
    return np.maximum(np.maximum(surfaces[0], surfaces[1]), 0.0)


def _local_minima(residual: np.ndarray) -> np.ndarray:
    """Boolean mask of entries no larger than any axis neighbor."""
    mask = np.ones(residual.shape, dtype=bool)
    for axis in range(residual.ndim):
        fwd = np.ones_like(mask)
        bwd = np.ones_like(mask)
        sl_lo = [slice(None)] * residual.ndim
        sl_hi = [slice(None)] * residual.ndim
        sl_lo[axis] = slice(None, -1)
        sl_hi[axis] = slice(1, None)
        diff_ok_fwd = residual[tuple(sl_lo)] <= residual[tuple(sl_hi)]
        diff_ok_bwd = residual[tuple(sl_hi)] <= residual[tuple(sl_lo)]
        fwd[tuple(sl_lo)] = diff_ok_fwd
        bwd[tuple(sl_hi)] = diff_ok_bwd
        mask &= fwd & bwd
    return mask


def _grid_slack(game: FiniteGame, grid: int) -> float:
    span = float(game.payoffs.max() - game.payoffs.min())
    return max(span, 1.0) * 2.0 / grid


# ---------------------------------------------------------------------------
# plain-text game format

FORMAT_DOC = """\
Plain-text game format:
  players K
  actions n1 n2 ... nK
  then one line per joint action, in lexicographic order of the action tuple
  (last player's action varying fastest), each listing the K players' payoffs.
Blank lines and lines starting with '#' are ignored.
"""


def format_game(game: FiniteGame) -> str:
    lines = [f"players {game.n_players}"]
    lines.append("actions " + " ".join(str(a) for a in game.action_counts))
    for joint in itertools.product(*(range(a) for a in game.action_counts)):
        pays = (game.payoffs[(i, *joint)] for i in range(game.n_players))
        lines.append(" ".join(f"{p:.17g}" for p in pays))
    return "\n".join(lines) + "\n"


def parse_game(text: str) -> FiniteGame:
    rows = [
        line.strip()
        for line in text.splitlines()
        if line.strip() and not line.strip().startswith("#")
    ]
    if len(rows) < 3:
        raise GameFormatError("game file needs a players line, an actions line, and payoffs")
    head = rows[0].split()
    if len(head) != 2 or head[0] != "players":
        raise GameFormatError(f"expected 'players K', got {rows[0]!r}")
    try:
        n = int(head[1])
    except ValueError as exc:
        raise GameFormatError(f"bad player count {head[1]!r}") from exc
    acts = rows[1].split()
    if not acts or acts[0] != "actions" or len(acts) != n + 1:
        raise GameFormatError(f"expected 'actions n1 ... n{n}', got {rows[1]!r}")
    try:
        counts = [int(a) for a in acts[1:]]
    except ValueError as exc:
        raise GameFormatError(f"bad action counts in {rows[1]!r}") from exc
    joints = list(itertools.product(*(range(a) for a in counts)))
    body = rows[2:]
    if len(body) != len(joints):
        raise GameFormatError(
            f"expected {len(joints)} payoff lines, found {len(body)}"
        )
    payoffs = np.zeros((n, *counts))
    for line_no, (joint, line) in enumerate(zip(joints, body), start=3):
        parts = line.split()
        if len(parts) != n:
            raise GameFormatError(
                f"line {line_no}: expected {n} payoffs, found {len(parts)}"
            )
        try:
            vals = [float(p) for p in parts]
        except ValueError as exc:
            raise GameFormatError(f"line {line_no}: bad payoff in {line!r}") from exc
        for i, v in enumerate(vals):
            payoffs[(i, *joint)] = v
    return FiniteGame(payoffs)


def save_game(game: FiniteGame, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_game(game))


def load_game(path) -> FiniteGame:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_game(fh.read())
