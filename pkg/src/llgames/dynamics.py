"""Asynchronous log-linear learning over binary-action games.

One uniformly chosen agent per step resamples its action with probability
proportional to ``exp(payoff / tau)``; with two actions this is a
logistic in the payoff difference. The module provides the one-step
kernel, path probabilities, exact evaluation of time marginals (by path
enumeration or by a forward recursion lifted to profile x statistic
states), Monte Carlo simulation with per-replica seed streams, and the
stationary/Gibbs stationary laws for static potential games.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from .errors import (
    DimensionError,
    EnumerationBoundError,
    MissingStatisticError,
    NumericError,
    ParameterError,
)
from .games import (
    DEFAULT_PATH_CAP,
    DEFAULT_PLAYER_CAP,
    HistoryGame,
    PotentialGame,
    Profile,
    ProfilePath,
    all_ones,
    check_path,
    check_profile,
    enumerate_profiles,
    one_step_neighbors,
    profile_index,
    set_action,
    static_history_game,
)
from .rng import child_seed, make_rng

#: Kernel rows and couplings must sum to 1 within this tolerance.
KERNEL_TOL = 1e-12

#: Totals of path measures must match 1 within this tolerance.
PATH_MASS_TOL = 1e-10

#: Total-variation agreement required between the solved stationary law
#: and the Gibbs law on exact potential games.
TV_TOL = 1e-8

#: Residual bound for the dense stationary solve.
STATIONARY_RESIDUAL_TOL = 1e-12

#: Arguments to exp() are clamped to +-709 to avoid overflow; the clamp
#: only activates where the logistic is already 0 or 1 to machine
#: precision.
EXP_CLAMP = 709.0

#: Dense linear solves enumerate the full 2^N x 2^N kernel; refuse past
#: this many agents unless the caller raises the cap.
DEFAULT_DENSE_CAP = 10


def check_temperature(tau: float) -> float:
    if not (isinstance(tau, (int, float)) and math.isfinite(tau) and tau > 0):
        raise ParameterError(f"temperature must be finite and positive, got {tau!r}")
    return float(tau)


def logistic(x: float) -> float:
    """1 / (1 + exp(-x)) with the argument clamped to +-709."""
    if math.isnan(x):
        raise NumericError("logistic of NaN")
    x = min(max(x, -EXP_CLAMP), EXP_CLAMP)
    return 1.0 / (1.0 + math.exp(-x))


# ---------------------------------------------------------------------------
# flip probabilities and the one-step kernel


def _finite(u: float, what: str) -> float:
    if not math.isfinite(u):
        raise NumericError(f"non-finite {what}: {u!r}")
    return u


def update_prob(game, context, agent: int, tau: float) -> float:
    """Probability that ``agent`` resamples to action 1.

    ``context`` is the current profile for a static game, or the full
    history (a nonempty tuple of profiles) for a history game; in both
    cases the other agents' actions are read off the latest profile.
    """
    tau = check_temperature(tau)
    if isinstance(game, PotentialGame):
        a = check_profile(context, game.n_players)
        if not 0 <= agent < game.n_players:
            raise DimensionError(f"agent {agent} out of range")
        du = _finite(game.utility(agent, set_action(a, agent, 1)), "payoff") - _finite(
            game.utility(agent, set_action(a, agent, 0)), "payoff"
        )
        return logistic(du / tau)
    if isinstance(game, HistoryGame):
        path = check_path(context, game.n_players)
        if not 0 <= agent < game.n_players:
            raise DimensionError(f"agent {agent} out of range")
        du = _finite(game.utility(path, agent, 1), "payoff") - _finite(
            game.utility(path, agent, 0), "payoff"
        )
        return logistic(du / tau)
    raise ParameterError(f"unsupported game type {type(game).__name__}")


def flip_probabilities(game, context, tau: float) -> list[float]:
    """Per-agent probabilities of resampling to action 1.

    Equivalent to calling :func:`update_prob` for every agent, but folds
    a history game's sufficient statistic only once.
    """
    tau = check_temperature(tau)
    if isinstance(game, PotentialGame):
        a = check_profile(context, game.n_players)
        out = []
        for i in range(game.n_players):
            du = _finite(game.utility(i, set_action(a, i, 1)), "payoff") - _finite(
                game.utility(i, set_action(a, i, 0)), "payoff"
            )
            out.append(logistic(du / tau))
        return out
    if isinstance(game, HistoryGame):
        path = check_path(context, game.n_players)
        last = path[-1]
        if game.statistic is not None:
            stat = game.path_statistic(path)
            pay = game.statistic.payoff
            out = []
            for i in range(game.n_players):
                du = _finite(pay(stat, last, i, 1), "payoff") - _finite(
                    pay(stat, last, i, 0), "payoff"
                )
                out.append(logistic(du / tau))
            return out
        out = []
        for i in range(game.n_players):
            du = _finite(game.utility(path, i, 1), "payoff") - _finite(
                game.utility(path, i, 0), "payoff"
            )
            out.append(logistic(du / tau))
        return out
    raise ParameterError(f"unsupported game type {type(game).__name__}")


@dataclass(frozen=True)
class KernelRow:
    """One row of the learning kernel: a sparse distribution supported on
    the current profile and its one-flip neighbors."""

    base: Profile
    probs: dict

    def __post_init__(self):
        check_profile(self.base)
        allowed = {self.base, *one_step_neighbors(self.base)}
        total = 0.0
        for a, p in self.probs.items():
            if a not in allowed:
                raise ParameterError(f"kernel row supported outside one flip: {a!r}")
            if not (math.isfinite(p) and p >= 0.0):
                raise NumericError(f"bad kernel mass {p!r} at {a!r}")
            total += p
        if abs(total - 1.0) > KERNEL_TOL:
            raise NumericError(f"kernel row sums to {total!r}")

    def prob(self, a: Profile) -> float:
        return self.probs.get(a, 0.0)


def step_kernel(game, context, tau: float) -> KernelRow:
    """The learning kernel row out of the current position.

    Mass (1/N) * P_i(flipped action) moves to each one-flip neighbor, and
    the self-loop collects (1/N) * sum_j P_j(current action).
    """
    ones_p = flip_probabilities(game, context, tau)
    base = context if isinstance(game, PotentialGame) else context[-1]
    n = len(base)
    probs: dict = {}
    stay = 0.0
    for i, p1 in enumerate(ones_p):
        flipped = set_action(base, i, 1 - base[i])
        move = p1 if base[i] == 0 else 1.0 - p1
        probs[flipped] = move / n
        stay += (p1 if base[i] == 1 else 1.0 - p1) / n
    # base may coincide with no neighbor (profiles differ from all flips)
    probs[base] = probs.get(base, 0.0) + stay
    return KernelRow(base, probs)


# ---------------------------------------------------------------------------
# initial distributions


@dataclass(frozen=True)
class InitialDistribution:
    """A distribution over action profiles; masses must be nonnegative
    and sum to 1 within 1e-12."""

    n_players: int
    probs: dict

    def __post_init__(self):
        total = 0.0
        for a, p in self.probs.items():
            check_profile(a, self.n_players)
            if not (math.isfinite(p) and p >= 0.0):
                raise ParameterError(f"bad probability {p!r} at {a!r}")
            total += p
        if abs(total - 1.0) > 1e-12:
            raise ParameterError(f"initial distribution sums to {total!r}")

    @classmethod
    def uniform(cls, n_players: int) -> "InitialDistribution":
        size = 1 << n_players
        return cls(n_players, {a: 1.0 / size for a in enumerate_profiles(n_players)})

    @classmethod
    def point(cls, a: Profile) -> "InitialDistribution":
        check_profile(a)
        return cls(len(a), {a: 1.0})

    def prob(self, a: Profile) -> float:
        return self.probs.get(a, 0.0)

    def items_canonical(self) -> list[tuple[Profile, float]]:
        return sorted(self.probs.items(), key=lambda kv: profile_index(kv[0]))

    def sample(self, u: float) -> Profile:
        """Inverse-CDF draw walking profiles in packed-index order."""
        if not 0.0 <= u < 1.0:
            raise ParameterError(f"uniform draw must lie in [0, 1), got {u!r}")
        cum = 0.0
        last = None
        for a, p in self.items_canonical():
            if p <= 0.0:
                continue
            cum += p
            last = a
            if u < cum:
                return a
        if last is None:
            raise ParameterError("empty distribution")
        return last  # u fell in the closing rounding gap


# ---------------------------------------------------------------------------
# path probabilities


def path_prob(game, init: InitialDistribution, path: ProfilePath, tau: float) -> float:
    """Probability of observing ``path``: the initial mass of its first
    profile times the kernel steps along it."""
    n = game.n_players
    check_path(path, n)
    if init.n_players != n:
        raise DimensionError("initial distribution and game disagree on player count")
    p = init.prob(path[0])
    static = isinstance(game, PotentialGame)
    for t in range(1, len(path)):
        if p == 0.0:
            return 0.0
        context = path[t - 1] if static else path[:t]
        p *= step_kernel(game, context, tau).prob(path[t])
    return p


def profile_marginal(
    game: PotentialGame,
    init: InitialDistribution,
    tau: float,
    horizon: int,
    mask: Callable[[int, Profile], bool] | None = None,
) -> dict:
    """Distribution of the profile at time ``horizon`` for a static game,
    computed by iterating kernel rows.

    ``mask(t, a)`` (t = 1-based time) optionally restricts the walk: mass
    on profiles failing the mask is dropped at every time, so the result
    sums to the probability that the whole trajectory passes the mask.
    """
    if horizon < 1:
        raise ParameterError(f"horizon must be >= 1, got {horizon}")
    dist = {a: p for a, p in init.probs.items() if p > 0.0}
    if mask is not None:
        dist = {a: p for a, p in dist.items() if mask(1, a)}
    rows: dict = {}
    for t in range(2, horizon + 1):
        new: dict = {}
        for a, m in dist.items():
            row = rows.get(a)
            if row is None:
                row = rows[a] = step_kernel(game, a, tau)
            for b, p in row.probs.items():
                if p > 0.0:
                    new[b] = new.get(b, 0.0) + m * p
        if mask is not None:
            new = {a: p for a, p in new.items() if mask(t, a)}
        dist = new
    return dist


# ---------------------------------------------------------------------------
# exact evaluation lifted to (profile, statistic) states


def lifted_forward(
    game: HistoryGame,
    init: InitialDistribution,
    tau: float,
    horizon: int,
    mask: Callable[[int, Profile], bool] | None = None,
) -> dict:
    """Forward recursion on (profile, statistic) pairs.

    Returns the joint mass over lifted states at time ``horizon``. Needs
    a finite sufficient statistic. ``mask`` restricts the walk as in
    :func:`profile_marginal`.
    """
    if game.statistic is None or not game.statistic.finite:
        raise MissingStatisticError(
            f"game {game.label!r} has no finite sufficient statistic; "
            "lifted evaluation is unavailable"
        )
    if horizon < 1:
        raise ParameterError(f"horizon must be >= 1, got {horizon}")
    tau = check_temperature(tau)
    stat = game.statistic
    n = game.n_players

    advance_memo: dict = {}

    def advance(sig, a: Profile):
        key = (sig, a)
        out = advance_memo.get(key)
        if out is None:
            out = advance_memo[key] = stat.advance(sig, a)
        return out

    flip_memo: dict = {}

    def flips(a: Profile, sig) -> list[float]:
        key = (a, sig)
        out = flip_memo.get(key)
        if out is None:
            out = flip_memo[key] = [
                logistic(
                    (
                        _finite(stat.payoff(sig, a, i, 1), "payoff")
                        - _finite(stat.payoff(sig, a, i, 0), "payoff")
                    )
                    / tau
                )
                for i in range(n)
            ]
        return out

    dist: dict = {}
    for a, p in init.probs.items():
        if p > 0.0 and (mask is None or mask(1, a)):
            key = (a, advance(stat.start, a))
            dist[key] = dist.get(key, 0.0) + p

    for t in range(2, horizon + 1):
        new: dict = {}
        for (a, sig), m in dist.items():
            ones_p = flips(a, sig)
            stay = 0.0
            for i, p1 in enumerate(ones_p):
                move = (p1 if a[i] == 0 else 1.0 - p1) / n
                stay += (p1 if a[i] == 1 else 1.0 - p1) / n
                if move > 0.0:
                    b = set_action(a, i, 1 - a[i])
                    if mask is None or mask(t, b):
                        key = (b, advance(sig, b))
                        new[key] = new.get(key, 0.0) + m * move
            if stay > 0.0 and (mask is None or mask(t, a)):
                key = (a, advance(sig, a))
                new[key] = new.get(key, 0.0) + m * stay
        dist = new
    return dist


# ---------------------------------------------------------------------------
# simulation


@dataclass(frozen=True)
class SimRun:
    """A single simulated trajectory and the context needed to replay it."""

    path: ProfilePath
    seed: int
    tau: float
    label: str = ""


def simulate(
    game, init: InitialDistribution, tau: float, horizon: int, seed: int, label: str = ""
) -> SimRun:
    """Simulate one trajectory of ``horizon`` profiles.

    Randomness contract (replaying the same seed reproduces the path bit
    for bit): the first uniform draws the initial profile through the
    inverse CDF in packed-index order; each transition then consumes one
    uniform to select the agent as floor(u * N) and a second compared
    against the agent's flip-to-1 probability.
    """
    tau = check_temperature(tau)
    if horizon < 1:
        raise ParameterError(f"horizon must be >= 1, got {horizon}")
    n = game.n_players
    if init.n_players != n:
        raise DimensionError("initial distribution and game disagree on player count")
    rng = make_rng(seed)
    current = init.sample(rng.random())
    path = [current]
    is_history = isinstance(game, HistoryGame)
    stat = game.statistic if is_history else None
    sig = stat.advance(stat.start, current) if stat is not None else None
    for _ in range(horizon - 1):
        u_agent = rng.random()
        u_act = rng.random()
        agent = min(int(u_agent * n), n - 1)
        if stat is not None:
            du = stat.payoff(sig, current, agent, 1) - stat.payoff(sig, current, agent, 0)
            p1 = logistic(du / tau)
        elif is_history:
            p1 = update_prob(game, tuple(path), agent, tau)
        else:
            p1 = update_prob(game, current, agent, tau)
        action = 1 if u_act < p1 else 0
        current = set_action(current, agent, action)
        path.append(current)
        if stat is not None:
            sig = stat.advance(sig, current)
    return SimRun(tuple(path), seed, tau, label)


# ---------------------------------------------------------------------------
# probability of the all-ones profile at a time


@dataclass(frozen=True)
class ProbEstimate:
    value: float
    stderr: float | None
    mode: str


MODES = ("exact-paths", "exact-lifted", "monte-carlo")


def _paths_ending_at(
    n: int, horizon: int, last: Profile, cap: int
) -> Iterator[ProfilePath]:
    total = (1 << n) ** horizon
    if total > cap:
        raise EnumerationBoundError(f"{total} paths exceed the cap of {cap}")
    profiles = enumerate_profiles(n)
    if horizon == 1:
        yield (last,)
        return
    for prefix in itertools.product(profiles, repeat=horizon - 1):
        yield prefix + (last,)


def prob_all_ones_at(
    game,
    init: InitialDistribution,
    tau: float,
    horizon: int,
    mode: str,
    *,
    reps: int | None = None,
    seed: int | None = None,
    path_cap: int = DEFAULT_PATH_CAP,
) -> ProbEstimate:
    """Probability that the profile at time ``horizon`` is all ones.

    ``exact-paths`` sums path probabilities over every history ending in
    the all-ones profile. ``exact-lifted`` runs the forward recursion on
    (profile, statistic) states; static games are lifted with a trivial
    statistic. ``monte-carlo`` simulates ``reps`` replicas, replica ``r``
    on the child stream ``child_seed(seed, "replica", r)``, and reports
    the empirical frequency with its binomial standard error.
    """
    if mode not in MODES:
        raise ParameterError(f"mode must be one of {MODES}, got {mode!r}")
    n = game.n_players
    top = all_ones(n)
    if mode == "exact-paths":
        total = 0.0
        for path in _paths_ending_at(n, horizon, top, path_cap):
            total += path_prob(game, init, path, tau)
        return ProbEstimate(total, None, mode)
    if mode == "exact-lifted":
        hist = game if isinstance(game, HistoryGame) else static_history_game(game)
        dist = lifted_forward(hist, init, tau, horizon)
        value = sum(m for (a, _sig), m in dist.items() if a == top)
        return ProbEstimate(value, None, mode)
    if reps is None or reps < 1 or seed is None:
        raise ParameterError("monte-carlo mode needs reps >= 1 and a seed")
    hits = 0
    for r in range(reps):
        run = simulate(game, init, tau, horizon, child_seed(seed, "replica", r))
        hits += run.path[-1] == top
    p = hits / reps
    stderr = math.sqrt(p * (1.0 - p) / reps)
    return ProbEstimate(p, stderr, mode)


# ---------------------------------------------------------------------------
# stationary laws


def _dense_kernel(game: PotentialGame, tau: float, cap: int) -> tuple[list[Profile], np.ndarray]:
    if game.n_players > cap:
        raise EnumerationBoundError(
            f"dense kernel for {game.n_players} players exceeds the cap of {cap}"
        )
    profiles = enumerate_profiles(game.n_players)
    size = len(profiles)
    P = np.zeros((size, size))
    for a in profiles:
        row = step_kernel(game, a, tau)
        for b, p in row.probs.items():
            P[profile_index(a), profile_index(b)] = p
    return profiles, P


def stationary_distribution(
    game: PotentialGame, tau: float, cap: int = DEFAULT_DENSE_CAP
) -> InitialDistribution:
    """Stationary law of the learning chain, by a dense linear solve.

    Solves pi P = pi with the normalization sum(pi) = 1 in a stacked
    least-squares system and enforces a residual below 1e-12.
    """
    tau = check_temperature(tau)
    profiles, P = _dense_kernel(game, tau, cap)
    size = len(profiles)
    A = np.vstack([P.T - np.eye(size), np.ones((1, size))])
    b = np.zeros(size + 1)
    b[-1] = 1.0
    pi, *_ = np.linalg.lstsq(A, b, rcond=None)
    if np.any(pi < -1e-12):
        raise NumericError(f"stationary solve produced negative mass {pi.min()!r}")
    pi = np.clip(pi, 0.0, None)
    pi = pi / pi.sum()
    residual = float(np.max(np.abs(pi @ P - pi)))
    if residual > STATIONARY_RESIDUAL_TOL:
        raise NumericError(f"stationary residual {residual!r} exceeds {STATIONARY_RESIDUAL_TOL}")
    return InitialDistribution(game.n_players, {a: float(pi[profile_index(a)]) for a in profiles})


def gibbs_distribution(
    potential: Callable[[Profile], float],
    n_players: int,
    tau: float,
    cap: int = DEFAULT_PLAYER_CAP,
) -> InitialDistribution:
    """Distribution proportional to exp(potential / tau), computed with a
    max shift for overflow safety."""
    tau = check_temperature(tau)
    profiles = enumerate_profiles(n_players, cap)
    values = [potential(a) for a in profiles]
    if any(not math.isfinite(v) for v in values):
        raise ParameterError("potential is not finite on the full profile space")
    top = max(values)
    weights = [math.exp(max((v - top) / tau, -EXP_CLAMP)) for v in values]
    z = sum(weights)
    return InitialDistribution(n_players, {a: w / z for a, w in zip(profiles, weights)})


def total_variation(p: InitialDistribution, q: InitialDistribution) -> float:
    if p.n_players != q.n_players:
        raise DimensionError("distributions over different player counts")
    support = set(p.probs) | set(q.probs)
    return 0.5 * sum(abs(p.prob(a) - q.prob(a)) for a in support)


# ---------------------------------------------------------------------------
# temperature sweeps


@dataclass(frozen=True)
class SweepRow:
    tau: float
    horizon: int
    mode: str
    estimate: float
    stderr: float | None
    seed: int


def stability_sweep(
    game,
    init: InitialDistribution,
    schedule: list[float],
    horizon: int,
    mode: str,
    seed: int,
    *,
    reps: int | None = None,
    path_cap: int = DEFAULT_PATH_CAP,
) -> list[SweepRow]:
    """Evaluate the all-ones probability across a temperature schedule.

    Every row records the child seed derived for its position, whether or
    not the mode consumed randomness.
    """
    if not schedule:
        raise ParameterError("temperature schedule is empty")
    for tau in schedule:
        check_temperature(tau)
    rows = []
    for k, tau in enumerate(schedule):
        row_seed = child_seed(seed, "sweep-position", k)
        est = prob_all_ones_at(
            game, init, tau, horizon, mode, reps=reps, seed=row_seed, path_cap=path_cap
        )
        rows.append(SweepRow(tau, horizon, mode, est.value, est.stderr, row_seed))
    return rows
