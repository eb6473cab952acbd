"""Susceptible-infected-susceptible dynamics coupled to a coordination game.

A scalar mean-field epidemic ``ds/dt = (1 - s)(gamma - beta * s)`` runs
between learning updates; the infection pressure ``beta`` is the average
of per-agent rates (``beta1`` for agents playing the cautious action 1,
``beta0`` otherwise), and each agent's payoff for caution scales with
the current infected fraction ``I = 1 - s``. The module provides the
hybrid simulator (scalar and replica-vectorized paths share one numpy
engine, so a single run is the one-replica case of a batch), the
invariant-set check for ``s <= gamma / beta1``, the frozen-infection
reference game, payoff bounds for alignment certification, and the
temperature-sweep occupancy experiment.
"""

from __future__ import annotations

import hashlib
import json
import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    DimensionError,
    EnumerationBoundError,
    NumericError,
    ParameterError,
)
from .games import (
    Graph,
    HistoryGame,
    PotentialGame,
    Profile,
    SufficientStatistic,
    UtilityBounds,
    check_profile,
    gcg_game,
    index_profile,
    potential_argmax,
    profile_index,
)
from .rng import child_seed, make_rng

#: Slack added to the invariant level when testing s <= gamma/beta1; covers
#: integrator rounding only, the continuous dynamics never leave the set.
INVARIANCE_EPS = 1e-9

#: Default grid resolution for the discretized susceptible fraction.
DEFAULT_GRID_BINS = 10_000

#: The replica engine tabulates neighbor counts over all 2^N profiles;
#: refuse graphs past this many nodes.
BATCH_NODE_CAP = 16

_EXP_CLAMP = 709.0


# ---------------------------------------------------------------------------
# configuration and state


@dataclass(frozen=True)
class SisgcgConfig:
    """Parameters of the coupled epidemic / coordination model.

    ``beta1 <= beta0``: caution cannot raise the infection rate. Equality
    is allowed as a degenerate case in which actions stop influencing the
    epidemic (useful as a pure-SIS control), so the interesting regime is
    the strict inequality.
    """

    graph: Graph
    gamma: float
    beta0: float
    beta1: float
    q: float
    s0: float
    dt: float = 0.1
    ode_substeps: int = 10

    def __post_init__(self):
        if not isinstance(self.graph, Graph):
            raise ParameterError(f"graph must be a Graph, got {type(self.graph).__name__}")
        for name in ("gamma", "beta0", "beta1", "q", "s0", "dt"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v)):
                raise ParameterError(f"{name} must be a finite number, got {v!r}")
        if self.gamma <= 0:
            raise ParameterError(f"gamma must be positive, got {self.gamma!r}")
        if not 0 < self.beta1 <= self.beta0:
            raise ParameterError(
                f"need 0 < beta1 <= beta0, got beta1={self.beta1!r}, beta0={self.beta0!r}"
            )
        if not 0 < self.q <= 1:
            raise ParameterError(f"q must lie in (0, 1], got {self.q!r}")
        if not 0 <= self.s0 < 1:
            raise ParameterError(
                f"s0 must lie in [0, 1) so the infection can act, got {self.s0!r}"
            )
        if self.dt <= 0:
            raise ParameterError(f"dt must be positive, got {self.dt!r}")
        if not (isinstance(self.ode_substeps, int) and self.ode_substeps >= 1):
            raise ParameterError(f"ode_substeps must be an int >= 1, got {self.ode_substeps!r}")

    @property
    def invariant_level(self) -> float:
        """Ceiling gamma/beta1 of the forward-invariant susceptible band."""
        return self.gamma / self.beta1

    def digest(self) -> str:
        doc = {
            "n_nodes": self.graph.n_nodes,
            "edges": sorted(self.graph.edges),
            "gamma": self.gamma,
            "beta0": self.beta0,
            "beta1": self.beta1,
            "q": self.q,
            "s0": self.s0,
            "dt": self.dt,
            "ode_substeps": self.ode_substeps,
        }
        blob = json.dumps(doc, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode("ascii")).hexdigest()


@dataclass(frozen=True)
class EpidemicState:
    s: float
    profile: Profile
    t: float = 0.0

    def __post_init__(self):
        if not (isinstance(self.s, (int, float)) and math.isfinite(self.s) and 0 <= self.s <= 1):
            raise ParameterError(f"susceptible fraction must lie in [0, 1], got {self.s!r}")
        check_profile(self.profile)
        if not (isinstance(self.t, (int, float)) and math.isfinite(self.t) and self.t >= 0):
            raise ParameterError(f"time must be finite and >= 0, got {self.t!r}")

    @property
    def infected(self) -> float:
        return 1.0 - self.s


# ---------------------------------------------------------------------------
# the epidemic leg


def beta_of_profile(a: Profile, beta0: float, beta1: float) -> float:
    """Population infection rate: the mean of per-agent rates."""
    check_profile(a)
    ones = sum(a)
    n = len(a)
    return (ones * beta1 + (n - ones) * beta0) / n


def _drift(s: float, beta: float, gamma: float) -> float:
    return (1.0 - s) * (gamma - beta * s)


def sis_step(s: float, beta: float, gamma: float, h: float) -> float:
    """One classical fourth-order Runge-Kutta step, clamped to [0, 1]."""
    if not 0 <= s <= 1:
        raise ParameterError(f"susceptible fraction must lie in [0, 1], got {s!r}")
    if h <= 0:
        raise ParameterError(f"step size must be positive, got {h!r}")
    k1 = _drift(s, beta, gamma)
    k2 = _drift(s + 0.5 * h * k1, beta, gamma)
    k3 = _drift(s + 0.5 * h * k2, beta, gamma)
    k4 = _drift(s + h * k3, beta, gamma)
    out = s + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    if not math.isfinite(out):
        raise NumericError(f"integrator produced {out!r} from s={s!r}, beta={beta!r}")
    return min(max(out, 0.0), 1.0)


def integrate_susceptible(
    s: float, beta: float, gamma: float, dt: float, substeps: int
) -> float:
    """Integrate one inter-update interval with beta held constant."""
    if substeps < 1:
        raise ParameterError(f"substeps must be >= 1, got {substeps}")
    h = dt / substeps
    for _ in range(substeps):
        s = sis_step(s, beta, gamma, h)
    return s


def closed_form_susceptible(s0: float, beta: float, gamma: float, t: float) -> float:
    """Exact solution with constant beta, for integrator validation.

    The flow has equilibria at s = 1 and s = gamma/beta; the ratio
    w = (gamma - beta*s)/(1 - s) evolves as w0 * exp((gamma - beta) t).
    """
    if not 0 <= s0 <= 1:
        raise ParameterError(f"susceptible fraction must lie in [0, 1], got {s0!r}")
    if s0 == 1.0:
        return 1.0
    if beta == gamma:
        # ds/dt = gamma (1 - s)^2
        return min(max(1.0 - 1.0 / (1.0 / (1.0 - s0) + gamma * t), 0.0), 1.0)
    w = (gamma - beta * s0) / (1.0 - s0) * math.exp((gamma - beta) * t)
    if w == beta:
        raise NumericError("closed form degenerates at w == beta")
    return min(max((gamma - w) / (beta - w), 0.0), 1.0)


# ---------------------------------------------------------------------------
# payoffs


def sisgcg_utility(state: EpidemicState, i: int, action: int, graph: Graph, q: float) -> float:
    """Payoff of ``action`` for agent ``i`` against ``state.profile``.

    Caution pays ``q + I`` per cautious neighbor with ``I`` the current
    infected fraction; the careless action pays 1 per careless neighbor.
    """
    check_profile(state.profile, graph.n_nodes)
    if not 0 <= i < graph.n_nodes:
        raise DimensionError(f"agent {i} out of range")
    if action not in (0, 1):
        raise ParameterError(f"action must be 0 or 1, got {action!r}")
    nbrs = graph.neighbors(i)
    n1 = sum(state.profile[j] for j in nbrs)
    if action == 1:
        return n1 * (q + state.infected)
    return float(len(nbrs) - n1)


def frozen_infection_game(config: SisgcgConfig, level: float | None = None) -> PotentialGame:
    """Static coordination game with the infected fraction frozen.

    The default freeze level gamma/beta1 gives utilities bit-identical to
    the matching-bonus coordination game on the same graph.
    """
    if level is None:
        level = config.invariant_level
    return gcg_game(config.graph, config.q, level)


def reference_gcg(config: SisgcgConfig) -> PotentialGame:
    """The comparison game for alignment: infection frozen at gamma/beta1.

    Warns when the cautious convention is not the strict potential
    maximizer (q + gamma/beta1 <= 1) and when the epidemic would die out
    anyway (beta1 <= gamma, so freezing I at gamma/beta1 >= 1 is vacuous).
    """
    bonus = config.invariant_level
    if config.q + bonus <= 1:
        warnings.warn(
            f"q + gamma/beta1 = {config.q + bonus!r} <= 1: the all-ones profile "
            "is not the strict potential maximizer of the reference game",
            stacklevel=2,
        )
    if config.beta1 <= config.gamma:
        warnings.warn(
            f"beta1/gamma = {config.beta1 / config.gamma!r} <= 1: the epidemic dies "
            "out and the frozen infection level is vacuous",
            stacklevel=2,
        )
    game = gcg_game(config.graph, config.q, bonus)
    if config.q + bonus > 1 and config.graph.n_nodes <= 12:
        top = potential_argmax(game)
        if top != {(1,) * config.graph.n_nodes}:
            raise NumericError(f"reference game argmax is {sorted(top)!r}, not the all-ones profile")
    return game


def alignment_bounds(config: SisgcgConfig, one_shift: float = 0.0) -> UtilityBounds:
    """Payoff bounds valid once s has entered [0, gamma/beta1].

    Inside the invariant band the infected fraction satisfies
    I >= 1 - gamma/beta1, which lower-bounds the cautious payoff; the
    careless payoff has no epidemic dependence, so its bound is exact.
    """
    floor_infected = 1.0 - config.invariant_level
    graph, q = config.graph, config.q

    def one_lower(i: int, last: Profile) -> float:
        nbrs = graph.neighbors(i)
        n1 = sum(last[j] for j in nbrs)
        return n1 * (q + floor_infected) + one_shift

    def zero_upper(i: int, last: Profile) -> float:
        nbrs = graph.neighbors(i)
        return float(len(nbrs) - sum(last[j] for j in nbrs))

    return UtilityBounds(one_lower, zero_upper)


# ---------------------------------------------------------------------------
# the history game (continuous or grid statistic)


def snap_to_grid(s: float, n_bins: int) -> int:
    """Index of the grid point nearest to ``s`` (ties round up)."""
    if n_bins < 2:
        raise ParameterError(f"need at least 2 grid points, got {n_bins}")
    k = int(math.floor(s * (n_bins - 1) + 0.5))
    return min(max(k, 0), n_bins - 1)


def grid_value(k: int, n_bins: int) -> float:
    if not 0 <= k < n_bins:
        raise ParameterError(f"grid index {k} out of range for {n_bins} bins")
    return k / (n_bins - 1)


def sisgcg_history_game(
    config: SisgcgConfig, grid_bins: int | None = None, one_shift: float = 0.0
) -> HistoryGame:
    """The coupled model as a history-dependent game.

    The sufficient statistic is the susceptible fraction after the
    history's epidemic legs: exact as a float by default, or snapped to a
    uniform grid of ``grid_bins`` points (then finitely many values, so
    lifted exact evaluation applies; the snap is a modeling approximation
    whose error compounds over long horizons). ``one_shift`` adds a
    constant to every cautious payoff; it exists to let tests plant
    alignment violations, and is zero in the actual model.
    """
    graph = config.graph
    n = graph.n_nodes
    q = config.q
    if not (isinstance(one_shift, (int, float)) and math.isfinite(one_shift)):
        raise ParameterError(f"one_shift must be finite, got {one_shift!r}")

    def pay(s: float, last: Profile, i: int, action: int) -> float:
        if action not in (0, 1):
            raise ParameterError(f"action must be 0 or 1, got {action!r}")
        nbrs = graph.neighbors(i)
        n1 = sum(last[j] for j in nbrs)
        if action == 1:
            return n1 * (q + (1.0 - s)) + one_shift
        return float(len(nbrs) - n1)

    if grid_bins is None:
        def advance(s, a: Profile):
            return integrate_susceptible(
                s, beta_of_profile(a, config.beta0, config.beta1), config.gamma,
                config.dt, config.ode_substeps,
            )

        stat = SufficientStatistic(
            start=config.s0,
            advance=advance,
            payoff=lambda s, last, i, action: pay(s, last, i, action),
            finite=False,
        )
        label = f"sisgcg(n={n},q={q!r})"
    else:
        if not (isinstance(grid_bins, int) and grid_bins >= 2):
            raise ParameterError(f"grid_bins must be an int >= 2, got {grid_bins!r}")
        bins = grid_bins
        step_memo: dict = {}

        def advance_grid(k: int, a: Profile) -> int:
            ones = sum(a)
            out = step_memo.get((k, ones))
            if out is None:
                beta = (ones * config.beta1 + (len(a) - ones) * config.beta0) / len(a)
                s = integrate_susceptible(
                    grid_value(k, bins), beta, config.gamma, config.dt, config.ode_substeps
                )
                out = step_memo[(k, ones)] = snap_to_grid(s, bins)
            return out

        stat = SufficientStatistic(
            start=snap_to_grid(config.s0, bins),
            advance=advance_grid,
            payoff=lambda k, last, i, action: pay(grid_value(k, bins), last, i, action),
            finite=True,
        )
        label = f"sisgcg(n={n},q={q!r},grid={bins})"
    if one_shift:
        label += f"[shift={one_shift!r}]"

    statistic = stat

    def utility(path, i: int, action: int) -> float:
        sig = statistic.start
        for a in path:
            check_profile(a, n)
            sig = statistic.advance(sig, a)
        return statistic.payoff(sig, path[-1], i, action)

    return HistoryGame(n, utility, statistic, label=label)


# ---------------------------------------------------------------------------
# the shared numpy engine


@lru_cache(maxsize=8)
def _graph_tables(key):
    """Neighbor-count and popcount tables over all packed profiles."""
    n_nodes, edges = key
    if n_nodes > BATCH_NODE_CAP:
        raise EnumerationBoundError(
            f"replica engine tabulates 2^{n_nodes} profiles; cap is {BATCH_NODE_CAP} nodes"
        )
    adj_masks = [0] * n_nodes
    deg = np.zeros(n_nodes, dtype=np.int64)
    for i, j in edges:
        adj_masks[i] |= 1 << j
        adj_masks[j] |= 1 << i
        deg[i] += 1
        deg[j] += 1
    size = 1 << n_nodes
    masks = np.arange(size, dtype=np.int64)
    pop = np.array([bin(m).count("1") for m in range(size)], dtype=np.int64)
    n1 = np.empty((size, n_nodes), dtype=np.int64)
    for i in range(n_nodes):
        n1[:, i] = pop[masks & adj_masks[i]]
    return pop, n1, deg


def _block_core(
    config: SisgcgConfig,
    tau: float,
    n_steps: int,
    seed: int,
    r_start: int,
    r_count: int,
    burn_in: int,
    epsilon: float,
    init_profile: Profile | None,
    record: bool,
):
    """Run ``r_count`` replicas in lockstep; replica ``r_start + r`` draws
    from the child stream ``child_seed(seed, "replica", r_start + r)``.

    Per replica the stream is consumed as: one uniform for the initial
    profile (packed index = floor(u * 2^N); skipped entirely when
    ``init_profile`` pins it), then per learning step one uniform for the
    agent (floor(u * N)) and one compared against the flip-to-1
    probability. Susceptible fractions are sampled after each epidemic
    leg; sample 0 is the initial condition.
    """
    n = config.graph.n_nodes
    pop, n1t, deg = _graph_tables((n, tuple(sorted(config.graph.edges))))
    size = 1 << n
    full = size - 1
    level = config.invariant_level
    rngs = [make_rng(child_seed(seed, "replica", r_start + r)) for r in range(r_count)]

    if init_profile is None:
        u0 = np.array([rng.random() for rng in rngs])
        mask = np.minimum((u0 * size).astype(np.int64), size - 1)
    else:
        check_profile(init_profile, n)
        mask = np.full(r_count, profile_index(init_profile), dtype=np.int64)
    s = np.full(r_count, float(config.s0))

    occ = np.zeros(r_count, dtype=np.int64)
    pe_occ = np.zeros(r_count, dtype=np.int64)
    pe_den = np.zeros(r_count, dtype=np.int64)
    viol = np.zeros(r_count, dtype=np.int64)
    inside = s <= level + epsilon
    entered = np.where(inside, 0, -1).astype(np.int64)

    rows = None
    if record:
        rows = [(0.0, float(s[0]), index_profile(int(mask[0]), n), 0)]

    h = config.dt / config.ode_substeps
    gamma = config.gamma
    chunk = 1024
    k = 0
    while k < n_steps:
        csteps = min(chunk, n_steps - k)
        draws = np.empty((r_count, csteps, 2))
        for idx, rng in enumerate(rngs):
            draws[idx] = rng.random((csteps, 2))
        for j in range(csteps):
            k += 1
            cnt = pop[mask]
            beta = (cnt * config.beta1 + (n - cnt) * config.beta0) / n
            for _ in range(config.ode_substeps):
                k1 = (1.0 - s) * (gamma - beta * s)
                s2 = s + 0.5 * h * k1
                k2 = (1.0 - s2) * (gamma - beta * s2)
                s3 = s + 0.5 * h * k2
                k3 = (1.0 - s3) * (gamma - beta * s3)
                s4 = s + h * k3
                k4 = (1.0 - s4) * (gamma - beta * s4)
                s = s + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
                np.clip(s, 0.0, 1.0, out=s)
            if not np.all(np.isfinite(s)):
                raise NumericError("integrator produced a non-finite susceptible fraction")
            agent = np.minimum((draws[:, j, 0] * n).astype(np.int64), n - 1)
            n1 = n1t[mask, agent]
            n0 = deg[agent] - n1
            du = n1 * (config.q + (1.0 - s)) - n0
            arg = np.clip(-du / tau, -_EXP_CLAMP, _EXP_CLAMP)
            p1 = 1.0 / (1.0 + np.exp(arg))
            act = draws[:, j, 1] < p1
            bit = np.left_shift(np.int64(1), agent)
            mask = np.where(act, mask | bit, mask & ~bit)

            at_full = mask == full
            if k > burn_in:
                occ += at_full
            inside = s <= level + epsilon
            newly = (entered < 0) & inside
            entered = np.where(newly, k, entered)
            viol += (entered >= 0) & ~inside
            post = (entered >= 0) & (k > burn_in)
            pe_den += post
            pe_occ += post & at_full
            if record:
                rows.append(
                    (k * config.dt, float(s[0]), index_profile(int(mask[0]), n), int(agent[0]) + 1)
                )

    return {
        "occ": occ,
        "pe_occ": pe_occ,
        "pe_den": pe_den,
        "violations": viol,
        "entered": entered,
        "final_mask": mask,
        "final_s": s,
        "rows": rows,
    }


def _block_worker(args):
    return _block_core(*args)


# ---------------------------------------------------------------------------
# single trajectories


@dataclass(frozen=True)
class TrajectoryRow:
    t: float
    s: float
    profile: Profile
    updater: int  # 1-based agent id; 0 for the initial sample


@dataclass(frozen=True)
class Trajectory:
    rows: tuple[TrajectoryRow, ...]
    seed: int
    tau: float
    config_digest: str

    def __post_init__(self):
        for prev, cur in zip(self.rows, self.rows[1:]):
            if cur.t <= prev.t:
                raise ParameterError(f"trajectory times must increase, got {prev.t!r} -> {cur.t!r}")


def run_sisgcg(
    config: SisgcgConfig,
    tau: float,
    n_steps: int,
    seed: int,
    init_profile: Profile | None = None,
) -> Trajectory:
    """Simulate one hybrid trajectory.

    Each step integrates the epidemic over ``dt`` with the rate of the
    current profile held fixed, then performs one learning update with
    payoffs at the post-integration state. With no ``init_profile`` the
    initial profile is drawn uniformly. Fixed seeds replay bit for bit;
    a single run is the one-replica case of the batch engine, so scalar
    and batch results agree exactly.
    """
    if not (isinstance(tau, (int, float)) and math.isfinite(tau) and tau > 0):
        raise ParameterError(f"temperature must be finite and positive, got {tau!r}")
    if n_steps < 0:
        raise ParameterError(f"n_steps must be >= 0, got {n_steps}")
    out = _block_core(
        config, float(tau), n_steps, seed, 0, 1, 0, INVARIANCE_EPS, init_profile, True
    )
    rows = tuple(TrajectoryRow(*r) for r in out["rows"])
    return Trajectory(rows, seed, float(tau), config.digest())


@dataclass(frozen=True)
class InvarianceReport:
    level: float
    epsilon: float
    entry_time: float | None
    entry_index: int | None
    violations: tuple[TrajectoryRow, ...]

    @property
    def entered(self) -> bool:
        return self.entry_index is not None

    @property
    def ok(self) -> bool:
        return not self.violations


def check_invariance(
    traj: Trajectory, gamma: float, beta1: float, epsilon: float = INVARIANCE_EPS
) -> InvarianceReport:
    """Locate the entry into s <= gamma/beta1 and any later excursions.

    The band is forward invariant for the continuous dynamics, so any
    violation beyond integrator slack indicates a defect.
    """
    if not traj.rows:
        raise ParameterError("trajectory is empty")
    if beta1 <= 0 or gamma <= 0:
        raise ParameterError("gamma and beta1 must be positive")
    level = gamma / beta1
    entry_index = None
    entry_time = None
    violations = []
    for idx, row in enumerate(traj.rows):
        if entry_index is None:
            if row.s <= level + epsilon:
                entry_index = idx
                entry_time = row.t
        elif row.s > level + epsilon:
            violations.append(row)
    return InvarianceReport(level, epsilon, entry_time, entry_index, tuple(violations))


# ---------------------------------------------------------------------------
# batch runs and the occupancy experiment


@dataclass(frozen=True)
class BatchSummary:
    """Per-replica tallies from a lockstep batch run.

    ``entered`` holds the sample index of first entry into the invariant
    band (-1 if never); ``violations`` counts later samples above the
    band; occupancy counts are over post-burn-in steps, the post-entry
    variants additionally require the replica to have entered.
    """

    reps: int
    n_steps: int
    burn_in: int
    seed: int
    occupancy_counts: tuple
    post_entry_counts: tuple
    post_entry_denoms: tuple
    entered: tuple
    violations: tuple
    final_profiles: tuple


def run_sisgcg_batch(
    config: SisgcgConfig,
    tau: float,
    n_steps: int,
    seed: int,
    reps: int,
    burn_in: int = 0,
    epsilon: float = INVARIANCE_EPS,
    jobs: int = 1,
    init_profile: Profile | None = None,
) -> BatchSummary:
    """Run ``reps`` independent replicas; replica ``r`` is reproducible in
    isolation from ``child_seed(seed, "replica", r)``.

    ``jobs > 1`` splits replicas into contiguous blocks across processes;
    results are merged in replica order, so the output is identical to a
    single-process run.
    """
    if not (isinstance(tau, (int, float)) and math.isfinite(tau) and tau > 0):
        raise ParameterError(f"temperature must be finite and positive, got {tau!r}")
    if reps < 1:
        raise ParameterError(f"reps must be >= 1, got {reps}")
    if n_steps < 1:
        raise ParameterError(f"n_steps must be >= 1, got {n_steps}")
    if not 0 <= burn_in < n_steps:
        raise ParameterError(f"need 0 <= burn_in < n_steps, got {burn_in} vs {n_steps}")
    if jobs < 1:
        raise ParameterError(f"jobs must be >= 1, got {jobs}")
    jobs = min(jobs, reps)
    if jobs == 1:
        parts = [
            _block_core(
                config, float(tau), n_steps, seed, 0, reps, burn_in, epsilon, init_profile, False
            )
        ]
    else:
        bounds = [reps * b // jobs for b in range(jobs + 1)]
        argsets = [
            (
                config, float(tau), n_steps, seed, bounds[b], bounds[b + 1] - bounds[b],
                burn_in, epsilon, init_profile, False,
            )
            for b in range(jobs)
            if bounds[b + 1] > bounds[b]
        ]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_block_worker, argsets))

    def cat(key):
        return tuple(np.concatenate([p[key] for p in parts]).tolist())

    n = config.graph.n_nodes
    finals = tuple(index_profile(m, n) for m in cat("final_mask"))
    return BatchSummary(
        reps=reps,
        n_steps=n_steps,
        burn_in=burn_in,
        seed=seed,
        occupancy_counts=cat("occ"),
        post_entry_counts=cat("pe_occ"),
        post_entry_denoms=cat("pe_den"),
        entered=cat("entered"),
        violations=cat("violations"),
        final_profiles=finals,
    )


@dataclass(frozen=True)
class SsRow:
    tau: float
    occupancy: float
    stderr: float
    occupancy_post_entry: float | None
    stderr_post_entry: float | None
    entered: int
    violations: int
    reps: int
    seed: int


@dataclass(frozen=True)
class SsResult:
    rows: tuple[SsRow, ...]
    warnings: tuple[str, ...]
    burn_in: int
    horizon: int
    config_digest: str


def _mean_stderr(values) -> tuple[float, float]:
    arr = np.asarray(values, dtype=float)
    mean = float(arr.mean())
    if arr.size < 2:
        return mean, 0.0
    return mean, float(arr.std(ddof=1) / math.sqrt(arr.size))


def ss_experiment(
    config: SisgcgConfig,
    tau_schedule,
    burn_in: int,
    horizon: int,
    reps: int,
    seed: int,
    jobs: int = 1,
    epsilon: float = INVARIANCE_EPS,
    init_profile: Profile | None = None,
) -> SsResult:
    """Occupancy of the all-cautious profile across a temperature schedule.

    For each temperature the experiment runs ``reps`` replicas of
    ``horizon`` learning steps (uniform random initial profile unless
    ``init_profile`` pins one) and reports the mean post-burn-in fraction
    of time at the all-ones profile (plus the restriction to post-entry
    steps). The signature of vanishing-temperature stability is occupancy
    rising toward 1 as tau falls. Hypothesis failures (cautious
    convention not the strict maximizer, epidemic dying out) are recorded
    as warnings, not errors.
    """
    schedule = [float(t) for t in tau_schedule]
    if not schedule:
        raise ParameterError("temperature schedule is empty")
    for t in schedule:
        if not (math.isfinite(t) and t > 0):
            raise ParameterError(f"temperatures must be finite and positive, got {t!r}")
    notes = []
    bonus = config.invariant_level
    if config.q + bonus <= 1:
        notes.append(
            f"hypothesis failure: q + gamma/beta1 = {config.q + bonus!r} <= 1; the "
            "all-cautious profile need not dominate"
        )
    if config.beta1 <= config.gamma:
        notes.append(
            f"hypothesis failure: beta1/gamma = {config.beta1 / config.gamma!r} <= 1; "
            "the epidemic dies out"
        )

    rows = []
    denom = horizon - burn_in
    for j, tau in enumerate(schedule):
        tau_seed = child_seed(seed, "temperature", j)
        batch = run_sisgcg_batch(
            config, tau, horizon, tau_seed, reps,
            burn_in=burn_in, epsilon=epsilon, jobs=jobs, init_profile=init_profile,
        )
        occ, occ_se = _mean_stderr([c / denom for c in batch.occupancy_counts])
        pe_pairs = [
            (c, d)
            for c, d in zip(batch.post_entry_counts, batch.post_entry_denoms)
            if d > 0
        ]
        if pe_pairs:
            pe, pe_se = _mean_stderr([c / d for c, d in pe_pairs])
        else:
            pe, pe_se = None, None
        rows.append(
            SsRow(
                tau=tau,
                occupancy=occ,
                stderr=occ_se,
                occupancy_post_entry=pe,
                stderr_post_entry=pe_se,
                entered=sum(e >= 0 for e in batch.entered),
                violations=sum(batch.violations),
                reps=reps,
                seed=tau_seed,
            )
        )
    return SsResult(tuple(rows), tuple(notes), burn_in, horizon, config.digest())
