"""Monotone couplings for log-linear learning.

Couples one learning step (and, by chaining, whole trajectories) of a
static potential game with a history-dependent partner whose payoffs
dominate it, so that with probability one the history side stays
componentwise above the static side. The construction partitions each
side's one-flip deviations, matches them through a deviator-preserving
bijection, and splits the transition mass into eight explicit cases; its
marginals reproduce the two learning kernels exactly. Verification
helpers check well-definedness, the per-agent update-dominance step, the
path-level marginal identities, an expectation-gap identity for
increasing statistics, and end-to-end stochastic dominance of the
all-ones profile.

Convention: the first coordinate of every coupled pair tracks the static
(lower) game, the second the history (upper) game. Agent ids inside
report dataclasses are 1-based with 0 the no-deviator sentinel;
function arguments take 0-based agents like the rest of the library.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable

from .errors import (
    AlignmentError,
    ContractError,
    DeviationError,
    DimensionError,
    EnumerationBoundError,
    NumericError,
    OrderError,
    ParameterError,
)
from .games import (
    HistoryGame,
    PotentialGame,
    Profile,
    ProfilePath,
    all_ones,
    all_zeros,
    check_path,
    check_profile,
    enumerate_profiles,
    one_step_neighbors,
    path_leq,
    profile_leq,
    set_action,
    unilateral_deviator,
)
from .dynamics import (
    InitialDistribution,
    KERNEL_TOL,
    PATH_MASS_TOL,
    check_temperature,
    flip_probabilities,
    lifted_forward,
    path_prob,
    profile_marginal,
    simulate,
    step_kernel,
    update_prob,
)
from .rng import child_seed, make_rng

#: Dominance gaps are declared violations below this.
DOMINANCE_TOL = 1e-10

#: Coupling masses in [-NEGATIVE_CLAMP, 0) are floating-point dust and
#: are clamped to zero; anything lower means the pair is not aligned.
NEGATIVE_CLAMP = 1e-12


# ---------------------------------------------------------------------------
# deviation partitions and the matched-deviation bijection


@dataclass(frozen=True)
class DeviationPartition:
    """The one-flip neighborhoods of an ordered profile pair, split by
    flip direction and by whether the flip stays between the two levels.

    ``lower_down``, ``lower_up_inside``, ``lower_up_outside`` partition
    the lower profile's flips; ``upper_up``, ``upper_down_inside``,
    ``upper_down_outside`` partition the upper profile's flips. Matched
    cardinalities (down vs outside-down, outside-up vs up, inside vs
    inside) are enforced on construction.
    """

    lower: Profile
    upper: Profile
    lower_down: frozenset
    lower_up_inside: frozenset
    lower_up_outside: frozenset
    upper_up: frozenset
    upper_down_inside: frozenset
    upper_down_outside: frozenset

    def __post_init__(self):
        n = len(self.lower)
        low = {self.lower_down, self.lower_up_inside, self.lower_up_outside}
        if sum(len(s) for s in low) != n or frozenset().union(*low) != frozenset(
            one_step_neighbors(self.lower)
        ):
            raise NumericError("lower deviation sets do not partition the neighborhood")
        up = {self.upper_up, self.upper_down_inside, self.upper_down_outside}
        if sum(len(s) for s in up) != n or frozenset().union(*up) != frozenset(
            one_step_neighbors(self.upper)
        ):
            raise NumericError("upper deviation sets do not partition the neighborhood")
        if (
            len(self.lower_down) != len(self.upper_down_outside)
            or len(self.lower_up_outside) != len(self.upper_up)
            or len(self.lower_up_inside) != len(self.upper_down_inside)
        ):
            raise NumericError("deviation set cardinalities do not match")


def partition_sets(lower: Profile, upper: Profile) -> DeviationPartition:
    """Classify both profiles' one-flip deviations; needs lower <= upper."""
    check_profile(lower)
    check_profile(upper, len(lower))
    if not profile_leq(lower, upper):
        raise OrderError(f"{lower!r} is not componentwise below {upper!r}")
    f_low = one_step_neighbors(lower)
    f_up = one_step_neighbors(upper)
    low_down = frozenset(
        z for z in f_low if lower[unilateral_deviator(lower, z) - 1] == 1
    )
    low_in = frozenset(z for z in f_low if profile_leq(z, upper)) - low_down
    low_out = frozenset(f_low) - low_down - low_in
    up_up = frozenset(z for z in f_up if upper[unilateral_deviator(upper, z) - 1] == 0)
    up_in = frozenset(z for z in f_up if profile_leq(lower, z)) - up_up
    up_out = frozenset(f_up) - up_up - up_in
    return DeviationPartition(lower, upper, low_down, low_in, low_out, up_up, up_in, up_out)


def matched_deviation(lower: Profile, upper: Profile, deviation: Profile) -> Profile:
    """Carry a one-flip deviation of ``lower`` to ``upper``: flip the same
    agent's coordinate there."""
    if not profile_leq(lower, upper):
        raise OrderError(f"{lower!r} is not componentwise below {upper!r}")
    agent = unilateral_deviator(lower, deviation)
    if agent == 0:
        raise DeviationError(f"{deviation!r} does not deviate from {lower!r}")
    idx = agent - 1
    return set_action(upper, idx, 1 - upper[idx])


@dataclass(frozen=True)
class BijectionReport:
    ok: bool
    down_to_outside_ok: bool
    outside_up_to_up_ok: bool
    inside_to_inside_ok: bool
    witness: Profile | None


def verify_bijection(lower: Profile, upper: Profile) -> BijectionReport:
    """Check the matched-deviation map carries each lower deviation class
    onto its upper partner class, bijectively."""
    part = partition_sets(lower, upper)
    image_down = frozenset(matched_deviation(lower, upper, z) for z in part.lower_down)
    image_out = frozenset(matched_deviation(lower, upper, z) for z in part.lower_up_outside)
    image_in = frozenset(matched_deviation(lower, upper, z) for z in part.lower_up_inside)
    d_ok = (
        image_down == part.upper_down_outside and len(image_down) == len(part.lower_down)
    )
    o_ok = image_out == part.upper_up and len(image_out) == len(part.lower_up_outside)
    i_ok = (
        image_in == part.upper_down_inside and len(image_in) == len(part.lower_up_inside)
    )
    witness = None
    if not d_ok:
        witness = next(iter(part.lower_down), None)
    elif not o_ok:
        witness = next(iter(part.lower_up_outside), None)
    elif not i_ok:
        witness = next(iter(part.lower_up_inside), None)
    return BijectionReport(d_ok and o_ok and i_ok, d_ok, o_ok, i_ok, witness)


# ---------------------------------------------------------------------------
# the one-step coupling


@dataclass(frozen=True)
class OneStepCoupling:
    """Joint one-step law over (static next profile, history next profile).

    ``entries`` is sparse; omitted pairs carry zero mass. Built so that
    the first marginal is the static kernel row at ``lower`` and the
    second the history kernel row at the end of ``upper_path``.
    """

    lower: Profile
    upper_path: ProfilePath
    entries: dict

    def __post_init__(self):
        check_profile(self.lower)
        check_path(self.upper_path, len(self.lower))
        for key, v in self.entries.items():
            if not (isinstance(key, tuple) and len(key) == 2):
                raise ParameterError(f"bad coupling key {key!r}")
            if not (math.isfinite(v) and v >= 0.0):
                raise NumericError(f"bad coupling mass {v!r} at {key!r}")

    @property
    def upper(self) -> Profile:
        return self.upper_path[-1]

    def prob(self, pair: tuple) -> float:
        return self.entries.get(pair, 0.0)


def one_step_coupling(
    history: HistoryGame,
    reference: PotentialGame,
    path: ProfilePath,
    lower: Profile,
    tau: float,
    clamp: float = NEGATIVE_CLAMP,
) -> OneStepCoupling:
    """Couple one learning step of the static game at ``lower`` with one
    step of the history game after ``path``.

    The eight cases: the history side flipping up pairs with the static
    side staying (mass the probability surplus) or with the matched
    outside-up static flip; history down-flips that stay above ``lower``
    pair with the static stay; static down-flips pair with the history
    stay (probability surplus) or with the matched outside-down history
    flip; static inside-up flips pair with the history stay; a corner
    holds both stays; all other pairs are zero. Masses in
    ``[-clamp, 0)`` are rounded to zero; anything lower raises an
    alignment error naming the case and agent, since a genuinely
    negative surplus means the pair violates payoff dominance.
    """
    tau = check_temperature(tau)
    check_path(path, history.n_players)
    if reference.n_players != history.n_players:
        raise DimensionError("game pair disagrees on player count")
    check_profile(lower, reference.n_players)
    upper = path[-1]
    if not profile_leq(lower, upper):
        raise OrderError(f"{lower!r} is not componentwise below {upper!r}")

    n = history.n_players
    p_ref = flip_probabilities(reference, lower, tau)
    p_hist = flip_probabilities(history, path, tau)
    part = partition_sets(lower, upper)
    entries: dict = {}

    def put(z: Profile, z2: Profile, mass: float, case: str, agent: int):
        key = (z, z2)
        assert key not in entries, f"coupling case collision at {key!r} ({case})"
        if mass < 0.0:
            if mass >= -clamp:
                return
            raise AlignmentError(
                f"negative coupling mass {mass!r} in case {case!r}, agent {agent}: "
                "the game pair is not aligned at this position"
            )
        if mass != 0.0:
            entries[key] = mass

    for z2 in part.upper_up:
        agent = unilateral_deviator(upper, z2)
        idx = agent - 1
        put(lower, z2, (p_hist[idx] - p_ref[idx]) / n, "history-up surplus", agent)
        partner = set_action(lower, idx, 1)
        put(partner, z2, p_ref[idx] / n, "matched up-flips", agent)
    for z2 in part.upper_down_inside:
        agent = unilateral_deviator(upper, z2)
        idx = agent - 1
        put(lower, z2, (1.0 - p_hist[idx]) / n, "history-down inside", agent)
    for z in part.lower_down:
        agent = unilateral_deviator(lower, z)
        idx = agent - 1
        put(
            z,
            upper,
            ((1.0 - p_ref[idx]) - (1.0 - p_hist[idx])) / n,
            "static-down surplus",
            agent,
        )
        partner = set_action(upper, idx, 0)
        put(z, partner, (1.0 - p_hist[idx]) / n, "matched down-flips", agent)
    for z in part.lower_up_inside:
        agent = unilateral_deviator(lower, z)
        idx = agent - 1
        put(z, upper, p_ref[idx] / n, "static-up inside", agent)

    # corner: both sides stay put; agent-partition expansion is the
    # authoritative value, cross-checked against 1 minus everything else
    corner = 0.0
    for idx in range(n):
        if lower[idx] == 1:
            corner += p_ref[idx]
        elif upper[idx] == 1:
            corner += (1.0 - p_ref[idx]) - (1.0 - p_hist[idx])
        else:
            corner += 1.0 - p_hist[idx]
    corner /= n
    remainder = 1.0 - math.fsum(entries.values())
    if abs(corner - remainder) > 1e-12:
        raise NumericError(
            f"corner mass disagreement: partition form {corner!r} vs remainder {remainder!r}"
        )
    put(lower, upper, corner, "corner", 0)
    return OneStepCoupling(lower, path, entries)


@dataclass(frozen=True)
class CouplingCheck:
    """Verification outcome for one coupling: mass validity, monotone
    support, and both marginal identities."""

    ok: bool
    total: float
    entries_ok: bool
    support_ok: bool
    max_static_residual: float
    max_history_residual: float
    static_witness: Profile | None
    history_witness: Profile | None


def verify_one_step(
    coupling: OneStepCoupling,
    history: HistoryGame,
    reference: PotentialGame,
    tau: float,
    tol: float = KERNEL_TOL,
) -> CouplingCheck:
    """Check a coupling against its two kernel rows.

    Entries must lie in [0, 1] and total 1; support pairs must be
    componentwise ordered; summing a static profile's row reproduces the
    static kernel mass, summing a history profile's column reproduces
    the history kernel mass, both within ``tol``.
    """
    ref_row = step_kernel(reference, coupling.lower, tau)
    hist_row = step_kernel(history, coupling.upper_path, tau)
    entries_ok = True
    support_ok = True
    total = 0.0
    row_sums: dict = {}
    col_sums: dict = {}
    for (z, z2), v in coupling.entries.items():
        total += v
        if not 0.0 <= v <= 1.0:
            entries_ok = False
        if not profile_leq(z, z2):
            support_ok = False
        row_sums[z] = row_sums.get(z, 0.0) + v
        col_sums[z2] = col_sums.get(z2, 0.0) + v
    if abs(total - 1.0) > tol:
        entries_ok = False

    max_static = 0.0
    static_witness = None
    for z in set(ref_row.probs) | set(row_sums):
        r = abs(row_sums.get(z, 0.0) - ref_row.prob(z))
        if r > max_static:
            max_static, static_witness = r, z
    max_history = 0.0
    history_witness = None
    for z2 in set(hist_row.probs) | set(col_sums):
        r = abs(col_sums.get(z2, 0.0) - hist_row.prob(z2))
        if r > max_history:
            max_history, history_witness = r, z2
    ok = entries_ok and support_ok and max_static <= tol and max_history <= tol
    return CouplingCheck(
        ok, total, entries_ok, support_ok, max_static, max_history,
        static_witness if max_static > tol else None,
        history_witness if max_history > tol else None,
    )


# ---------------------------------------------------------------------------
# per-agent update dominance


@dataclass(frozen=True)
class UpdateDominanceReport:
    """One agent's flip probabilities under the two games, with the
    payoff-dominance hypothesis status. ``agent`` is 1-based."""

    agent: int
    hypothesis_met: bool
    dominance_holds: bool
    complement_consistent: bool
    one_history: float
    one_reference: float
    zero_reference: float
    zero_history: float
    p_one_history: float
    p_one_reference: float

    @property
    def ok(self) -> bool:
        return (not self.hypothesis_met) or (
            self.dominance_holds and self.complement_consistent
        )


def check_update_dominance(
    history: HistoryGame,
    reference: PotentialGame,
    path: ProfilePath,
    lower: Profile,
    agent: int,
    tau: float,
    tol: float = NEGATIVE_CLAMP,
) -> UpdateDominanceReport:
    """Does the history game move ``agent`` (0-based) up at least as
    readily as the static game?

    Requires the other agents' actions at the end of ``path`` to
    dominate their ``lower`` entries. When the payoff hypothesis holds
    (history pays more for 1, the static game pays more for 0), the
    flip-to-1 probability under the history game must be at least the
    static one, and the flip-to-0 comparison must be its exact mirror.
    """
    check_path(path, history.n_players)
    check_profile(lower, history.n_players)
    if not 0 <= agent < history.n_players:
        raise DimensionError(f"agent {agent} out of range")
    upper = path[-1]
    for j in range(history.n_players):
        if j != agent and upper[j] < lower[j]:
            raise OrderError(
                f"agent {j + 1} plays {upper[j]} at the end of the history but "
                f"{lower[j]} in the static profile; others must dominate"
            )
    one_history = history.utility(path, agent, 1)
    zero_history = history.utility(path, agent, 0)
    one_reference = reference.utility(agent, set_action(lower, agent, 1))
    zero_reference = reference.utility(agent, set_action(lower, agent, 0))
    hypothesis = (one_history >= one_reference - tol) and (
        zero_reference >= zero_history - tol
    )
    p_hist = update_prob(history, path, agent, tau)
    p_ref = update_prob(reference, lower, agent, tau)
    dominance = p_hist >= p_ref - tol
    complement = (p_hist >= p_ref) == ((1.0 - p_ref) >= (1.0 - p_hist))
    return UpdateDominanceReport(
        agent + 1, hypothesis, dominance, complement,
        one_history, one_reference, zero_reference, zero_history, p_hist, p_ref,
    )


# ---------------------------------------------------------------------------
# path coupling


def path_coupling_prob(
    history: HistoryGame,
    reference: PotentialGame,
    init: InitialDistribution,
    static_path: ProfilePath,
    history_path: ProfilePath,
    tau: float,
    memo: dict | None = None,
) -> float:
    """Joint probability of a (static, history) trajectory pair.

    The chain starts coupled on a shared initial profile and multiplies
    one-step coupling masses along the pair; any unordered or
    initially-split pair has probability zero. Pass a shared ``memo``
    dict when evaluating many pairs: one-step couplings are keyed by
    (static profile, history prefix).
    """
    check_path(static_path, history.n_players)
    check_path(history_path, history.n_players)
    if len(static_path) != len(history_path):
        raise DimensionError("coupled paths must have equal length")
    if static_path[0] != history_path[0]:
        return 0.0
    if not path_leq(static_path, history_path):
        return 0.0
    p = init.prob(static_path[0])
    for t in range(1, len(static_path)):
        if p == 0.0:
            return 0.0
        key = (static_path[t - 1], history_path[:t])
        nu = None if memo is None else memo.get(key)
        if nu is None:
            nu = one_step_coupling(history, reference, history_path[:t], static_path[t - 1], tau)
            if memo is not None:
                memo[key] = nu
        p *= nu.prob((static_path[t], history_path[t]))
    return p


@dataclass(frozen=True)
class PathCouplingReport:
    """Exhaustive verification of the path coupling on a small instance,
    with the materialized measures kept for downstream identities."""

    ok: bool
    horizon: int
    n_pairs: int
    total: float
    support_ok: bool
    max_static_residual: float
    max_history_residual: float
    static_witness: ProfilePath | None
    history_witness: ProfilePath | None
    coupling: dict
    static_measure: dict
    history_measure: dict


def verify_path_coupling(
    history: HistoryGame,
    reference: PotentialGame,
    init: InitialDistribution,
    horizon: int,
    tau: float,
    tol: float = PATH_MASS_TOL,
    pair_cap: int = 1 << 22,
) -> PathCouplingReport:
    """Enumerate every path pair and check the coupling's two marginal
    identities, total mass, and monotone support."""
    if horizon < 1:
        raise ParameterError(f"horizon must be >= 1, got {horizon}")
    n = history.n_players
    n_paths = (1 << n) ** horizon
    if n_paths * n_paths > pair_cap:
        raise EnumerationBoundError(
            f"{n_paths}^2 path pairs exceed the cap of {pair_cap}"
        )
    profiles = enumerate_profiles(n)
    paths = list(itertools.product(profiles, repeat=horizon))
    static_measure = {a: path_prob(reference, init, a, tau) for a in paths}
    history_measure = {a: path_prob(history, init, a, tau) for a in paths}

    memo: dict = {}
    coupling: dict = {}
    row_sums = {a: 0.0 for a in paths}
    col_sums = {a: 0.0 for a in paths}
    total = 0.0
    support_ok = True
    for a in paths:
        for b in paths:
            v = path_coupling_prob(history, reference, init, a, b, tau, memo)
            if v == 0.0:
                continue
            if not path_leq(a, b):
                support_ok = False
            coupling[(a, b)] = v
            total += v
            row_sums[a] += v
            col_sums[b] += v

    max_static = 0.0
    static_witness = None
    max_history = 0.0
    history_witness = None
    for a in paths:
        r = abs(row_sums[a] - static_measure[a])
        if r > max_static:
            max_static, static_witness = r, a
        r = abs(col_sums[a] - history_measure[a])
        if r > max_history:
            max_history, history_witness = r, a
    ok = (
        support_ok
        and abs(total - 1.0) <= tol
        and max_static <= tol
        and max_history <= tol
    )
    return PathCouplingReport(
        ok, horizon, len(paths) * len(paths), total, support_ok,
        max_static, max_history,
        static_witness if max_static > tol else None,
        history_witness if max_history > tol else None,
        coupling, static_measure, history_measure,
    )


# ---------------------------------------------------------------------------
# the expectation-gap identity


@dataclass(frozen=True)
class GapResult:
    history_expectation: float
    reference_expectation: float
    lhs: float
    rhs: float
    difference: float
    eta_max: int
    checked_pairs: int

    @property
    def ok(self) -> bool:
        return abs(self.difference) <= DOMINANCE_TOL


def expectation_gap(
    z: Callable[[ProfilePath], int],
    history_measure: dict,
    reference_measure: dict,
    coupling: dict,
    monotone_pair_cap: int = 250_000,
    seed: int = 0,
    tol: float = DOMINANCE_TOL,
) -> GapResult:
    """Both sides of the layered expectation identity for an increasing
    nonnegative integer statistic.

    The left side is the history expectation minus the reference
    expectation; the right side sums, over every threshold, the coupling
    mass of pairs straddling it (static side at or below, history side
    above). ``z`` must return nonnegative ints and be monotone for the
    pointwise path order; monotonicity is checked exhaustively when the
    support is small, else on sampled comparable pairs.
    """
    support = sorted(set(history_measure) | set(reference_measure))
    values = {}
    for path in support:
        v = z(path)
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise ContractError(f"statistic must return nonnegative ints, got {v!r}")
        values[path] = v
    for (a, b) in coupling:
        if a not in values or b not in values:
            raise ContractError("coupling supported outside the given measures")

    n_support = len(support)
    if n_support * n_support <= monotone_pair_cap:
        pairs = itertools.combinations(range(n_support), 2)
        checked = 0
        for i, j in pairs:
            a, b = support[i], support[j]
            if path_leq(a, b) and values[a] > values[b]:
                raise ContractError(f"statistic decreases along {a!r} -> {b!r}")
            if path_leq(b, a) and values[b] > values[a]:
                raise ContractError(f"statistic decreases along {b!r} -> {a!r}")
            checked += 1
    else:
        rng = make_rng(child_seed(seed, "gap-monotone"))
        checked = 0
        for _ in range(10_000):
            i = int(rng.random() * n_support)
            j = int(rng.random() * n_support)
            a, b = support[min(i, n_support - 1)], support[min(j, n_support - 1)]
            if path_leq(a, b) and values[a] > values[b]:
                raise ContractError(f"statistic decreases along {a!r} -> {b!r}")
            checked += 1

    e_hist = math.fsum(p * values[a] for a, p in history_measure.items())
    e_ref = math.fsum(p * values[a] for a, p in reference_measure.items())
    lhs = e_hist - e_ref
    eta_max = max(values.values(), default=0)
    rhs = 0.0
    for eta in range(eta_max):
        rhs += math.fsum(
            v for (a, b), v in coupling.items() if values[a] <= eta < values[b]
        )
    return GapResult(e_hist, e_ref, lhs, rhs, lhs - rhs, eta_max, checked)


# ---------------------------------------------------------------------------
# stochastic dominance of the all-ones profile


@dataclass(frozen=True)
class DominanceRow:
    horizon: int
    p_history: float
    p_reference: float
    gap: float
    stderr: float | None
    ok: bool


@dataclass(frozen=True)
class UpperSetRow:
    horizon: int
    generator: ProfilePath
    p_history: float
    p_reference: float
    gap: float
    stderr: float | None
    ok: bool


@dataclass(frozen=True)
class DominanceReport:
    rows: tuple
    upper_rows: tuple
    canonical_residual: float
    mode: str
    tol: float

    @property
    def ok(self) -> bool:
        return (
            all(r.ok for r in self.rows)
            and all(r.ok for r in self.upper_rows)
            and self.canonical_residual <= 1e-12
        )


DOMINANCE_MODES = ("exact", "monte-carlo")


def _upper_set_mask(generator: ProfilePath):
    def mask(t: int, a: Profile) -> bool:
        return profile_leq(generator[t - 1], a)

    return mask


def _masked_history_prob(history, init, tau, horizon, generator) -> float:
    dist = lifted_forward(history, init, tau, horizon, mask=_upper_set_mask(generator))
    return math.fsum(dist.values())


def _masked_reference_prob(reference, init, tau, horizon, generator) -> float:
    dist = profile_marginal(reference, init, tau, horizon, mask=_upper_set_mask(generator))
    return math.fsum(dist.values())


def dominance_check(
    history: HistoryGame,
    reference: PotentialGame,
    init: InitialDistribution,
    tau: float,
    horizon_max: int,
    mode: str,
    seed: int = 0,
    reps: int | None = None,
    upper_set_samples: int = 0,
    tol: float = DOMINANCE_TOL,
) -> DominanceReport:
    """Certify that the history game reaches the all-ones profile at
    least as often as the reference at every horizon.

    The reference side is always computed exactly by iterating kernel
    rows. In ``exact`` mode the history side runs the lifted forward
    recursion (finite statistic required); in ``monte-carlo`` mode it is
    estimated from ``reps`` simulated replicas (one batch at the longest
    horizon, prefixes reused) and gaps are flagged only beyond four
    standard errors. Each horizon also spot-checks dominance on the
    principal upper sets of ``upper_set_samples`` random generator
    paths, plus the canonical generator (all-zeros until a final
    all-ones), whose upper-set probability must reproduce the plain
    all-ones marginal.
    """
    if mode not in DOMINANCE_MODES:
        raise ParameterError(f"mode must be one of {DOMINANCE_MODES}, got {mode!r}")
    if horizon_max < 1:
        raise ParameterError(f"horizon_max must be >= 1, got {horizon_max}")
    n = history.n_players
    top = all_ones(n)
    bottom = all_zeros(n)

    mc_paths: list[ProfilePath] = []
    if mode == "monte-carlo":
        if reps is None or reps < 1:
            raise ParameterError("monte-carlo mode needs reps >= 1")
        for r in range(reps):
            run = simulate(history, init, tau, horizon_max, child_seed(seed, "replica", r))
            mc_paths.append(run.path)

    def history_upper_prob(horizon: int, generator: ProfilePath):
        if mode == "exact":
            return _masked_history_prob(history, init, tau, horizon, generator), None
        hits = sum(
            all(profile_leq(generator[t], p[t]) for t in range(horizon)) for p in mc_paths
        )
        est = hits / reps
        return est, math.sqrt(est * (1.0 - est) / reps)

    rows = []
    upper_rows = []
    canonical_residual = 0.0
    rng = make_rng(child_seed(seed, "upper-set-generators"))
    profiles = enumerate_profiles(n)
    for horizon in range(1, horizon_max + 1):
        p_ref = math.fsum(
            v
            for a, v in profile_marginal(reference, init, tau, horizon).items()
            if a == top
        )
        canonical = (bottom,) * (horizon - 1) + (top,)
        if mode == "exact":
            lifted = lifted_forward(history, init, tau, horizon)
            p_hist = math.fsum(v for (a, _sig), v in lifted.items() if a == top)
            stderr = None
            direct = _masked_history_prob(history, init, tau, horizon, canonical)
            canonical_residual = max(canonical_residual, abs(direct - p_hist))
        else:
            p_hist, stderr = history_upper_prob(horizon, canonical)
        gap = p_hist - p_ref
        slack = tol if stderr is None else max(tol, 4.0 * stderr)
        rows.append(DominanceRow(horizon, p_hist, p_ref, gap, stderr, gap >= -slack))

        for _ in range(upper_set_samples):
            size = 1 << n
            generator = tuple(
                profiles[min(int(rng.random() * size), size - 1)] for _ in range(horizon)
            )
            pu_hist, u_stderr = history_upper_prob(horizon, generator)
            pu_ref = _masked_reference_prob(reference, init, tau, horizon, generator)
            u_gap = pu_hist - pu_ref
            u_slack = tol if u_stderr is None else max(tol, 4.0 * u_stderr)
            upper_rows.append(
                UpperSetRow(
                    horizon, generator, pu_hist, pu_ref, u_gap, u_stderr, u_gap >= -u_slack
                )
            )
    return DominanceReport(tuple(rows), tuple(upper_rows), canonical_residual, mode, tol)
