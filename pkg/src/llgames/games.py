"""Binary-action games on graphs.

Profiles, componentwise orders, unilateral deviations, exact potential
games, graphical coordination games, and history-dependent games carrying
an optional sufficient statistic.

Conventions used across the package:

* An action profile is a tuple of 0/1 ints, one entry per agent. Agent
  indices in Python APIs are 0-based. Human-facing reports and serialized
  outputs use 1-based agent ids, with 0 reserved as the "no deviator"
  sentinel.
* Profiles serialize to 0/1 strings with agent 1 leftmost; the packed
  integer index used for dense tables puts agent 1 in the least
  significant bit.
* A history (path) is a nonempty tuple of profiles, oldest first. The
  componentwise order on paths compares synchronously: p <= q iff the
  profiles agree in length and p[t] <= q[t] for every t.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .errors import (
    DeviationError,
    DimensionError,
    EnumerationBoundError,
    MissingBoundsError,
    MissingStatisticError,
    OrderError,
    ParameterError,
)

Profile = tuple[int, ...]
ProfilePath = tuple[Profile, ...]

#: Enumerations over the full profile space 2^N refuse to run past this
#: many agents unless the caller raises the cap explicitly.
DEFAULT_PLAYER_CAP = 20

#: Enumerations over full path spaces (2^N)^T refuse to run past this
#: many paths unless the caller raises the cap explicitly.
DEFAULT_PATH_CAP = 1 << 21

#: Absolute tolerance for utility and potential comparisons.
UTILITY_TOL = 1e-12


# ---------------------------------------------------------------------------
# profiles and orders


def check_profile(a: Profile, n_players: int | None = None) -> Profile:
    """Validate a profile; returns it unchanged."""
    if not isinstance(a, tuple) or not a:
        raise DimensionError(f"profile must be a nonempty tuple, got {a!r}")
    if any(x not in (0, 1) for x in a):
        raise ParameterError(f"profile entries must be 0 or 1, got {a!r}")
    if n_players is not None and len(a) != n_players:
        raise DimensionError(f"profile {a!r} has {len(a)} entries, expected {n_players}")
    return a


def all_ones(n_players: int) -> Profile:
    return (1,) * n_players


def all_zeros(n_players: int) -> Profile:
    return (0,) * n_players


def set_action(a: Profile, agent: int, action: int) -> Profile:
    """Copy of ``a`` with ``agent``'s entry replaced by ``action``."""
    if not 0 <= agent < len(a):
        raise DimensionError(f"agent {agent} out of range for {len(a)} players")
    if action not in (0, 1):
        raise ParameterError(f"action must be 0 or 1, got {action!r}")
    return a[:agent] + (action,) + a[agent + 1 :]


def profile_index(a: Profile) -> int:
    """Packed integer index of a profile; agent 1 (Python index 0) is the
    least significant bit."""
    k = 0
    for i, x in enumerate(a):
        k |= x << i
    return k


def index_profile(k: int, n_players: int) -> Profile:
    return tuple((k >> i) & 1 for i in range(n_players))


def profile_string(a: Profile) -> str:
    """0/1 string with agent 1 leftmost."""
    return "".join(str(x) for x in a)


def parse_profile_string(s: str, n_players: int | None = None) -> Profile:
    if not isinstance(s, str) or not s or any(c not in "01" for c in s):
        raise ParameterError(f"profile string must be nonempty 0/1 characters, got {s!r}")
    if n_players is not None and len(s) != n_players:
        raise DimensionError(f"profile string {s!r} is not {n_players} characters")
    return tuple(int(c) for c in s)


def profile_leq(a: Profile, b: Profile) -> bool:
    """Componentwise order on profiles."""
    if len(a) != len(b):
        raise DimensionError(f"profiles of length {len(a)} and {len(b)} are not comparable")
    return all(x <= y for x, y in zip(a, b))


def path_leq(p: ProfilePath, q: ProfilePath) -> bool:
    """Synchronous componentwise order on equal-length histories."""
    if len(p) != len(q):
        raise DimensionError(f"paths of length {len(p)} and {len(q)} are not comparable")
    return all(profile_leq(a, b) for a, b in zip(p, q))


def unilateral_deviator(a: Profile, b: Profile) -> int:
    """The agent separating two profiles that differ in at most one entry.

    Returns the 1-based agent id, or 0 when the profiles are equal (the
    "no deviator" sentinel). Raises :class:`DeviationError` when the
    profiles differ in two or more entries.
    """
    if len(a) != len(b):
        raise DimensionError("profiles of unequal length")
    found = 0
    for i, (x, y) in enumerate(zip(a, b)):
        if x != y:
            if found:
                raise DeviationError(f"{a!r} -> {b!r} is not a unilateral deviation")
            found = i + 1
    return found


def one_step_neighbors(a: Profile) -> tuple[Profile, ...]:
    """All profiles reachable by flipping exactly one entry of ``a``,
    ordered by the flipped agent."""
    check_profile(a)
    return tuple(set_action(a, i, 1 - a[i]) for i in range(len(a)))


def enumerate_profiles(n_players: int, cap: int = DEFAULT_PLAYER_CAP) -> list[Profile]:
    """All profiles for ``n_players`` agents in packed-index order."""
    if n_players < 1:
        raise ParameterError(f"need at least one player, got {n_players}")
    if n_players > cap:
        raise EnumerationBoundError(
            f"enumerating 2^{n_players} profiles exceeds the cap of {cap} players"
        )
    return [index_profile(k, n_players) for k in range(1 << n_players)]


# ---------------------------------------------------------------------------
# graphs


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on nodes 0..n_nodes-1.

    Edges are stored normalized as (low, high) pairs. Self-loops and
    duplicate edges are rejected.
    """

    n_nodes: int
    edges: frozenset[tuple[int, int]]
    _neighbors: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n_nodes < 1:
            raise ParameterError(f"graph needs at least one node, got {self.n_nodes}")
        adj: list[list[int]] = [[] for _ in range(self.n_nodes)]
        for e in self.edges:
            if not (isinstance(e, tuple) and len(e) == 2):
                raise ParameterError(f"edge {e!r} is not a pair")
            i, j = e
            if not (0 <= i < self.n_nodes and 0 <= j < self.n_nodes):
                raise ParameterError(f"edge {e!r} out of range for {self.n_nodes} nodes")
            if i >= j:
                raise ParameterError(f"edge {e!r} must be stored as (low, high)")
            adj[i].append(j)
            adj[j].append(i)
        object.__setattr__(self, "_neighbors", tuple(tuple(sorted(v)) for v in adj))

    @classmethod
    def from_edges(cls, n_nodes: int, pairs: Iterable[tuple[int, int]]) -> "Graph":
        norm = set()
        for i, j in pairs:
            if i == j:
                raise ParameterError(f"self-loop at node {i}")
            norm.add((min(i, j), max(i, j)))
        return cls(n_nodes, frozenset(norm))

    @classmethod
    def ring(cls, n_nodes: int) -> "Graph":
        if n_nodes < 3:
            raise ParameterError("a ring needs at least three nodes")
        return cls.from_edges(n_nodes, [(i, (i + 1) % n_nodes) for i in range(n_nodes)])

    @classmethod
    def line(cls, n_nodes: int) -> "Graph":
        """Path graph: a simple chain of ``n_nodes`` nodes."""
        return cls.from_edges(n_nodes, [(i, i + 1) for i in range(n_nodes - 1)])

    @classmethod
    def complete(cls, n_nodes: int) -> "Graph":
        return cls.from_edges(n_nodes, itertools.combinations(range(n_nodes), 2))

    def neighbors(self, i: int) -> tuple[int, ...]:
        return self._neighbors[i]

    def degree(self, i: int) -> int:
        return len(self._neighbors[i])


# ---------------------------------------------------------------------------
# static (potential) games


@dataclass(frozen=True)
class PotentialGame:
    """A finite binary-action game together with its exact potential.

    ``utility(i, a)`` is agent ``i``'s payoff at profile ``a`` (``i``
    0-based); ``potential(a)`` the potential value. Exactness, i.e. that
    unilateral utility differences equal potential differences, is *not*
    assumed silently: constructors in this module verify it, and
    :func:`verify_exact_potential` checks arbitrary instances.
    """

    n_players: int
    utility: Callable[[int, Profile], float]
    potential: Callable[[Profile], float]
    label: str = ""


@dataclass(frozen=True)
class PotentialViolation:
    profile: Profile
    deviation: Profile
    agent: int  # 1-based
    utility_diff: float
    potential_diff: float


@dataclass(frozen=True)
class PotentialCheck:
    ok: bool
    witness: PotentialViolation | None


def verify_exact_potential(
    game: PotentialGame, tol: float = UTILITY_TOL, cap: int = DEFAULT_PLAYER_CAP
) -> PotentialCheck:
    """Exhaustively check that unilateral utility differences match
    potential differences; returns the first violation if any."""
    for a in enumerate_profiles(game.n_players, cap):
        for i in range(game.n_players):
            b = set_action(a, i, 1 - a[i])
            du = game.utility(i, b) - game.utility(i, a)
            dphi = game.potential(b) - game.potential(a)
            if not (math.isfinite(du) and math.isfinite(dphi)):
                raise ParameterError(f"non-finite utility or potential at {a!r}, agent {i + 1}")
            if abs(du - dphi) > tol:
                return PotentialCheck(False, PotentialViolation(a, b, i + 1, du, dphi))
    return PotentialCheck(True, None)


def potential_argmax(
    game: PotentialGame, tol: float = UTILITY_TOL, cap: int = DEFAULT_PLAYER_CAP
) -> frozenset[Profile]:
    """All profiles within ``tol`` of the maximum potential value."""
    profiles = enumerate_profiles(game.n_players, cap)
    values = [game.potential(a) for a in profiles]
    if any(not math.isfinite(v) for v in values):
        raise ParameterError("potential is not finite on the full profile space")
    top = max(values)
    return frozenset(a for a, v in zip(profiles, values) if v >= top - tol)


def gcg_game(graph: Graph, q: float, bonus: float) -> PotentialGame:
    """Graphical coordination game on ``graph``.

    Matching on action 1 pays ``q + bonus`` per matched neighbor;
    matching on action 0 pays 1 per matched neighbor; mismatches pay
    nothing. The potential sums the per-edge payoffs. The constructed
    instance is verified to be an exact potential game.
    """
    if not (isinstance(q, (int, float)) and math.isfinite(q) and 0 < q <= 1):
        raise ParameterError(f"q must lie in (0, 1], got {q!r}")
    if not (isinstance(bonus, (int, float)) and math.isfinite(bonus) and bonus >= 0):
        raise ParameterError(f"bonus must be finite and >= 0, got {bonus!r}")
    n = graph.n_nodes
    high = q + bonus

    def utility(i: int, a: Profile) -> float:
        check_profile(a, n)
        nbrs = graph.neighbors(i)
        n1 = sum(a[j] for j in nbrs)
        if a[i] == 1:
            return n1 * high
        return float(len(nbrs) - n1)

    def potential(a: Profile) -> float:
        check_profile(a, n)
        total = 0.0
        for i, j in graph.edges:
            if a[i] == 1 and a[j] == 1:
                total += high
            elif a[i] == 0 and a[j] == 0:
                total += 1.0
        return total

    game = PotentialGame(n, utility, potential, label=f"gcg(n={n},q={q!r},bonus={bonus!r})")
    if n <= DEFAULT_PLAYER_CAP:
        check = verify_exact_potential(game)
        if not check.ok:
            raise ParameterError(f"coordination game failed its potential check: {check.witness}")
    return game


def table_game(
    n_players: int,
    utilities: list[list[float]],
    potential: list[float],
    label: str = "table",
) -> PotentialGame:
    """Potential game from dense tables indexed by packed profile index.

    ``utilities[i][k]`` is agent ``i``'s payoff at the profile with packed
    index ``k`` (agent 1 in the least significant bit); ``potential[k]``
    the potential. The tables are validated and the exactness of the
    potential is verified.
    """
    if n_players < 1 or n_players > DEFAULT_PLAYER_CAP:
        raise ParameterError(f"n_players out of range: {n_players}")
    size = 1 << n_players
    if len(utilities) != n_players or any(len(row) != size for row in utilities):
        raise DimensionError(f"utility table must be {n_players} x {size}")
    if len(potential) != size:
        raise DimensionError(f"potential table must have {size} entries")
    utab = [[float(x) for x in row] for row in utilities]
    ptab = [float(x) for x in potential]
    if any(not math.isfinite(x) for row in utab for x in row) or any(
        not math.isfinite(x) for x in ptab
    ):
        raise ParameterError("tables must be finite")

    game = PotentialGame(
        n_players,
        lambda i, a: utab[i][profile_index(check_profile(a, n_players))],
        lambda a: ptab[profile_index(check_profile(a, n_players))],
        label=label,
    )
    check = verify_exact_potential(game)
    if not check.ok:
        raise ParameterError(f"tables do not define an exact potential game: {check.witness}")
    return game


# ---------------------------------------------------------------------------
# history-dependent games


@dataclass(frozen=True)
class SufficientStatistic:
    """Incremental summary of a history, sufficient for payoffs.

    ``start`` is the statistic before any profile has played; ``advance``
    folds in one more profile; ``payoff(stat, last, i, action)`` evaluates
    agent ``i``'s payoff for ``action`` against ``last``'s other entries,
    where ``stat`` already includes ``last``'s contribution. ``finite``
    marks statistics with finitely many reachable values (required for
    lifted exact computations).
    """

    start: object
    advance: Callable[[object, Profile], object]
    payoff: Callable[[object, Profile, int, int], float]
    finite: bool = False


@dataclass(frozen=True)
class HistoryGame:
    """A game whose payoffs depend on the whole play history.

    ``utility(path, i, action)`` is agent ``i``'s payoff for choosing
    ``action`` while the other agents repeat their entries of the last
    profile of ``path``. When a sufficient statistic is attached, the
    oracle and the statistic route must agree; they are cross-checked by
    the test suite, not at call time.
    """

    n_players: int
    utility: Callable[[ProfilePath, int, int], float]
    statistic: SufficientStatistic | None = None
    label: str = ""

    def path_statistic(self, path: ProfilePath):
        if self.statistic is None:
            raise MissingStatisticError(f"game {self.label!r} carries no sufficient statistic")
        stat = self.statistic.start
        for a in path:
            stat = self.statistic.advance(stat, a)
        return stat


def check_path(path: ProfilePath, n_players: int | None = None) -> ProfilePath:
    if not isinstance(path, tuple) or not path:
        raise DimensionError(f"a history must be a nonempty tuple of profiles, got {path!r}")
    for a in path:
        check_profile(a, n_players)
    return path


def static_history_game(game: PotentialGame) -> HistoryGame:
    """Embed a static game as a history game that ignores everything but
    the last profile."""

    def utility(path: ProfilePath, i: int, action: int) -> float:
        check_path(path, game.n_players)
        return game.utility(i, set_action(path[-1], i, action))

    stat = SufficientStatistic(
        start=0,
        advance=lambda s, a: 0,
        payoff=lambda s, last, i, action: game.utility(i, set_action(last, i, action)),
        finite=True,
    )
    return HistoryGame(game.n_players, utility, stat, label=f"static({game.label})")


# ---------------------------------------------------------------------------
# alignment of a history game with a static reference


@dataclass(frozen=True)
class UtilityBounds:
    """Analytic bounds on a history game's payoffs, uniform over
    admissible histories ending in a given last profile.

    ``one_lower(i, last)`` lower-bounds the payoff of action 1;
    ``zero_upper(i, last)`` upper-bounds the payoff of action 0.
    """

    one_lower: Callable[[int, Profile], float]
    zero_upper: Callable[[int, Profile], float]


@dataclass(frozen=True)
class AlignmentViolation:
    condition: int  # 1: argmax, 2: action-1 payoffs, 3: action-0 payoffs
    path: ProfilePath | None
    profile: Profile | None
    agent: int  # 1-based; 0 when no single agent is implicated


@dataclass(frozen=True)
class AlignmentReport:
    aligned: bool
    condition_ok: tuple[bool, bool, bool]
    violations: tuple[AlignmentViolation, ...]
    checked: int
    mode: str


_WITNESS_CAP = 20  # stored violations per report; counting continues past it


def _others_leq(small: Profile, big: Profile, agent: int) -> bool:
    return all(x <= y for j, (x, y) in enumerate(zip(small, big)) if j != agent)


def verify_alignment(
    game: HistoryGame,
    reference: PotentialGame,
    max_len: int,
    mode: str = "enumerate",
    *,
    samples: int | None = None,
    seed: int | None = None,
    bounds: UtilityBounds | None = None,
    tol: float = UTILITY_TOL,
    cap: int = DEFAULT_PLAYER_CAP,
    path_cap: int = DEFAULT_PATH_CAP,
) -> AlignmentReport:
    """Check that a history game sits above a static reference.

    Three conditions: (1) the all-ones profile is the unique potential
    maximizer of ``reference``; for every history, every profile whose
    off-agent entries sit below the history's final profile, and every
    agent, (2) the history payoff of action 1 weakly exceeds the
    reference payoff, and (3) the reference payoff of action 0 weakly
    exceeds the history payoff.

    Modes: ``"enumerate"`` walks every history up to ``max_len``;
    ``"sample"`` draws ``samples`` random (history, profile, agent)
    triples with ``seed``; ``"analytic-bounds"`` replaces history payoffs
    by caller-supplied uniform ``bounds`` and enumerates profiles only.
    """
    from .rng import child_seed, make_rng  # local import keeps module deps one-way

    if game.n_players != reference.n_players:
        raise DimensionError("history game and reference have different player counts")
    n = game.n_players
    check = verify_exact_potential(reference, tol=tol, cap=cap)
    if not check.ok:
        raise ParameterError(f"reference is not an exact potential game: {check.witness}")

    violations: list[AlignmentViolation] = []
    counts = [0, 0, 0]  # per-condition violation counts
    checked = 0

    def note(cond: int, path, profile, agent_1based: int):
        counts[cond - 1] += 1
        if len(violations) < _WITNESS_CAP:
            violations.append(AlignmentViolation(cond, path, profile, agent_1based))

    top = all_ones(n)
    if potential_argmax(reference, tol=tol, cap=cap) != frozenset({top}):
        note(1, None, None, 0)
    checked += 1

    profiles = enumerate_profiles(n, cap)

    def check_triple(path: ProfilePath, a: Profile, i: int):
        nonlocal checked
        checked += 1
        hist_one = game.utility(path, i, 1)
        hist_zero = game.utility(path, i, 0)
        ref_one = reference.utility(i, set_action(a, i, 1))
        ref_zero = reference.utility(i, set_action(a, i, 0))
        if hist_one < ref_one - tol:
            note(2, path, a, i + 1)
        if ref_zero < hist_zero - tol:
            note(3, path, a, i + 1)

    if mode == "enumerate":
        total_paths = sum((1 << n) ** t for t in range(1, max_len + 1))
        if total_paths > path_cap:
            raise EnumerationBoundError(
                f"{total_paths} histories exceed the cap of {path_cap}"
            )
        for t in range(1, max_len + 1):
            for path in itertools.product(profiles, repeat=t):
                last = path[-1]
                for a in profiles:
                    for i in range(n):
                        if _others_leq(a, last, i):
                            check_triple(path, a, i)
    elif mode == "sample":
        if samples is None or seed is None:
            raise ParameterError("sample mode needs both samples and seed")
        for k in range(samples):
            rng = make_rng(child_seed(seed, "alignment-sample", k))
            t = 1 + int(rng.random() * max_len)
            path = tuple(
                index_profile(int(rng.random() * (1 << n)), n) for _ in range(min(t, max_len))
            )
            last = path[-1]
            i = int(rng.random() * n)
            # a is drawn under the order constraint off the chosen agent
            a = tuple(
                (1 if (rng.random() < 0.5 and (j == i or last[j] == 1)) else 0)
                for j in range(n)
            )
            check_triple(path, a, i)
    elif mode == "analytic-bounds":
        if bounds is None:
            raise MissingBoundsError("analytic-bounds mode needs a UtilityBounds instance")
        for last in profiles:
            for a in profiles:
                for i in range(n):
                    if not _others_leq(a, last, i):
                        continue
                    checked += 1
                    if bounds.one_lower(i, last) < reference.utility(i, set_action(a, i, 1)) - tol:
                        note(2, (last,), a, i + 1)
                    if reference.utility(i, set_action(a, i, 0)) < bounds.zero_upper(i, last) - tol:
                        note(3, (last,), a, i + 1)
    else:
        raise ParameterError(f"unknown alignment mode {mode!r}")

    cond_ok = (counts[0] == 0, counts[1] == 0, counts[2] == 0)
    return AlignmentReport(all(cond_ok), cond_ok, tuple(violations), checked, mode)


# ---------------------------------------------------------------------------
# JSON game documents


def game_from_json(doc: dict):
    """Build a game from its JSON document.

    The document carries ``n_players``, a ``kind`` of ``"gcg"``,
    ``"table"`` or ``"sisgcg"``, an optional ``graph`` as
    ``{"edges": [[i, j], ...]}`` with 1-based node ids, and ``params``.
    Returns a :class:`PotentialGame` for the static kinds and a
    :class:`HistoryGame` for ``"sisgcg"``.
    """
    if not isinstance(doc, dict):
        raise ParameterError("game document must be a JSON object")
    try:
        kind = doc["kind"]
        n = doc["n_players"]
    except KeyError as e:
        raise ParameterError(f"game document missing field {e.args[0]!r}") from None
    if not isinstance(n, int) or n < 1:
        raise ParameterError(f"n_players must be a positive int, got {n!r}")

    graph = graph_from_json(n, doc["graph"]) if "graph" in doc else None

    params = doc.get("params", {})
    if not isinstance(params, dict):
        raise ParameterError("params must be a JSON object")

    if kind == "gcg":
        if graph is None:
            raise ParameterError("gcg games need a graph")
        try:
            return gcg_game(graph, float(params["q"]), float(params["bonus"]))
        except KeyError as e:
            raise ParameterError(f"gcg params missing {e.args[0]!r}") from None
    if kind == "table":
        if "utility_table" not in doc or "potential_table" not in doc:
            raise ParameterError("table games need utility_table and potential_table")
        return table_game(n, doc["utility_table"], doc["potential_table"])
    if kind == "sisgcg":
        from . import epidemic  # deferred: epidemic imports this module

        config, grid_bins, one_shift = sisgcg_parts_from_json(graph, params)
        return epidemic.sisgcg_history_game(
            config, grid_bins=grid_bins, one_shift=one_shift
        )
    raise ParameterError(f"unknown game kind {kind!r}")


def graph_from_json(n_players: int, doc) -> Graph:
    """Parse ``{"edges": [[i, j], ...]}`` with 1-based node ids."""
    if not isinstance(doc, dict) or "edges" not in doc or not isinstance(doc["edges"], list):
        raise ParameterError("graph must be an object with an 'edges' list")
    pairs = []
    for e in doc["edges"]:
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(v, int) for v in e)):
            raise ParameterError(f"edge {e!r} must be a pair of ints")
        i, j = e
        if not (1 <= i <= n_players and 1 <= j <= n_players):
            raise ParameterError(
                f"edge {e!r} out of range for {n_players} nodes (node ids are 1-based)"
            )
        pairs.append((i - 1, j - 1))
    return Graph.from_edges(n_players, pairs)


def sisgcg_parts_from_json(graph: Graph | None, params: dict):
    """Parse epidemic-model JSON params into (config, grid_bins, one_shift)."""
    from . import epidemic  # deferred: epidemic imports this module

    if graph is None:
        raise ParameterError("sisgcg games need a graph")
    try:
        config = epidemic.SisgcgConfig(
            graph=graph,
            gamma=float(params["gamma"]),
            beta0=float(params["beta0"]),
            beta1=float(params["beta1"]),
            q=float(params["q"]),
            s0=float(params["s0"]),
            dt=float(params.get("dt", 0.1)),
            ode_substeps=int(params.get("ode_substeps", 10)),
        )
    except KeyError as e:
        raise ParameterError(f"sisgcg params missing {e.args[0]!r}") from None
    grid_bins = params.get("grid_bins")
    if grid_bins is not None:
        grid_bins = int(grid_bins)
    return config, grid_bins, float(params.get("one_shift", 0.0))
