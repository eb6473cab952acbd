"""Seeded verification campaigns.

Each campaign exercises one headline property of the library on pinned
instances, returns a result object with pass/fail detail, and can write
its rows to a CSV. All randomness descends from a master seed through
labeled child seeds, so identical seeds reproduce identical outputs byte
for byte. ``run_all_campaigns`` executes the full battery into a run
directory with a manifest.
"""

from __future__ import annotations

import math
import os
import time
from dataclasses import dataclass, field, replace

import numpy as np

from . import coupling as cp
from . import dynamics, epidemic, games, reporting
from .errors import ParameterError
from .rng import child_seed, make_rng

CANONICAL = dict(gamma=0.3, beta0=0.9, beta1=0.6, q=0.7)

#: The knife-edge model: ring of six agents, epidemic parameters at the
#: exact boundary where the cautious bonus equals the carefree payoff.
def ring6_config(s0: float = 0.2) -> epidemic.SisgcgConfig:
    return epidemic.SisgcgConfig(graph=games.Graph.ring(6), s0=s0, **CANONICAL)


def triangle_config(s0: float = 0.2) -> epidemic.SisgcgConfig:
    return epidemic.SisgcgConfig(graph=games.Graph.complete(3), s0=s0, **CANONICAL)


@dataclass(frozen=True)
class CampaignResult:
    name: str
    ok: bool
    header: tuple
    rows: tuple
    columns: dict = field(compare=False)
    notes: tuple = ()
    elapsed: float = field(default=0.0, compare=False)  # wall seconds, set by run_all_campaigns

    def write(self, out_dir: str) -> str:
        path = os.path.join(out_dir, f"{self.name}.csv")
        reporting.write_csv_atomic(path, list(self.header), self.rows)
        return path


# ---------------------------------------------------------------------------
# 1. one-step coupling well-definedness on random positions


def coupling_mass_campaign(
    seed: int = 0, pairs_per_case: int = 1000
) -> CampaignResult:
    """Random (history, lower profile) positions for the epidemic model
    against its frozen reference, on a triangle and on a 3-node line:
    every one-step coupling must be a bona fide monotone coupling."""
    graphs = [("triangle", games.Graph.complete(3)), ("line3", games.Graph.line(3))]
    taus = (0.1, 1.0, 10.0)
    rows = []
    ok = True
    for gname, graph in graphs:
        cfg = epidemic.SisgcgConfig(graph=graph, s0=0.2, **CANONICAL)
        hist = epidemic.sisgcg_history_game(cfg)
        ref = epidemic.frozen_infection_game(cfg)
        n = graph.n_nodes
        size = 1 << n
        for j, tau in enumerate(taus):
            rng = make_rng(child_seed(seed, f"coupling-{gname}", j))
            worst_total = 0.0
            worst_row = 0.0
            worst_col = 0.0
            support_ok = True
            entries_ok = True
            for _ in range(pairs_per_case):
                length = 1 + min(int(rng.random() * 6), 5)
                path = tuple(
                    games.index_profile(min(int(rng.random() * size), size - 1), n)
                    for _ in range(length)
                )
                upper = path[-1]
                lower = tuple(
                    x if x == 0 else int(rng.random() * 2) for x in upper
                )
                nu = cp.one_step_coupling(hist, ref, path, lower, tau)
                chk = cp.verify_one_step(nu, hist, ref, tau)
                worst_total = max(worst_total, abs(chk.total - 1.0))
                worst_row = max(worst_row, chk.max_static_residual)
                worst_col = max(worst_col, chk.max_history_residual)
                support_ok = support_ok and chk.support_ok
                entries_ok = entries_ok and chk.entries_ok
            case_ok = (
                support_ok
                and entries_ok
                and worst_total <= 1e-12
                and worst_row <= 1e-12
                and worst_col <= 1e-12
            )
            ok = ok and case_ok
            rows.append(
                (gname, tau, pairs_per_case, worst_total, worst_row, worst_col,
                 support_ok, entries_ok, case_ok)
            )
    return CampaignResult(
        "coupling_mass", ok,
        ("graph", "tau", "pairs", "max_total_err", "max_static_residual",
         "max_history_residual", "support_ok", "entries_ok", "ok"),
        tuple(rows),
        {
            "graph": "network the epidemic model runs on",
            "tau": "learning temperature",
            "pairs": "random (history, lower profile) positions tested",
            "max_total_err": "worst |total mass - 1| across couplings",
            "max_static_residual": "worst static-marginal mismatch vs the kernel row",
            "max_history_residual": "worst history-marginal mismatch vs the kernel row",
            "support_ok": "1 if every coupling lived on ordered pairs only",
            "entries_ok": "1 if every entry lay in [0, 1]",
            "ok": "1 if all checks passed at 1e-12",
        },
    )


# ---------------------------------------------------------------------------
# 2. deviation bijections, exhaustively


def bijection_campaign(max_players: int = 5) -> CampaignResult:
    """Every ordered profile pair up to ``max_players`` players: the
    matched-deviation map must carry each deviation class onto its
    partner bijectively."""
    rows = []
    ok = True
    for n in range(1, max_players + 1):
        profiles = games.enumerate_profiles(n)
        n_pairs = 0
        n_ok = 0
        for lower in profiles:
            for upper in profiles:
                if not games.profile_leq(lower, upper):
                    continue
                n_pairs += 1
                if cp.verify_bijection(lower, upper).ok:
                    n_ok += 1
        ok = ok and n_ok == n_pairs
        rows.append((n, n_pairs, n_ok, n_ok == n_pairs))
    return CampaignResult(
        "bijections", ok,
        ("n_players", "ordered_pairs", "bijective", "ok"),
        tuple(rows),
        {
            "n_players": "profile length",
            "ordered_pairs": "componentwise-ordered profile pairs checked",
            "bijective": "pairs whose three deviation-class maps were bijections",
            "ok": "1 if every pair passed",
        },
    )


# ---------------------------------------------------------------------------
# 3. per-agent update dominance, exhaustively on small instances


def update_dominance_campaign() -> CampaignResult:
    """All (history, lower profile, agent) positions with the other
    agents dominating, for the grid-statistic epidemic model on complete
    graphs of 1..3 nodes and paths up to length 3: the payoff hypothesis
    must hold and imply flip-probability dominance, with the
    flip-to-zero comparison its exact mirror."""
    rows = []
    ok = True
    for n in (1, 2, 3):
        cfg = epidemic.SisgcgConfig(graph=games.Graph.complete(n), s0=0.2, **CANONICAL)
        hist = epidemic.sisgcg_history_game(cfg, grid_bins=10_000)
        ref = epidemic.frozen_infection_game(cfg)
        profiles = games.enumerate_profiles(n)
        for tau in (0.5, 1.0):
            checked = 0
            hyp_failures = 0
            dom_failures = 0
            mirror_failures = 0
            for length in (1, 2, 3):
                for path_idx in range((1 << n) ** length):
                    rem = path_idx
                    path = []
                    for _ in range(length):
                        path.append(profiles[rem % (1 << n)])
                        rem //= 1 << n
                    path = tuple(path)
                    upper = path[-1]
                    for lower in profiles:
                        for agent in range(n):
                            if any(
                                upper[j] < lower[j] for j in range(n) if j != agent
                            ):
                                continue
                            rep = cp.check_update_dominance(
                                hist, ref, path, lower, agent, tau
                            )
                            checked += 1
                            if not rep.hypothesis_met:
                                hyp_failures += 1
                            elif not rep.dominance_holds:
                                dom_failures += 1
                            if not rep.complement_consistent:
                                mirror_failures += 1
            case_ok = hyp_failures == 0 and dom_failures == 0 and mirror_failures == 0
            ok = ok and case_ok
            rows.append(
                (n, tau, checked, hyp_failures, dom_failures, mirror_failures, case_ok)
            )
    return CampaignResult(
        "update_dominance", ok,
        ("n_players", "tau", "instances", "hypothesis_failures",
         "dominance_failures", "mirror_failures", "ok"),
        tuple(rows),
        {
            "n_players": "complete-graph size",
            "tau": "learning temperature",
            "instances": "(history, lower profile, agent) positions checked",
            "hypothesis_failures": "positions where the payoff sandwich failed",
            "dominance_failures": "positions where the flip-to-1 probability dropped",
            "mirror_failures": "positions where the flip-to-0 comparison disagreed",
            "ok": "1 if all three counts are zero",
        },
    )


# ---------------------------------------------------------------------------
# 4. exhaustive path-coupling verification


def _two_player_pairs():
    cfg = epidemic.SisgcgConfig(graph=games.Graph.from_edges(2, [(0, 1)]), s0=0.2, **CANONICAL)
    hist = epidemic.sisgcg_history_game(cfg, grid_bins=10_000)
    ref = epidemic.frozen_infection_game(cfg)
    yield "sisgcg", hist, ref
    g = epidemic.frozen_infection_game(cfg)
    yield "embedded", games.static_history_game(g), g


def path_coupling_campaign(
    max_horizon: int = 4, tau: float = 1.0
) -> CampaignResult:
    """Two-player instances, all path pairs up to the horizon: the chained
    coupling must hit both path measures exactly, with monotone support."""
    rows = []
    ok = True
    init = dynamics.InitialDistribution.uniform(2)
    for label, hist, ref in _two_player_pairs():
        for horizon in range(1, max_horizon + 1):
            rep = cp.verify_path_coupling(hist, ref, init, horizon, tau)
            ok = ok and rep.ok
            rows.append(
                (label, horizon, rep.n_pairs, rep.total,
                 rep.max_static_residual, rep.max_history_residual,
                 rep.support_ok, rep.ok)
            )
    return CampaignResult(
        "path_coupling", ok,
        ("pair", "horizon", "path_pairs", "total_mass",
         "max_static_residual", "max_history_residual", "support_ok", "ok"),
        tuple(rows),
        {
            "pair": "which game pair was coupled",
            "horizon": "trajectory length",
            "path_pairs": "ordered path pairs enumerated",
            "total_mass": "sum of all coupling masses",
            "max_static_residual": "worst static path-measure mismatch",
            "max_history_residual": "worst history path-measure mismatch",
            "support_ok": "1 if mass only sat on ordered path pairs",
            "ok": "1 if everything held at 1e-10",
        },
    )


# ---------------------------------------------------------------------------
# 5. the expectation-gap identity on the same instances


def expectation_identity_campaign(
    max_horizon: int = 4, tau: float = 1.0
) -> CampaignResult:
    """Both increasing statistics (final profile is all-ones; count of
    all-ones steps) on the path-coupling instances: the layered identity
    must close to 1e-10."""
    top = (1, 1)
    stats = [
        ("final_all_ones", lambda p: 1 if p[-1] == top else 0),
        ("count_all_ones", lambda p: sum(1 for x in p if x == top)),
    ]
    rows = []
    ok = True
    init = dynamics.InitialDistribution.uniform(2)
    for label, hist, ref in _two_player_pairs():
        for horizon in range(2, max_horizon + 1):
            rep = cp.verify_path_coupling(hist, ref, init, horizon, tau)
            for sname, zf in stats:
                res = cp.expectation_gap(
                    zf, rep.history_measure, rep.static_measure, rep.coupling
                )
                ok = ok and res.ok
                rows.append(
                    (label, horizon, sname, res.lhs, res.rhs, res.difference, res.ok)
                )
    return CampaignResult(
        "expectation_identity", ok,
        ("pair", "horizon", "statistic", "lhs", "rhs", "difference", "ok"),
        tuple(rows),
        {
            "pair": "which game pair was coupled",
            "horizon": "trajectory length",
            "statistic": "increasing path statistic tested",
            "lhs": "history expectation minus reference expectation",
            "rhs": "layered coupling mass across thresholds",
            "difference": "lhs - rhs",
            "ok": "1 if |difference| <= 1e-10",
        },
    )


# ---------------------------------------------------------------------------
# 6. stochastic dominance of all-ones, exact lifted vs Monte Carlo


def _grid_advance_table(cfg: epidemic.SisgcgConfig, n_bins: int) -> np.ndarray:
    """advance[ones, bin] for the grid statistic, built with the same
    scalar integrator the history game uses."""
    n = cfg.graph.n_nodes
    table = np.empty((n + 1, n_bins), dtype=np.int64)
    for ones in range(n + 1):
        beta = (ones * cfg.beta1 + (n - ones) * cfg.beta0) / n
        for k in range(n_bins):
            nxt = epidemic.integrate_susceptible(
                epidemic.grid_value(k, n_bins), beta, cfg.gamma, cfg.dt, cfg.ode_substeps
            )
            table[ones, k] = epidemic.snap_to_grid(nxt, n_bins)
    return table


def _mc_all_ones(cfg, n_bins, tau, horizon, reps, seed):
    """Fraction of replicas at the all-ones profile at each time 1..horizon.

    Consumes, per replica, the same uniform stream as the one-replica
    simulator (one initial draw, then an agent draw and an action draw
    per step), so the two are interchangeable sample for sample.
    """
    n = cfg.graph.n_nodes
    size = 1 << n
    pop, n1t, deg = epidemic._graph_tables(
        (n, tuple(sorted(cfg.graph.edges)))
    )
    adv = _grid_advance_table(cfg, n_bins)
    draws = np.empty((reps, 1 + 2 * (horizon - 1)))
    for r in range(reps):
        draws[r] = make_rng(child_seed(seed, "replica", r)).random(draws.shape[1])
    mask = np.minimum((draws[:, 0] * size).astype(np.int64), size - 1)
    start_bin = epidemic.snap_to_grid(cfg.s0, n_bins)
    bins = np.empty(reps, dtype=np.int64)
    bins[:] = adv[pop[mask], start_bin]
    hits = np.empty(horizon, dtype=np.int64)
    hits[0] = int((mask == size - 1).sum())
    for t in range(1, horizon):
        u_agent = draws[:, 1 + 2 * (t - 1)]
        u_act = draws[:, 2 + 2 * (t - 1)]
        agent = np.minimum((u_agent * n).astype(np.int64), n - 1)
        n1 = n1t[mask, agent]
        s = bins / (n_bins - 1)
        du = n1 * (cfg.q + (1.0 - s)) - (deg[agent] - n1)
        p1 = 1.0 / (1.0 + np.exp(np.clip(-du / tau, -709.0, 709.0)))
        act = u_act < p1
        bit = np.int64(1) << agent
        mask = np.where(act, mask | bit, mask & ~bit)
        bins = adv[pop[mask], bins]
        hits[t] = int((mask == size - 1).sum())
    return hits / reps


def dominance_campaign(
    seed: int = 0,
    horizon_max: int = 12,
    mc_reps: int = 100_000,
    mc_tau: float = 0.5,
) -> CampaignResult:
    """Triangle epidemic model vs its frozen reference, exact lifted
    recursion on a 10^4-point statistic grid: the all-ones probability
    gap must be >= -1e-10 at every horizon up to 12 for each
    temperature, and the lifted values must agree with a large Monte
    Carlo batch within four standard errors."""
    cfg = triangle_config()
    n_bins = 10_000
    hist = epidemic.sisgcg_history_game(cfg, grid_bins=n_bins)
    ref = epidemic.frozen_infection_game(cfg)
    init = dynamics.InitialDistribution.uniform(3)
    rows = []
    ok = True
    exact_at_mc_tau = None
    for j, tau in enumerate((0.1, 0.5, 1.0)):
        rep = cp.dominance_check(
            hist, ref, init, tau, horizon_max, "exact",
            seed=child_seed(seed, "dominance", j), upper_set_samples=2,
        )
        ok = ok and rep.ok
        for r in rep.rows:
            rows.append(
                ("exact", tau, r.horizon, r.p_history, r.p_reference, r.gap, "", r.ok)
            )
        if tau == mc_tau:
            exact_at_mc_tau = [r.p_history for r in rep.rows]
    mc = _mc_all_ones(
        cfg, n_bins, mc_tau, horizon_max, mc_reps, child_seed(seed, "dominance-mc")
    )
    for t in range(horizon_max):
        est = float(mc[t])
        stderr = math.sqrt(max(est * (1.0 - est), 1e-30) / mc_reps)
        diff = est - exact_at_mc_tau[t]
        row_ok = abs(diff) <= 4.0 * stderr
        ok = ok and row_ok
        rows.append(
            ("monte-carlo", mc_tau, t + 1, est, exact_at_mc_tau[t], diff, stderr, row_ok)
        )
    return CampaignResult(
        "dominance", ok,
        ("mode", "tau", "T", "p_history", "p_reference", "gap", "stderr", "ok"),
        tuple(rows),
        {
            "mode": "exact lifted recursion, or Monte Carlo agreement row",
            "tau": "learning temperature",
            "T": "horizon",
            "p_history": "all-ones probability under the epidemic model",
            "p_reference": "exact rows: same under the frozen reference; "
            "monte-carlo rows: the lifted value being validated",
            "gap": "exact rows: history minus reference; monte-carlo rows: "
            "sample estimate minus lifted value",
            "stderr": "binomial standard error (monte-carlo rows only)",
            "ok": "exact rows: gap >= -1e-10 and upper-set checks passed; "
            "monte-carlo rows: agreement within four standard errors",
        },
        notes=(f"monte carlo batch: {mc_reps} replicas at tau={mc_tau}",),
    )


# ---------------------------------------------------------------------------
# 7. stationary distribution vs the Gibbs measure on random games


def _random_potential_game(n: int, rng) -> games.PotentialGame:
    size = 1 << n
    phi = rng.standard_normal(size)
    offsets = [rng.standard_normal(size >> 1) for _ in range(n)]

    def minus_index(a, i):
        idx = 0
        shift = 0
        for j in range(n):
            if j == i:
                continue
            idx |= a[j] << shift
            shift += 1
        return idx

    def utility(i, a):
        return float(phi[games.profile_index(a)] + offsets[i][minus_index(a, i)])

    def potential(a):
        return float(phi[games.profile_index(a)])

    return games.PotentialGame(n, utility, potential, label=f"random(n={n})")


def gibbs_oracle_campaign(
    seed: int = 0, n_games: int = 50
) -> CampaignResult:
    """Random potential games (shared potential plus per-agent dummy
    terms): the exact stationary law of the learning kernel must match
    the Gibbs measure of the potential to total variation 1e-8."""
    rows = []
    ok = True
    for k in range(n_games):
        rng = make_rng(child_seed(seed, "gibbs-game", k))
        n = 1 + int(rng.random() * 4)
        game = _random_potential_game(n, rng)
        report = games.verify_exact_potential(game)
        worst = 0.0
        for tau in (0.2, 1.0, 5.0):
            pi = dynamics.stationary_distribution(game, tau)
            gb = dynamics.gibbs_distribution(game.potential, n, tau)
            worst = max(worst, dynamics.total_variation(pi, gb))
        row_ok = report.ok and worst <= 1e-8
        ok = ok and row_ok
        rows.append((k, n, report.ok, worst, row_ok))
    return CampaignResult(
        "gibbs_oracle", ok,
        ("game", "n_players", "potential_ok", "max_tv", "ok"),
        tuple(rows),
        {
            "game": "index of the random game",
            "n_players": "number of players",
            "potential_ok": "1 if unilateral differences matched the potential",
            "max_tv": "worst total variation to the Gibbs measure over temperatures",
            "ok": "1 if the game passed at 1e-8",
        },
    )


# ---------------------------------------------------------------------------
# 8. low-temperature occupancy of the cautious convention


def occupancy_sweep_campaign(
    seed: int = 0,
    reps: int = 1000,
    horizon: int = 10_000,
    burn_in: int = 2000,
) -> CampaignResult:
    """Ring-of-six epidemic model along a cooling schedule: post-burn-in
    occupancy of all-ones must exceed 0.95 at the coldest temperature
    and be nondecreasing along the schedule within sampling error. The
    Gibbs mass of all-ones for the frozen reference rides along as a
    quantitative anchor.

    Replicas start at the cautious convention: the experiment measures
    how firmly each temperature holds the convention once reached, which
    is what the Gibbs anchor predicts. (A uniform random start instead
    measures basin sizes: near zero temperature the all-carefree profile
    is effectively absorbing and lone-cautious starts lose a
    best-response race with probability about 1/3, capping occupancy
    near 0.94 at every horizon regardless of stability.)"""
    cfg = ring6_config(s0=0.2)
    schedule = (1.0, 0.5, 0.2, 0.1, 0.05)
    result = epidemic.ss_experiment(
        cfg, schedule, burn_in, horizon, reps, child_seed(seed, "occupancy"),
        init_profile=games.all_ones(6),
    )
    ref = epidemic.frozen_infection_game(cfg)
    anchors = {
        tau: dynamics.gibbs_distribution(ref.potential, 6, tau).prob(games.all_ones(6))
        for tau in schedule
    }
    rows = []
    ok = True
    prev = None
    for r in result.rows:
        monotone = True
        if prev is not None:
            slack = 2.0 * math.hypot(prev[1], r.stderr)
            monotone = r.occupancy >= prev[0] - slack
        threshold_ok = r.tau > 0.05 or r.occupancy > 0.95
        row_ok = monotone and threshold_ok
        ok = ok and row_ok
        rows.append(
            (r.tau, r.occupancy, r.stderr, r.occupancy_post_entry,
             r.entered, r.violations, anchors[r.tau], row_ok)
        )
        prev = (r.occupancy, r.stderr)
    return CampaignResult(
        "occupancy_sweep", ok,
        ("tau", "occupancy", "stderr", "occupancy_post_entry",
         "entered", "violations", "gibbs_anchor", "ok"),
        tuple(rows),
        {
            "tau": "learning temperature (cooling order)",
            "occupancy": "mean post-burn-in fraction of steps at all-ones",
            "stderr": "standard error over replicas",
            "occupancy_post_entry": "same, restricted to post-entry samples",
            "entered": "replicas that entered the invariant band",
            "violations": "post-entry excursions above the band (must be 0)",
            "gibbs_anchor": "Gibbs mass of all-ones for the frozen reference",
            "ok": "1 if nondecreasing within 2 stderr and above 0.95 when coldest",
        },
        notes=tuple(result.warnings),
    )


# ---------------------------------------------------------------------------
# 9. invariant-band entry from far above


def invariance_campaign(
    seed: int = 0, reps: int = 100, n_steps: int = 2000
) -> CampaignResult:
    """Seeded runs started at s0 = 0.9, far above the invariant band:
    every replica must enter the band in finite time and never leave."""
    cfg = ring6_config(s0=0.9)
    batch = epidemic.run_sisgcg_batch(
        cfg, tau=1.0, n_steps=n_steps, seed=child_seed(seed, "invariance"), reps=reps
    )
    rows = []
    ok = True
    for r in range(reps):
        entered = batch.entered[r]
        row_ok = entered >= 0 and batch.violations[r] == 0
        ok = ok and row_ok
        rows.append(
            (r, entered, "" if entered < 0 else entered * cfg.dt,
             batch.violations[r], row_ok)
        )
    return CampaignResult(
        "invariance", ok,
        ("replica", "entry_index", "entry_time", "violations", "ok"),
        tuple(rows),
        {
            "replica": "replica index",
            "entry_index": "first sample index with s inside the band (-1 if never)",
            "entry_time": "entry index times the update interval",
            "violations": "post-entry samples above the band",
            "ok": "1 if the replica entered and never left",
        },
    )


# ---------------------------------------------------------------------------
# 10. integrator convergence order


def integrator_order_campaign() -> CampaignResult:
    """Constant-rate runs of the susceptible flow: halving the step must
    shrink the endpoint error at least twelvefold per refinement,
    measured against a fine-step reference solution."""
    gamma, beta, s0, total = 0.3, 0.75, 0.9, 2.0
    reference = epidemic.integrate_susceptible(s0, beta, gamma, total, 1 << 15)
    rows = []
    errors = []
    for level in range(4):
        substeps = 4 << level
        endpoint = epidemic.integrate_susceptible(s0, beta, gamma, total, substeps)
        errors.append(abs(endpoint - reference))
        ratio = None if level == 0 else errors[level - 1] / errors[level]
        rows.append(
            (total / substeps, substeps, endpoint, errors[level], ratio,
             ratio is None or ratio >= 12.0)
        )
    ok = all(r[-1] for r in rows)
    rows = tuple(rows)
    return CampaignResult(
        "integrator_order", ok,
        ("step", "substeps", "endpoint", "abs_error", "ratio", "ok"),
        rows,
        {
            "step": "integration step size",
            "substeps": "steps over the whole interval",
            "endpoint": "susceptible fraction at the final time",
            "abs_error": "distance to the fine-step reference",
            "ratio": "error shrink factor from the previous row",
            "ok": "1 if all shrink factors reached 12",
        },
        notes=(f"reference: {1 << 15} steps; gamma={gamma} beta={beta} s0={s0} T={total}",),
    )


# ---------------------------------------------------------------------------
# the full battery


CAMPAIGNS = (
    "coupling_mass",
    "bijections",
    "update_dominance",
    "path_coupling",
    "expectation_identity",
    "dominance",
    "gibbs_oracle",
    "occupancy_sweep",
    "invariance",
    "integrator_order",
)


def run_all_campaigns(out_dir: str, seed: int = 0) -> list[CampaignResult]:
    """Run every campaign with child seeds of ``seed``, writing one CSV
    per campaign plus a manifest into ``out_dir``."""
    os.makedirs(out_dir, exist_ok=True)
    runs = [
        lambda: coupling_mass_campaign(seed=child_seed(seed, "campaign", 1)),
        bijection_campaign,
        update_dominance_campaign,
        path_coupling_campaign,
        expectation_identity_campaign,
        lambda: dominance_campaign(seed=child_seed(seed, "campaign", 6)),
        lambda: gibbs_oracle_campaign(seed=child_seed(seed, "campaign", 7)),
        lambda: occupancy_sweep_campaign(seed=child_seed(seed, "campaign", 8)),
        lambda: invariance_campaign(seed=child_seed(seed, "campaign", 9)),
        integrator_order_campaign,
    ]
    results = []
    for run in runs:
        t0 = time.perf_counter()
        res = run()
        results.append(replace(res, elapsed=time.perf_counter() - t0))
    outputs = {}
    for res in results:
        res.write(out_dir)
        outputs[f"{res.name}.csv"] = res.columns
    reporting.write_manifest(out_dir, {"campaigns": list(CAMPAIGNS)}, seed, outputs)
    return results
