"""Command line harness.

Subcommands: ``simulate`` (one learning trajectory to CSV), ``verify``
(a configurable battery of structural checks to JSON), ``dominance``
(all-ones probability of the history game vs its reference per horizon),
``sweep`` (temperature sweeps: occupancy experiment for the epidemic
model, all-ones probability for static games), and ``epidemic`` (one
coupled epidemic run with its invariance report).

Every run reads one JSON config, takes a master seed, and writes its
outputs plus a checksum manifest atomically into the output directory;
identical config and seed reproduce identical bytes. Exit codes:
0 success, 1 runtime or verification failure, 2 configuration error.
Malformed configs are rejected before anything is written.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import coupling as cp
from . import dynamics, epidemic, games, reporting
from .errors import (
    DimensionError,
    EnumerationBoundError,
    LlgamesError,
    ParameterError,
)
from .rng import child_seed

MODES = ("exact-paths", "exact-lifted", "monte-carlo")

VERIFY_CHECKS = (
    "potential",
    "argmax",
    "alignment",
    "bijection",
    "one-step",
    "path-coupling",
    "expectation-gap",
)


# ---------------------------------------------------------------------------
# config plumbing


def _load_config(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as e:
        raise ParameterError(f"cannot read config {path!r}: {e}") from None
    except json.JSONDecodeError as e:
        raise ParameterError(f"config {path!r} is not valid JSON: {e}") from None
    if not isinstance(doc, dict):
        raise ParameterError("config must be a JSON object")
    return doc


def _resolve_seed(args, doc) -> int:
    seed = args.seed if args.seed is not None else doc.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool) or not 0 <= seed < 1 << 64:
        raise ParameterError(f"seed must be an unsigned 64-bit int, got {seed!r}")
    return seed


def _resolve_int(args_value, doc, key, minimum, default=None):
    value = args_value if args_value is not None else doc.get(key, default)
    if value is None:
        return None
    if not isinstance(value, int) or isinstance(value, bool) or value < minimum:
        raise ParameterError(f"{key} must be an int >= {minimum}, got {value!r}")
    return value


def _resolve_mode(args, doc, allowed, default=None):
    mode = args.mode if args.mode is not None else doc.get("mode", default)
    if mode is None:
        raise ParameterError("a mode is required (flag --mode or config key 'mode')")
    if mode not in allowed:
        raise ParameterError(f"mode must be one of {allowed}, got {mode!r}")
    return mode


def _require(doc, key):
    if key not in doc:
        raise ParameterError(f"config missing required key {key!r}")
    return doc[key]


def _number(doc, key, default=None):
    value = doc.get(key, default)
    if value is None:
        raise ParameterError(f"config missing required key {key!r}")
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParameterError(f"{key} must be a number, got {value!r}")
    return float(value)


def _build_init(spec, n_players: int) -> dynamics.InitialDistribution:
    if spec is None or spec == "uniform":
        return dynamics.InitialDistribution.uniform(n_players)
    if isinstance(spec, dict) and set(spec) == {"point"}:
        return dynamics.InitialDistribution.point(
            games.parse_profile_string(spec["point"], n_players)
        )
    if isinstance(spec, dict) and set(spec) == {"probs"} and isinstance(spec["probs"], dict):
        probs = {
            games.parse_profile_string(k, n_players): float(v)
            for k, v in spec["probs"].items()
        }
        return dynamics.InitialDistribution(n_players, probs)
    raise ParameterError(
        "init must be \"uniform\", {\"point\": bitstring} or {\"probs\": {bitstring: mass}}"
    )


def _game_doc(doc) -> dict:
    game = _require(doc, "game")
    if not isinstance(game, dict):
        raise ParameterError("game must be a JSON object")
    return game


def _build_pair(game_doc: dict):
    """(history game, reference game, extras) for pair-based commands.

    A ``sisgcg`` document yields the epidemic model against its frozen
    reference; static kinds are embedded against themselves.
    """
    if game_doc.get("kind") == "sisgcg":
        n = game_doc.get("n_players")
        if not isinstance(n, int) or n < 1:
            raise ParameterError(f"n_players must be a positive int, got {n!r}")
        graph = (
            games.graph_from_json(n, game_doc["graph"]) if "graph" in game_doc else None
        )
        params = game_doc.get("params", {})
        if not isinstance(params, dict):
            raise ParameterError("params must be a JSON object")
        config, grid_bins, one_shift = games.sisgcg_parts_from_json(graph, params)
        history = epidemic.sisgcg_history_game(
            config, grid_bins=grid_bins, one_shift=one_shift
        )
        reference = epidemic.frozen_infection_game(config)
        extras = {
            "config": config,
            "bounds": epidemic.alignment_bounds(config, one_shift=one_shift),
            "lifted_exact": grid_bins is not None,
        }
        return history, reference, extras
    game = games.game_from_json(game_doc)
    if not isinstance(game, games.PotentialGame):
        raise ParameterError("pair-based commands need a static or sisgcg game")
    return games.static_history_game(game), game, {"lifted_exact": True}


def _digest_doc(command: str, doc: dict, seed: int, **resolved) -> dict:
    return {"command": command, "config": doc, "seed": seed, **resolved}


# ---------------------------------------------------------------------------
# simulate


def cmd_simulate(args, doc: dict) -> int:
    seed = _resolve_seed(args, doc)
    game = games.game_from_json(_game_doc(doc))
    tau = _number(doc, "tau")
    horizon = _resolve_int(None, doc, "horizon", 1)
    if horizon is None:
        raise ParameterError("config missing required key 'horizon'")
    init = _build_init(doc.get("init"), game.n_players)

    os.makedirs(args.out, exist_ok=True)
    run = dynamics.simulate(game, init, tau, horizon, child_seed(seed, "simulate"))
    rows = [(t + 1, games.profile_string(a)) for t, a in enumerate(run.path)]
    reporting.write_csv_atomic(os.path.join(args.out, "path.csv"), ["t", "profile"], rows)
    reporting.write_manifest(
        args.out,
        _digest_doc("simulate", doc, seed),
        seed,
        {
            "path.csv": {
                "t": "1-based time step",
                "profile": "action profile bitstring, agent 1 leftmost",
            }
        },
    )
    return 0


# ---------------------------------------------------------------------------
# verify


def _check_potential(reference, **_):
    rep = games.verify_exact_potential(reference)
    out = {"status": "pass" if rep.ok else "fail"}
    if rep.witness is not None:
        out["witness"] = {
            "profile": games.profile_string(rep.witness.profile),
            "agent": rep.witness.agent,
            "residual": rep.witness.residual,
        }
    return out


def _check_argmax(reference, **_):
    arg = games.potential_argmax(reference)
    top = games.all_ones(reference.n_players)
    ok = arg == frozenset({top})
    return {
        "status": "pass" if ok else "fail",
        "argmax": sorted(games.profile_string(a) for a in arg),
    }


def _check_alignment(history, reference, extras, opts, **_):
    mode = opts.get("alignment_mode", "enumerate")
    kwargs = {}
    if mode == "sample":
        kwargs = {"samples": opts.get("alignment_samples", 500), "seed": opts["seed"]}
    elif mode == "analytic-bounds":
        if "bounds" not in extras:
            return {"status": "skipped: bound", "reason": "no payoff bounds for this pair"}
        kwargs = {"bounds": extras["bounds"]}
    try:
        rep = games.verify_alignment(
            history, reference, opts.get("alignment_max_len", 3), mode, **kwargs
        )
    except EnumerationBoundError as e:
        return {"status": "skipped: bound", "reason": str(e)}
    out = {
        "status": "pass" if rep.aligned else "fail",
        "mode": rep.mode,
        "checked": rep.checked,
        "conditions_ok": list(rep.condition_ok),
    }
    if rep.violations:
        v = rep.violations[0]
        out["witness"] = {
            "condition": v.condition,
            "agent": v.agent,
            "path": None if v.path is None else [games.profile_string(a) for a in v.path],
            "profile": None if v.profile is None else games.profile_string(v.profile),
        }
    return out


def _check_bijection(history, **_):
    n = history.n_players
    if n > 6:
        return {"status": "skipped: bound", "reason": f"{3 ** n} ordered pairs"}
    failures = 0
    checked = 0
    for lower in games.enumerate_profiles(n):
        for upper in games.enumerate_profiles(n):
            if games.profile_leq(lower, upper):
                checked += 1
                if not cp.verify_bijection(lower, upper).ok:
                    failures += 1
    return {
        "status": "pass" if failures == 0 else "fail",
        "checked": checked,
        "failures": failures,
    }


def _check_one_step(history, reference, opts, **_):
    from .rng import make_rng

    n = history.n_players
    size = 1 << n
    rng = make_rng(child_seed(opts["seed"], "verify-one-step"))
    samples = opts.get("one_step_samples", 200)
    tau = opts["tau"]
    worst_total = 0.0
    worst_row = 0.0
    worst_col = 0.0
    for _ in range(samples):
        length = 1 + min(int(rng.random() * 4), 3)
        path = tuple(
            games.index_profile(min(int(rng.random() * size), size - 1), n)
            for _ in range(length)
        )
        lower = tuple(x if x == 0 else int(rng.random() * 2) for x in path[-1])
        try:
            nu = cp.one_step_coupling(history, reference, path, lower, tau)
        except LlgamesError as e:
            return {"status": "fail", "error": str(e)}
        chk = cp.verify_one_step(nu, history, reference, tau)
        if not chk.ok:
            return {
                "status": "fail",
                "max_static_residual": chk.max_static_residual,
                "max_history_residual": chk.max_history_residual,
            }
        worst_total = max(worst_total, abs(chk.total - 1.0))
        worst_row = max(worst_row, chk.max_static_residual)
        worst_col = max(worst_col, chk.max_history_residual)
    return {
        "status": "pass",
        "samples": samples,
        "max_total_err": worst_total,
        "max_static_residual": worst_row,
        "max_history_residual": worst_col,
    }


def _path_coupling_report(history, reference, opts):
    init = dynamics.InitialDistribution.uniform(history.n_players)
    return cp.verify_path_coupling(
        history,
        reference,
        init,
        opts.get("coupling_horizon", 3),
        opts["tau"],
        pair_cap=opts.get("pair_cap", 1 << 22),
    )


def _check_path_coupling(history, reference, opts, cache, **_):
    try:
        rep = _path_coupling_report(history, reference, opts)
    except EnumerationBoundError as e:
        return {"status": "skipped: bound", "reason": str(e)}
    cache["path_coupling"] = rep
    return {
        "status": "pass" if rep.ok else "fail",
        "horizon": rep.horizon,
        "path_pairs": rep.n_pairs,
        "total_mass": rep.total,
        "max_static_residual": rep.max_static_residual,
        "max_history_residual": rep.max_history_residual,
        "support_ok": rep.support_ok,
    }


def _check_expectation_gap(history, reference, opts, cache, **_):
    rep = cache.get("path_coupling")
    if rep is None:
        try:
            rep = _path_coupling_report(history, reference, opts)
        except EnumerationBoundError as e:
            return {"status": "skipped: bound", "reason": str(e)}
    top = games.all_ones(history.n_players)
    results = {}
    ok = True
    for name, zf in (
        ("final_all_ones", lambda p: 1 if p[-1] == top else 0),
        ("count_all_ones", lambda p: sum(1 for x in p if x == top)),
    ):
        res = cp.expectation_gap(zf, rep.history_measure, rep.static_measure, rep.coupling)
        ok = ok and res.ok
        results[name] = {"lhs": res.lhs, "rhs": res.rhs, "difference": res.difference}
    return {"status": "pass" if ok else "fail", "statistics": results}


_CHECK_FUNCS = {
    "potential": _check_potential,
    "argmax": _check_argmax,
    "alignment": _check_alignment,
    "bijection": _check_bijection,
    "one-step": _check_one_step,
    "path-coupling": _check_path_coupling,
    "expectation-gap": _check_expectation_gap,
}


def cmd_verify(args, doc: dict) -> int:
    seed = _resolve_seed(args, doc)
    history, reference, extras = _build_pair(_game_doc(doc))
    checks = doc.get("checks", list(VERIFY_CHECKS))
    if not isinstance(checks, list) or any(c not in VERIFY_CHECKS for c in checks):
        raise ParameterError(f"checks must be a list drawn from {VERIFY_CHECKS}")
    opts = {
        "seed": seed,
        "tau": _number(doc, "tau", 1.0),
        "alignment_mode": doc.get("alignment_mode", "enumerate"),
        "alignment_max_len": doc.get("alignment_max_len", 3),
        "alignment_samples": doc.get("alignment_samples", 500),
        "one_step_samples": doc.get("one_step_samples", 200),
        "coupling_horizon": doc.get("coupling_horizon", 3),
        "pair_cap": doc.get("pair_cap", 1 << 22),
    }
    dynamics.check_temperature(opts["tau"])

    os.makedirs(args.out, exist_ok=True)
    cache: dict = {}
    report = {}
    failed = []
    for name in checks:
        try:
            entry = _CHECK_FUNCS[name](
                history=history, reference=reference, extras=extras, opts=opts,
                cache=cache,
            )
        except EnumerationBoundError as e:
            entry = {"status": "skipped: bound", "reason": str(e)}
        except LlgamesError as e:
            entry = {"status": "fail", "error": str(e)}
        report[name] = entry
        if entry["status"] == "fail":
            failed.append(name)
    out = {
        "game": history.label or reference.label,
        "checks": report,
        "failed": failed,
        "ok": not failed,
    }
    reporting.write_json_atomic(os.path.join(args.out, "verify.json"), out)
    reporting.write_manifest(
        args.out,
        _digest_doc("verify", doc, seed),
        seed,
        {"verify.json": "per-check status (pass / fail / skipped: bound) with residuals"},
    )
    return 0 if not failed else 1


# ---------------------------------------------------------------------------
# dominance


def cmd_dominance(args, doc: dict) -> int:
    seed = _resolve_seed(args, doc)
    history, reference, extras = _build_pair(_game_doc(doc))
    tau = _number(doc, "tau")
    dynamics.check_temperature(tau)
    horizon = _resolve_int(None, doc, "horizon", 1)
    if horizon is None:
        raise ParameterError("config missing required key 'horizon'")
    mode = _resolve_mode(args, doc, ("exact-lifted", "monte-carlo"), default="exact-lifted")
    reps = _resolve_int(args.reps, doc, "reps", 1)
    if mode == "monte-carlo" and reps is None:
        raise ParameterError("monte-carlo mode needs reps")
    upper_samples = _resolve_int(None, doc, "upper_set_samples", 0, 2)
    init = _build_init(doc.get("init"), history.n_players)

    os.makedirs(args.out, exist_ok=True)
    rep = cp.dominance_check(
        history,
        reference,
        init,
        tau,
        horizon,
        "exact" if mode == "exact-lifted" else "monte-carlo",
        seed=child_seed(seed, "dominance"),
        reps=reps,
        upper_set_samples=upper_samples,
    )
    rows = [(r.horizon, r.p_history, r.p_reference, r.gap, mode) for r in rep.rows]
    reporting.write_csv_atomic(
        os.path.join(args.out, "dominance.csv"),
        ["T", "p_g", "p_ghat", "gap", "mode"],
        rows,
    )
    reporting.write_manifest(
        args.out,
        _digest_doc("dominance", doc, seed, mode=mode, reps=reps),
        seed,
        {
            "dominance.csv": {
                "T": "horizon",
                "p_g": "all-ones probability under the history game",
                "p_ghat": "all-ones probability under the reference game",
                "gap": "p_g - p_ghat; must stay above -1e-10",
                "mode": "evaluation mode for the history side",
            }
        },
    )
    return 0 if rep.ok else 1


# ---------------------------------------------------------------------------
# sweep


def _check_schedule(schedule) -> list[float]:
    if not isinstance(schedule, list) or not schedule:
        raise ParameterError("tau_schedule must be a nonempty list")
    out = []
    for t in schedule:
        if isinstance(t, bool) or not isinstance(t, (int, float)):
            raise ParameterError(f"temperatures must be numbers, got {t!r}")
        t = float(t)
        if not (math.isfinite(t) and t > 0):
            raise ParameterError(f"temperatures must be finite and positive, got {t!r}")
        out.append(t)
    if any(b >= a for a, b in zip(out, out[1:])):
        raise ParameterError("tau_schedule must be strictly decreasing")
    return out


def cmd_sweep(args, doc: dict) -> int:
    seed = _resolve_seed(args, doc)
    game_doc = _game_doc(doc)
    schedule = _check_schedule(_require(doc, "tau_schedule"))
    horizon = _resolve_int(None, doc, "horizon", 1)
    if horizon is None:
        raise ParameterError("config missing required key 'horizon'")
    if "reps" in doc or args.reps is not None:
        reps = args.reps if args.reps is not None else doc["reps"]
        if not isinstance(reps, int) or isinstance(reps, bool) or reps < 1:
            raise ParameterError(f"reps must be an int >= 1, got {reps!r}")
    else:
        reps = None

    if game_doc.get("kind") == "sisgcg":
        _, _, extras = _build_pair(game_doc)
        config = extras["config"]
        if reps is None:
            raise ParameterError("epidemic sweeps need reps")
        burn_in = _resolve_int(None, doc, "burn_in", 0, 0)
        jobs = _resolve_int(args.jobs, doc, "jobs", 1, 1)
        init_profile = None
        init_spec = doc.get("init")
        if isinstance(init_spec, dict) and set(init_spec) == {"point"}:
            init_profile = games.parse_profile_string(
                init_spec["point"], config.graph.n_nodes
            )
        elif init_spec not in (None, "uniform"):
            raise ParameterError("epidemic sweep init must be \"uniform\" or {\"point\": ...}")
        if burn_in >= horizon:
            raise ParameterError("burn_in must be smaller than horizon")

        os.makedirs(args.out, exist_ok=True)
        result = epidemic.ss_experiment(
            config, schedule, burn_in, horizon, reps, child_seed(seed, "sweep"),
            jobs=jobs, init_profile=init_profile,
        )
        for note in result.warnings:
            print(f"warning: {note}", file=sys.stderr)
        rows = [
            (r.tau, r.occupancy, r.stderr, r.occupancy_post_entry,
             r.stderr_post_entry, r.entered, r.violations, r.reps, r.seed)
            for r in result.rows
        ]
        reporting.write_csv_atomic(
            os.path.join(args.out, "sweep.csv"),
            ["tau", "occupancy", "stderr", "occupancy_post_entry",
             "stderr_post_entry", "entered", "violations", "reps", "seed"],
            rows,
        )
        reporting.write_manifest(
            args.out,
            _digest_doc("sweep", doc, seed, reps=reps, jobs=jobs),
            seed,
            {
                "sweep.csv": {
                    "tau": "learning temperature (decreasing order)",
                    "occupancy": "mean post-burn-in fraction of steps at all-ones",
                    "stderr": "standard error over replicas",
                    "occupancy_post_entry": "occupancy restricted to post-entry samples",
                    "stderr_post_entry": "its standard error",
                    "entered": "replicas that entered the invariant band",
                    "violations": "post-entry excursions above the band",
                    "reps": "replicas per temperature",
                    "seed": "derived child seed for the temperature",
                }
            },
        )
        return 0

    game = games.game_from_json(game_doc)
    if not isinstance(game, games.PotentialGame):
        raise ParameterError("static sweeps need a static game")
    mode = _resolve_mode(args, doc, MODES, default="exact-lifted")
    if mode == "monte-carlo" and reps is None:
        raise ParameterError("monte-carlo mode needs reps")
    init = _build_init(doc.get("init"), game.n_players)

    os.makedirs(args.out, exist_ok=True)
    rows = dynamics.stability_sweep(
        game, init, schedule, horizon, mode, child_seed(seed, "sweep"), reps=reps
    )
    reporting.write_csv_atomic(
        os.path.join(args.out, "sweep.csv"),
        ["tau", "T", "mode", "estimate", "stderr", "seed"],
        [(r.tau, r.horizon, r.mode, r.estimate, r.stderr, r.seed) for r in rows],
    )
    reporting.write_manifest(
        args.out,
        _digest_doc("sweep", doc, seed, mode=mode, reps=reps),
        seed,
        {
            "sweep.csv": {
                "tau": "learning temperature (decreasing order)",
                "T": "horizon",
                "mode": "evaluation mode",
                "estimate": "all-ones probability at the horizon",
                "stderr": "standard error (monte-carlo mode only)",
                "seed": "derived child seed for the row",
            }
        },
    )
    return 0


# ---------------------------------------------------------------------------
# epidemic


def cmd_epidemic(args, doc: dict) -> int:
    seed = _resolve_seed(args, doc)
    game_doc = _game_doc(doc)
    if game_doc.get("kind") != "sisgcg":
        raise ParameterError("the epidemic command needs a sisgcg game")
    _, _, extras = _build_pair(game_doc)
    config = extras["config"]
    tau = _number(doc, "tau")
    dynamics.check_temperature(tau)
    n_steps = _resolve_int(None, doc, "n_steps", 0)
    if n_steps is None:
        n_steps = _resolve_int(None, doc, "horizon", 0)
    if n_steps is None:
        raise ParameterError("config missing required key 'n_steps'")
    init_profile = None
    init_spec = doc.get("init")
    if isinstance(init_spec, dict) and set(init_spec) == {"point"}:
        init_profile = games.parse_profile_string(init_spec["point"], config.graph.n_nodes)
    elif init_spec not in (None, "uniform"):
        raise ParameterError("epidemic init must be \"uniform\" or {\"point\": ...}")

    os.makedirs(args.out, exist_ok=True)
    traj = epidemic.run_sisgcg(
        config, tau, n_steps, child_seed(seed, "epidemic"), init_profile=init_profile
    )
    inv = epidemic.check_invariance(traj, config.gamma, config.beta1)
    rows = [
        (r.t, r.s, 1.0 - r.s,
         epidemic.beta_of_profile(r.profile, config.beta0, config.beta1),
         games.profile_string(r.profile), r.updater, tau)
        for r in traj.rows
    ]
    reporting.write_csv_atomic(
        os.path.join(args.out, "trajectory.csv"),
        ["t", "s", "I", "beta", "profile", "last_updater", "tau"],
        rows,
    )
    reporting.write_json_atomic(
        os.path.join(args.out, "invariance.json"),
        {
            "level": inv.level,
            "epsilon": inv.epsilon,
            "entered": inv.entered,
            "entry_time": inv.entry_time,
            "entry_index": inv.entry_index,
            "violations": len(inv.violations),
            "violation_times": [r.t for r in inv.violations],
            "ok": inv.ok,
        },
    )
    reporting.write_manifest(
        args.out,
        _digest_doc("epidemic", doc, seed),
        seed,
        {
            "trajectory.csv": {
                "t": "elapsed model time",
                "s": "susceptible fraction after the interval",
                "I": "infected fraction 1 - s",
                "beta": "infection rate of the current profile",
                "profile": "action profile bitstring, agent 1 leftmost",
                "last_updater": "1-based agent that just resampled; 0 on the initial row",
                "tau": "learning temperature",
            },
            "invariance.json": "entry into the invariant band and any later excursions",
        },
    )
    return 0 if inv.ok else 1


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="llgames",
        description="log-linear learning games: simulations and verification campaigns",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, blurb in (
        ("simulate", "run one learning trajectory and write it as CSV"),
        ("verify", "run structural checks on a game pair"),
        ("dominance", "compare all-ones probabilities across horizons"),
        ("sweep", "run a temperature sweep"),
        ("epidemic", "run one coupled epidemic trajectory"),
    ):
        s = sub.add_parser(name, help=blurb)
        s.add_argument("--config", required=True, help="JSON config file")
        s.add_argument("--seed", type=int, default=None, help="master seed (u64)")
        s.add_argument("--out", required=True, help="output directory")
        s.add_argument("--mode", choices=list(MODES), default=None)
        s.add_argument("--reps", type=int, default=None)
        s.add_argument("--jobs", type=int, default=None)
    return parser


_COMMANDS = {
    "simulate": cmd_simulate,
    "verify": cmd_verify,
    "dominance": cmd_dominance,
    "sweep": cmd_sweep,
    "epidemic": cmd_epidemic,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc = _load_config(args.config)
    except ParameterError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 2
    try:
        return _COMMANDS[args.command](args, doc)
    except (ParameterError, DimensionError, EnumerationBoundError) as e:
        print(f"config error: {e}", file=sys.stderr)
        return 2
    except LlgamesError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
