"""The coupled epidemic / coordination model.

Oracles: a from-scratch RK4 step, the constant-rate closed form, and a
hand-rolled replay of the simulation loop (one uniform for the initial
profile, then an agent draw and an action draw per step).
"""

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from llgames import dynamics, epidemic, games
from llgames.errors import DimensionError, ParameterError
from llgames.rng import child_seed, make_rng

# ---------------------------------------------------------------------------
# oracles


def oracle_drift(s, beta, gamma):
    return (1.0 - s) * (gamma - beta * s)


def oracle_rk4_step(s, beta, gamma, h):
    k1 = oracle_drift(s, beta, gamma)
    k2 = oracle_drift(s + 0.5 * h * k1, beta, gamma)
    k3 = oracle_drift(s + 0.5 * h * k2, beta, gamma)
    k4 = oracle_drift(s + h * k3, beta, gamma)
    return min(max(s + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4), 0.0), 1.0)


def oracle_reference_endpoint(s0, beta, gamma, t, n=1 << 15):
    s = s0
    for _ in range(n):
        s = oracle_rk4_step(s, beta, gamma, t / n)
    return s


# ---------------------------------------------------------------------------
# configuration


def test_config_validation(triangle, canonical_cfg):
    canonical_cfg(triangle)  # the good case builds
    with pytest.raises(ParameterError):
        canonical_cfg(triangle, gamma=0.0)
    with pytest.raises(ParameterError):
        canonical_cfg(triangle, beta1=0.0)
    with pytest.raises(ParameterError):
        canonical_cfg(triangle, beta1=1.0)  # beta1 > beta0
    with pytest.raises(ParameterError):
        canonical_cfg(triangle, q=0.0)
    with pytest.raises(ParameterError):
        canonical_cfg(triangle, s0=1.0)
    with pytest.raises(ParameterError):
        canonical_cfg(triangle, dt=0.0)
    with pytest.raises(ParameterError):
        canonical_cfg(triangle, ode_substeps=0)


def test_invariant_level_and_digest(triangle, ring6, canonical_cfg):
    cfg = canonical_cfg(triangle)
    assert cfg.invariant_level == 0.5
    assert cfg.digest() == canonical_cfg(triangle).digest()
    assert cfg.digest() != canonical_cfg(triangle, s0=0.3).digest()
    assert cfg.digest() != canonical_cfg(ring6).digest()


def test_equal_rates_is_an_allowed_degenerate_case(triangle, canonical_cfg):
    cfg = canonical_cfg(triangle, beta1=0.9)  # == beta0: actions stop mattering
    assert cfg.invariant_level == pytest.approx(1.0 / 3.0)


# ---------------------------------------------------------------------------
# the epidemic leg


def test_beta_of_profile_frozen():
    assert epidemic.beta_of_profile((1, 1, 0, 0), 0.9, 0.6) == 0.75
    assert epidemic.beta_of_profile((1, 1, 1), 0.9, 0.6) == 0.6
    assert epidemic.beta_of_profile((0, 0, 0), 0.9, 0.6) == pytest.approx(0.9, abs=0)


def test_sis_step_matches_oracle():
    for s, beta in [(0.9, 0.6), (0.2, 0.9), (0.5, 0.75)]:
        assert epidemic.sis_step(s, beta, 0.3, 0.01) == oracle_rk4_step(s, beta, 0.3, 0.01)


def test_sis_fixed_points_are_exact():
    # all-cautious canonical rates: gamma - beta*s vanishes at s = 0.5
    assert epidemic.sis_step(0.5, 0.6, 0.3, 0.1) == 0.5
    assert epidemic.sis_step(1.0, 0.6, 0.3, 0.1) == 1.0


def test_sis_step_validation():
    with pytest.raises(ParameterError):
        epidemic.sis_step(1.1, 0.6, 0.3, 0.1)
    with pytest.raises(ParameterError):
        epidemic.sis_step(0.5, 0.6, 0.3, 0.0)


def test_integrate_matches_closed_form():
    got = epidemic.integrate_susceptible(0.9, 0.75, 0.3, 2.0, 256)
    want = epidemic.closed_form_susceptible(0.9, 0.75, 0.3, 2.0)
    assert abs(got - want) <= 1e-10


def test_closed_form_special_cases():
    assert epidemic.closed_form_susceptible(1.0, 0.6, 0.3, 5.0) == 1.0
    assert epidemic.closed_form_susceptible(0.7, 0.6, 0.3, 0.0) == pytest.approx(0.7, abs=1e-15)
    # beta == gamma branch against a tight numerical run
    got = epidemic.closed_form_susceptible(0.4, 0.3, 0.3, 3.0)
    assert abs(got - oracle_reference_endpoint(0.4, 0.3, 0.3, 3.0)) <= 1e-10


def test_closed_form_frozen_endpoint():
    # reference for the step-halving experiment, frozen from a 2^15-step run
    want = oracle_reference_endpoint(0.9, 0.75, 0.3, 2.0)
    assert want == 0.80216616826612042
    assert abs(epidemic.closed_form_susceptible(0.9, 0.75, 0.3, 2.0) - want) <= 1e-10


def test_integrator_error_shrinks_at_fourth_order():
    target = oracle_reference_endpoint(0.9, 0.75, 0.3, 2.0)
    errors = [
        abs(epidemic.integrate_susceptible(0.9, 0.75, 0.3, 2.0, n) - target)
        for n in (4, 8, 16)
    ]
    assert errors[0] / errors[1] >= 12.0
    assert errors[1] / errors[2] >= 12.0


@given(
    st.floats(0.0, 1.0),
    st.floats(0.1, 1.0),
    st.floats(0.05, 0.5),
)
def test_integrator_stays_in_the_unit_interval(s0, beta, gamma):
    s = epidemic.integrate_susceptible(s0, beta, gamma, 0.5, 8)
    assert 0.0 <= s <= 1.0


# ---------------------------------------------------------------------------
# payoffs


def test_sisgcg_utility_frozen(triangle):
    state = epidemic.EpidemicState(0.5, (0, 1, 1))
    # agent 1 faces two cautious neighbors: caution pays 2(q + I) = 2.4
    assert epidemic.sisgcg_utility(state, 0, 1, triangle, 0.7) == pytest.approx(2.4, abs=0)
    assert epidemic.sisgcg_utility(state, 0, 0, triangle, 0.7) == 0.0
    # agent 2 sees one cautious, one careless neighbor
    assert epidemic.sisgcg_utility(state, 1, 0, triangle, 0.7) == 1.0


def test_sisgcg_utility_validation(triangle):
    state = epidemic.EpidemicState(0.5, (0, 1, 1))
    with pytest.raises(DimensionError):
        epidemic.sisgcg_utility(state, 3, 1, triangle, 0.7)
    with pytest.raises(ParameterError):
        epidemic.sisgcg_utility(state, 0, 2, triangle, 0.7)


def test_frozen_game_is_bit_identical_to_the_live_payoff(triangle, canonical_cfg):
    cfg = canonical_cfg(triangle)
    frozen = epidemic.frozen_infection_game(cfg)
    level = cfg.invariant_level
    for a in games.enumerate_profiles(3):
        state = epidemic.EpidemicState(level, a)
        for i in range(3):
            for act in (0, 1):
                live = epidemic.sisgcg_utility(
                    state, i, act, triangle, cfg.q
                ) if a[i] == act else epidemic.sisgcg_utility(
                    epidemic.EpidemicState(level, games.set_action(a, i, act)), i, act,
                    triangle, cfg.q,
                )
                assert frozen.utility(i, games.set_action(a, i, act)) == live


def test_reference_game_and_warnings(triangle, canonical_cfg):
    cfg = canonical_cfg(triangle)
    ref = epidemic.reference_gcg(cfg)
    assert games.potential_argmax(ref) == frozenset({(1, 1, 1)})
    with pytest.warns(UserWarning, match="not the strict potential maximizer"):
        epidemic.reference_gcg(canonical_cfg(triangle, q=0.3))
    with pytest.warns(UserWarning, match="dies out"):
        epidemic.reference_gcg(canonical_cfg(triangle, gamma=0.7, beta0=0.9, beta1=0.6))


def test_alignment_bounds_are_sharp_inside_the_band(triangle, canonical_cfg):
    cfg = canonical_cfg(triangle)
    bounds = epidemic.alignment_bounds(cfg)
    for a in games.enumerate_profiles(3):
        for i in range(3):
            lo = bounds.one_lower(i, a)
            hi = bounds.zero_upper(i, a)
            worst = None
            for k in range(101):  # scan the invariant band
                s = cfg.invariant_level * k / 100
                state = epidemic.EpidemicState(s, a)
                u1 = epidemic.sisgcg_utility(state, i, 1, triangle, cfg.q)
                u0 = epidemic.sisgcg_utility(state, i, 0, triangle, cfg.q)
                worst = u1 if worst is None else min(worst, u1)
                assert u0 <= hi
            assert lo <= worst + 1e-12
            # the bound is attained at the band ceiling
            top = epidemic.sisgcg_utility(
                epidemic.EpidemicState(cfg.invariant_level, a), i, 1, triangle, cfg.q
            )
            assert abs(lo - top) <= 1e-12


def test_discretized_pair_passes_alignment(triangle, canonical_cfg):
    cfg = canonical_cfg(triangle)
    hist = epidemic.sisgcg_history_game(cfg, grid_bins=101)
    ref = epidemic.reference_gcg(cfg)
    rep = games.verify_alignment(
        hist, ref, max_len=1, mode="analytic-bounds", bounds=epidemic.alignment_bounds(cfg)
    )
    assert rep.aligned


def test_one_shift_plants_an_alignment_violation(triangle, canonical_cfg):
    cfg = canonical_cfg(triangle)
    hist = epidemic.sisgcg_history_game(cfg, grid_bins=101, one_shift=-3.0)
    ref = epidemic.reference_gcg(cfg)
    rep = games.verify_alignment(
        hist, ref, max_len=1, mode="analytic-bounds",
        bounds=epidemic.alignment_bounds(cfg, one_shift=-3.0),
    )
    assert not rep.aligned


# ---------------------------------------------------------------------------
# the grid statistic


def test_snap_to_grid_frozen():
    assert epidemic.snap_to_grid(0.5, 101) == 50
    assert epidemic.snap_to_grid(0.25, 3) == 1  # exact tie rounds up
    assert epidemic.snap_to_grid(1.0, 3) == 2
    assert epidemic.snap_to_grid(0.0, 3) == 0
    assert epidemic.grid_value(1, 3) == 0.5
    with pytest.raises(ParameterError):
        epidemic.snap_to_grid(0.5, 1)


@given(st.integers(0, 200), st.integers(2, 201))
def test_grid_roundtrip(k, bins):
    k = k % bins
    assert epidemic.snap_to_grid(epidemic.grid_value(k, bins), bins) == k


def test_history_game_statistic_routes(triangle, canonical_cfg):
    cfg = canonical_cfg(triangle)
    exact = epidemic.sisgcg_history_game(cfg)
    grid = epidemic.sisgcg_history_game(cfg, grid_bins=10_000)
    assert not exact.statistic.finite
    assert grid.statistic.finite
    path = ((0, 0, 0), (0, 0, 1), (0, 1, 1))
    s = cfg.s0
    for a in path:
        s = epidemic.integrate_susceptible(
            s, epidemic.beta_of_profile(a, cfg.beta0, cfg.beta1), cfg.gamma,
            cfg.dt, cfg.ode_substeps,
        )
    assert exact.path_statistic(path) == s
    k = grid.path_statistic(path)
    assert abs(epidemic.grid_value(k, 10_000) - s) <= 0.5 / (10_000 - 1) + 1e-12


def test_history_game_payoff_uses_the_statistic_level(triangle, canonical_cfg):
    cfg = canonical_cfg(triangle)
    hist = epidemic.sisgcg_history_game(cfg)
    path = ((1, 1, 0),)
    s = hist.path_statistic(path)
    state = epidemic.EpidemicState(s, (1, 1, 0))
    for i in range(3):
        for act in (0, 1):
            assert hist.utility(path, i, act) == epidemic.sisgcg_utility(
                state, i, act, triangle, cfg.q
            )


def test_history_game_rejects_bad_knobs(triangle, canonical_cfg):
    cfg = canonical_cfg(triangle)
    with pytest.raises(ParameterError):
        epidemic.sisgcg_history_game(cfg, grid_bins=1)
    with pytest.raises(ParameterError):
        epidemic.sisgcg_history_game(cfg, one_shift=float("nan"))


# ---------------------------------------------------------------------------
# trajectories


def test_run_sisgcg_stream_contract(triangle, canonical_cfg):
    # replay the engine by hand from the documented draw order
    cfg = canonical_cfg(triangle, s0=0.9)
    seed, n_steps, tau = 23, 40, 1.0
    traj = epidemic.run_sisgcg(cfg, tau, n_steps, seed)

    rng = make_rng(child_seed(seed, "replica", 0))
    profile = games.index_profile(min(int(rng.random() * 8), 7), 3)
    s = cfg.s0
    rows = [(0.0, s, profile, 0)]
    for k in range(1, n_steps + 1):
        beta = epidemic.beta_of_profile(profile, cfg.beta0, cfg.beta1)
        s = epidemic.integrate_susceptible(s, beta, cfg.gamma, cfg.dt, cfg.ode_substeps)
        u_agent, u_act = rng.random(), rng.random()
        agent = min(int(u_agent * 3), 2)
        state = epidemic.EpidemicState(s, profile)
        du = epidemic.sisgcg_utility(state, agent, 1, triangle, cfg.q) - epidemic.sisgcg_utility(
            state, agent, 0, triangle, cfg.q
        )
        action = 1 if u_act < dynamics.logistic(du / tau) else 0
        profile = games.set_action(profile, agent, action)
        rows.append((k * cfg.dt, s, profile, agent + 1))

    assert len(traj.rows) == n_steps + 1
    for got, want in zip(traj.rows, rows):
        assert (got.t, got.profile, got.updater) == (want[0], want[2], want[3])
        assert got.s == want[1]


def test_run_sisgcg_is_deterministic_and_seed_sensitive(triangle, canonical_cfg):
    cfg = canonical_cfg(triangle)
    a = epidemic.run_sisgcg(cfg, 0.5, 60, 7)
    assert a == epidemic.run_sisgcg(cfg, 0.5, 60, 7)
    assert a != epidemic.run_sisgcg(cfg, 0.5, 60, 8)


def test_run_sisgcg_pins_the_initial_profile(triangle, canonical_cfg):
    cfg = canonical_cfg(triangle)
    traj = epidemic.run_sisgcg(cfg, 1.0, 5, 3, init_profile=(1, 1, 1))
    assert traj.rows[0].profile == (1, 1, 1)
    assert traj.rows[0].updater == 0 and traj.rows[0].t == 0.0
    with pytest.raises(DimensionError):
        epidemic.run_sisgcg(cfg, 1.0, 5, 3, init_profile=(1, 1))


def test_run_sisgcg_validation(triangle, canonical_cfg):
    cfg = canonical_cfg(triangle)
    with pytest.raises(ParameterError):
        epidemic.run_sisgcg(cfg, 0.0, 5, 3)
    with pytest.raises(ParameterError):
        epidemic.run_sisgcg(cfg, 1.0, -1, 3)


# ---------------------------------------------------------------------------
# the invariant band


def test_invariance_entry_from_above(triangle, canonical_cfg):
    cfg = canonical_cfg(triangle, s0=0.9)
    traj = epidemic.run_sisgcg(cfg, 1.0, 300, 5)
    rep = epidemic.check_invariance(traj, cfg.gamma, cfg.beta1)
    assert rep.level == 0.5
    assert rep.entered
    assert rep.entry_index > 0
    assert rep.entry_time == traj.rows[rep.entry_index].t
    assert rep.ok  # forward invariance: no later excursions
    assert all(r.s > rep.level + rep.epsilon for r in traj.rows[: rep.entry_index])


def test_invariance_entry_at_time_zero_when_started_inside(triangle, canonical_cfg):
    cfg = canonical_cfg(triangle, s0=0.2)
    traj = epidemic.run_sisgcg(cfg, 1.0, 20, 5)
    rep = epidemic.check_invariance(traj, cfg.gamma, cfg.beta1)
    assert rep.entry_index == 0 and rep.entry_time == 0.0


def test_invariance_flags_synthetic_excursions():
    rows = (
        epidemic.TrajectoryRow(0.0, 0.4, (1, 1), 0),
        epidemic.TrajectoryRow(0.1, 0.6, (1, 0), 2),
        epidemic.TrajectoryRow(0.2, 0.45, (1, 1), 2),
    )
    traj = epidemic.Trajectory(rows, 0, 1.0, "synthetic")
    rep = epidemic.check_invariance(traj, 0.3, 0.6)
    assert rep.entry_index == 0
    assert not rep.ok
    assert [r.t for r in rep.violations] == [0.1]
    # a loose epsilon absorbs the excursion
    loose = epidemic.check_invariance(traj, 0.3, 0.6, epsilon=0.2)
    assert loose.ok


# ---------------------------------------------------------------------------
# batches


def test_batch_replica_zero_matches_the_scalar_run(triangle, canonical_cfg):
    cfg = canonical_cfg(triangle, s0=0.9)
    seed, n_steps, burn = 31, 300, 10
    batch = epidemic.run_sisgcg_batch(cfg, 0.8, n_steps, seed, reps=3, burn_in=burn)
    traj = epidemic.run_sisgcg(cfg, 0.8, n_steps, seed)
    rows = traj.rows
    top = (1, 1, 1)
    assert batch.final_profiles[0] == rows[-1].profile
    assert batch.occupancy_counts[0] == sum(
        1 for r in rows[burn + 1 :] if r.profile == top
    )
    rep = epidemic.check_invariance(traj, cfg.gamma, cfg.beta1)
    assert rep.entered  # the band is reached within the horizon
    assert batch.entered[0] == rep.entry_index
    assert batch.violations[0] == len(rep.violations)


def test_batch_is_independent_of_the_job_count(triangle, canonical_cfg):
    cfg = canonical_cfg(triangle)
    one = epidemic.run_sisgcg_batch(cfg, 0.6, 50, 13, reps=5, burn_in=5, jobs=1)
    two = epidemic.run_sisgcg_batch(cfg, 0.6, 50, 13, reps=5, burn_in=5, jobs=2)
    assert one == two


def test_batch_validation(triangle, canonical_cfg):
    cfg = canonical_cfg(triangle)
    with pytest.raises(ParameterError):
        epidemic.run_sisgcg_batch(cfg, 1.0, 10, 0, reps=0)
    with pytest.raises(ParameterError):
        epidemic.run_sisgcg_batch(cfg, 1.0, 10, 0, reps=2, burn_in=10)
    with pytest.raises(ParameterError):
        epidemic.run_sisgcg_batch(cfg, 1.0, 10, 0, reps=2, jobs=0)


# ---------------------------------------------------------------------------
# the occupancy experiment


def test_ss_experiment_shape_and_seeds(triangle, canonical_cfg):
    cfg = canonical_cfg(triangle)
    res = epidemic.ss_experiment(cfg, [1.0, 0.5], burn_in=20, horizon=100, reps=20, seed=4)
    assert res.burn_in == 20 and res.horizon == 100
    assert res.config_digest == cfg.digest()
    assert res.warnings == ()
    assert [r.tau for r in res.rows] == [1.0, 0.5]
    for j, row in enumerate(res.rows):
        assert row.seed == child_seed(4, "temperature", j)
        assert 0.0 <= row.occupancy <= 1.0
        assert row.reps == 20
        assert 0 <= row.entered <= 20
    again = epidemic.ss_experiment(cfg, [1.0, 0.5], burn_in=20, horizon=100, reps=20, seed=4)
    assert again.rows == res.rows


def test_ss_experiment_warns_on_hypothesis_failures(triangle, canonical_cfg):
    weak = canonical_cfg(triangle, q=0.3)  # q + gamma/beta1 = 0.8 <= 1
    res = epidemic.ss_experiment(weak, [1.0], burn_in=2, horizon=10, reps=4, seed=0)
    assert any("not" in w and "dominate" in w for w in res.warnings)
    dying = canonical_cfg(triangle, gamma=0.7)  # beta1 <= gamma
    res = epidemic.ss_experiment(dying, [1.0], burn_in=2, horizon=10, reps=4, seed=0)
    assert any("dies out" in w for w in res.warnings)


def test_ss_experiment_pinned_start_locks_in_at_low_temperature(triangle, canonical_cfg):
    cfg = canonical_cfg(triangle, s0=0.2)
    res = epidemic.ss_experiment(
        cfg, [0.05], burn_in=10, horizon=200, reps=10, seed=8,
        init_profile=games.all_ones(3),
    )
    assert res.rows[0].occupancy > 0.95


def test_ss_experiment_validation(triangle, canonical_cfg):
    cfg = canonical_cfg(triangle)
    with pytest.raises(ParameterError):
        epidemic.ss_experiment(cfg, [], burn_in=2, horizon=10, reps=4, seed=0)
    with pytest.raises(ParameterError):
        epidemic.ss_experiment(cfg, [1.0, -0.5], burn_in=2, horizon=10, reps=4, seed=0)
