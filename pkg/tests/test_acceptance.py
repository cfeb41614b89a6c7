"""Acceptance suite: end-to-end checks of the experiment families.

Each criterion prints a PASS/FAIL line (run with ``pytest -s`` to see them
live).  Everything is deterministic: all experiments derive their seeds from
base seed 0.  The full suite is compute-heavy (roughly 15 minutes serial);
criterion 7, the complete 500-trial tables, is an extended target gated
behind the DPSO_FULL_TABLES environment variable.
"""

import math
import os

import numpy as np
import pytest

from dpso import (ChaosParams, CountingRng, ExperimentConfig, InertiaSchedule,
                  RngStream, apply_chaos, benchmark_domain, evaluate_fitness,
                  inertia_at, init_swarm, griewank, rastrigin, run, step,
                  sweep_w, table_cells, trace, update_bests,
                  velocity_position_update)
from dpso.chaos import gated_uniforms
from conftest import small_config

BASE_SEED = 0
TABLE_GRID = [(m, dim) for m in (20, 40, 80, 160) for dim in (10, 20, 30)]


def report(criterion, ok, detail):
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}")
    assert ok, f"criterion {criterion}: {detail}"


def test_criterion_1_table_spot_check():
    # Rastrigin, m=20, dim=10, 1000 generations, 500 trials per condition.
    # SF_1 lands in the accepted band around the published 5.20620; DF_3
    # stays at least three times better, near the published 0.47068.
    table = table_cells("rastrigin", variants=("SF_1", "DF_3"), m_list=(20,),
                        dims=(10,), n_trials=500, base_seed=BASE_SEED,
                        include_reference=False)
    sf1 = table.cell(variant="SF_1").mean_best
    df3 = table.cell(variant="DF_3").mean_best
    ok = (3.3 <= sf1 <= 7.2) and (df3 <= 1.0) and (3.0 * df3 < sf1)
    report(1, ok, f"SF_1={sf1:.5f} in [3.3, 7.2]; DF_3={df3:.5f} <= 1.0; "
                  f"gap {sf1 / df3:.1f}x > 3x")


def test_criterion_2_rastrigin_ordering():
    # DF_3 < DF_2 < SF_1 in every (m, dim) cell at 100 trials each.
    table = table_cells("rastrigin", variants=("SF_1", "DF_2", "DF_3"),
                        n_trials=100, base_seed=BASE_SEED,
                        include_reference=False)
    bad = []
    for m, dim in TABLE_GRID:
        sf1 = table.cell(variant="SF_1", m=m, dim=dim).mean_best
        df2 = table.cell(variant="DF_2", m=m, dim=dim).mean_best
        df3 = table.cell(variant="DF_3", m=m, dim=dim).mean_best
        if not df3 < df2 < sf1:
            bad.append((m, dim, df3, df2, sf1))
    report(2, not bad, f"DF_3 < DF_2 < SF_1 in {12 - len(bad)}/12 cells"
                       + (f"; violations: {bad}" if bad else ""))


def test_criterion_3_griewank_ordering():
    # DF_3 <= SF_1 in at least 10 of the 12 cells (the deep-dimension cells
    # are genuinely noisy at these magnitudes; 300 trials per cell).
    table = table_cells("griewank", variants=("SF_1", "DF_3"), n_trials=300,
                        base_seed=BASE_SEED, include_reference=False)
    wins = 0
    for m, dim in TABLE_GRID:
        sf1 = table.cell(variant="SF_1", m=m, dim=dim).mean_best
        df3 = table.cell(variant="DF_3", m=m, dim=dim).mean_best
        wins += df3 <= sf1
    report(3, wins >= 10, f"DF_3 <= SF_1 in {wins}/12 cells (need >= 10)")


def test_criterion_4_trace_comparison():
    # 20-D, m=20, 1500 generations, fixed w=0.4: the chaotic variant's mean
    # trajectory ends strictly below standard PSO's on both benchmarks.
    results = {}
    for objective in ("rastrigin", "griewank"):
        finals = {}
        for label, c_l in (("spso", 0.0), ("dpso", 0.001)):
            config = ExperimentConfig(objective=objective, dim=20, m=20,
                                      g_max=1500,
                                      inertia=InertiaSchedule.fixed(0.4),
                                      c_l=c_l, n_trials=200,
                                      base_seed=BASE_SEED)
            trajectory = trace(config)
            assert np.all(np.diff(trajectory) <= 0.0)
            finals[label] = trajectory[-1]
        results[objective] = finals
    ok = all(f["dpso"] < f["spso"] for f in results.values())
    detail = "; ".join(f"{name}: dpso={f['dpso']:.5f} < spso={f['spso']:.5f}"
                       for name, f in results.items())
    report(4, ok, detail)


def test_criterion_5_sweep_shape():
    # Over w in {0.0 .. 1.0}: standard PSO attains an interior best ("balance
    # point"), and below it every chaotic variant's mean beats standard PSO
    # at the same w (100 trials per grid point).
    grid = tuple(round(0.1 * i, 1) for i in range(11))
    base = ExperimentConfig(objective="rastrigin", dim=10, m=20, g_max=1000,
                            inertia=InertiaSchedule.fixed(0.5), n_trials=100,
                            base_seed=BASE_SEED)
    table = sweep_w(base, grid)
    means = {(r.c_v, r.c_l): {} for r in table.rows}
    for r in table.rows:
        means[(r.c_v, r.c_l)][float(r.w_value_or_range)] = r.mean_best
    spso = [means[(0.0, 0.0)][w] for w in grid]
    best = int(np.argmin(spso))
    interior = grid[best] not in (0.9, 1.0)
    violations = []
    for j in range(best):
        for variant in ((0.001, 0.0), (0.002, 0.0), (0.0, 0.001), (0.0, 0.002)):
            if not means[variant][grid[j]] < spso[j]:
                violations.append((grid[j], variant))
    ok = interior and not violations
    report(5, ok, f"balance point w={grid[best]} (interior={interior}); "
                  f"below-balance dominance violations: {violations or 'none'}")


class TestCriterion6Properties:
    def test_velocity_clamp_invariant(self):
        # 50 particles x 20 dims x 100 generations = 1e5 clamped updates
        spec = benchmark_domain("rastrigin", 20)
        cfg = small_config(spec, m=50, g_max=100,
                           inertia=InertiaSchedule.linear(1.0, 0.0), c_v=0.01)
        rng = RngStream(BASE_SEED)
        state = init_swarm(cfg, spec, rng)
        ok = True
        for _ in range(cfg.g_max):
            step(state, cfg, spec, rng)
            ok = ok and bool(np.all(np.abs(state.velocities) <= cfg.v_max))
        report("6a", ok, "|v| <= v_max after each of 1e5 coordinate updates")

    def test_best_fitness_monotonicity(self):
        ok = True
        for name in ("rastrigin", "griewank"):
            spec = benchmark_domain(name, 10)
            cfg = small_config(spec, m=20, g_max=200, c_l=0.001)
            rng = RngStream(BASE_SEED)
            state = init_swarm(cfg, spec, rng)
            gbest = state.gbest_fitness
            pbest = state.pbest_fitness.copy()
            for _ in range(cfg.g_max):
                step(state, cfg, spec, rng)
                evaluate_fitness(state, spec)
                update_bests(state, spec)
                ok = ok and state.gbest_fitness <= gbest
                ok = ok and bool(np.all(state.pbest_fitness <= pbest))
                ok = ok and state.gbest_fitness == state.pbest_fitness.min()
                gbest = state.gbest_fitness
                pbest = state.pbest_fitness.copy()
        report("6b", ok, "pbest/gbest non-increasing over full runs, "
                         "gbest = min pbest")

    def test_standard_pso_bitwise_equals_chaos_free_engine(self):
        spec = benchmark_domain("rastrigin", 8)
        cfg = small_config(spec, m=12, g_max=120)
        result = run(cfg, spec, seed=BASE_SEED)

        rng = RngStream(BASE_SEED)
        state = init_swarm(cfg, spec, rng)
        trajectory = np.empty(cfg.g_max)
        for k in range(cfg.g_max):
            evaluate_fitness(state, spec)
            update_bests(state, spec)
            w = inertia_at(cfg.inertia, state.generation, cfg.g_max)
            velocity_position_update(state, w, cfg, rng)
            state.generation += 1
            evaluate_fitness(state, spec)
            update_bests(state, spec)
            trajectory[k] = state.gbest_fitness
        ok = np.array_equal(result.trajectory, trajectory)
        report("6c", ok, "zero-factor run bitwise equals a chaos-free engine")

    def test_gate_fire_rates(self):
        n = 1_000_000
        ok = True
        details = []
        for p in (0.001, 0.002, 0.5):
            fired, _ = gated_uniforms(RngStream(BASE_SEED), np.full(n, p))
            band = 4.0 * math.sqrt(p * (1.0 - p) / n)
            rate = fired.mean()
            ok = ok and abs(rate - p) < band
            details.append(f"p={p}: rate={rate:.6f} (band +/-{band:.6f})")
        report("6d", ok, "; ".join(details))

    def test_objectives_match_independent_oracle(self):
        def oracle_rastrigin(x):
            return sum(v * v - 10.0 * math.cos(2.0 * math.pi * v) + 10.0 for v in x)

        def oracle_griewank(x):
            s = sum(v * v for v in x) / 4000.0
            p = 1.0
            for d, v in enumerate(x, start=1):
                p *= math.cos(v / math.sqrt(d))
            return s - p + 1.0

        sampler = np.random.default_rng(BASE_SEED)
        ok = True
        for fn, oracle, scale in ((rastrigin, oracle_rastrigin, 10.0),
                                  (griewank, oracle_griewank, 600.0)):
            points = sampler.uniform(-scale, scale, size=(1000, 10))
            values = fn(points)
            for x, value in zip(points, values):
                expected = oracle(x)
                ok = ok and abs(value - expected) <= 1e-12 * abs(expected)
        report("6e", ok, "both benchmarks within 1e-12 relative of a "
                         "straight-from-formula oracle on 1000 points each")

    def test_run_reproducibility(self):
        spec = benchmark_domain("griewank", 10)
        cfg = small_config(spec, m=20, g_max=150, c_l=0.001)
        a = run(cfg, spec, seed=BASE_SEED)
        b = run(cfg, spec, seed=BASE_SEED)
        ok = (np.array_equal(a.trajectory, b.trajectory)
              and np.array_equal(a.final_position, b.final_position)
              and a.final_fitness == b.final_fitness)
        report("6f", ok, "identical (config, seed) reproduces bitwise")

    def test_draw_count_audit(self):
        spec = benchmark_domain("rastrigin", 10)
        m, dim = 20, 10

        cfg = small_config(spec, m=m, g_max=10)
        counter = CountingRng(RngStream(BASE_SEED))
        state = init_swarm(cfg, spec, counter)
        ok = counter.draws == 2 * m * dim
        before_step = counter.draws
        step(state, cfg, spec, counter)
        ok = ok and (counter.draws - before_step == 2 * m * dim)

        # with chaos: gates = m*dim per active factor, one extra draw per fire
        cfg_chaos = small_config(spec, m=m, g_max=10, c_v=0.5, c_l=0.25)
        state = init_swarm(cfg_chaos, spec, RngStream(BASE_SEED))
        moved = state.copy()
        velocity_position_update(moved, 0.5, cfg_chaos, RngStream(7))
        counter = CountingRng(RngStream(7))
        velocity_position_update(state, 0.5, cfg_chaos, counter)
        apply_chaos(state, ChaosParams(cfg_chaos.c_v, cfg_chaos.c_l), cfg_chaos,
                    cfg_chaos.lower, cfg_chaos.upper, counter)
        fires = (int(np.sum(state.velocities != moved.velocities))
                 + int(np.sum(state.positions != moved.positions)))
        expected = 2 * m * dim + 2 * m * dim + fires
        ok = ok and counter.draws == expected
        report("6g", ok, f"init=2mD, chaos-free step=2mD, chaos stage adds "
                         f"gates+fires (counted {counter.draws} = {expected})")


@pytest.mark.skipif(not os.environ.get("DPSO_FULL_TABLES"),
                    reason="extended target: full 500-trial tables "
                           "(set DPSO_FULL_TABLES=1; roughly an hour)")
def test_criterion_7_full_tables():
    rastrigin_table = table_cells("rastrigin", variants=("SF_1", "DF_2", "DF_3"),
                                  n_trials=500, base_seed=BASE_SEED,
                                  include_reference=False)
    bad = []
    for m, dim in TABLE_GRID:
        sf1 = rastrigin_table.cell(variant="SF_1", m=m, dim=dim).mean_best
        df2 = rastrigin_table.cell(variant="DF_2", m=m, dim=dim).mean_best
        df3 = rastrigin_table.cell(variant="DF_3", m=m, dim=dim).mean_best
        if not df3 < df2 < sf1:
            bad.append((m, dim))
    griewank_table = table_cells("griewank", variants=("SF_1", "DF_3"),
                                 n_trials=500, base_seed=BASE_SEED,
                                 include_reference=False)
    wins = sum(griewank_table.cell(variant="DF_3", m=m, dim=dim).mean_best
               <= griewank_table.cell(variant="SF_1", m=m, dim=dim).mean_best
               for m, dim in TABLE_GRID)
    ok = not bad and wins >= 10
    report(7, ok, f"500-trial tables: rastrigin ordering violations={bad or 'none'}, "
                  f"griewank wins={wins}/12")
