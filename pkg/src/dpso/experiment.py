"""Repeated-trial experiments: mean-fitness cells, inertia sweeps, traces.

Every experiment is deterministic given its base seed.  Trial t of an
experiment runs with ``derive_seed(base_seed, t)``; grid experiments give
each cell its own derived base (``derive_seed(base_seed, cell_index)``) so
cells draw from unrelated streams.  Aggregation is always in trial-index
order, so results do not depend on execution order or worker count.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .engine import ConfigError, InertiaSchedule, PsoConfig, TrialResult, run
from .objectives import ObjectiveSpec, benchmark_domain
from .reference import SF0_LABEL, SF0_MEANS
from .rng import derive_seed

DEFAULT_TRIALS = 500

#: (c_v, c_l) pairs swept in the inertia-weight figures; the first is
#: standard PSO, the rest inject chaos through one factor at a time.
DEFAULT_CHAOS_VARIANTS: tuple[tuple[float, float], ...] = (
    (0.0, 0.0), (0.001, 0.0), (0.002, 0.0), (0.0, 0.001), (0.0, 0.002),
)

#: named test conditions for the mean-fitness tables
TABLE_VARIANTS: dict[str, tuple[InertiaSchedule, float, float]] = {
    "SF_1": (InertiaSchedule.linear(0.9, 0.4), 0.0, 0.0),
    "DF_2": (InertiaSchedule.linear(0.9, 0.4), 0.0, 0.001),
    "DF_3": (InertiaSchedule.fixed(0.4), 0.0, 0.001),
}

#: generation budget per dimension used by the mean-fitness tables
G_MAX_BY_DIM = {10: 1000, 20: 1500, 30: 2000}

TABLE_M_LIST = (20, 40, 80, 160)
TABLE_DIMS = (10, 20, 30)


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment instance: an algorithm setting plus a trial budget."""

    objective: str
    dim: int
    m: int
    g_max: int
    inertia: InertiaSchedule
    c_v: float = 0.0
    c_l: float = 0.0
    c1: float = 2.0
    c2: float = 2.0
    n_trials: int = DEFAULT_TRIALS
    base_seed: int = 0

    def __post_init__(self):
        if self.m < 1:
            raise ConfigError(f"m: particle count must be >= 1, got {self.m}")
        if self.dim < 1:
            raise ConfigError(f"dim: dimension must be >= 1, got {self.dim}")
        if self.g_max < 1:
            raise ConfigError(f"g_max: generation count must be >= 1, got {self.g_max}")
        for name in ("c_v", "c_l"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ConfigError(f"{name}: chaotic factor must be in [0, 1], got {value}")
        if self.n_trials < 1:
            raise ConfigError(f"n_trials: must be >= 1, got {self.n_trials}")

    def objective_spec(self) -> ObjectiveSpec:
        return benchmark_domain(self.objective, self.dim)

    def pso_config(self) -> PsoConfig:
        return PsoConfig.for_objective(self.objective_spec(), m=self.m,
                                       g_max=self.g_max, inertia=self.inertia,
                                       c_v=self.c_v, c_l=self.c_l,
                                       c1=self.c1, c2=self.c2)

    def trial_seeds(self) -> list[int]:
        return [derive_seed(self.base_seed, t) for t in range(self.n_trials)]


@dataclass(frozen=True)
class SweepRow:
    """One aggregated cell of a sweep or table.

    `source` is "computed" for cells produced by this package and "paper"
    for quoted SF_0 constants (which carry no seed or spread)."""

    variant: str
    objective: str
    m: int
    dim: int
    g_max: int
    w_kind: str
    w_value_or_range: str
    c_v: float
    c_l: float
    n_trials: int | None
    base_seed: int | None
    mean_best: float
    std_best: float | None
    source: str = "computed"


@dataclass
class SweepTable:
    """Aggregated experiment grid, rows in a deterministic axis order."""

    rows: list[SweepRow]

    def __len__(self) -> int:
        return len(self.rows)

    def cell(self, **match) -> SweepRow:
        """The unique row whose fields equal `match` (e.g. variant="DF_3", m=20)."""
        hits = [r for r in self.rows
                if all(getattr(r, k) == v for k, v in match.items())]
        if len(hits) != 1:
            raise KeyError(f"expected exactly one row matching {match}, found {len(hits)}")
        return hits[0]


def _one_trial(args: tuple[ExperimentConfig, int]) -> TrialResult:
    config, seed = args
    return run(config.pso_config(), config.objective_spec(), seed)


def run_trials(config: ExperimentConfig,
               workers: int | None = None) -> tuple[float, float, list[TrialResult]]:
    """Run the configured number of independent trials and aggregate.

    Returns (mean, std, trials): the arithmetic mean and sample standard
    deviation (n-1 denominator; 0.0 by convention for a single trial) of the
    final swarm-best fitness, plus the per-trial results in trial order.
    With `workers` > 1 trials execute in a process pool; aggregation stays
    in trial-index order, so the numbers are identical to a serial run.
    """
    jobs = [(config, seed) for seed in config.trial_seeds()]
    if workers is not None and workers > 1:
        from . import _kernels

        _kernels.warm_up()  # compile before forking so children hit the cache
        with ProcessPoolExecutor(max_workers=workers) as pool:
            trials = list(pool.map(_one_trial, jobs, chunksize=8))
    else:
        trials = [_one_trial(job) for job in jobs]
    finals = np.array([t.final_fitness for t in trials])
    mean = float(finals.mean())
    std = float(finals.std(ddof=1)) if len(finals) > 1 else 0.0
    return mean, std, trials


def trace(config: ExperimentConfig, workers: int | None = None) -> np.ndarray:
    """Pointwise mean of the swarm-best trajectory over the trials.

    The result has one entry per generation and is non-increasing; its last
    entry equals the mean reported by ``run_trials``.
    """
    _, _, trials = run_trials(config, workers=workers)
    return np.mean([t.trajectory for t in trials], axis=0)


def _computed_row(config: ExperimentConfig, variant: str, mean: float,
                  std: float) -> SweepRow:
    return SweepRow(variant=variant, objective=config.objective, m=config.m,
                    dim=config.dim, g_max=config.g_max,
                    w_kind=config.inertia.kind,
                    w_value_or_range=config.inertia.describe(),
                    c_v=config.c_v, c_l=config.c_l, n_trials=config.n_trials,
                    base_seed=config.base_seed, mean_best=mean, std_best=std)


def sweep_w(base: ExperimentConfig, w_grid,
            chaos_variants=DEFAULT_CHAOS_VARIANTS,
            workers: int | None = None) -> SweepTable:
    """Mean fitness over a fixed-inertia grid for several chaos settings.

    Every (variant, w) combination is an independent cell of `base.n_trials`
    trials with its own derived seed base.  Rows are ordered variant-major,
    then by grid position.  An empty grid yields an empty table.
    """
    rows = []
    cell_index = 0
    for c_v, c_l in chaos_variants:
        variant = "SPSO" if c_v == 0.0 and c_l == 0.0 else "DPSO"
        for w in w_grid:
            cfg = replace(base, inertia=InertiaSchedule.fixed(w),
                          c_v=c_v, c_l=c_l,
                          base_seed=derive_seed(base.base_seed, cell_index))
            mean, std, _ = run_trials(cfg, workers=workers)
            rows.append(_computed_row(cfg, variant, mean, std))
            cell_index += 1
    return SweepTable(rows)


def _table_g_max(dim: int) -> int:
    if dim not in G_MAX_BY_DIM:
        known = ", ".join(str(d) for d in sorted(G_MAX_BY_DIM))
        raise ConfigError(f"dim: table experiments define G_max only for "
                          f"dimensions {known}, got {dim}")
    return G_MAX_BY_DIM[dim]


def table_cells(objective: str, variants=("SF_1", "DF_2", "DF_3"),
                m_list=TABLE_M_LIST, dims=TABLE_DIMS,
                n_trials: int = DEFAULT_TRIALS, base_seed: int = 0,
                workers: int | None = None,
                include_reference: bool = True) -> SweepTable:
    """Mean-fitness table over the (m, dim) grid for named test conditions.

    Each dimension implies its generation budget (10 -> 1000, 20 -> 1500,
    30 -> 2000).  When `include_reference` is true and SF_0 constants exist
    for the objective, they are prepended as quoted rows with
    source="paper".  SF_0 cannot be computed: it used an asymmetric
    initialization this package does not reproduce.
    """
    for variant in variants:
        if variant == SF0_LABEL:
            raise ConfigError(
                "variant: SF_0 is a quoted constant column (asymmetric "
                "initialization baseline) and cannot be recomputed; choose "
                "from " + ", ".join(sorted(TABLE_VARIANTS)))
        if variant not in TABLE_VARIANTS:
            raise ConfigError(f"variant: unknown test condition {variant!r}; "
                              f"choose from " + ", ".join(sorted(TABLE_VARIANTS)))

    rows = []
    if include_reference and objective in SF0_MEANS:
        quoted = SF0_MEANS[objective]
        for m in m_list:
            for dim in dims:
                if (m, dim) not in quoted:
                    continue
                rows.append(SweepRow(
                    variant=SF0_LABEL, objective=objective, m=m, dim=dim,
                    g_max=_table_g_max(dim), w_kind="linear",
                    w_value_or_range="0.9->0.4", c_v=0.0, c_l=0.0,
                    n_trials=None, base_seed=None,
                    mean_best=quoted[(m, dim)], std_best=None, source="paper"))

    cell_index = 0
    for variant in variants:
        inertia, c_v, c_l = TABLE_VARIANTS[variant]
        for m in m_list:
            for dim in dims:
                cfg = ExperimentConfig(
                    objective=objective, dim=dim, m=m, g_max=_table_g_max(dim),
                    inertia=inertia, c_v=c_v, c_l=c_l, n_trials=n_trials,
                    base_seed=derive_seed(base_seed, cell_index))
                mean, std, _ = run_trials(cfg, workers=workers)
                rows.append(_computed_row(cfg, variant, mean, std))
                cell_index += 1
    return SweepTable(rows)
