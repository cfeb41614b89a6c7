"""Standard and dissipative particle swarm optimization.

One parameterized engine covers both algorithm variants: the chaotic
factors c_v and c_l gate per-coordinate re-randomization of velocities and
positions after the regular update, and setting both to zero recovers
standard PSO exactly (draw-for-draw).  The experiment layer reproduces
mean-fitness tables, inertia-weight sweeps and convergence traces over
repeated seeded trials, and the ``dpso`` command emits them as CSV.
"""

from .chaos import ChaosParams, apply_chaos, chaos_position, chaos_velocity
from .engine import (ConfigError, InertiaSchedule, Particle, PsoConfig,
                     SwarmState, TrialResult, clamp_velocity,
                     evaluate_fitness, inertia_at, init_swarm, run, step,
                     update_bests, velocity_position_update)
from .experiment import (DEFAULT_CHAOS_VARIANTS, ExperimentConfig, SweepRow,
                         SweepTable, TABLE_VARIANTS, run_trials, sweep_w,
                         table_cells, trace)
from .objectives import (GRIEWANK, RASTRIGIN, ObjectiveSpec,
                         UnknownObjectiveError, benchmark_domain, griewank,
                         rastrigin)
from .rng import CountingRng, RngStream, derive_seed

__version__ = "0.1.0"

__all__ = [
    "ChaosParams", "apply_chaos", "chaos_position", "chaos_velocity",
    "ConfigError", "InertiaSchedule", "Particle", "PsoConfig", "SwarmState",
    "TrialResult", "clamp_velocity", "evaluate_fitness", "inertia_at",
    "init_swarm", "run", "step", "update_bests", "velocity_position_update",
    "DEFAULT_CHAOS_VARIANTS", "ExperimentConfig", "SweepRow", "SweepTable",
    "TABLE_VARIANTS", "run_trials", "sweep_w", "table_cells", "trace",
    "GRIEWANK", "RASTRIGIN", "ObjectiveSpec", "UnknownObjectiveError",
    "benchmark_domain", "griewank", "rastrigin",
    "CountingRng", "RngStream", "derive_seed",
    "__version__",
]
