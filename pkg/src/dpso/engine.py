"""Particle swarm engine: swarm state, per-generation updates, full runs.

Minimization throughout ("better" always means smaller fitness).  The engine
clamps velocities to +/-v_max per dimension but never clamps positions, so
particles may leave the initialization box; evaluation is defined everywhere.

Random draws follow a fixed order so that runs are reproducible from their
seed: particle-major, dimension-minor, with the cognition draw before the
social draw in each coordinate update.  With both chaotic factors zero the
engine is draw-for-draw identical to one with the chaos stage removed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .objectives import ObjectiveSpec
from .rng import RngStream

FIXED = "fixed"
LINEAR = "linear"


class ConfigError(ValueError):
    """Raised when an algorithm or experiment configuration is invalid."""


@dataclass(frozen=True)
class InertiaSchedule:
    """Inertia weight per generation: a fixed value or a linear ramp."""

    kind: str
    w_start: float
    w_end: float

    def __post_init__(self):
        if self.kind not in (FIXED, LINEAR):
            raise ConfigError(f"w_kind: must be '{FIXED}' or '{LINEAR}', got {self.kind!r}")
        if not (np.isfinite(self.w_start) and np.isfinite(self.w_end)):
            raise ConfigError("w: inertia weights must be finite")

    @classmethod
    def fixed(cls, w: float) -> "InertiaSchedule":
        return cls(FIXED, w, w)

    @classmethod
    def linear(cls, w_start: float = 0.9, w_end: float = 0.4) -> "InertiaSchedule":
        return cls(LINEAR, w_start, w_end)

    def describe(self) -> str:
        """Short text form, e.g. '0.4' or '0.9->0.4'."""
        if self.kind == FIXED:
            return f"{self.w_start:g}"
        return f"{self.w_start:g}->{self.w_end:g}"


def inertia_at(schedule: InertiaSchedule, generation: int, g_max: int) -> float:
    """Inertia weight for `generation` (0-based) out of `g_max`.

    The linear ramp attains both endpoints: w(0) = w_start and
    w(g_max - 1) = w_end; a single-generation run uses w_start.
    """
    if not 0 <= generation < g_max:
        raise ValueError(f"generation {generation} out of range [0, {g_max})")
    if schedule.kind == FIXED or g_max == 1:
        return schedule.w_start
    return schedule.w_start + (schedule.w_end - schedule.w_start) * generation / (g_max - 1)


def _per_dim(value, dim: int, name: str) -> np.ndarray:
    arr = np.ascontiguousarray(value, dtype=np.float64)
    if arr.ndim == 0:
        arr = np.full(dim, float(arr))
    if arr.shape != (dim,):
        raise ConfigError(f"{name}: expected a scalar or a length-{dim} vector")
    return arr


@dataclass(frozen=True)
class PsoConfig:
    """Full parameterization of one swarm run.

    c_v and c_l are the chaotic factors: per-coordinate probabilities of
    re-randomizing a velocity (c_v) or position (c_l) after the regular
    update.  c_v = c_l = 0 is exactly standard PSO.
    """

    m: int
    dim: int
    c1: float
    c2: float
    inertia: InertiaSchedule
    v_max: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    g_max: int
    c_v: float = 0.0
    c_l: float = 0.0

    def __post_init__(self):
        if self.m < 1:
            raise ConfigError(f"m: particle count must be >= 1, got {self.m}")
        if self.dim < 1:
            raise ConfigError(f"dim: dimension must be >= 1, got {self.dim}")
        if self.g_max < 1:
            raise ConfigError(f"g_max: generation count must be >= 1, got {self.g_max}")
        object.__setattr__(self, "v_max", _per_dim(self.v_max, self.dim, "v_max"))
        object.__setattr__(self, "lower", _per_dim(self.lower, self.dim, "lower"))
        object.__setattr__(self, "upper", _per_dim(self.upper, self.dim, "upper"))
        if not np.all(self.v_max > 0):
            raise ConfigError("v_max: maximum velocity must be positive")
        if not np.all(self.lower < self.upper):
            raise ConfigError("bounds: every lower bound must be strictly below its upper bound")
        for name in ("c_v", "c_l"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ConfigError(f"{name}: chaotic factor must be in [0, 1], got {value}")

    @classmethod
    def for_objective(cls, objective: ObjectiveSpec, m: int, g_max: int,
                      inertia: InertiaSchedule, c_v: float = 0.0, c_l: float = 0.0,
                      c1: float = 2.0, c2: float = 2.0,
                      v_max=None) -> "PsoConfig":
        """Config over an objective's box; v_max defaults to the bound
        magnitude (v_max,d = x_max,d for the symmetric benchmark boxes)."""
        if v_max is None:
            v_max = np.abs(objective.upper)
        return cls(m=m, dim=objective.dimension, c1=c1, c2=c2, inertia=inertia,
                   v_max=v_max, lower=objective.lower, upper=objective.upper,
                   g_max=g_max, c_v=c_v, c_l=c_l)


@dataclass(frozen=True)
class Particle:
    """Snapshot of one swarm member."""

    position: np.ndarray
    velocity: np.ndarray
    pbest_position: np.ndarray
    pbest_fitness: float
    fitness: float


@dataclass
class SwarmState:
    """All particles plus the swarm's best-so-far bookkeeping.

    Arrays are (m, dim) for positions/velocities and (m,) for fitness.
    `gbest_index` is the index of the particle whose personal best is the
    swarm best (lowest index on ties); both personal and swarm bests are
    monotone non-increasing over generations.
    """

    positions: np.ndarray
    velocities: np.ndarray
    pbest_positions: np.ndarray
    pbest_fitness: np.ndarray
    fitness: np.ndarray
    gbest_index: int = 0
    generation: int = 0

    @property
    def m(self) -> int:
        return self.positions.shape[0]

    @property
    def gbest_fitness(self) -> float:
        return float(self.pbest_fitness[self.gbest_index])

    @property
    def gbest_position(self) -> np.ndarray:
        return self.pbest_positions[self.gbest_index]

    def particle(self, i: int) -> Particle:
        return Particle(position=self.positions[i].copy(),
                        velocity=self.velocities[i].copy(),
                        pbest_position=self.pbest_positions[i].copy(),
                        pbest_fitness=float(self.pbest_fitness[i]),
                        fitness=float(self.fitness[i]))

    def copy(self) -> "SwarmState":
        return SwarmState(self.positions.copy(), self.velocities.copy(),
                          self.pbest_positions.copy(), self.pbest_fitness.copy(),
                          self.fitness.copy(), self.gbest_index, self.generation)


@dataclass(frozen=True)
class TrialResult:
    """Outcome of one full run: per-generation best fitness and the final
    best.  `trajectory[k]` is the swarm-best fitness once generation k's
    movement has been scored, so it is non-increasing and its last entry is
    `final_fitness`."""

    seed: int
    final_fitness: float
    trajectory: np.ndarray
    final_position: np.ndarray


def init_swarm(config: PsoConfig, objective: ObjectiveSpec, rng) -> SwarmState:
    """Place and evaluate the initial swarm.

    For each particle, for each dimension: one unit draw sets the position
    uniformly inside the box, then one signed-unit draw sets the velocity as
    Rand2() * v_max,d.  Personal bests start at the initial positions.
    """
    if config.dim != objective.dimension:
        raise ConfigError(f"dim: config dimension {config.dim} does not match "
                          f"objective dimension {objective.dimension}")
    m, dim = config.m, config.dim
    positions = np.empty((m, dim))
    velocities = np.empty((m, dim))
    for i in range(m):
        for d in range(dim):
            u = rng.next_unit()
            positions[i, d] = config.lower[d] + u * (config.upper[d] - config.lower[d])
            velocities[i, d] = rng.next_signed_unit() * config.v_max[d]
    fitness = objective.evaluate_many(positions)
    state = SwarmState(positions=positions, velocities=velocities,
                       pbest_positions=positions.copy(),
                       pbest_fitness=fitness.copy(), fitness=fitness)
    return update_bests(state, objective)


def evaluate_fitness(state: SwarmState, objective: ObjectiveSpec) -> SwarmState:
    """Score every particle's current position."""
    state.fitness = objective.evaluate_many(state.positions)
    return state


def update_bests(state: SwarmState, objective: ObjectiveSpec) -> SwarmState:
    """Fold current fitness into personal bests, then reseat the swarm best.

    Current fitness values must be up to date for `objective` (see
    ``evaluate_fitness``).  Replacement is strict: an exact tie keeps the
    incumbent personal best.  The swarm best is the minimum personal best,
    lowest index on ties.
    """
    improved = state.fitness < state.pbest_fitness
    state.pbest_fitness = np.where(improved, state.fitness, state.pbest_fitness)
    state.pbest_positions[improved] = state.positions[improved]
    state.gbest_index = int(np.argmin(state.pbest_fitness))
    return state


def clamp_velocity(v: float, v_max_d: float) -> float:
    """Clamp one velocity component to [-v_max_d, +v_max_d] (v_max_d > 0)."""
    return min(max(v, -v_max_d), v_max_d)


def velocity_position_update(state: SwarmState, w: float, config: PsoConfig,
                             rng) -> SwarmState:
    """Apply the velocity and position update to every particle.

    Per coordinate: v <- w*v + c1*r1*(pbest - x) + c2*r2*(gbest - x), clamp
    to +/-v_max,d, then x <- x + v.  The swarm best is synchronous: the
    gbest computed this generation serves every particle this generation.
    Consumes exactly 2*m*dim unit draws (r1 before r2, coordinates in
    particle-major order).
    """
    m, dim = config.m, config.dim
    draws = rng.next_units(2 * m * dim).reshape(m, dim, 2)
    r1 = draws[..., 0]
    r2 = draws[..., 1]
    x = state.positions
    pbest = state.pbest_positions
    gbest = pbest[state.gbest_index]
    vel = (w * state.velocities
           + config.c1 * r1 * (pbest - x)
           + config.c2 * r2 * (gbest - x))
    np.clip(vel, -config.v_max, config.v_max, out=vel)
    state.velocities = vel
    state.positions = x + vel
    return state


def step(state: SwarmState, config: PsoConfig, objective: ObjectiveSpec,
         rng) -> SwarmState:
    """Advance the swarm one generation.

    Order: evaluate, fold bests, move with the scheduled inertia weight,
    then (only when a chaotic factor is nonzero) the chaos stage.  When
    c_v = c_l = 0 no chaos draws are consumed at all, so a standard-PSO run
    is bit-identical to a chaos-free engine.
    """
    from .chaos import ChaosParams, apply_chaos

    evaluate_fitness(state, objective)
    update_bests(state, objective)
    w = inertia_at(config.inertia, state.generation, config.g_max)
    velocity_position_update(state, w, config, rng)
    if config.c_v > 0.0 or config.c_l > 0.0:
        apply_chaos(state, ChaosParams(config.c_v, config.c_l), config,
                    config.lower, config.upper, rng)
    state.generation += 1
    return state


def run(config: PsoConfig, objective: ObjectiveSpec, seed: int,
        use_kernel: bool | None = None) -> TrialResult:
    """One full trial from a fresh seeded stream.

    Performs exactly g_max generations, scoring each generation's moved
    positions so the final movement is never wasted; the returned
    trajectory has one entry per generation.

    `use_kernel` selects the compiled fast path (default: use it whenever
    the objective has a compiled evaluator).  Both paths are bit-identical
    for the same (config, seed).
    """
    if config.dim != objective.dimension:
        raise ConfigError(f"dim: config dimension {config.dim} does not match "
                          f"objective dimension {objective.dimension}")
    if use_kernel is None:
        use_kernel = objective.kernel_id is not None
    if use_kernel:
        if objective.kernel_id is None:
            raise ConfigError(f"objective: {objective.name!r} has no compiled evaluator")
        from . import _kernels

        gen = np.random.Generator(np.random.PCG64(seed))
        w_kind = 0 if config.inertia.kind == FIXED else 1
        traj, final_pos = _kernels.run_loop(
            gen, config.m, config.dim, config.g_max, config.c1, config.c2,
            w_kind, config.inertia.w_start, config.inertia.w_end,
            config.v_max, config.lower, config.upper,
            config.c_v, config.c_l, objective.kernel_id)
        return TrialResult(seed=seed, final_fitness=float(traj[-1]),
                           trajectory=traj, final_position=final_pos)

    rng = RngStream(seed)
    state = init_swarm(config, objective, rng)
    trajectory = np.empty(config.g_max)
    for k in range(config.g_max):
        step(state, config, objective, rng)
        evaluate_fitness(state, objective)
        update_bests(state, objective)
        trajectory[k] = state.gbest_fitness
    return TrialResult(seed=seed, final_fitness=float(trajectory[-1]),
                       trajectory=trajectory,
                       final_position=state.gbest_position.copy())
