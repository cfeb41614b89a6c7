"""Chaos operators: gated re-randomization of velocities and positions.

After the regular velocity/position update, each coordinate may be replaced
by a fresh random value: with probability c_v the velocity becomes
rand() * v_max,d (nonnegative by construction), and with probability c_l the
position is resampled uniformly inside the initialization box.  Gates are
evaluated per coordinate, velocity gate before position gate, particles in
index order; a value draw is consumed only when its gate fires.

Selection memory is untouched: chaos never modifies personal bests or the
swarm-best index, only current velocities and positions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .engine import ConfigError, PsoConfig, SwarmState
from .rng import RngStream


@dataclass(frozen=True)
class ChaosParams:
    """Chaotic factors, each a per-coordinate probability in [0, 1]."""

    c_v: float = 0.0
    c_l: float = 0.0

    def __post_init__(self):
        for name in ("c_v", "c_l"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ConfigError(f"{name}: chaotic factor must be in [0, 1], got {value}")


def chaos_velocity(v_id: float, c_v: float, v_max_d: float, rng) -> float:
    """One velocity coordinate through the chaos gate.

    Draws the gate uniform; if it is below c_v, draws one more uniform and
    returns it scaled by v_max_d (so chaotic velocities lie in [0, v_max_d)),
    otherwise returns v_id unchanged.  Callers skip this entirely when
    c_v = 0.
    """
    if rng.next_unit() < c_v:
        return rng.next_unit() * v_max_d
    return v_id


def chaos_position(x_id: float, c_l: float, l_d: float, u_d: float, rng) -> float:
    """One position coordinate through the chaos gate.

    Draws the gate uniform; if it is below c_l, resamples the coordinate
    uniformly on [l_d, u_d), otherwise returns x_id unchanged.  Callers skip
    this entirely when c_l = 0.
    """
    if l_d >= u_d:
        raise ValueError(f"bounds: need l_d < u_d, got [{l_d}, {u_d}]")
    if rng.next_unit() < c_l:
        return l_d + rng.next_unit() * (u_d - l_d)
    return x_id


def gated_uniforms(rng, probs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Run a sequence of chaos gates, draw-for-draw identical to the scalar
    loop of the per-coordinate operators.

    For each event e in order: draw one gate uniform; if it is below
    probs[e], the event fires and the next draw is its value uniform.
    Returns (fired, values) where values[e] is meaningful only where
    fired[e].  Consumes exactly len(probs) + fired.sum() draws, in the same
    order as repeated scalar next_unit() calls.

    A raw ``RngStream`` goes through the compiled scalar loop.  Wrapped or
    stub streams take a buffered-parse path instead: it draws batches but
    never over-draws (the buffer holds at most one pending draw per
    remaining event, so every buffered draw is consumed in its contractual
    role).  The parse rescans the buffer after each fire, which is cheap at
    the small fire rates the engine uses.
    """
    probs = np.ascontiguousarray(probs, dtype=np.float64)
    if isinstance(rng, RngStream):
        from . import _kernels

        return _kernels.gated_draws(rng.generator, probs)
    n = int(probs.shape[0])
    fired = np.zeros(n, dtype=bool)
    values = np.zeros(n)
    if n == 0:
        return fired, values
    buf = rng.next_units(n)
    pos = 0
    i = 0
    while i < n:
        if pos == buf.shape[0]:
            buf = rng.next_units(n - i)
            pos = 0
        window = buf[pos:]
        k = window.shape[0]
        hits = np.nonzero(window < probs[i:i + k])[0]
        if hits.size == 0:
            i += k
            pos += k
            continue
        j = int(hits[0])
        e = i + j
        fired[e] = True
        pos += j + 1
        if pos < buf.shape[0]:
            values[e] = buf[pos]
            pos += 1
        else:
            values[e] = rng.next_unit()
        i = e + 1
    return fired, values


def apply_chaos(state: SwarmState, params: ChaosParams, config: PsoConfig,
                lower: np.ndarray, upper: np.ndarray, rng) -> SwarmState:
    """Chaos stage over the whole swarm, once per generation after movement.

    Coordinates are visited particle-major, dimension-minor; within a
    coordinate the velocity gate precedes the position gate.  A factor of
    zero skips its gate entirely (no draw).  Fitness is not re-evaluated
    here; the relocated particles are scored at the next generation's
    evaluation.
    """
    c_v, c_l = params.c_v, params.c_l
    if c_v <= 0.0 and c_l <= 0.0:
        return state
    m, dim = state.positions.shape
    n_coords = m * dim
    both = c_v > 0.0 and c_l > 0.0
    if both:
        probs = np.empty(2 * n_coords)
        probs[0::2] = c_v
        probs[1::2] = c_l
    else:
        probs = np.full(n_coords, c_v if c_v > 0.0 else c_l)
    fired, values = gated_uniforms(rng, probs)

    if c_v > 0.0:
        fired_v = (fired[0::2] if both else fired).reshape(m, dim)
        values_v = (values[0::2] if both else values).reshape(m, dim)
        chaotic_v = values_v * config.v_max
        state.velocities[fired_v] = chaotic_v[fired_v]
    if c_l > 0.0:
        fired_l = (fired[1::2] if both else fired).reshape(m, dim)
        values_l = (values[1::2] if both else values).reshape(m, dim)
        lo = np.ascontiguousarray(lower, dtype=np.float64)
        hi = np.ascontiguousarray(upper, dtype=np.float64)
        chaotic_x = lo + values_l * (hi - lo)
        state.positions[fired_l] = chaotic_x[fired_l]
    return state
