"""Compiled hot path: objective evaluation and the full trial loop.

The jitted trial kernel performs the exact same arithmetic, in the exact
same random-draw order, as the step-by-step engine in ``engine.py``; the
two are asserted bit-identical in the test suite.  numpy Generator draws
inside numba match numpy's own stream for the same seed, which is what
makes the shared-seed equivalence possible.
"""

from __future__ import annotations

import numpy as np
from numba import njit

RASTRIGIN_ID = 0
GRIEWANK_ID = 1


@njit(cache=True)
def _eval_one(obj_id: int, x: np.ndarray) -> float:
    n = x.shape[0]
    if obj_id == RASTRIGIN_ID:
        s = 0.0
        for d in range(n):
            s += x[d] * x[d] - 10.0 * np.cos(2.0 * np.pi * x[d]) + 10.0
        return s
    else:
        s = 0.0
        p = 1.0
        for d in range(n):
            s += x[d] * x[d]
            p *= np.cos(x[d] / np.sqrt(d + 1.0))
        return s / 4000.0 - p + 1.0


@njit(cache=True)
def eval_many(obj_id: int, xs: np.ndarray) -> np.ndarray:
    out = np.empty(xs.shape[0])
    for i in range(xs.shape[0]):
        out[i] = _eval_one(obj_id, xs[i])
    return out


@njit(cache=True)
def run_loop(gen, m, dim, g_max, c1, c2, w_kind, w_start, w_end,
             v_max, lower, upper, c_v, c_l, obj_id):
    """One full trial; returns (trajectory, final positions-of-record).

    Draw order per the engine contract: initialization interleaves one
    position draw and one signed velocity draw per (particle, dimension);
    each generation then draws the cognition and social uniforms per
    coordinate, followed by the chaos gates (velocity gate before position
    gate) with a value draw only when a gate fires.
    """
    x = np.empty((m, dim))
    v = np.empty((m, dim))
    for i in range(m):
        for d in range(dim):
            u = gen.random()
            x[i, d] = lower[d] + u * (upper[d] - lower[d])
            s = 2.0 * gen.random() - 1.0
            v[i, d] = s * v_max[d]

    fit = np.empty(m)
    for i in range(m):
        fit[i] = _eval_one(obj_id, x[i])
    pbest = x.copy()
    pfit = fit.copy()
    g = 0
    for i in range(1, m):
        if pfit[i] < pfit[g]:
            g = i

    traj = np.empty(g_max)
    for k in range(g_max):
        if w_kind == 0 or g_max == 1:
            w = w_start
        else:
            w = w_start + (w_end - w_start) * k / (g_max - 1)

        for i in range(m):
            for d in range(dim):
                r1 = gen.random()
                r2 = gen.random()
                vel = (w * v[i, d]
                       + c1 * r1 * (pbest[i, d] - x[i, d])
                       + c2 * r2 * (pbest[g, d] - x[i, d]))
                if vel > v_max[d]:
                    vel = v_max[d]
                elif vel < -v_max[d]:
                    vel = -v_max[d]
                v[i, d] = vel
                x[i, d] = x[i, d] + vel

        if c_v > 0.0 or c_l > 0.0:
            for i in range(m):
                for d in range(dim):
                    if c_v > 0.0 and gen.random() < c_v:
                        v[i, d] = gen.random() * v_max[d]
                    if c_l > 0.0 and gen.random() < c_l:
                        x[i, d] = lower[d] + gen.random() * (upper[d] - lower[d])

        for i in range(m):
            f = _eval_one(obj_id, x[i])
            fit[i] = f
            if f < pfit[i]:
                pfit[i] = f
                for d in range(dim):
                    pbest[i, d] = x[i, d]
        g = 0
        for i in range(1, m):
            if pfit[i] < pfit[g]:
                g = i
        traj[k] = pfit[g]

    return traj, pbest[g].copy()


@njit(cache=True)
def gated_draws(gen, probs):
    """Scalar gate loop on a raw generator: one draw per event, one more
    where the gate fires."""
    n = probs.shape[0]
    fired = np.zeros(n, dtype=np.bool_)
    values = np.zeros(n)
    for e in range(n):
        if gen.random() < probs[e]:
            fired[e] = True
            values[e] = gen.random()
    return fired, values


def warm_up() -> None:
    """Force compilation of the kernels (cached on disk afterwards)."""
    gen = np.random.Generator(np.random.PCG64(0))
    one = np.ones(2)
    run_loop(gen, 2, 2, 1, 2.0, 2.0, 1, 0.9, 0.4, one, -one, one, 0.5, 0.5,
             RASTRIGIN_ID)
    eval_many(GRIEWANK_ID, np.zeros((1, 2)))
    gated_draws(gen, np.full(4, 0.5))
