"""Benchmark objective functions and their search domains.

Two multimodal minimization benchmarks are provided, both with their global
minimum of 0 at the origin.  Evaluation is total on all of R^D: bounds are
used only for swarm initialization and chaotic position resampling, never to
restrict evaluation.

Fitness accumulates dimension-by-dimension in index order (a documented
contract, shared with the compiled trial kernel, so every code path produces
bit-identical fitness values).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import _kernels

RASTRIGIN = "rastrigin"
GRIEWANK = "griewank"

#: bound magnitude per benchmark; the search box is [-x_max, x_max]^D
X_MAX = {RASTRIGIN: 10.0, GRIEWANK: 600.0}

_KERNEL_IDS = {RASTRIGIN: _kernels.RASTRIGIN_ID, GRIEWANK: _kernels.GRIEWANK_ID}


class UnknownObjectiveError(ValueError):
    """Raised for objective names this package does not define."""


def _as_batch(x) -> tuple[np.ndarray, bool]:
    arr = np.ascontiguousarray(x, dtype=np.float64)
    if arr.ndim == 1:
        if arr.shape[0] == 0:
            raise ValueError("objective input must have at least one dimension")
        return arr.reshape(1, -1), True
    if arr.ndim == 2:
        if arr.shape[1] == 0:
            raise ValueError("objective input must have at least one dimension")
        return arr, False
    raise ValueError(f"objective input must be a vector or a batch of vectors, "
                     f"got ndim={arr.ndim}")


def rastrigin(x) -> float | np.ndarray:
    """Sum over dimensions of x_d**2 - 10*cos(2*pi*x_d) + 10.

    Accepts a single D-vector (returns a float) or an (n, D) batch
    (returns an (n,) array).  Nonnegative everywhere; 0 exactly at the
    origin.
    """
    batch, single = _as_batch(x)
    out = _kernels.eval_many(_kernels.RASTRIGIN_ID, batch)
    return float(out[0]) if single else out


def griewank(x) -> float | np.ndarray:
    """(1/4000) * sum x_d**2 - prod cos(x_d / sqrt(d)) + 1, d counted from 1.

    Accepts a single D-vector (returns a float) or an (n, D) batch
    (returns an (n,) array).  Nonnegative everywhere; 0 exactly at the
    origin.
    """
    batch, single = _as_batch(x)
    out = _kernels.eval_many(_kernels.GRIEWANK_ID, batch)
    return float(out[0]) if single else out


@dataclass(frozen=True)
class ObjectiveSpec:
    """An objective function together with its search box.

    `fn` maps a D-vector to a float (and an (n, D) batch to an (n,) array).
    `lower` and `upper` bound initialization and chaotic resampling only;
    `fn` itself is defined on all of R^D.  `kernel_id` identifies the
    compiled evaluator for the fast trial path; it is None for objectives
    without one.
    """

    name: str
    dimension: int
    lower: np.ndarray
    upper: np.ndarray
    fn: Callable
    kernel_id: int | None = None

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError(f"dimension must be >= 1, got {self.dimension}")
        lo = np.ascontiguousarray(self.lower, dtype=np.float64)
        hi = np.ascontiguousarray(self.upper, dtype=np.float64)
        if lo.shape != (self.dimension,) or hi.shape != (self.dimension,):
            raise ValueError("bounds must be vectors of length `dimension`")
        if not np.all(lo < hi):
            raise ValueError("every lower bound must be strictly below its upper bound")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    def evaluate(self, x) -> float:
        """Fitness of one D-vector."""
        x = np.asarray(x, dtype=np.float64)
        if x.shape != (self.dimension,):
            raise ValueError(f"expected a vector of length {self.dimension}, "
                             f"got shape {x.shape}")
        return float(self.fn(x))

    def evaluate_many(self, xs: np.ndarray) -> np.ndarray:
        """Fitness of each row of an (n, D) batch."""
        xs = np.ascontiguousarray(xs, dtype=np.float64)
        if xs.ndim != 2 or xs.shape[1] != self.dimension:
            raise ValueError(f"expected an (n, {self.dimension}) batch, "
                             f"got shape {xs.shape}")
        return self.fn(xs)


_FUNCTIONS = {RASTRIGIN: rastrigin, GRIEWANK: griewank}


def benchmark_domain(name: str, dimension: int) -> ObjectiveSpec:
    """Benchmark spec with its standard symmetric box: +/-10 for
    rastrigin, +/-600 for griewank, every dimension."""
    if name not in _FUNCTIONS:
        known = ", ".join(sorted(_FUNCTIONS))
        raise UnknownObjectiveError(f"unknown objective {name!r} (known: {known})")
    x_max = X_MAX[name]
    bound = np.full(dimension, x_max)
    return ObjectiveSpec(name=name, dimension=dimension,
                         lower=-bound, upper=bound,
                         fn=_FUNCTIONS[name], kernel_id=_KERNEL_IDS[name])
