"""Quoted baseline results for the SF_0 test condition.

SF_0 is a standard-PSO baseline from the literature that used an asymmetric
initialization method whose exact ranges are not part of this package, so
its mean-fitness values are shipped as display constants and never
recomputed.  Keys are (particle count m, dimension); values are mean best
fitness over 500 trials as originally reported.
"""

from __future__ import annotations

SF0_LABEL = "SF_0"

SF0_RASTRIGIN: dict[tuple[int, int], float] = {
    (20, 10): 5.5572, (20, 20): 22.8892, (20, 30): 47.2941,
    (40, 10): 3.5623, (40, 20): 16.3504, (40, 30): 38.5250,
    (80, 10): 2.5379, (80, 20): 13.4263, (80, 30): 29.3063,
    (160, 10): 1.4943, (160, 20): 10.3696, (160, 30): 24.0864,
}

SF0_GRIEWANK: dict[tuple[int, int], float] = {
    (20, 10): 0.0919, (20, 20): 0.0303, (20, 30): 0.0182,
    (40, 10): 0.0862, (40, 20): 0.0286, (40, 30): 0.0127,
    (80, 10): 0.0760, (80, 20): 0.0288, (80, 30): 0.0128,
    (160, 10): 0.0628, (160, 20): 0.0300, (160, 30): 0.0127,
}

SF0_MEANS: dict[str, dict[tuple[int, int], float]] = {
    "rastrigin": SF0_RASTRIGIN,
    "griewank": SF0_GRIEWANK,
}
