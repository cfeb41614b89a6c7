import numpy as np
import pytest

from dpso import InertiaSchedule, PsoConfig, benchmark_domain


class ConstantRng:
    """Stub stream: every unit draw is `unit`, every signed draw `signed`."""

    def __init__(self, unit=0.5, signed=0.0):
        self._unit = unit
        self._signed = signed

    def next_unit(self):
        return self._unit

    def next_signed_unit(self):
        return self._signed

    def next_units(self, n):
        return np.full(n, self._unit)


class ScriptedRng:
    """Stub stream replaying a fixed sequence of unit draws."""

    def __init__(self, units):
        self._units = list(units)

    def next_unit(self):
        return self._units.pop(0)

    def next_signed_unit(self):
        return 2.0 * self.next_unit() - 1.0

    def next_units(self, n):
        return np.array([self.next_unit() for _ in range(n)])

    def remaining(self):
        return len(self._units)


@pytest.fixture
def rastrigin_spec():
    return benchmark_domain("rastrigin", 10)


def small_config(spec, m=20, g_max=50, inertia=None, **kwargs) -> PsoConfig:
    if inertia is None:
        inertia = InertiaSchedule.linear()
    return PsoConfig.for_objective(spec, m=m, g_max=g_max, inertia=inertia, **kwargs)
