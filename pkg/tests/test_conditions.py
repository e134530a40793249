import numpy as np
import pytest

from model.conditions import check_conditions
from model.kernels import DiscretePowerLaw, IndicatorSum, TruncatedIndicator, ZeroKernel
from utils.errors import InvalidArgumentError


class _Isolated:
    """Rate 1 only when exactly one particle is in range: not monotone."""
    interaction_range = 1.0

    def rate_at(self, distances):
        return 1.0 if np.count_nonzero(distances <= 1.0) == 1 else 0.0

    def dominating_at(self, distances):
        return float(np.count_nonzero(distances <= 1.0))

    def witness(self):
        return None


@pytest.mark.parametrize("dimension", [1, 2])
def test_standard_kernels_pass(dimension, trunc2, free1, tent_capped):
    unit = TruncatedIndicator(cap=1.0, radius=1.0)
    for kernel in (trunc2, free1, tent_capped, IndicatorSum(components=[unit, unit])):
        report = check_conditions(kernel, trials=200, seed=3, dimension=dimension)
        assert report.all_passed, [c.counterexample for c in report.checks if not c.ok]
        assert report.dimension == dimension


def test_powerlaw_kernel_checks_on_the_lattice():
    report = check_conditions(DiscretePowerLaw(alpha=3.5, cap=1.0, r_max=20), trials=200, seed=5, dimension=2)
    assert report.dimension == 1
    assert report.all_passed


def test_zero_kernel_fails_non_degeneracy_only():
    report = check_conditions(ZeroKernel(), trials=50, seed=1)
    assert report.sublinearity.ok and report.monotonicity.ok and report.invariance.ok
    assert not report.non_degeneracy.ok
    assert report.non_degeneracy.passed == 0


def test_non_monotone_kernel_gets_a_counterexample():
    report = check_conditions(_Isolated(), trials=500, seed=11)
    assert not report.monotonicity.ok
    example = report.monotonicity.counterexample
    assert example["rate_eta"] > example["rate_zeta"]
    assert not report.all_passed


def test_checks_are_deterministic(trunc2):
    a = check_conditions(trunc2, trials=50, seed=9)
    b = check_conditions(trunc2, trials=50, seed=9)
    assert a == b


def test_trials_must_be_positive(trunc2):
    with pytest.raises(InvalidArgumentError):
        check_conditions(trunc2, trials=0, seed=1)
