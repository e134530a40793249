import pytest

from model.kernel_spec import kernel_spec, parse_kernel_spec
from model.kernels import (
    DiscretePowerLaw,
    FreeIndicator,
    IndicatorSum,
    ProfileShape,
    SumKernel,
    TruncatedIndicator,
    ZeroKernel,
)
from utils.errors import InvalidArgumentError

SPECS = [
    "trunc:k=2.0,r=1.0",
    "free:r=0.5",
    "sum:shape=tent,support=1.0,scale=2.0,k=3.0",
    "sum:shape=epanechnikov,support=2.0,scale=0.25",
    "powerlaw:alpha=2.8,k=1.0",
    "powerlaw:alpha=4.2,k=1.0,rmax=50",
    "zero:r=1.0",
    "trunc:k=1.0,r=1.0+trunc:k=1.0,r=1.0",
    "trunc:k=1.5,r=2.0+free:r=2.0",
]


@pytest.mark.parametrize("spec", SPECS)
def test_canonical_specs_round_trip(spec):
    kernel = parse_kernel_spec(spec)
    assert kernel_spec(kernel) == spec
    assert parse_kernel_spec(kernel_spec(kernel)) == kernel


def test_short_spellings_normalize():
    kernel = parse_kernel_spec("trunc:k=2,r=1")
    assert kernel == TruncatedIndicator(cap=2.0, radius=1.0)
    assert kernel_spec(kernel) == "trunc:k=2.0,r=1.0"


def test_parsed_types():
    assert isinstance(parse_kernel_spec("free:r=1"), FreeIndicator)
    assert isinstance(parse_kernel_spec("zero:r=1"), ZeroKernel)
    assert isinstance(parse_kernel_spec("powerlaw:alpha=3,k=1"), DiscretePowerLaw)
    total = parse_kernel_spec("trunc:k=1,r=1+trunc:k=1,r=1")
    assert isinstance(total, IndicatorSum) and len(total.components) == 2
    tent = parse_kernel_spec("sum:shape=tent,support=1,scale=2")
    assert isinstance(tent, SumKernel)
    assert tent.profile.shape is ProfileShape.TENT and tent.cap is None


@pytest.mark.parametrize(
    "bad",
    [
        "gauss:r=1",
        "trunc k=2",
        "trunc:k=2,q=1",
        "trunc:k=-1,r=1",
        "trunc:k=two,r=1",
        "powerlaw:alpha=1.5,k=1",
        "sum:shape=cone,support=1,scale=1",
        "trunc:k=1,r=1+trunc:k=1,r=2",
    ],
)
def test_invalid_specs_raise(bad):
    with pytest.raises(InvalidArgumentError):
        parse_kernel_spec(bad)
