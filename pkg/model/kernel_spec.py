"""
Kernel spec strings: the structured key-value text form of a BirthKernel.

    trunc:k=2,r=1
    free:r=1
    sum:shape=tent,support=1,scale=2,k=3
    powerlaw:alpha=2.8,k=1[,rmax=5000]
    zero:r=1
    trunc:k=1,r=1+trunc:k=1,r=1
"""

from typing import Dict

from pydantic import TypeAdapter, ValidationError

from model.kernels import (
    BirthKernel,
    DiscretePowerLaw,
    FreeIndicator,
    IndicatorSum,
    Profile,
    SumKernel,
    TruncatedIndicator,
    ZeroKernel,
)
from utils.errors import InvalidArgumentError

_KERNEL_ADAPTER = TypeAdapter(BirthKernel)

# spec key -> model field, per kind
_KEYS: Dict[str, Dict[str, str]] = {
    "trunc": {"k": "cap", "r": "radius"},
    "free": {"r": "radius"},
    "sum": {"shape": "shape", "support": "support", "scale": "scale", "k": "cap"},
    "powerlaw": {"alpha": "alpha", "k": "cap", "rmax": "r_max"},
    "zero": {"r": "radius"},
}


def _fmt(value: float) -> str:
    return repr(float(value))


def kernel_spec(kernel) -> str:
    """Serialize a kernel to its spec string."""
    if isinstance(kernel, IndicatorSum):
        return "+".join(kernel_spec(c) for c in kernel.components)
    if isinstance(kernel, TruncatedIndicator):
        return f"trunc:k={_fmt(kernel.cap)},r={_fmt(kernel.radius)}"
    if isinstance(kernel, FreeIndicator):
        return f"free:r={_fmt(kernel.radius)}"
    if isinstance(kernel, ZeroKernel):
        return f"zero:r={_fmt(kernel.radius)}"
    if isinstance(kernel, SumKernel):
        spec = (f"sum:shape={kernel.profile.shape.value},support={_fmt(kernel.profile.support)},"
                f"scale={_fmt(kernel.scale)}")
        return spec if kernel.cap is None else f"{spec},k={_fmt(kernel.cap)}"
    if isinstance(kernel, DiscretePowerLaw):
        spec = f"powerlaw:alpha={_fmt(kernel.alpha)},k={_fmt(kernel.cap)}"
        return spec if kernel.r_max is None else f"{spec},rmax={kernel.r_max}"
    raise InvalidArgumentError(f"Unknown kernel type {type(kernel).__name__}")


def _parse_single(text: str):
    kind, sep, body = text.strip().partition(":")
    if not sep or kind not in _KEYS:
        raise InvalidArgumentError(f"Kernel spec '{text}' must start with one of {sorted(_KEYS)} followed by ':'")
    fields: Dict[str, object] = {"kind": kind}
    for item in filter(None, body.split(",")):
        key, eq, value = item.partition("=")
        key = key.strip()
        if not eq or key not in _KEYS[kind]:
            raise InvalidArgumentError(
                f"Unknown key '{key}' in kernel spec '{text}'; allowed: {sorted(_KEYS[kind])}"
            )
        fields[_KEYS[kind][key]] = value.strip()
    if kind == "sum":
        fields["profile"] = Profile(
            shape=fields.pop("shape", "indicator"),
            support=fields.pop("support", 1.0),
        )
    return fields


def parse_kernel_spec(text: str):
    """Parse a spec string into a validated kernel; raises InvalidArgumentError on any defect."""
    parts = [p for p in text.split("+")]
    try:
        if len(parts) == 1:
            return _KERNEL_ADAPTER.validate_python(_parse_single(parts[0]))
        return IndicatorSum(components=[_parse_single(p) for p in parts])
    except ValidationError as e:
        raise InvalidArgumentError(f"Invalid kernel spec '{text}': {e.errors()[0]['msg']}") from e
