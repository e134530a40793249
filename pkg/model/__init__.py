"""
Core model: configurations, birth-rate kernels, rate evaluation and the
condition checks every kernel is expected to pass.
"""

from model.conditions import ConditionCheck, ConditionsReport, check_conditions
from model.configuration import Configuration
from model.kernel_spec import kernel_spec, parse_kernel_spec
from model.kernels import (
    BirthKernel,
    DiscretePowerLaw,
    FreeIndicator,
    IndicatorSum,
    NonDegeneracyWitness,
    Profile,
    ProfileShape,
    SumKernel,
    TruncatedIndicator,
    ZeroKernel,
    add_kernels,
    powerlaw_normalizer,
    powerlaw_weights,
    truncation_radius,
)
from model.rates import evaluate_rate, total_rate

__all__ = [
    "BirthKernel",
    "ConditionCheck",
    "ConditionsReport",
    "Configuration",
    "DiscretePowerLaw",
    "FreeIndicator",
    "IndicatorSum",
    "NonDegeneracyWitness",
    "Profile",
    "ProfileShape",
    "SumKernel",
    "TruncatedIndicator",
    "ZeroKernel",
    "add_kernels",
    "check_conditions",
    "evaluate_rate",
    "kernel_spec",
    "parse_kernel_spec",
    "powerlaw_normalizer",
    "powerlaw_weights",
    "total_rate",
    "truncation_radius",
]
