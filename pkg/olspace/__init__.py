"""Numerics and classification of Orlicz–Lorentz spaces.

(modulars, Luxemburg and Orlicz norms, level functions, fundamental functions and three-valued verdicts
on diameter-two, Daugavet and Radon–Nikodým properties)
"""

from .classifier import ClassificationReport, Property, PropertyVerdict, classify
from .config import SpaceSpecConfig, load_spec
from .domain import Domain, Kind
from .exceptions import (
    ConfigError,
    ConvergenceWarning,
    DomainError,
    NumericalFailure,
    OlspaceError,
    PreconditionError,
    ProbedRangeWarning,
    UnsupportedSpaceError,
)
from .modular_p import modular_p
from .norms import (
    amemiya_norm_lambda,
    fundamental_lambda,
    fundamental_m,
    lambda_norm,
    luxemburg_norm,
    m_norm,
    modular_alpha,
    modular_q,
    modular_rho,
    orlicz_amemiya_norm,
)
from .rearrangement import StepFunction, level_function, rearrange
from .spaces import Side, SpaceSpec
from .verdict import Verdict
from .verify import CheckResult, SuiteReport, run_suite

__all__ = [
    "CheckResult",
    "ClassificationReport",
    "ConfigError",
    "ConvergenceWarning",
    "Domain",
    "DomainError",
    "Kind",
    "NumericalFailure",
    "OlspaceError",
    "PreconditionError",
    "ProbedRangeWarning",
    "Property",
    "PropertyVerdict",
    "Side",
    "SpaceSpec",
    "SpaceSpecConfig",
    "StepFunction",
    "SuiteReport",
    "UnsupportedSpaceError",
    "Verdict",
    "amemiya_norm_lambda",
    "classify",
    "fundamental_lambda",
    "fundamental_m",
    "lambda_norm",
    "level_function",
    "load_spec",
    "luxemburg_norm",
    "m_norm",
    "modular_alpha",
    "modular_p",
    "modular_q",
    "modular_rho",
    "orlicz_amemiya_norm",
    "rearrange",
    "run_suite",
]
