"""Orlicz functions, their conjugates and growth conditions."""

from olspace.orlicz.base import (
    ExtendedOrliczFunction,
    GrowthReport,
    OrliczFunction,
    conjugate_maximizer,
    numeric_conjugate,
)
from olspace.orlicz.conjugate import ConjugateOrlicz, conjugate
from olspace.orlicz.exponential import ExpMinusOneOrlicz
from olspace.orlicz.linear import LinearOrlicz
from olspace.orlicz.power import PowerOrlicz, ShiftedPowerOrlicz
from olspace.orlicz.splice import LinearSplicePowerOrlicz, PowerSpliceLinearOrlicz
from olspace.orlicz.tabulated import TabulatedOrlicz

__all__ = [
    "ConjugateOrlicz",
    "ExpMinusOneOrlicz",
    "ExtendedOrliczFunction",
    "GrowthReport",
    "LinearOrlicz",
    "LinearSplicePowerOrlicz",
    "OrliczFunction",
    "PowerOrlicz",
    "PowerSpliceLinearOrlicz",
    "ShiftedPowerOrlicz",
    "TabulatedOrlicz",
    "conjugate",
    "conjugate_maximizer",
    "numeric_conjugate",
]
