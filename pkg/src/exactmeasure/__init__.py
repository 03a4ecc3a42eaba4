"""Exact-arithmetic measure theory: extended reals, set systems, interval
sets, measures, simple functions, Lebesgue integration and products."""

from .errors import MeasureError
from .functions import FiniteMap, PiecewiseLinear, Step
from .intervals import Interval, IntervalSet
from .lebint import integral_mplus, integral_signed, seminorm_n1
from .measures import Counting, Dirac, FiniteTable, LebesgueR, Restricted, Trace, tensor_measure
from .setsys import FiniteUniverse, SubsetFamily, SystemKind, generate
from .simplefn import SimpleFn
from .spaces import FiniteSpace, RealLine
from .xreal import INF, NEG_INF, XReal, xr

__version__ = "0.1.0"

__all__ = [
    "Counting",
    "Dirac",
    "FiniteMap",
    "FiniteSpace",
    "FiniteTable",
    "FiniteUniverse",
    "INF",
    "Interval",
    "IntervalSet",
    "LebesgueR",
    "MeasureError",
    "NEG_INF",
    "PiecewiseLinear",
    "RealLine",
    "Restricted",
    "SimpleFn",
    "Step",
    "SubsetFamily",
    "SystemKind",
    "Trace",
    "XReal",
    "generate",
    "integral_mplus",
    "integral_signed",
    "seminorm_n1",
    "tensor_measure",
    "xr",
]
