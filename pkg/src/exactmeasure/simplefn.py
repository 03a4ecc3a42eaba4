"""Simple functions: finite combinations of measurable indicators.

A :class:`SimpleFn` carries its terms ``(coef, support)`` and a
representation kind:

``SIMPLE``
    any measurable supports;
``DISJOINT``
    supports partition the space;
``CANONICAL``
    disjoint, nonempty supports equal to the preimages of strictly
    increasing values.  The zero function is ``0 * 1_X``.

The integral of a nonnegative simple function is computed from the
canonical form; the other representations give the same number, which the
test-suite checks.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from .errors import NegativeValue, NotMeasurable, SpaceMismatch
from .measures import Measure
from .spaces import FiniteSpace, MeasurableSpace, RealLine
from .xreal import XReal, ZERO, mul_mt, sum_nonneg, xr


class Repr(enum.Enum):
    SIMPLE = "simple"
    DISJOINT = "disjoint"
    CANONICAL = "canonical"


def _q(c) -> Fraction:
    if isinstance(c, XReal):
        return c.value
    if isinstance(c, str):
        return xr(c).value
    return Fraction(c)


class SimpleFn:
    __slots__ = ("space", "terms", "repr")

    def __init__(self, space: MeasurableSpace, terms: Iterable[Tuple], repr: Repr = Repr.SIMPLE, check: bool = True):
        self.space = space
        self.terms = tuple((_q(c), space.check(s) if check else s) for c, s in terms)
        self.repr = Repr(repr)
        if check and self.repr is not Repr.SIMPLE:
            _validate(self)

    def __repr__(self):
        body = " + ".join(f"{c}*1[{_fmt_set(s)}]" for c, s in self.terms) or "0"
        return f"SimpleFn<{self.repr.value}>({body})"

    def __call__(self, x) -> Fraction:
        return eval_fn(self, x)

    def __add__(self, other):
        if isinstance(other, SimpleFn):
            return combine("add", self, other)
        return combine("add", self, constant(self.space, other))

    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, SimpleFn):
            return combine("mul", self, other)
        return combine("scale", self, scale=other)

    __rmul__ = __mul__

    def __neg__(self):
        return combine("scale", self, scale=-1)

    def __sub__(self, other):
        return self + (-other if isinstance(other, SimpleFn) else -Fraction(other))

    def same_as(self, other: "SimpleFn") -> bool:
        """Pointwise equality (compares canonical forms)."""
        return canonicalize(self).terms == canonicalize(other).terms

    def values(self) -> List[Fraction]:
        return [c for c, _ in canonicalize(self).terms]

    def preimage(self, y) -> object:
        y = _q(y)
        for c, s in canonicalize(self).terms:
            if c == y:
                return s
        return self.space.empty()

    def is_nonneg(self) -> bool:
        return all(c >= 0 for c in self.values())

    def min(self) -> Fraction:
        return self.values()[0]

    def max(self) -> Fraction:
        return self.values()[-1]


def _fmt_set(s):
    if isinstance(s, int):
        return bin(s)
    return str(s)


def _validate(f: SimpleFn) -> None:
    sp = f.space
    seen = sp.empty()
    for c, s in f.terms:
        if not sp.is_empty(sp.intersect(seen, s)):
            raise ValueError("supports of a disjoint representation overlap")
        seen = sp.union(seen, s)
    if seen != sp.full():
        raise ValueError("supports of a disjoint representation must cover the space")
    if f.repr is Repr.CANONICAL:
        coefs = [c for c, _ in f.terms]
        if any(a >= b for a, b in zip(coefs, coefs[1:])):
            raise ValueError("canonical coefficients must be strictly increasing")
        if any(sp.is_empty(s) for _, s in f.terms):
            raise ValueError("canonical supports must be nonempty")


def indicator(space: MeasurableSpace, a, coef=1) -> SimpleFn:
    return SimpleFn(space, [(coef, a)])


def constant(space: MeasurableSpace, c) -> SimpleFn:
    return SimpleFn(space, [(c, space.full())], Repr.DISJOINT)


def zero(space: MeasurableSpace) -> SimpleFn:
    return constant(space, 0)


def eval_fn(f: SimpleFn, x) -> Fraction:
    """``sum(coef * [x in support])``."""
    sp = f.space
    return sum((c for c, s in f.terms if sp.contains_point(s, x)), Fraction(0))


def to_disjoint(f: SimpleFn) -> SimpleFn:
    """Refine the supports into a partition carrying the summed coefficients."""
    if f.repr is not Repr.SIMPLE:
        return f
    sp = f.space
    cells = [(Fraction(0), sp.full())]
    for c, s in f.terms:
        nxt = []
        for v, cell in cells:
            inside = sp.intersect(cell, s)
            outside = sp.difference(cell, s)
            if not sp.is_empty(inside):
                nxt.append((v + c, inside))
            if not sp.is_empty(outside):
                nxt.append((v, outside))
        cells = nxt
    return SimpleFn(sp, cells, Repr.DISJOINT, check=False)


def canonicalize(f: SimpleFn) -> SimpleFn:
    """The unique canonical representation (values ascending, preimages as supports)."""
    if f.repr is Repr.CANONICAL:
        return f
    sp = f.space
    groups = {}
    for c, s in to_disjoint(f).terms:
        if sp.is_empty(s):
            continue
        groups[c] = sp.union(groups[c], s) if c in groups else s
    terms = sorted(groups.items())
    return SimpleFn(sp, terms, Repr.CANONICAL, check=False)


def combine(op: str, f: SimpleFn, g: Optional[SimpleFn] = None, scale=None) -> SimpleFn:
    """``add`` / ``mul`` on pairwise intersections of disjoint forms, or ``scale``.

    The result is a disjoint representation with empty cells pruned.
    """
    if op == "scale":
        a = _q(scale)
        d = to_disjoint(f)
        return SimpleFn(f.space, [(a * c, s) for c, s in d.terms], Repr.DISJOINT, check=False)
    if g is None:
        raise ValueError(f"{op} needs two functions")
    if f.space != g.space:
        raise SpaceMismatch("simple functions live on different spaces")
    if op == "add":
        fn: Callable = lambda a, b: a + b
    elif op == "mul":
        fn = lambda a, b: a * b
    elif op == "max":
        fn = max
    elif op == "min":
        fn = min
    else:
        raise ValueError(f"unknown operation {op!r}")
    sp = f.space
    terms = []
    for a, s in to_disjoint(f).terms:
        for b, t in to_disjoint(g).terms:
            st = sp.intersect(s, t)
            if not sp.is_empty(st):
                terms.append((fn(a, b), st))
    return SimpleFn(sp, terms, Repr.DISJOINT, check=False)


def mask(f: SimpleFn, a) -> SimpleFn:
    """``f * 1_A``."""
    return combine("mul", f, indicator(f.space, f.space.check(a)))


def _check_measure(f: SimpleFn, mu: Measure) -> None:
    if f.space != mu.space:
        raise SpaceMismatch(f"function on {f.space!r} integrated against a measure on {mu.space!r}")


def integral_sf_plus(f: SimpleFn, mu: Measure) -> XReal:
    """``sum over values y of y * mu(f^-1(y))`` for a nonnegative simple function."""
    _check_measure(f, mu)
    can = canonicalize(f)
    if can.terms and can.terms[0][0] < 0:
        raise NegativeValue(f"function takes the negative value {can.terms[0][0]}")
    return sum_nonneg(mul_mt(xr(y), mu.measure(s)) for y, s in can.terms)


def integral_by_terms(f: SimpleFn, mu: Measure) -> XReal:
    """``sum(a_i * mu(A_i))`` over the stored terms (nonnegative coefficients)."""
    _check_measure(f, mu)
    if any(c < 0 for c, _ in f.terms):
        raise NegativeValue("term-wise integration needs nonnegative coefficients")
    return sum_nonneg(mul_mt(xr(c), mu.measure(s)) for c, s in f.terms)


def integral_over_subset(f: SimpleFn, mu: Measure, a) -> XReal:
    if not f.space.is_measurable(a):
        raise NotMeasurable(f"{a!r} is not measurable")
    return integral_sf_plus(mask(f, a), mu)


def integral_counting(f: SimpleFn, y) -> XReal:
    """``sum over y in Y of f(y)`` (``Y`` a finite collection of points)."""
    vals = [eval_fn(f, p) for p in _points_of(f.space, y)]
    if any(v < 0 for v in vals):
        raise NegativeValue("function is negative on Y")
    return sum_nonneg(xr(v) for v in vals)


def integral_dirac(f: SimpleFn, a) -> Fraction:
    return eval_fn(f, a)


def _points_of(space, y) -> List:
    if isinstance(space, FiniteSpace) and isinstance(y, int):
        return space.universe.elements(y)
    return list(y)


def le(f: SimpleFn, g: SimpleFn) -> bool:
    """Pointwise ``f <= g``."""
    diff = combine("add", g, combine("scale", f, scale=-1))
    return canonicalize(diff).terms[0][0] >= 0
