"""Finite unions of rational-endpoint intervals and their Lebesgue measure.

An :class:`IntervalSet` is kept in canonical form: components sorted,
pairwise disjoint, and no two of them could be merged into one interval.
Endpoint flags are tracked exactly, so complements and differences are
correct point sets; the measure ignores them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import MalformedBound, NotACover, PreconditionFailed
from .exprs import eval_xreal
from .xreal import INF, NEG_INF, ZERO, XReal, format_xreal, sum_nonneg, xr

__all__ = [
    "Bound",
    "Interval",
    "IntervalSet",
    "canonicalize",
    "set_op",
    "length",
    "lebesgue",
    "cover_upper_bound",
    "extract_finite_subcover",
    "parse_interval",
    "parse_interval_set",
    "elementary_atoms",
]


@dataclass(frozen=True)
class Bound:
    value: XReal
    closed: bool

    def __post_init__(self):
        object.__setattr__(self, "value", xr(self.value))
        if self.closed and self.value.is_inf():
            raise MalformedBound(f"an infinite bound cannot be closed ({self.value})")


@dataclass(frozen=True)
class Interval:
    """One interval; may be empty (such intervals are dropped by canonicalize)."""

    lo: Bound
    hi: Bound

    def __post_init__(self):
        if self.lo.value > self.hi.value:
            raise MalformedBound(f"lower bound {self.lo.value} exceeds upper bound {self.hi.value}")

    @classmethod
    def make(cls, lo, hi, lo_closed=False, hi_closed=False) -> "Interval":
        return cls(Bound(xr(lo), lo_closed), Bound(xr(hi), hi_closed))

    @classmethod
    def open(cls, lo, hi) -> "Interval":
        return cls.make(lo, hi, False, False)

    @classmethod
    def closed(cls, lo, hi) -> "Interval":
        return cls.make(lo, hi, True, True)

    @classmethod
    def point(cls, x) -> "Interval":
        return cls.make(x, x, True, True)

    def is_empty(self) -> bool:
        if self.lo.value < self.hi.value:
            return False
        return not (self.lo.closed and self.hi.closed)

    def is_singleton(self) -> bool:
        return self.lo.value == self.hi.value and not self.is_empty()

    def is_bounded(self) -> bool:
        return self.lo.value.is_finite() and self.hi.value.is_finite()

    def is_open(self) -> bool:
        return not self.lo.closed and not self.hi.closed

    def contains(self, x) -> bool:
        x = xr(x)
        if x.is_inf():
            return False
        lo, hi = self.lo, self.hi
        if x < lo.value or x > hi.value:
            return False
        if x == lo.value and not lo.closed:
            return False
        if x == hi.value and not hi.closed:
            return False
        return True

    def length(self) -> XReal:
        if self.is_empty():
            return ZERO
        return self.hi.value - self.lo.value

    def interior_point(self) -> Fraction:
        """Some rational point of the interval (which must be nonempty)."""
        if self.is_empty():
            raise ValueError("empty interval has no points")
        lo, hi = self.lo.value, self.hi.value
        if lo.is_finite() and hi.is_finite():
            return (lo.value + hi.value) / 2
        if lo.is_finite():
            return lo.value + 1
        if hi.is_finite():
            return hi.value - 1
        return Fraction(0)

    def intersect(self, other: "Interval") -> "Interval":
        lo = max(self.lo, other.lo, key=_lo_key)
        hi = min(self.hi, other.hi, key=_hi_key)
        if lo.value > hi.value:
            return _EMPTY_INTERVAL
        return Interval(lo, hi)

    def __str__(self):
        return (
            ("[" if self.lo.closed else "(")
            + format_xreal(self.lo.value)
            + ","
            + format_xreal(self.hi.value)
            + ("]" if self.hi.closed else ")")
        )


_EMPTY_INTERVAL = Interval(Bound(ZERO, False), Bound(ZERO, False))


def _lo_key(b: Bound):
    return (b.value, 0 if b.closed else 1)


def _hi_key(b: Bound):
    return (b.value, 1 if b.closed else 0)


def _mergeable(a: Interval, b: Interval) -> bool:
    """``a`` starts no later than ``b``; can they form one interval?"""
    if a.hi.value > b.lo.value:
        return True
    return a.hi.value == b.lo.value and (a.hi.closed or b.lo.closed)


def canonicalize(raw: Iterable[Interval]) -> "IntervalSet":
    items = sorted((iv for iv in raw if not iv.is_empty()), key=lambda iv: _lo_key(iv.lo))
    out: List[Interval] = []
    for iv in items:
        if out and _mergeable(out[-1], iv):
            last = out[-1]
            out[-1] = Interval(last.lo, max(last.hi, iv.hi, key=_hi_key))
        else:
            out.append(iv)
    return IntervalSet._from_canonical(out)


class IntervalSet:
    """Canonical finite disjoint union of intervals of the real line."""

    __slots__ = ("components",)

    def __init__(self, intervals: Iterable[Interval] = ()):
        object.__setattr__(self, "components", canonicalize(intervals).components)

    @classmethod
    def _from_canonical(cls, comps) -> "IntervalSet":
        obj = object.__new__(cls)
        object.__setattr__(obj, "components", tuple(comps))
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("IntervalSet is immutable")

    @classmethod
    def empty(cls) -> "IntervalSet":
        return cls._from_canonical(())

    @classmethod
    def real_line(cls) -> "IntervalSet":
        return cls._from_canonical((Interval(Bound(NEG_INF, False), Bound(INF, False)),))

    @classmethod
    def of(cls, *intervals) -> "IntervalSet":
        """Build from intervals or interval strings like ``"[0,1)"``."""
        return cls(parse_interval(i) if isinstance(i, str) else i for i in intervals)

    @classmethod
    def points(cls, xs: Iterable) -> "IntervalSet":
        return cls(Interval.point(x) for x in xs)

    def is_empty(self) -> bool:
        return not self.components

    def __bool__(self):
        return bool(self.components)

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)

    def __eq__(self, other):
        if not isinstance(other, IntervalSet):
            return NotImplemented
        return self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def contains(self, x) -> bool:
        return any(c.contains(x) for c in self.components)

    __contains__ = contains

    def is_bounded(self) -> bool:
        return all(c.is_bounded() for c in self.components)

    def is_finite_set(self) -> bool:
        return all(c.is_singleton() for c in self.components)

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return canonicalize(self.components + other.components)

    def intersect(self, other: "IntervalSet") -> "IntervalSet":
        out = []
        for a in self.components:
            for b in other.components:
                c = a.intersect(b)
                if not c.is_empty():
                    out.append(c)
        return canonicalize(out)

    def complement(self) -> "IntervalSet":
        out = []
        prev = Bound(NEG_INF, False)
        prev_is_start = True
        for c in self.components:
            if prev_is_start:
                lo = Bound(NEG_INF, False)
            else:
                lo = Bound(prev.value, not prev.closed)
            hi = Bound(c.lo.value, not c.lo.closed and c.lo.value.is_finite())
            if lo.value < hi.value or (lo.value == hi.value and lo.closed and hi.closed):
                out.append(Interval(lo, hi))
            prev, prev_is_start = c.hi, False
        if prev_is_start:
            return IntervalSet.real_line()
        if prev.value.is_finite():
            out.append(Interval(Bound(prev.value, not prev.closed), Bound(INF, False)))
        return IntervalSet._from_canonical(out)

    def difference(self, other: "IntervalSet") -> "IntervalSet":
        return self.intersect(other.complement())

    def issubset(self, other: "IntervalSet") -> bool:
        return self.difference(other).is_empty()

    __or__ = union
    __and__ = intersect
    __sub__ = difference

    def __invert__(self):
        return self.complement()

    def __le__(self, other):
        return self.issubset(other)

    def endpoints(self) -> List[XReal]:
        pts = set()
        for c in self.components:
            pts.add(c.lo.value)
            pts.add(c.hi.value)
        return sorted(pts)

    def finite_endpoints(self) -> List[Fraction]:
        return [p.value for p in self.endpoints() if p.is_finite()]

    def some_point(self) -> Fraction:
        if not self.components:
            raise ValueError("empty set has no points")
        c = self.components[0]
        if c.lo.closed:
            return c.lo.value.value
        return c.interior_point()

    def inf(self) -> XReal:
        return self.components[0].lo.value if self.components else INF

    def sup(self) -> XReal:
        return self.components[-1].hi.value if self.components else NEG_INF

    def length(self) -> XReal:
        return sum_nonneg(c.length() for c in self.components)

    def to_json(self) -> List[str]:
        return [str(c) for c in self.components]

    def __str__(self):
        if not self.components:
            return "{}"
        return " U ".join(str(c) for c in self.components)

    def __repr__(self):
        return f"IntervalSet({self.to_json()!r})"


def set_op(op: str, a: IntervalSet, b: Optional[IntervalSet] = None) -> IntervalSet:
    """Dispatch ``union``, ``intersect``, ``complement`` (``b`` ignored) or ``difference``."""
    if op == "union":
        return a.union(b)
    if op == "intersect":
        return a.intersect(b)
    if op == "complement":
        return a.complement()
    if op == "difference":
        return a.difference(b)
    raise ValueError(f"unknown set operation {op!r}")


def length(a: IntervalSet) -> XReal:
    """Total length of the components; endpoint flags are irrelevant."""
    return a.length()


def lebesgue(a: IntervalSet) -> XReal:
    """Lebesgue measure of a representable set.

    For a finite union of intervals the outer measure equals the total
    length, so no infimum search is needed.
    """
    return a.length()


def _uncovered_witness(d: IntervalSet) -> Fraction:
    return d.some_point()


def _check_cover(cover: Sequence[Interval]) -> None:
    for k, iv in enumerate(cover):
        if not (iv.is_bounded() and iv.is_open()):
            raise PreconditionFailed(f"cover element {k} = {iv} is not a bounded open interval")


def cover_upper_bound(a: IntervalSet, cover: Sequence[Interval]) -> XReal:
    """Total length of a bounded open cover of ``a``; an upper bound of its outer measure."""
    cover = list(cover)
    _check_cover(cover)
    missed = a.difference(IntervalSet(cover))
    if missed:
        w = _uncovered_witness(missed)
        raise NotACover(f"point {format_xreal(xr(w))} is not covered", witness=w)
    return sum_nonneg(iv.length() for iv in cover)


def extract_finite_subcover(a, b, cover: Sequence[Interval]) -> List[int]:
    """Chain of cover indices covering ``[a, b]`` (finite subcover by a greedy walk).

    Starting from ``x = a``, repeatedly pick the smallest unused index whose
    interval contains ``x`` strictly, then move ``x`` to that interval's
    right end, until the right end passes ``b``.  The chain satisfies
    ``lo[i_0] < a``, ``b < hi[i_q]`` and ``lo[i_{p+1}] < hi[i_p]``.
    """
    a, b = xr(a), xr(b)
    if not (a.is_finite() and b.is_finite()):
        raise PreconditionFailed("the compact interval needs finite ends")
    if a > b:
        raise MalformedBound(f"a = {a} exceeds b = {b}")
    cover = list(cover)
    _check_cover(cover)
    target = IntervalSet([Interval.closed(a, b)])
    missed = target.difference(IntervalSet(cover))
    if missed:
        w = _uncovered_witness(missed)
        raise NotACover(f"point {format_xreal(xr(w))} of [{a},{b}] is not covered", witness=w)
    unused = list(range(len(cover)))
    chain: List[int] = []
    x = a
    while True:
        pick = next((i for i in unused if cover[i].lo.value < x < cover[i].hi.value), None)
        if pick is None:  # unreachable once coverage holds
            raise NotACover(f"point {x} is not covered", witness=x.value)
        chain.append(pick)
        unused.remove(pick)
        x = cover[pick].hi.value
        if b < x:
            return chain


def elementary_atoms(points: Iterable) -> List[Interval]:
    """Partition of the real line cut at ``points``: open gaps and singletons."""
    pts = sorted({xr(p) for p in points if xr(p).is_finite()})
    out = []
    prev = NEG_INF
    for p in pts:
        out.append(Interval.open(prev, p))
        out.append(Interval.point(p))
        prev = p
    out.append(Interval.open(prev, INF))
    return out


_INTERVAL_RE = re.compile(r"^\s*([\[(])\s*([^,]+?)\s*,\s*([^,]+?)\s*([\])])\s*$")


def parse_interval(text: str, env=None) -> Interval:
    """Parse ``"(a,b)"``, ``"[a,b]"``, ``"[a,b)"`` or ``"(a,b]"``.

    Ends may be rational expressions in the names of ``env``; ``inf`` and
    ``-inf`` are only allowed on an open side.
    """
    if isinstance(text, Interval):
        return text
    m = _INTERVAL_RE.match(str(text))
    if not m:
        raise ValueError(f"malformed interval {text!r}")
    lo = eval_xreal(m.group(2), env)
    hi = eval_xreal(m.group(3), env)
    return Interval(Bound(lo, m.group(1) == "["), Bound(hi, m.group(4) == "]"))


def parse_interval_set(items, env=None) -> IntervalSet:
    if isinstance(items, IntervalSet):
        return items
    if isinstance(items, str):
        items = [items]
    return IntervalSet(parse_interval(s, env) for s in items)
