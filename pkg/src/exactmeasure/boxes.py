"""Finite unions of boxes ``X x Y`` in the plane, with ``X`` and ``Y`` interval sets.

A :class:`BoxSet` is stored by its vertical sections: the plane's x-axis is
cut into finitely many pieces on which the section ``{y : (x, y) in S}`` is
constant.  Pieces sharing the same section are merged, which makes the
representation unique.
"""

from __future__ import annotations

from typing import Callable, Dict, Iterable, List, Tuple

from .intervals import Interval, IntervalSet, _lo_key, canonicalize, elementary_atoms
from .xreal import XReal, mul_mt, sum_nonneg, xr


class BoxSet:
    __slots__ = ("pieces",)

    def __init__(self, boxes: Iterable[Tuple[IntervalSet, IntervalSet]] = ()):
        boxes = [(x, y) for x, y in boxes if x and y]
        pieces = _sweep([b[0] for b in boxes], lambda p: _union_all(y for x, y in boxes if x.contains(p)))
        object.__setattr__(self, "pieces", pieces)

    @classmethod
    def _raw(cls, pieces):
        obj = object.__new__(cls)
        object.__setattr__(obj, "pieces", pieces)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("BoxSet is immutable")

    @classmethod
    def box(cls, x, y) -> "BoxSet":
        x = x if isinstance(x, IntervalSet) else IntervalSet.of(x)
        y = y if isinstance(y, IntervalSet) else IntervalSet.of(y)
        return cls([(x, y)])

    @classmethod
    def empty(cls) -> "BoxSet":
        return cls._raw(())

    @classmethod
    def plane(cls) -> "BoxSet":
        return cls._raw(((IntervalSet.real_line(), IntervalSet.real_line()),))

    def is_empty(self) -> bool:
        return not self.pieces

    def __bool__(self):
        return bool(self.pieces)

    def __eq__(self, other):
        if not isinstance(other, BoxSet):
            return NotImplemented
        return self.pieces == other.pieces

    def __hash__(self):
        return hash(self.pieces)

    def contains(self, point) -> bool:
        x, y = point
        return any(xs.contains(x) and ys.contains(y) for xs, ys in self.pieces)

    __contains__ = contains

    def section_x(self, x) -> IntervalSet:
        """``{y : (x, y) in self}``."""
        for xs, ys in self.pieces:
            if xs.contains(x):
                return ys
        return IntervalSet.empty()

    def section_y(self, y) -> IntervalSet:
        """``{x : (x, y) in self}``."""
        return _union_all(xs for xs, ys in self.pieces if ys.contains(y))

    def transpose(self) -> "BoxSet":
        return BoxSet((ys, xs) for xs, ys in self.pieces)

    def _combine(self, other: "BoxSet", op: Callable[[IntervalSet, IntervalSet], IntervalSet]) -> "BoxSet":
        xsets = [p[0] for p in self.pieces] + [p[0] for p in other.pieces]
        return BoxSet._raw(_sweep(xsets, lambda p: op(self.section_x(p), other.section_x(p)), full_line=True))

    def union(self, other: "BoxSet") -> "BoxSet":
        return self._combine(other, IntervalSet.union)

    def intersect(self, other: "BoxSet") -> "BoxSet":
        return self._combine(other, IntervalSet.intersect)

    def difference(self, other: "BoxSet") -> "BoxSet":
        return self._combine(other, IntervalSet.difference)

    def complement(self) -> "BoxSet":
        return BoxSet.plane().difference(self)

    def issubset(self, other: "BoxSet") -> bool:
        return self.difference(other).is_empty()

    __or__ = union
    __and__ = intersect
    __sub__ = difference

    def __invert__(self):
        return self.complement()

    def x_breakpoints(self) -> List:
        pts = set()
        for xs, _ in self.pieces:
            pts.update(xs.finite_endpoints())
        return sorted(pts)

    def y_breakpoints(self) -> List:
        pts = set()
        for _, ys in self.pieces:
            pts.update(ys.finite_endpoints())
        return sorted(pts)

    def area(self) -> XReal:
        """Planar Lebesgue measure: sum of piece areas, with ``0 * inf = 0``."""
        return sum_nonneg(mul_mt(xs.length(), ys.length()) for xs, ys in self.pieces)

    def to_json(self) -> List[List[List[str]]]:
        return [[xs.to_json(), ys.to_json()] for xs, ys in self.pieces]

    def __repr__(self):
        return "BoxSet(" + ", ".join(f"{xs} x {ys}" for xs, ys in self.pieces) + ")"


def _union_all(sets: Iterable[IntervalSet]) -> IntervalSet:
    comps = []
    for s in sets:
        comps.extend(s.components)
    return canonicalize(comps)


def _sweep(xsets, section_at, full_line=False):
    """Group the elementary x-atoms by section value into canonical pieces."""
    pts = set()
    for xs in xsets:
        pts.update(xs.finite_endpoints())
    groups: Dict[IntervalSet, List[Interval]] = {}
    for atom in elementary_atoms(pts):
        if atom.is_empty():
            continue
        if not full_line and not any(xs.contains(atom.interior_point()) for xs in xsets):
            continue
        sec = section_at(atom.interior_point())
        if sec:
            groups.setdefault(sec, []).append(atom)
    pieces = [(canonicalize(atoms), sec) for sec, atoms in groups.items()]
    pieces.sort(key=lambda p: _lo_key(p[0].components[0].lo))
    return tuple(pieces)


def box_area(x: IntervalSet, y: IntervalSet) -> XReal:
    return mul_mt(xr(x.length()), xr(y.length()))
