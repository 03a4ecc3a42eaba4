"""Sections of product sets and Tonelli's theorem.

Two kinds of products are supported: finite spaces (bitmask sets, tensor
measures of finite measures) and the plane with Lebesgue measure on both
axes (box sets and 2-D step functions).  The iterated integral is computed
from sections, independently of the direct integral against the tensor
measure, so comparing the two is a genuine check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .boxes import BoxSet
from .errors import NegativeFunction, UnsupportedShape
from .functions import FiniteMap, MeasurableFn, Step, mask_fn
from .intervals import Interval, IntervalSet, canonicalize
from .lebint import integral_value
from .measures import LebesgueR, Measure, tensor_measure
from .simplefn import Repr, SimpleFn
from .spaces import FiniteProductSpace, PlaneSpace, RealLine
from .xreal import XReal, mul_mt, sum_nonneg, xr


@dataclass(frozen=True)
class SectionQuery:
    axis: int
    anchor: object
    target: object


def section_set(space, q: SectionQuery):
    """``{x_j : (x_1, x_2) in A}`` with ``x_i`` fixed at the anchor."""
    space.check(q.target)
    return space.section(q.axis, q.anchor, q.target)


def _other(axis: int) -> int:
    if axis not in (1, 2):
        raise ValueError("axis must be 1 or 2")
    return 2 if axis == 1 else 1


def measure_of_section(space, a, axis: int, mu_j: Measure) -> MeasurableFn:
    """``x_i -> mu_j(section of A at x_i)`` as a finite map or a step function."""
    space.check(a)
    if isinstance(space, FiniteProductSpace):
        fi = space.factor(axis)
        vals = [mu_j.measure(space.section(axis, x, a)) for x in range(fi.size)]
        return FiniteMap(fi, vals, check=False)
    if isinstance(space, PlaneSpace):
        if not isinstance(mu_j, LebesgueR):
            raise UnsupportedShape("plane sections are measured with Lebesgue measure only")
        line = RealLine()
        groups = {}
        for at in space.axis_atoms(axis, [a]):
            v = mu_j.measure(space.section(axis, at.interior_point(), a))
            groups.setdefault(v, []).append(at)
        if any(v.is_inf() for v in groups):
            raise UnsupportedShape("a section has infinite measure; step functions are finite-valued")
        terms = [(v.value, canonicalize(ats)) for v, ats in sorted(groups.items())]
        return Step(SimpleFn(line, terms, Repr.CANONICAL, check=False))
    raise UnsupportedShape(f"sections of {space!r} are not supported")


class StepFn2D:
    """A step function on a rectangular grid.

    ``cells[i][j]`` is the value on ``[xs[i], xs[i+1]) x [ys[j], ys[j+1])``;
    the last cell of each axis is closed on the right, so the cells
    partition the closed bounding box.  Outside it the function is 0.
    """

    def __init__(self, xs: Sequence, ys: Sequence, cells: Sequence[Sequence]):
        self.xs = [xr(x).value for x in xs]
        self.ys = [xr(y).value for y in ys]
        if len(self.xs) < 2 or len(self.ys) < 2:
            raise ValueError("a grid needs at least two breakpoints per axis")
        if any(p >= q for p, q in zip(self.xs, self.xs[1:])) or any(p >= q for p, q in zip(self.ys, self.ys[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        self.cells = [[xr(v).value for v in row] for row in cells]
        if len(self.cells) != len(self.xs) - 1 or any(len(r) != len(self.ys) - 1 for r in self.cells):
            raise ValueError("cell table does not match the grid")

    @staticmethod
    def _axis_cells(pts: List[Fraction]) -> List[IntervalSet]:
        out = []
        for k, (p, q) in enumerate(zip(pts, pts[1:])):
            last = k == len(pts) - 2
            out.append(IntervalSet([Interval.make(p, q, True, last)]))
        return out

    def to_step(self) -> Step:
        xc, yc = self._axis_cells(self.xs), self._axis_cells(self.ys)
        plane = PlaneSpace()
        inside = []
        for i, x in enumerate(xc):
            for j, y in enumerate(yc):
                inside.append((self.cells[i][j], BoxSet([(x, y)])))
        box = BoxSet([(IntervalSet([Interval.closed(self.xs[0], self.xs[-1])]), IntervalSet([Interval.closed(self.ys[0], self.ys[-1])]))])
        terms = inside + [(0, box.complement())]
        return Step(SimpleFn(plane, terms, Repr.DISJOINT, check=False))

    def __call__(self, point) -> Fraction:
        return self.to_step().fn(point)

    def to_json(self) -> dict:
        return {"xs": [str(x) for x in self.xs], "ys": [str(y) for y in self.ys], "cells": [[str(v) for v in r] for r in self.cells]}


def tensor_step(f1: Step, f2: Step) -> Step:
    """``(x, y) -> f1(x) * f2(y)`` as a step function on the plane."""
    plane = PlaneSpace()
    terms = []
    for c1, s1 in f1.canonical().terms:
        for c2, s2 in f2.canonical().terms:
            terms.append((c1 * c2, BoxSet([(s1, s2)])))
    return Step(SimpleFn(plane, terms, Repr.DISJOINT, check=False))


def _as_fn(f) -> MeasurableFn:
    return f.to_step() if isinstance(f, StepFn2D) else f


def _iterated_finite(f: FiniteMap, mu1: Measure, mu2: Measure, axis: int) -> XReal:
    space: FiniteProductSpace = f.space
    mu_i, mu_j = (mu1, mu2) if axis == 1 else (mu2, mu1)
    fi, fj = space.factor(axis), space.factor(_other(axis))
    inner = []
    for x in range(fi.size):
        vals = [f.values[space.pair(x, y) if axis == 1 else space.pair(y, x)] for y in range(fj.size)]
        inner.append(integral_value(FiniteMap(fj, vals, check=False), mu_j))
    return integral_value(FiniteMap(fi, inner, check=False), mu_i)


def _iterated_plane(f: Step, axis: int) -> XReal:
    plane: PlaneSpace = f.space
    lam = LebesgueR()
    terms = f.canonical().terms
    total = []
    for at in plane.axis_atoms(axis, [s for _, s in terms]):
        x = at.interior_point()
        sec = [(c, plane.section(axis, x, s)) for c, s in terms]
        inner = integral_value(Step(SimpleFn(RealLine(), sec, Repr.DISJOINT, check=False)), lam)
        total.append(mul_mt(inner, at.length()))
    return sum_nonneg(total)


def tonelli(f, mu1: Measure, mu2: Measure, axis: int = 1) -> Tuple[XReal, XReal]:
    """``(int f d(mu1 x mu2), iterated integral along axis)``."""
    f = _as_fn(f)
    if not f.is_nonneg():
        raise NegativeFunction("Tonelli needs a nonnegative function")
    _other(axis)
    if isinstance(f, FiniteMap) and isinstance(f.space, FiniteProductSpace):
        direct = integral_value(f, tensor_measure(mu1, mu2))
        return direct, _iterated_finite(f, mu1, mu2, axis)
    if isinstance(f, Step) and isinstance(f.space, PlaneSpace):
        if not (isinstance(mu1, LebesgueR) and isinstance(mu2, LebesgueR)):
            raise UnsupportedShape("plane step functions are integrated against Lebesgue measure")
        direct = integral_value(f, tensor_measure(mu1, mu2))
        return direct, _iterated_plane(f, axis)
    raise UnsupportedShape(f"Tonelli is not supported for {type(f).__name__} on {f.space!r}")


def tonelli_over_subset(f, a, mu1: Measure, mu2: Measure, axis: int = 1) -> Tuple[XReal, XReal]:
    f = _as_fn(f)
    return tonelli(mask_fn(f, f.space.check(a)), mu1, mu2, axis)
