"""Measurable spaces and the set algebra of their measurable sets.

Each space knows how to intersect, complement and test its own sets, so
the simple-function and integration code can stay representation-agnostic:

* :class:`FiniteSpace` -- bitmask sets, membership in a finite sigma-algebra;
* :class:`RealLine` -- :class:`IntervalSet` sets, optionally inside a ground set;
* :class:`FiniteProductSpace` -- product of two finite spaces (bitmasks again);
* :class:`PlaneSpace` -- the plane with :class:`BoxSet` sets.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, List, Optional

from .boxes import BoxSet
from .errors import AnchorOutOfSpace, NotMeasurable, PreconditionFailed
from .intervals import IntervalSet, elementary_atoms
from .setsys import (
    FiniteUniverse,
    SubsetFamily,
    SystemKind,
    atoms,
    is_system,
    product_sigma,
    product_universe,
    rectangle,
)
from .xreal import xr


class MeasurableSpace:
    """Common interface; subclasses implement the set operations."""

    def full(self):
        raise NotImplementedError

    def empty(self):
        raise NotImplementedError

    def is_measurable(self, a) -> bool:
        raise NotImplementedError

    def check(self, a):
        if not self.is_measurable(a):
            raise NotMeasurable(f"{a!r} is not measurable in {self!r}")
        return a

    def intersect(self, a, b):
        return a & b

    def union(self, a, b):
        return a | b

    def difference(self, a, b):
        return self.intersect(a, self.complement(b))

    def complement(self, a):
        raise NotImplementedError

    def is_empty(self, a) -> bool:
        return not a

    def is_subset(self, a, b) -> bool:
        return self.is_empty(self.difference(a, b))

    def contains_point(self, a, x) -> bool:
        raise NotImplementedError

    def union_all(self, sets: Iterable):
        out = self.empty()
        for s in sets:
            out = self.union(out, s)
        return out


class FiniteSpace(MeasurableSpace):
    """A finite universe with a sigma-algebra (the power set by default)."""

    def __init__(self, universe, sigma: Optional[SubsetFamily] = None, check: bool = True):
        if isinstance(universe, int):
            universe = FiniteUniverse(universe)
        self.universe = universe
        if sigma is None:
            sigma = SubsetFamily.power_set(universe)
        elif sigma.universe.size != universe.size:
            raise PreconditionFailed("sigma-algebra lives on a different universe")
        if check:
            chk = is_system(SystemKind.SigmaAlgebra, sigma)
            if not chk:
                raise PreconditionFailed(f"not a sigma-algebra: {chk.axiom}")
        self.sigma = sigma
        self._atoms = atoms(sigma.members, universe.full)

    @property
    def size(self) -> int:
        return self.universe.size

    def __eq__(self, other):
        return (
            isinstance(other, FiniteSpace)
            and type(other) is type(self)
            and self.universe.size == other.universe.size
            and self.sigma == other.sigma
        )

    def __hash__(self):
        return hash((type(self).__name__, self.universe.size, self.sigma))

    def __repr__(self):
        return f"FiniteSpace(n={self.size}, |sigma|={len(self.sigma)})"

    def full(self) -> int:
        return self.universe.full

    def empty(self) -> int:
        return 0

    def is_measurable(self, a) -> bool:
        return isinstance(a, int) and not isinstance(a, bool) and a in self.sigma

    def complement(self, a: int) -> int:
        return self.universe.full ^ a

    def contains_point(self, a: int, x: int) -> bool:
        return bool(a >> x & 1)

    def points(self) -> range:
        return range(self.size)

    def atoms(self) -> List[int]:
        """Atoms of the sigma-algebra, sorted by mask."""
        return list(self._atoms)

    def atom_of(self, x: int) -> int:
        for a in self._atoms:
            if a >> x & 1:
                return a
        raise AnchorOutOfSpace(f"point {x} outside the universe")

    def singletons_measurable(self) -> bool:
        return all(a & (a - 1) == 0 for a in self._atoms)

    def measurable_hull(self, a: int) -> int:
        """Smallest measurable superset of an arbitrary subset."""
        out = 0
        for at in self._atoms:
            if at & a:
                out |= at
        return out

    def mask(self, elements) -> int:
        return self.universe.mask(elements)


class RealLine(MeasurableSpace):
    """The real line with interval-set measurable sets.

    ``ground`` restricts the space to a measurable subset (used by traces);
    complements are then taken inside the ground set.
    """

    def __init__(self, ground: Optional[IntervalSet] = None):
        self.ground = IntervalSet.real_line() if ground is None else ground

    def __eq__(self, other):
        return isinstance(other, RealLine) and self.ground == other.ground

    def __hash__(self):
        return hash(("RealLine", self.ground))

    def __repr__(self):
        if self.ground == IntervalSet.real_line():
            return "RealLine()"
        return f"RealLine(ground={self.ground})"

    def is_whole_line(self) -> bool:
        return self.ground == IntervalSet.real_line()

    def full(self) -> IntervalSet:
        return self.ground

    def empty(self) -> IntervalSet:
        return IntervalSet.empty()

    def is_measurable(self, a) -> bool:
        return isinstance(a, IntervalSet) and a.issubset(self.ground)

    def complement(self, a: IntervalSet) -> IntervalSet:
        return self.ground.difference(a)

    def contains_point(self, a: IntervalSet, x) -> bool:
        return a.contains(x)


class FiniteProductSpace(FiniteSpace):
    """Product of two finite spaces; element ``(i, j)`` has index ``i * n2 + j``."""

    def __init__(self, left: FiniteSpace, right: FiniteSpace):
        self.left, self.right = left, right
        super().__init__(product_universe(left.universe, right.universe), product_sigma(left.sigma, right.sigma), check=False)

    def __repr__(self):
        return f"FiniteProductSpace({self.left!r}, {self.right!r})"

    def pair(self, i: int, j: int) -> int:
        return i * self.right.size + j

    def split(self, k: int):
        return divmod(k, self.right.size)

    def rectangle(self, a1: int, a2: int) -> int:
        return rectangle(a1, a2, self.left.size, self.right.size)

    def factor(self, axis: int) -> FiniteSpace:
        return self.left if axis == 1 else self.right

    def section(self, axis: int, anchor: int, a: int) -> int:
        """Section of ``a`` at ``x_axis = anchor``, a subset of the other factor."""
        n1, n2 = self.left.size, self.right.size
        if axis == 1:
            if not 0 <= anchor < n1:
                raise AnchorOutOfSpace(f"anchor {anchor} outside the first factor")
            return (a >> (anchor * n2)) & ((1 << n2) - 1)
        if axis == 2:
            if not 0 <= anchor < n2:
                raise AnchorOutOfSpace(f"anchor {anchor} outside the second factor")
            return sum(1 << i for i in range(n1) if a >> (i * n2 + anchor) & 1)
        raise ValueError("axis must be 1 or 2")


class PlaneSpace(MeasurableSpace):
    """``RealLine x RealLine`` with :class:`BoxSet` measurable sets."""

    def __init__(self):
        self.left = self.right = RealLine()

    def __eq__(self, other):
        return isinstance(other, PlaneSpace)

    def __hash__(self):
        return hash("PlaneSpace")

    def __repr__(self):
        return "PlaneSpace()"

    def full(self) -> BoxSet:
        return BoxSet.plane()

    def empty(self) -> BoxSet:
        return BoxSet.empty()

    def is_measurable(self, a) -> bool:
        return isinstance(a, BoxSet)

    def complement(self, a: BoxSet) -> BoxSet:
        return a.complement()

    def contains_point(self, a: BoxSet, x) -> bool:
        return a.contains(x)

    def factor(self, axis: int) -> RealLine:
        return self.left

    def rectangle(self, a1: IntervalSet, a2: IntervalSet) -> BoxSet:
        return BoxSet([(a1, a2)])

    def section(self, axis: int, anchor, a: BoxSet) -> IntervalSet:
        anchor = xr(anchor)
        if anchor.is_inf():
            raise AnchorOutOfSpace("anchors must be finite reals")
        if axis == 1:
            return a.section_x(anchor.value)
        if axis == 2:
            return a.section_y(anchor.value)
        raise ValueError("axis must be 1 or 2")

    def axis_atoms(self, axis: int, sets: Iterable[BoxSet]):
        """Elementary atoms of one axis on which every section is constant."""
        pts = set()
        for s in sets:
            pts.update(s.x_breakpoints() if axis == 1 else s.y_breakpoints())
        return [a for a in elementary_atoms(pts) if not a.is_empty()]


def product_space(s1: MeasurableSpace, s2: MeasurableSpace) -> MeasurableSpace:
    if isinstance(s1, FiniteSpace) and isinstance(s2, FiniteSpace):
        return FiniteProductSpace(s1, s2)
    if isinstance(s1, RealLine) and isinstance(s2, RealLine) and s1.is_whole_line() and s2.is_whole_line():
        return PlaneSpace()
    raise PreconditionFailed(f"unsupported product of {s1!r} and {s2!r}")


def is_point_of(space: MeasurableSpace, x) -> bool:
    if isinstance(space, FiniteSpace):
        return isinstance(x, int) and 0 <= x < space.size
    if isinstance(space, RealLine):
        try:
            return space.ground.contains(Fraction(x) if not hasattr(x, "kind") else x)
        except TypeError:
            return False
    if isinstance(space, PlaneSpace):
        return isinstance(x, tuple) and len(x) == 2
    return False
