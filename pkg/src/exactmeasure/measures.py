"""Measures on the supported spaces, plus axiom and uniqueness verifiers."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Union

from .boxes import BoxSet
from .errors import (
    HypothesisFailed,
    NegativeValue,
    PreconditionFailed,
    UnsupportedFactorKinds,
    UnsupportedShape,
)
from .intervals import Interval, IntervalSet
from .report import Report
from .setsys import SubsetFamily, SystemKind, compress, expand, generate, is_system, sub_universe, trace_family
from .spaces import (
    FiniteProductSpace,
    FiniteSpace,
    MeasurableSpace,
    PlaneSpace,
    RealLine,
    product_space,
)
from .xreal import INF, ONE, ZERO, XReal, add_checked, mul_mt, sum_nonneg, xr


class Measure:
    """Base class: ``mu(A)`` checks measurability then evaluates."""

    space: MeasurableSpace

    def __call__(self, a) -> XReal:
        return self.measure(a)

    def measure(self, a) -> XReal:
        self.space.check(a)
        return self._measure(a)

    def _measure(self, a) -> XReal:
        raise NotImplementedError

    def total(self) -> XReal:
        return self.measure(self.space.full())


class FiniteTable(Measure):
    """Per-point weights on a finite space; ``mu(A)`` sums the weights in ``A``.

    ``check=False`` lets negative weights through so that the axiom verifier
    can be exercised on a deliberately broken table.
    """

    def __init__(self, space: FiniteSpace, weights: Union[Sequence, Mapping], check: bool = True):
        if isinstance(space, int):
            space = FiniteSpace(space)
        self.space = space
        if isinstance(weights, Mapping):
            w = [ZERO] * space.size
            for k, v in weights.items():
                w[space.universe.index(k)] = xr(v)
        else:
            w = [xr(v) for v in weights]
            if len(w) != space.size:
                raise ValueError(f"expected {space.size} weights, got {len(w)}")
        if check:
            for i, v in enumerate(w):
                if v < ZERO:
                    raise NegativeValue(f"weight of {space.universe.label(i)} is negative ({v})")
        self.weights = tuple(w)

    def _measure(self, a: int) -> XReal:
        total = ZERO
        for i, v in enumerate(self.weights):
            if a >> i & 1:
                total = add_checked(total, v)
        return total

    def __repr__(self):
        return f"FiniteTable({[str(w) for w in self.weights]})"


class Counting(Measure):
    """``A -> card(A & Y)``; ``Y`` need not be measurable.

    On the real line ``Y`` is an :class:`IntervalSet` or a finite collection
    of points; infinite intersections count as ``inf``.
    """

    def __init__(self, space: MeasurableSpace, y):
        self.space = space
        if isinstance(space, FiniteSpace):
            self.y = space.universe.check_mask(int(y))
        elif isinstance(space, RealLine):
            self.y = y if isinstance(y, IntervalSet) else IntervalSet.points(y)
        else:
            raise UnsupportedShape("counting measures are supported on finite spaces and the real line")

    def _measure(self, a) -> XReal:
        if isinstance(self.space, FiniteSpace):
            return xr(bin(a & self.y).count("1"))
        inter = a.intersect(self.y)
        if not inter.is_finite_set():
            return INF
        return xr(len(inter))

    def __repr__(self):
        return f"Counting({self.y!r})"


class Dirac(Measure):
    def __init__(self, space: MeasurableSpace, at):
        self.space = space
        if isinstance(space, FiniteSpace):
            at = space.universe.index(at)
        elif isinstance(space, RealLine):
            at = xr(at).value
        self.at = at

    def _measure(self, a) -> XReal:
        return ONE if self.space.contains_point(a, self.at) else ZERO

    def __repr__(self):
        return f"Dirac({self.at})"


class LebesgueR(Measure):
    """Lebesgue measure on (a ground subset of) the real line."""

    def __init__(self, space: Optional[RealLine] = None):
        self.space = space or RealLine()

    def _measure(self, a: IntervalSet) -> XReal:
        return a.length()

    def __repr__(self):
        return "LebesgueR()" if self.space.is_whole_line() else f"LebesgueR({self.space!r})"


class Lebesgue2(Measure):
    """Planar Lebesgue measure on box sets."""

    def __init__(self):
        self.space = PlaneSpace()

    def _measure(self, a: BoxSet) -> XReal:
        return a.area()

    def __repr__(self):
        return "Lebesgue2()"


class Restricted(Measure):
    """``A -> base(A & Y)`` on the base space."""

    def __init__(self, base: Measure, y):
        self.base = base
        self.space = base.space
        self.y = base.space.check(y)

    def _measure(self, a) -> XReal:
        return self.base.measure(self.space.intersect(a, self.y))

    def __repr__(self):
        return f"Restricted({self.base!r}, {self.y!r})"


class Trace(Measure):
    """The base measure on the trace space of a measurable ``Y``.

    For finite spaces the trace universe is ``Y`` itself with its bits
    re-indexed (labels are kept); on the real line the trace space is the
    real line with ground set ``Y``.
    """

    def __init__(self, base: Measure, y):
        self.base = base
        self.y = base.space.check(y)
        if isinstance(base.space, FiniteSpace):
            if y == 0:
                raise PreconditionFailed("trace on the empty set has no universe")
            self.space = FiniteSpace(sub_universe(base.space.universe, y), trace_family(base.space.sigma, y))
        elif isinstance(base.space, RealLine):
            self.space = RealLine(y)
        else:
            raise UnsupportedShape("traces are supported on finite spaces and the real line")

    def embed(self, a):
        """Map a set of the trace space back into the base space."""
        if isinstance(self.base.space, FiniteSpace):
            return expand(a, self.y)
        return a

    def restrict(self, a):
        if isinstance(self.base.space, FiniteSpace):
            return compress(a, self.y)
        return a.intersect(self.y)

    def _measure(self, a) -> XReal:
        return self.base.measure(self.embed(a))

    def __repr__(self):
        return f"Trace({self.base!r}, {self.y!r})"


class Tensor(Measure):
    """Product of two measures on finite spaces.

    ``(mu1 x mu2)(A)`` integrates the section measures: the sum over the
    atoms ``a`` of the first sigma-algebra of ``mu1(a) * mu2(section)``.
    :meth:`measure_via` computes the same value slicing along either axis.
    """

    def __init__(self, mu1: Measure, mu2: Measure):
        if not (isinstance(mu1.space, FiniteSpace) and isinstance(mu2.space, FiniteSpace)):
            raise UnsupportedFactorKinds("tensor products need two finite factors (or use tensor_measure for Lebesgue)")
        self.mu1, self.mu2 = mu1, mu2
        self.space = FiniteProductSpace(mu1.space, mu2.space)

    def measure_via(self, a: int, axis: int = 1) -> XReal:
        self.space.check(a)
        outer, inner = (self.mu1, self.mu2) if axis == 1 else (self.mu2, self.mu1)
        terms = []
        for atom in outer.space.atoms():
            anchor = (atom & -atom).bit_length() - 1
            sec = self.space.section(axis, anchor, a)
            terms.append(mul_mt(outer.measure(atom), inner.measure(sec)))
        return sum_nonneg(terms)

    def _measure(self, a: int) -> XReal:
        return self.measure_via(a, 1)

    def __repr__(self):
        return f"Tensor({self.mu1!r}, {self.mu2!r})"


def measure(mu: Measure, a) -> XReal:
    return mu.measure(a)


def tensor_measure(mu1: Measure, mu2: Measure) -> Measure:
    """Tensor product: finite x finite, or Lebesgue x Lebesgue (giving :class:`Lebesgue2`)."""
    if isinstance(mu1.space, FiniteSpace) and isinstance(mu2.space, FiniteSpace):
        return Tensor(mu1, mu2)
    if type(mu1) is LebesgueR and type(mu2) is LebesgueR and mu1.space.is_whole_line() and mu2.space.is_whole_line():
        return Lebesgue2()
    raise UnsupportedFactorKinds(f"unsupported factor kinds: {mu1!r}, {mu2!r}")


@dataclass(frozen=True)
class MeasureClass:
    finite: bool
    sigma_finite: bool
    diffuse: bool


def classify(mu: Measure) -> MeasureClass:
    """Finite / sigma-finite / diffuse flags.

    Finite spaces are classified by measuring the atoms of the sigma-algebra;
    diffuseness requires every singleton to be measurable.
    """
    space = mu.space
    if isinstance(space, FiniteSpace):
        masses = [mu.measure(a) for a in space.atoms()]
        finite = mu.total().is_finite()
        sigma_finite = all(m.is_finite() for m in masses)
        diffuse = space.singletons_measurable() and all(m.is_zero() for m in masses)
        return MeasureClass(finite, sigma_finite, diffuse)
    if isinstance(mu, Dirac):
        return MeasureClass(True, True, False)
    if isinstance(mu, Counting):
        finite = mu.y.is_finite_set()
        return MeasureClass(finite, finite, mu.y.intersect(space.full()).is_empty())
    if isinstance(mu, (LebesgueR, Lebesgue2)):
        return MeasureClass(mu.total().is_finite(), True, True)
    if isinstance(mu, (Restricted, Trace)):
        base = classify(mu.base)
        return MeasureClass(mu.total().is_finite(), base.sigma_finite, base.diffuse)
    raise UnsupportedShape(f"cannot classify {mu!r}")


def verify_measure_axioms(mu: Measure, sample_sets: Sequence) -> Report:
    """Check the measure axioms on a finite battery of measurable sets.

    Covered: nonnegativity, ``mu(empty) = 0``, finite additivity on the
    disjointified samples, monotonicity on nested pairs, the finite Boole
    inequality and the pseudopartition identity.
    """
    space = mu.space
    report = Report(f"measure-axioms({mu!r})")
    samples = [space.check(a) for a in sample_sets]
    values = [mu.measure(a) for a in samples]

    report.add("empty set", mu.measure(space.empty()).is_zero(), witness=mu.measure(space.empty()))
    for k, v in enumerate(values):
        report.add(f"nonnegative[{k}]", v >= ZERO, witness=None if v >= ZERO else v)

    layers, seen = [], space.empty()
    for a in samples:
        layers.append(space.difference(a, seen))
        seen = space.union(seen, a)
    try:
        lhs = mu.measure(seen)
        rhs = _total(mu.measure(b) for b in layers)
        report.add("finite additivity", lhs == rhs, witness=None if lhs == rhs else (lhs, rhs))
        boole = _total(values)
        report.add("finite Boole inequality", lhs <= boole, witness=None if lhs <= boole else (lhs, boole))
    except ArithmeticError as exc:
        report.add("finite additivity", False, witness=str(exc))

    for i, j in itertools.permutations(range(len(samples)), 2):
        if space.is_subset(samples[i], samples[j]):
            ok = values[i] <= values[j]
            report.add(f"monotone[{i}<={j}]", ok, witness=None if ok else (values[i], values[j]))

    partition = [b for b in layers if not space.is_empty(b)]
    rest = space.complement(seen)
    if not space.is_empty(rest):
        partition.append(rest)
    for k, a in enumerate(samples):
        try:
            parts = _total(mu.measure(space.intersect(a, b)) for b in partition)
        except ArithmeticError as exc:
            report.add(f"pseudopartition[{k}]", False, witness=str(exc))
            continue
        report.add(f"pseudopartition[{k}]", parts == values[k], witness=None if parts == values[k] else (values[k], parts))
    return report


def _total(values: Iterable[XReal]) -> XReal:
    out = ZERO
    for v in values:
        out = add_checked(out, v)
    return out


def _finite_pseudopartition(members: Sequence[int], full: int) -> Optional[List[int]]:
    """Some pairwise-disjoint subfamily covering ``full`` (backtracking)."""
    nonempty = [m for m in members if m]

    def search(covered, start):
        if covered == full:
            return []
        low = (~covered & full) & -(~covered & full)
        for k in range(start, len(nonempty)):
            m = nonempty[k]
            if m & low and not m & covered:
                rest = search(covered | m, 0)
                if rest is not None:
                    return [m] + rest
        return None

    return search(0, 0)


def verify_uniqueness_pi_system(space: FiniteSpace, g: SubsetFamily, mu1: Measure, mu2: Measure) -> bool:
    """Check the hypotheses of uniqueness from a pi-system, then compare on all of sigma.

    Raises :class:`HypothesisFailed` naming the first failing hypothesis.
    Returns whether ``mu1 == mu2`` on every measurable set.
    """
    if not is_system(SystemKind.PiSystem, g):
        raise HypothesisFailed("pi-system", is_system(SystemKind.PiSystem, g).witnesses)
    if generate(SystemKind.SigmaAlgebra, g) != space.sigma:
        raise HypothesisFailed("generates the sigma-algebra")
    finite_parts = [m for m in g.members if mu1.measure(m).is_finite()]
    part = _finite_pseudopartition(finite_parts, space.full())
    if part is None:
        raise HypothesisFailed("contains a pseudopartition with finite measure")
    for m in g.members:
        if mu1.measure(m) != mu2.measure(m):
            raise HypothesisFailed("coincide on G", space.universe.label_list(m))
    return all(mu1.measure(a) == mu2.measure(a) for a in space.sigma)
