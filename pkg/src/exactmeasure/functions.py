"""The three representable classes of measurable functions.

* :class:`FiniteMap` -- a value (possibly infinite) per point of a finite space;
* :class:`Step` -- a :class:`SimpleFn`, usually over interval sets;
* :class:`PiecewiseLinear` -- affine pieces ``a*x + b`` on bounded, pairwise
  disjoint intervals, and 0 off the pieces.

Every level set ``{f in V}`` is an exact measurable set, which is what the
adapted-sequence integral needs.  Pointwise arithmetic between functions of
the same class is exact; crossing points of affine pieces are solved in
rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import NotMeasurable, SpaceMismatch, UnsupportedShape
from .intervals import Bound, Interval, IntervalSet, _lo_key, canonicalize, elementary_atoms, parse_interval
from .simplefn import Repr, SimpleFn, canonicalize as sf_canonicalize, combine, to_disjoint
from .spaces import FiniteSpace, MeasurableSpace, RealLine
from .xreal import INF, NEG_INF, ZERO, XReal, add_checked, neg, xr


@dataclass(frozen=True)
class ValueRange:
    """A range of extended-real values; unlike :class:`Interval` it may close at infinity."""

    lo: XReal = NEG_INF
    hi: XReal = INF
    lo_closed: bool = True
    hi_closed: bool = True

    def contains(self, v) -> bool:
        v = xr(v)
        if v < self.lo or v > self.hi:
            return False
        if v == self.lo and not self.lo_closed:
            return False
        if v == self.hi and not self.hi_closed:
            return False
        return True

    @classmethod
    def at_least(cls, c) -> "ValueRange":
        return cls(xr(c), INF, True, True)

    @classmethod
    def at_most(cls, c) -> "ValueRange":
        return cls(NEG_INF, xr(c), True, True)

    @classmethod
    def above(cls, c) -> "ValueRange":
        return cls(xr(c), INF, False, True)

    @classmethod
    def below(cls, c) -> "ValueRange":
        return cls(NEG_INF, xr(c), True, False)

    @classmethod
    def exactly(cls, c) -> "ValueRange":
        return cls(xr(c), xr(c), True, True)

    @classmethod
    def bin(cls, lo, hi) -> "ValueRange":
        """Half-open ``[lo, hi)``."""
        return cls(xr(lo), xr(hi), True, False)


class MeasurableFn:
    space: MeasurableSpace

    def __call__(self, x) -> XReal:
        return self.eval(x)

    def eval(self, x) -> XReal:
        raise NotImplementedError

    def preimage(self, v: ValueRange):
        """The measurable set ``{x : f(x) in v}``."""
        raise NotImplementedError

    def where_not(self, c):
        sp = self.space
        return sp.complement(self.preimage(ValueRange.exactly(c)))

    def is_nonneg(self) -> bool:
        return self.space.is_empty(self.preimage(ValueRange.below(0)))

    def bounds(self, within=None) -> Tuple[XReal, XReal]:
        """``(inf, sup)`` of ``f`` over ``within`` (default: the whole space)."""
        raise NotImplementedError


class FiniteMap(MeasurableFn):
    """A function on a finite space given by its table of values."""

    def __init__(self, space: FiniteSpace, values: Union[Sequence, Mapping], check: bool = True):
        if isinstance(space, int):
            space = FiniteSpace(space)
        self.space = space
        if isinstance(values, Mapping):
            vals = [ZERO] * space.size
            for k, v in values.items():
                vals[space.universe.index(k)] = xr(v)
        else:
            vals = [xr(v) for v in values]
            if len(vals) != space.size:
                raise ValueError(f"expected {space.size} values, got {len(vals)}")
        self.values = tuple(vals)
        if check:
            for atom in space.atoms():
                pts = space.universe.elements(atom)
                if len({self.values[p] for p in pts}) > 1:
                    raise NotMeasurable(f"values are not constant on the atom {space.universe.label_list(atom)}")

    def __repr__(self):
        return f"FiniteMap({[str(v) for v in self.values]})"

    def __eq__(self, other):
        return isinstance(other, FiniteMap) and self.space == other.space and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def eval(self, x) -> XReal:
        return self.values[self.space.universe.index(x)]

    def preimage(self, v: ValueRange) -> int:
        return sum(1 << i for i, val in enumerate(self.values) if v.contains(val))

    def bounds(self, within=None):
        pts = range(self.space.size) if within is None else self.space.universe.elements(within)
        vals = [self.values[p] for p in pts]
        if not vals:
            raise ValueError("no points to bound")
        return min(vals), max(vals)

    def map(self, fn: Callable[[XReal], XReal]) -> "FiniteMap":
        return FiniteMap(self.space, [fn(v) for v in self.values], check=False)


class Step(MeasurableFn):
    """A finite-valued simple function viewed as a measurable function."""

    def __init__(self, fn: SimpleFn):
        self.fn = fn
        self.space = fn.space

    @classmethod
    def of(cls, space: MeasurableSpace, terms) -> "Step":
        return cls(SimpleFn(space, terms))

    def __repr__(self):
        return f"Step({self.fn!r})"

    def eval(self, x) -> XReal:
        return xr(self.fn(x))

    def canonical(self) -> SimpleFn:
        return sf_canonicalize(self.fn)

    def preimage(self, v: ValueRange):
        sp = self.space
        return sp.union_all(s for c, s in self.canonical().terms if v.contains(c))

    def bounds(self, within=None):
        sp = self.space
        vals = [c for c, s in self.canonical().terms if within is None or not sp.is_empty(sp.intersect(s, within))]
        if not vals:
            raise ValueError("no points to bound")
        return xr(min(vals)), xr(max(vals))

    def breakpoints(self) -> List[Fraction]:
        pts = set()
        for _, s in self.fn.terms:
            if isinstance(s, IntervalSet):
                pts.update(s.finite_endpoints())
        return sorted(pts)


Piece = Tuple[Interval, Fraction, Fraction]


class PiecewiseLinear(MeasurableFn):
    """``a*x + b`` on each bounded piece, 0 elsewhere on the real line."""

    def __init__(self, pieces: Iterable, space: Optional[RealLine] = None):
        out = []
        for iv, a, b in pieces:
            iv = parse_interval(iv) if isinstance(iv, str) else iv
            if iv.is_empty():
                continue
            if not iv.is_bounded():
                raise UnsupportedShape(f"piece {iv} is unbounded")
            out.append((iv, Fraction(xr(a).value), Fraction(xr(b).value)))
        out.sort(key=lambda p: _lo_key(p[0].lo))
        for (p, _, _), (q, _, _) in zip(out, out[1:]):
            if not p.intersect(q).is_empty():
                raise ValueError(f"pieces {p} and {q} overlap")
        self.pieces: Tuple[Piece, ...] = tuple(out)
        self.space = space or RealLine()

    def __repr__(self):
        body = ", ".join(f"{iv}: {a}x+{b}" for iv, a, b in self.pieces)
        return f"PiecewiseLinear({body})"

    @classmethod
    def affine(cls, interval, a, b) -> "PiecewiseLinear":
        return cls([(interval, a, b)])

    def domain(self) -> IntervalSet:
        return IntervalSet(iv for iv, _, _ in self.pieces)

    def coeffs_at(self, x) -> Tuple[Fraction, Fraction]:
        for iv, a, b in self.pieces:
            if iv.contains(x):
                return a, b
        return Fraction(0), Fraction(0)

    def eval(self, x) -> XReal:
        x = xr(x).value
        a, b = self.coeffs_at(x)
        return xr(a * x + b)

    def breakpoints(self) -> List[Fraction]:
        pts = set()
        for iv, _, _ in self.pieces:
            pts.add(iv.lo.value.value)
            pts.add(iv.hi.value.value)
        return sorted(pts)

    def preimage(self, v: ValueRange) -> IntervalSet:
        parts = [_affine_preimage(iv, a, b, v) for iv, a, b in self.pieces]
        out = IntervalSet(c for p in parts for c in p.components)
        if v.contains(ZERO):
            out = out.union(self.domain().complement())
        return out

    def bounds(self, within=None):
        within = IntervalSet.real_line() if within is None else within
        vals = []
        for iv, a, b in self.pieces:
            for c in IntervalSet([iv]).intersect(within):
                vals.append(a * c.lo.value.value + b)
                vals.append(a * c.hi.value.value + b)
        if not within.difference(self.domain()).is_empty():
            vals.append(Fraction(0))
        if not vals:
            raise ValueError("no points to bound")
        return xr(min(vals)), xr(max(vals))

    def restrict(self, y: IntervalSet) -> "PiecewiseLinear":
        """``f * 1_Y``."""
        out = []
        for iv, a, b in self.pieces:
            for c in IntervalSet([iv]).intersect(y):
                out.append((c, a, b))
        return PiecewiseLinear(out, self.space)


def _affine_preimage(iv: Interval, a: Fraction, b: Fraction, v: ValueRange) -> IntervalSet:
    if a == 0:
        return IntervalSet([iv]) if v.contains(b) else IntervalSet.empty()

    def back(y: XReal) -> XReal:
        if y.is_inf():
            return y if a > 0 else neg(y)
        return xr((y.value - b) / a)

    lo, hi = back(v.lo), back(v.hi)
    lo_c, hi_c = v.lo_closed, v.hi_closed
    if a < 0:
        lo, hi, lo_c, hi_c = hi, lo, hi_c, lo_c
    if lo > hi:
        return IntervalSet.empty()
    lo_c = lo_c and lo.is_finite()
    hi_c = hi_c and hi.is_finite()
    pre = Interval(Bound(lo, lo_c), Bound(hi, hi_c))
    return IntervalSet([iv.intersect(pre)])


# pointwise operations


def _pwl_atoms(fs: Sequence[PiecewiseLinear]) -> List[Interval]:
    pts = set()
    for f in fs:
        pts.update(f.breakpoints())
    dom = IntervalSet()
    for f in fs:
        dom = dom.union(f.domain())
    return [at for at in elementary_atoms(pts) if not at.is_empty() and dom.contains(at.interior_point())]


def _merge_pieces(pieces: List[Piece]) -> List[Piece]:
    pieces = sorted(pieces, key=lambda p: _lo_key(p[0].lo))
    out: List[Piece] = []
    for iv, a, b in pieces:
        if out:
            piv, pa, pb = out[-1]
            if (pa, pb) == (a, b) and (piv.hi.value > iv.lo.value or (piv.hi.value == iv.lo.value and (piv.hi.closed or iv.lo.closed))):
                out[-1] = (Interval(piv.lo, iv.hi), a, b)
                continue
        out.append((iv, a, b))
    return out


def _split_at_root(at: Interval, a: Fraction, b: Fraction) -> List[Interval]:
    """Cut an atom where ``a*x + b`` vanishes strictly inside it."""
    if a == 0 or at.is_singleton():
        return [at]
    r = -b / a
    lo, hi = at.lo.value.value, at.hi.value.value
    if lo < r < hi:
        return [Interval(at.lo, Bound(xr(r), False)), Interval.point(r), Interval(Bound(xr(r), False), at.hi)]
    return [at]


def pwl_binary(op: str, f: PiecewiseLinear, g: PiecewiseLinear) -> PiecewiseLinear:
    """``add``, ``sub``, ``min`` or ``max`` of two piecewise-linear functions."""
    pieces = []
    for at in _pwl_atoms([f, g]):
        fa, fb = f.coeffs_at(at.interior_point())
        ga, gb = g.coeffs_at(at.interior_point())
        if op == "add":
            pieces.append((at, fa + ga, fb + gb))
        elif op == "sub":
            pieces.append((at, fa - ga, fb - gb))
        elif op in ("min", "max"):
            for sub in _split_at_root(at, fa - ga, fb - gb):
                x = sub.interior_point()
                fv, gv = fa * x + fb, ga * x + gb
                pick_f = fv <= gv if op == "min" else fv >= gv
                pieces.append((sub, fa, fb) if pick_f else (sub, ga, gb))
        else:
            raise ValueError(f"unknown operation {op!r}")
    return PiecewiseLinear(_merge_pieces(pieces), f.space)


def pwl_scale(f: PiecewiseLinear, c) -> PiecewiseLinear:
    c = Fraction(xr(c).value)
    return PiecewiseLinear([(iv, c * a, c * b) for iv, a, b in f.pieces], f.space)


def step_to_pwl(f: Step) -> PiecewiseLinear:
    if not isinstance(f.space, RealLine):
        raise UnsupportedShape("only real-line step functions convert to piecewise-linear form")
    pieces = []
    for c, s in f.canonical().terms:
        if c == 0:
            continue
        for iv in s.components:
            if not iv.is_bounded():
                raise UnsupportedShape(f"step function is nonzero on the unbounded set {iv}")
            pieces.append((iv, Fraction(0), c))
    return PiecewiseLinear(pieces, f.space)


def _atom_values(f: Step, index: dict, n_atoms: int) -> List[Fraction]:
    """Value of a real-line step function on each elementary atom of a common cut."""
    vals = [Fraction(0)] * n_atoms
    for c, s in f.fn.terms:
        if c == 0:
            continue
        for iv in s.components:
            if iv.lo.value.is_inf():
                start = 0
            else:
                k = index[iv.lo.value.value]
                start = 2 * k + 1 if iv.lo.closed else 2 * k + 2
            if iv.hi.value.is_inf():
                end = n_atoms - 1
            else:
                k = index[iv.hi.value.value]
                end = 2 * k + 1 if iv.hi.closed else 2 * k
            for i in range(start, end + 1):
                vals[i] += c
    return vals


def _line_step_op(fn: Callable[[Fraction, Fraction], Fraction], f: Step, g: Step) -> Step:
    pts = sorted(set(f.breakpoints()) | set(g.breakpoints()))
    index = {p: k for k, p in enumerate(pts)}
    atoms = elementary_atoms(pts)
    fv = _atom_values(f, index, len(atoms))
    gv = _atom_values(g, index, len(atoms))
    groups = {}
    for at, u, v in zip(atoms, fv, gv):
        groups.setdefault(fn(u, v), []).append(at)
    terms = [(c, canonicalize(ats)) for c, ats in sorted(groups.items())]
    return Step(SimpleFn(f.space, terms, Repr.CANONICAL, check=False))


_STEP_OPS = {
    "add": lambda u, v: u + v,
    "sub": lambda u, v: u - v,
    "min": min,
    "max": max,
}


def _is_line_step(f) -> bool:
    return isinstance(f, Step) and isinstance(f.space, RealLine) and f.space.is_whole_line()


def _map_finite(op: str, u: XReal, v: XReal) -> XReal:
    if op == "add":
        return add_checked(u, v)
    if op == "sub":
        return add_checked(u, neg(v))
    if op == "min":
        return min(u, v)
    if op == "max":
        return max(u, v)
    raise ValueError(f"unknown operation {op!r}")


def pointwise(op: str, f: MeasurableFn, g: MeasurableFn) -> MeasurableFn:
    """Exact pointwise ``add``/``sub``/``min``/``max`` within a representable class."""
    if f.space != g.space and not (isinstance(f.space, RealLine) and isinstance(g.space, RealLine)):
        raise SpaceMismatch("functions live on different spaces")
    if isinstance(f, FiniteMap) and isinstance(g, FiniteMap):
        return FiniteMap(f.space, [_map_finite(op, u, v) for u, v in zip(f.values, g.values)], check=False)
    if _is_line_step(f) and _is_line_step(g) and op in _STEP_OPS:
        return _line_step_op(_STEP_OPS[op], f, g)
    if isinstance(f, Step) and isinstance(g, Step):
        if op == "sub":
            return Step(combine("add", f.fn, combine("scale", g.fn, scale=-1)))
        return Step(combine(op, f.fn, g.fn))
    f2 = step_to_pwl(f) if isinstance(f, Step) else f
    g2 = step_to_pwl(g) if isinstance(g, Step) else g
    if isinstance(f2, PiecewiseLinear) and isinstance(g2, PiecewiseLinear):
        return pwl_binary(op, f2, g2)
    raise UnsupportedShape(f"cannot combine {type(f).__name__} with {type(g).__name__}")


def scale(f: MeasurableFn, c) -> MeasurableFn:
    c = xr(c)
    if isinstance(f, FiniteMap):
        return f.map(lambda v: c * v)
    if isinstance(f, Step):
        return Step(combine("scale", f.fn, scale=c.value))
    if isinstance(f, PiecewiseLinear):
        return pwl_scale(f, c)
    raise UnsupportedShape(type(f).__name__)


def zero_like(f: MeasurableFn) -> MeasurableFn:
    if isinstance(f, FiniteMap):
        return FiniteMap(f.space, [0] * f.space.size, check=False)
    if isinstance(f, Step):
        return Step(SimpleFn(f.space, [(0, f.space.full())], Repr.DISJOINT, check=False))
    return PiecewiseLinear([], f.space)


def split_parts(f: MeasurableFn) -> Tuple[MeasurableFn, MeasurableFn]:
    """``(max(f, 0), max(-f, 0))``."""
    if isinstance(f, FiniteMap):
        return f.map(lambda v: max(v, ZERO)), f.map(lambda v: max(neg(v), ZERO))
    if isinstance(f, Step):
        terms = to_disjoint(f.fn).terms
        sp = f.space
        plus = SimpleFn(sp, [(max(c, 0), s) for c, s in terms], Repr.DISJOINT, check=False)
        minus = SimpleFn(sp, [(max(-c, 0), s) for c, s in terms], Repr.DISJOINT, check=False)
        return Step(plus), Step(minus)
    if isinstance(f, PiecewiseLinear):
        plus, minus = [], []
        for iv, a, b in f.pieces:
            for sub in _split_at_root(iv, a, b):
                x = sub.interior_point()
                if a * x + b >= 0:
                    plus.append((sub, a, b))
                else:
                    minus.append((sub, -a, -b))
        return PiecewiseLinear(_merge_pieces(plus), f.space), PiecewiseLinear(_merge_pieces(minus), f.space)
    raise UnsupportedShape(type(f).__name__)


def abs_fn(f: MeasurableFn) -> MeasurableFn:
    if isinstance(f, FiniteMap):
        return f.map(abs)
    p, m = split_parts(f)
    if isinstance(f, PiecewiseLinear):
        return PiecewiseLinear(_merge_pieces(list(p.pieces) + list(m.pieces)), f.space)
    return pointwise("add", p, m)


def mask_fn(f: MeasurableFn, a) -> MeasurableFn:
    """``f * 1_A`` (masked values become 0, including infinite ones)."""
    if isinstance(f, FiniteMap):
        return FiniteMap(f.space, [v if a >> i & 1 else ZERO for i, v in enumerate(f.values)], check=False)
    if isinstance(f, Step):
        sp = f.space
        terms = []
        for c, s in to_disjoint(f.fn).terms:
            inside, outside = sp.intersect(s, a), sp.difference(s, a)
            if not sp.is_empty(inside):
                terms.append((c, inside))
            if not sp.is_empty(outside):
                terms.append((0, outside))
        return Step(SimpleFn(sp, terms, Repr.DISJOINT, check=False))
    if isinstance(f, PiecewiseLinear):
        return f.restrict(a)
    raise UnsupportedShape(type(f).__name__)


def le_everywhere(f: MeasurableFn, g: MeasurableFn) -> bool:
    """Exact pointwise ``f <= g``."""
    if isinstance(f, FiniteMap) and isinstance(g, FiniteMap):
        return all(u <= v for u, v in zip(f.values, g.values))
    if _is_line_step(f) and _is_line_step(g):
        pts = sorted(set(f.breakpoints()) | set(g.breakpoints()))
        index = {p: k for k, p in enumerate(pts)}
        n = 2 * len(pts) + 1
        return all(u <= v for u, v in zip(_atom_values(f, index, n), _atom_values(g, index, n)))
    d = pointwise("sub", g, f)
    return d.is_nonneg()


def test_points(*fs: MeasurableFn) -> List[Fraction]:
    """Breakpoints, midpoints between them and one point beyond each end."""
    pts = set()
    for f in fs:
        if isinstance(f, (PiecewiseLinear, Step)):
            pts.update(f.breakpoints())
    pts = sorted(pts)
    if not pts:
        return [Fraction(0)]
    out = set(pts)
    out.update((p + q) / 2 for p, q in zip(pts, pts[1:]))
    out.add(pts[0] - 1)
    out.add(pts[-1] + 1)
    return sorted(out)
