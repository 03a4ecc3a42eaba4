"""Lebesgue integration through the dyadic adapted sequence.

For a nonnegative measurable ``f`` the stage-``n`` simple function is

    phi_n(x) = floor(2**n f(x)) / 2**n   if f(x) < n,   else n,

and ``int f dmu`` is the limit of ``int phi_n dmu``.  Stage integrals are
computed exactly.  Piecewise-linear functions under Lebesgue measure use a
closed-form antiderivative of ``phi_n`` on each affine piece, so stage 20 does
not need the million-term simple function.  The limit itself is exact for
step functions, finite maps and piecewise-linear functions under Lebesgue or
point-mass measures.  For other combinations the stage-``n_max`` value is
returned together with the grid bound ``2**-n * m``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .errors import (
    HypothesisFailed,
    IncompatibleSpace,
    NegativeFunction,
    NonDiffuseMeasure,
    NotAlmostSummable,
    NotAbsolutelySummable,
    NotIntegrable,
    PreconditionFailed,
    UnboundedFunction,
    UnsupportedShape,
    ZeroMeasure,
)
from .functions import (
    FiniteMap,
    MeasurableFn,
    PiecewiseLinear,
    Step,
    ValueRange,
    abs_fn,
    le_everywhere,
    mask_fn,
    pointwise,
    split_parts,
)
from .intervals import Interval, IntervalSet
from .measures import Counting, Dirac, LebesgueR, Measure, Restricted, classify
from .report import CaseResult, Report
from .simplefn import Repr, SimpleFn, integral_sf_plus
from .spaces import FiniteSpace, RealLine
from .xreal import INF, ONE, ZERO, XReal, add_checked, div_nonneg_mt, mul_mt, neg, sum_nonneg, xabs, xr

DEFAULT_N_MAX = 20
DEFAULT_TOL = Fraction(1, 65536)


# adapted sequence


def phi(v: XReal, n: int) -> Fraction:
    """Stage-``n`` dyadic floor of a single nonnegative value."""
    v = xr(v)
    if v >= n:
        return Fraction(n)
    q = v.value
    return Fraction(floor(q * 2**n), 2**n)


def _require_nonneg(f: MeasurableFn) -> None:
    if not f.is_nonneg():
        raise NegativeFunction("the adapted sequence needs a nonnegative function")


def _check_space(f: MeasurableFn, mu: Measure) -> None:
    fs, ms = f.space, mu.space
    if isinstance(fs, RealLine) and isinstance(ms, RealLine):
        return
    if fs != ms:
        raise IncompatibleSpace(f"function on {fs!r} cannot be integrated against a measure on {ms!r}")


def _on_space(s, mu: Measure):
    """Intersect a set of the function's space with the measure's space."""
    return mu.space.intersect(s, mu.space.full())


def _dyadic_levels(f: MeasurableFn, n: int) -> List[Fraction]:
    lo, hi = f.bounds()
    if hi.is_inf() or hi >= n:
        top = n * 2**n
    else:
        top = floor(hi.value * 2**n) + 1
    bottom = floor(lo.value * 2**n) if lo.is_finite() else 0
    return [Fraction(k, 2**n) for k in range(max(bottom, 0), min(top, n * 2**n))]


def adapted_simple(f: MeasurableFn, n: int, space=None) -> SimpleFn:
    """The stage-``n`` simple function, as a disjoint representation over ``space``."""
    if n < 0:
        raise ValueError("stage index must be nonnegative")
    _require_nonneg(f)
    sp = space or f.space
    if isinstance(f, FiniteMap):
        groups: Dict[Fraction, int] = {}
        for i, v in enumerate(f.values):
            c = phi(v, n)
            groups[c] = groups.get(c, 0) | 1 << i
        return SimpleFn(sp, sorted(groups.items()), Repr.DISJOINT, check=False)
    if isinstance(f, Step):
        terms = [(phi(xr(c), n), s) for c, s in f.canonical().terms]
        return SimpleFn(sp, terms, Repr.DISJOINT, check=False)
    if isinstance(f, PiecewiseLinear):
        terms = []
        for c in _dyadic_levels(f, n):
            s = f.preimage(ValueRange.bin(c, c + Fraction(1, 2**n)))
            if space is not None:
                s = sp.intersect(s, sp.full())
            if not sp.is_empty(s):
                terms.append((c, s))
        s = f.preimage(ValueRange.at_least(n))
        if space is not None:
            s = sp.intersect(s, sp.full())
        if not sp.is_empty(s):
            terms.append((Fraction(n), s))
        return SimpleFn(sp, terms, Repr.DISJOINT, check=False)
    raise UnsupportedShape(type(f).__name__)


def phi_antiderivative(t: Fraction, n: int) -> Fraction:
    """``int_0^t phi_n(s) ds`` for ``t >= 0`` (phi_n applied to the identity)."""
    h = Fraction(1, 2**n)
    if t > n:
        return phi_antiderivative(Fraction(n), n) + n * (t - n)
    k = floor(t / h)
    return h * h * k * (k - 1) / 2 + (t - k * h) * k * h


def _lebesgue_view(mu: Measure) -> Optional[IntervalSet]:
    """If ``mu`` is Lebesgue measure restricted to a set, return that set."""
    if isinstance(mu, LebesgueR) and mu.space.is_whole_line():
        return IntervalSet.real_line()
    if isinstance(mu, Restricted) and isinstance(mu.base, LebesgueR) and mu.base.space.is_whole_line():
        return mu.y
    return None


def _pwl_stage_lebesgue(f: PiecewiseLinear, n: int) -> Fraction:
    total = Fraction(0)
    for iv, a, b in f.pieces:
        lo, hi = iv.lo.value.value, iv.hi.value.value
        if a == 0:
            total += (hi - lo) * phi(xr(b), n)
            continue
        u, v = sorted((a * lo + b, a * hi + b))
        total += (phi_antiderivative(v, n) - phi_antiderivative(u, n)) / abs(a)
    return total


def _point_masses(mu: Measure) -> Optional[List]:
    """Finitely many atoms of a point-mass measure on the line (each with mass 1)."""
    if isinstance(mu, Dirac) and isinstance(mu.space, RealLine):
        return [mu.at]
    if isinstance(mu, Counting) and isinstance(mu.space, RealLine):
        y = mu.y
        if isinstance(y, IntervalSet):
            if not y.is_finite_set():
                return None
            return [c.lo.value.value for c in y.components]
        return list(y)
    return None


def stage_integral(f: MeasurableFn, mu: Measure, n: int) -> XReal:
    """``int phi_n dmu`` computed exactly."""
    _check_space(f, mu)
    _require_nonneg(f)
    if isinstance(f, PiecewiseLinear):
        y = _lebesgue_view(mu)
        if y is not None:
            return xr(_pwl_stage_lebesgue(f.restrict(y), n))
        pts = _point_masses(mu)
        if pts is not None:
            return sum_nonneg(xr(phi(f.eval(p), n)) for p in pts)
    if isinstance(f, FiniteMap):
        return sum_nonneg(mul_mt(xr(phi(f.values[_low_bit(a)], n)), mu.measure(a)) for a in f.space.atoms())
    phi_n = adapted_simple(f, n, space=mu.space)
    return integral_sf_plus(phi_n, mu)


def _low_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


@dataclass(frozen=True)
class AdaptedStage:
    n: int
    integral: XReal


@dataclass
class IntegralResult:
    """Outcome of :func:`integral_mplus`.

    ``value`` is the integral when ``exact``; otherwise it is the stage
    ``n_max`` lower value and ``bound`` (if known) bounds the remaining gap.
    ``lower`` is always the stage ``n_max`` value.
    """

    value: XReal
    lower: XReal
    exact: bool
    bound: Optional[XReal]
    stages: List[AdaptedStage] = field(default_factory=list)

    def within(self, tol) -> bool:
        return self.bound is not None and self.bound <= xr(tol)


def exact_integral(f: MeasurableFn, mu: Measure) -> Optional[XReal]:
    """Closed-form integral of a nonnegative function when one is available."""
    if isinstance(f, FiniteMap):
        return sum_nonneg(mul_mt(f.values[_low_bit(a)], mu.measure(a)) for a in f.space.atoms())
    if isinstance(f, Step):
        terms = [(c, _on_space(s, mu)) for c, s in f.canonical().terms]
        return sum_nonneg(mul_mt(xr(c), mu.measure(s)) for c, s in terms)
    if isinstance(f, PiecewiseLinear):
        y = _lebesgue_view(mu)
        if y is not None:
            return xr(trapezoid(f.restrict(y)))
        pts = _point_masses(mu)
        if pts is not None:
            return sum_nonneg(f.eval(p) for p in pts)
    return None


def trapezoid(f: PiecewiseLinear) -> Fraction:
    """``int f dx`` of a piecewise-linear function (signed)."""
    total = Fraction(0)
    for iv, a, b in f.pieces:
        lo, hi = iv.lo.value.value, iv.hi.value.value
        total += (hi - lo) * (a * (lo + hi) / 2 + b)
    return total


def _support_measure(f: MeasurableFn, mu: Measure) -> XReal:
    s = f.space.complement(f.preimage(ValueRange.exactly(0)))
    return mu.measure(_on_space(s, mu))


def integral_mplus(f: MeasurableFn, mu: Measure, n_max: int = DEFAULT_N_MAX, tol=DEFAULT_TOL, stages: bool = True) -> IntegralResult:
    """Integral of a nonnegative function with its adapted stages."""
    _check_space(f, mu)
    _require_nonneg(f)
    table = [AdaptedStage(n, stage_integral(f, mu, n)) for n in range(n_max + 1)] if stages else []
    lower = table[-1].integral if table else stage_integral(f, mu, n_max)
    exact = exact_integral(f, mu)
    if exact is not None:
        bound = INF if exact.is_inf() and lower.is_finite() else (ZERO if exact.is_inf() else xr(exact.value - lower.value))
        return IntegralResult(exact, lower, True, bound, table)
    _, sup = f.bounds()
    m = _support_measure(f, mu)
    bound = None
    if sup.is_finite() and m.is_finite() and n_max > sup:
        bound = xr(Fraction(1, 2**n_max) * m.value)
    return IntegralResult(lower, lower, False, bound, table)


def integral_value(f: MeasurableFn, mu: Measure, n_max: int = DEFAULT_N_MAX, tol=DEFAULT_TOL) -> XReal:
    """The exact integral if available, else the stage ``n_max`` value."""
    _check_space(f, mu)
    _require_nonneg(f)
    exact = exact_integral(f, mu)
    if exact is not None:
        return exact
    return stage_integral(f, mu, n_max)


# signed integrals


def integral_signed(f: MeasurableFn, mu: Measure, n_max: int = DEFAULT_N_MAX, tol=DEFAULT_TOL) -> XReal:
    """``int f+ dmu - int f- dmu``; raises :class:`NotIntegrable` if either part diverges."""
    plus, minus = split_parts(f)
    ip = integral_value(plus, mu, n_max, tol)
    if ip.is_inf():
        raise NotIntegrable("positive", "the positive part has an infinite integral")
    im = integral_value(minus, mu, n_max, tol)
    if im.is_inf():
        raise NotIntegrable("negative", "the negative part has an infinite integral")
    return xr(ip.value - im.value)


def seminorm_n1(f: MeasurableFn, mu: Measure, n_max: int = DEFAULT_N_MAX, tol=DEFAULT_TOL) -> XReal:
    """``N1(f) = int |f| dmu``."""
    return integral_value(abs_fn(f), mu, n_max, tol)


def integral_over_interval(f: MeasurableFn, a, b, mu: Measure, n_max: int = DEFAULT_N_MAX) -> XReal:
    """Oriented integral ``int_a^b f dmu`` for a diffuse measure on the line."""
    if not classify(mu).diffuse:
        raise NonDiffuseMeasure("endpoint conventions only agree for diffuse measures")
    a, b = xr(a), xr(b)
    lo, hi = min(a, b), max(a, b)
    if lo == hi:
        return ZERO
    j = IntervalSet([Interval.open(lo, hi)])
    val = integral_signed(mask_fn(f, j), mu, n_max)
    return val if a <= b else neg(val)


def integral_over_subset(f: MeasurableFn, mu: Measure, a, n_max: int = DEFAULT_N_MAX) -> XReal:
    """``int_A f dmu`` for nonnegative ``f``."""
    return integral_value(mask_fn(f, mu.space.check(a)), mu, n_max)


def counting_integral(values) -> XReal:
    """``sum f(y)`` over a finite index set, requiring absolute summability."""
    vals = [xr(v) for v in (values.values() if isinstance(values, dict) else values)]
    if sum_nonneg(xabs(v) for v in vals).is_inf():
        raise NotAbsolutelySummable("the sum of |f(y)| is infinite")
    return xr(sum((v.value for v in vals), Fraction(0)))


def dirac_integral(f, a) -> XReal:
    """``int f d(delta_a) = f(a)`` for finite ``f(a)``."""
    v = xr(f(a))
    if v.is_inf():
        raise NotAbsolutelySummable(f"f is infinite at {a}")
    return v


def level_set_abs(f: MeasurableFn, a: XReal):
    """``{|f| >= a}``."""
    sp = f.space
    return sp.union(f.preimage(ValueRange.at_least(a)), f.preimage(ValueRange.at_most(neg(a))))


def chebyshev(f: MeasurableFn, mu: Measure, a, n_max: int = DEFAULT_N_MAX) -> Tuple[XReal, XReal]:
    """``(a * mu({|f| >= a}), N1(f))``."""
    a = xr(a)
    if a <= 0:
        raise PreconditionFailed("the Chebyshev level must be positive")
    s = _on_space(level_set_abs(f, a), mu)
    return mul_mt(a, mu.measure(s)), seminorm_n1(f, mu, n_max)


# almost-everywhere tools (finite spaces)


def _finite(mu: Measure) -> FiniteSpace:
    if not isinstance(mu.space, FiniteSpace):
        raise PreconditionFailed("a.e. tools need a finite space")
    return mu.space


def is_negligible(a: int, mu: Measure) -> bool:
    """``A`` lies inside a measurable null set."""
    sp = _finite(mu)
    return mu.measure(sp.measurable_hull(a)).is_zero()


def ae_equal(f: FiniteMap, g: FiniteMap, mu: Measure) -> bool:
    _finite(mu)
    diff = sum(1 << i for i, (u, v) in enumerate(zip(f.values, g.values)) if u != v)
    return is_negligible(diff, mu)


def summability_domain(f: FiniteMap, g: FiniteMap) -> int:
    """Points where ``f + g`` is defined (no opposite infinities)."""
    out = 0
    for i, (u, v) in enumerate(zip(f.values, g.values)):
        if not (u.is_inf() and v.is_inf() and u.kind != v.kind):
            out |= 1 << i
    return out


def almost_sum(f: FiniteMap, g: FiniteMap, mu: Measure) -> FiniteMap:
    """``f + g`` on the summability domain and 0 off it; the bad set must be negligible."""
    sp = _finite(mu)
    dom = summability_domain(f, g)
    if not is_negligible(sp.complement(dom), mu):
        raise NotAlmostSummable("f and g take opposite infinite values on a set of positive measure")
    vals = [add_checked(u, v) if dom >> i & 1 else ZERO for i, (u, v) in enumerate(zip(f.values, g.values))]
    return FiniteMap(sp, vals, check=False)


# mean value


@dataclass(frozen=True)
class MeanValue:
    lower: XReal
    mean: XReal
    upper: XReal
    strict: bool


def first_mean_value(f: MeasurableFn, mu: Measure, n_max: int = DEFAULT_N_MAX) -> MeanValue:
    """``inf f <= (1/mu(X)) int f dmu <= sup f`` with the strictness flag."""
    total = mu.total()
    if total.is_zero():
        raise ZeroMeasure("the measure of the whole space is 0")
    if total.is_inf():
        raise PreconditionFailed("the measure must be finite")
    within = mu.space.full() if isinstance(mu.space, RealLine) else None
    lo, hi = f.bounds(within)
    if lo.is_inf() or hi.is_inf():
        raise UnboundedFunction("f has an infinite bound")
    mean = xr(integral_signed(f, mu, n_max).value / total.value)
    if not lo <= mean <= hi:
        raise AssertionError("mean value outside the bounds")
    sp = mu.space

    def null_off(c):
        return mu.measure(_on_space(sp.complement(f.preimage(ValueRange.exactly(c))), mu)).is_zero()

    strict = not (null_off(lo) or null_off(hi))
    return MeanValue(lo, mean, hi, strict)


def mean_value_point(f: PiecewiseLinear, mu: Measure, n_max: int = DEFAULT_N_MAX) -> Optional[Fraction]:
    """A point ``x`` with ``f(x) = (1/mu(X)) int f dmu``, searched on the affine pieces."""
    mv = first_mean_value(f, mu, n_max)
    target = mv.mean.value
    within = mu.space.full()
    for iv, a, b in f.pieces:
        for c in IntervalSet([iv]).intersect(within):
            pre = IntervalSet([c]).intersect(f.preimage(ValueRange.exactly(target)))
            if not pre.is_empty():
                return pre.some_point()
    if target == 0:
        off = within.difference(f.domain())
        if not off.is_empty():
            return off.some_point()
    return None


# convergence theorems


class Theorem(enum.Enum):
    BeppoLevi = "BeppoLevi"
    Fatou = "Fatou"
    Dominated = "Dominated"
    ExtendedDominated = "ExtendedDominated"


@dataclass
class ConvergenceCase:
    """A parametric sequence with its declared pointwise limit.

    ``rate(n)`` certifies ``|int f - int f_n| <= rate(n)`` (Beppo Levi) or
    ``N1(f_n - f) <= rate(n)`` (dominated convergence).  ``integral_liminf``
    is the declared ``liminf int f_n`` for Fatou cases.  ``measure``
    overrides the battery-wide measure for this case.
    """

    name: str
    term: Callable[[int], MeasurableFn]
    limit: MeasurableFn
    dominator: Optional[MeasurableFn] = None
    rate: Optional[Callable[[int], Fraction]] = None
    integral_liminf: Optional[XReal] = None
    start: int = 0
    measure: Optional[Measure] = None


def _stage_indices(start: int, n_max: int) -> range:
    return range(start, n_max + 1)


def _n1_difference(f: MeasurableFn, g: MeasurableFn, mu: Measure, n_max: int) -> XReal:
    if isinstance(f, FiniteMap):
        sp = _finite(mu)
        dom = summability_domain(f, scale_neg(g))
        if not is_negligible(sp.complement(dom), mu):
            raise NotAlmostSummable("f_n - f is undefined on a set of positive measure")
        diff = almost_sum(f, scale_neg(g), mu)
        return seminorm_n1(diff, mu, n_max)
    return seminorm_n1(pointwise("sub", f, g), mu, n_max)


def scale_neg(f: FiniteMap) -> FiniteMap:
    return f.map(neg)


def _check_dominated(case: ConvergenceCase, fn: MeasurableFn, n, mu: Measure, ae: bool) -> None:
    g = case.dominator
    if ae:
        sp = _finite(mu)
        bad = sum(1 << i for i, (u, v) in enumerate(zip(abs_fn(fn).values, g.values)) if u > v)
        if not is_negligible(bad, mu):
            raise HypothesisFailed("|f_n| <= g almost everywhere", {"n": n, "set": sp.universe.label_list(bad)})
    elif not le_everywhere(abs_fn(fn), g):
        raise HypothesisFailed("|f_n| <= g", {"n": n})


def _verify_case(theorem: Theorem, case: ConvergenceCase, mu: Measure, n_max: int, tol: Fraction) -> CaseResult:
    idx = _stage_indices(case.start, n_max)
    fs = [case.term(n) for n in idx]
    if theorem in (Theorem.BeppoLevi, Theorem.Fatou):
        for n, fn in zip(idx, fs):
            if not fn.is_nonneg():
                raise HypothesisFailed("f_n >= 0", {"n": n})
    if theorem is Theorem.BeppoLevi:
        for (n, fn), gn in zip(zip(idx, fs), fs[1:]):
            if not le_everywhere(fn, gn):
                raise HypothesisFailed("f_n <= f_(n+1)", {"n": n})
        if not le_everywhere(fs[-1], case.limit):
            raise HypothesisFailed("f_n <= f", {"n": n_max})
        ints = [integral_value(fn, mu, n_max) for fn in fs]
        lim = integral_value(case.limit, mu, n_max)
        for n, (u, v) in zip(idx, zip(ints, ints[1:])):
            if u > v:
                return CaseResult(case.name, False, {"n": n, "reason": "stage integrals decrease"})
        for n, i in zip(idx, ints):
            if i > lim:
                return CaseResult(case.name, False, {"n": n, "reason": "stage integral exceeds the limit"})
        if lim.is_inf():
            ok = ints[-1] >= xr(case.rate(n_max)) if case.rate else True
            return CaseResult(case.name, ok, None if ok else {"n": n_max}, None)
        gaps = [lim.value - i.value for i in ints]
        if case.rate is not None:
            for n, gap in zip(idx, gaps):
                if gap > case.rate(n):
                    return CaseResult(case.name, False, {"n": n, "gap": gap, "rate": case.rate(n)})
            margin = case.rate(n_max) - gaps[-1]
        else:
            margin = tol - gaps[-1]
        return CaseResult(case.name, margin >= 0, None if margin >= 0 else {"gap": gaps[-1]}, margin)
    if theorem is Theorem.Fatou:
        ints = [integral_value(fn, mu, n_max) for fn in fs]
        running = fs[-1]
        running_int = ints[-1]
        worst = None
        for k in range(len(fs) - 1, -1, -1):
            if k < len(fs) - 1:
                running = pointwise("min", fs[k], running)
                running_int = min(running_int, ints[k])
            lhs = integral_value(running, mu, n_max)
            if lhs > running_int:
                return CaseResult(case.name, False, {"N": idx[k], "lhs": lhs, "rhs": running_int})
            if running_int.is_finite() and lhs.is_finite():
                m = running_int.value - lhs.value
                worst = m if worst is None else min(worst, m)
        lim = integral_value(case.limit, mu, n_max)
        if case.integral_liminf is not None:
            if lim > case.integral_liminf:
                return CaseResult(case.name, False, {"reason": "declared liminf below the integral of the limit"})
            if lim.is_finite() and case.integral_liminf.is_finite():
                m = case.integral_liminf.value - lim.value
                worst = m if worst is None else min(worst, m)
        return CaseResult(case.name, True, None, worst)
    ae = theorem is Theorem.ExtendedDominated
    if case.dominator is None:
        raise HypothesisFailed("a dominating function is declared", {"case": case.name})
    if ae:
        _finite(mu)
    if seminorm_n1(case.dominator, mu, n_max).is_inf():
        raise HypothesisFailed("g is integrable", {"case": case.name})
    for n, fn in zip(idx, fs):
        _check_dominated(case, fn, n, mu, ae)
    lim_int = integral_signed(case.limit, mu, n_max)
    worst = None
    for n, fn in zip(idx, fs):
        n1 = _n1_difference(fn, case.limit, mu, n_max)
        gap = xabs(xr(integral_signed(fn, mu, n_max).value - lim_int.value))
        if gap > n1:
            return CaseResult(case.name, False, {"n": n, "reason": "|int f_n - int f| exceeds N1(f_n - f)"})
        if case.rate is not None and n1 > case.rate(n):
            return CaseResult(case.name, False, {"n": n, "n1": n1, "rate": case.rate(n)})
    if n1 > tol or gap > tol:
        return CaseResult(case.name, False, {"n": n_max, "n1": n1, "gap": gap})
    return CaseResult(case.name, True, None, xr(tol - n1.value))


def verify_convergence(theorem, battery: Sequence[ConvergenceCase], mu: Measure, n_max: int = DEFAULT_N_MAX, tol=DEFAULT_TOL) -> Report:
    """Check a convergence theorem on every case; hypotheses failing raise :class:`HypothesisFailed`."""
    theorem = Theorem(theorem)
    tol = Fraction(tol)
    rep = Report(f"convergence-{theorem.value}")
    for case in battery:
        rep.cases.append(_verify_case(theorem, case, case.measure or mu, n_max, tol))
    return rep
