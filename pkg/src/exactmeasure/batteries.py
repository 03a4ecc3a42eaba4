"""Built-in sequences with declared limits for the convergence verifiers."""

from __future__ import annotations

from fractions import Fraction
from typing import List

from .functions import FiniteMap, PiecewiseLinear, Step
from .intervals import Interval, IntervalSet
from .lebint import ConvergenceCase, adapted_simple
from .measures import Counting, FiniteTable, LebesgueR
from .simplefn import SimpleFn
from .spaces import FiniteSpace, RealLine
from .xreal import INF, ONE, ZERO, xr

F = Fraction
LINE = RealLine()


def ind(lo, hi, lo_closed=True, hi_closed=True, c=1) -> Step:
    """``c * 1_I`` for the interval with the given ends."""
    iv = IntervalSet([Interval.make(lo, hi, lo_closed, hi_closed)])
    return Step(SimpleFn(LINE, [(c, iv)]))


def zero_step() -> Step:
    return Step(SimpleFn(LINE, []))


def tent(center, half_width, height) -> PiecewiseLinear:
    c, w, h = F(center), F(half_width), F(height)
    return PiecewiseLinear(
        [
            (Interval.make(c - w, c, True, False), h / w, h - h * c / w),
            (Interval.make(c, c + w, True, True), -h / w, h + h * c / w),
        ]
    )


IDENTITY_01 = PiecewiseLinear([(Interval.closed(0, 1), 1, 0)])


def beppo_levi_battery() -> List[ConvergenceCase]:
    return [
        ConvergenceCase(
            "adapted-stages-of-x",
            lambda n: Step(adapted_simple(IDENTITY_01, n)),
            IDENTITY_01,
            rate=lambda n: F(1, 2 ** (n + 1)),
        ),
        ConvergenceCase(
            "growing-interval",
            lambda n: ind(0, 1 - F(1, n + 1)),
            ind(0, 1, True, False),
            rate=lambda n: F(1, n + 1),
        ),
        ConvergenceCase("constant", lambda n: ind(0, 2, c=3), ind(0, 2, c=3), rate=lambda n: F(0)),
        ConvergenceCase(
            "rising-plateau",
            lambda n: ind(0, 1, c=2 - F(1, 2**n)),
            ind(0, 1, c=2),
            rate=lambda n: F(1, 2**n),
        ),
    ]


def _finite_fatou_cases() -> List[ConvergenceCase]:
    sp = FiniteSpace(3)
    mu = Counting(sp, sp.full())
    zero = FiniteMap(sp, [0, 0, 0])
    return [
        ConvergenceCase(
            "finite-rotating-indicator",
            lambda n: FiniteMap(sp, [1 if i == n % 3 else 0 for i in range(3)]),
            zero,
            integral_liminf=ONE,
            measure=mu,
        ),
        ConvergenceCase(
            "finite-growing-to-inf",
            lambda n: FiniteMap(sp, [n, 1, 0]),
            FiniteMap(sp, [INF, 1, 0]),
            integral_liminf=INF,
            measure=mu,
        ),
        ConvergenceCase(
            "finite-alternating-weights",
            lambda n: FiniteMap(sp, [2, 0, 1] if n % 2 else [0, 2, 1]),
            FiniteMap(sp, [0, 0, 1]),
            integral_liminf=xr(3),
            measure=FiniteTable(sp, [1, 1, 1]),
        ),
        ConvergenceCase(
            "finite-decreasing",
            lambda n: FiniteMap(sp, [F(1, n + 1), 2, F(3, n + 1)]),
            FiniteMap(sp, [0, 2, 0]),
            integral_liminf=xr(2),
            measure=FiniteTable(sp, [1, 1, 1]),
        ),
    ]


def fatou_battery() -> List[ConvergenceCase]:
    """Twenty sequences, several with a strict Fatou inequality."""
    lam = LebesgueR()
    cases = [
        ConvergenceCase("escaping-bump", lambda n: ind(n, n + 1), zero_step(), integral_liminf=ONE),
        ConvergenceCase("concentrating-spike", lambda n: ind(0, F(1, n + 1), False, True, c=n + 1), zero_step(), integral_liminf=ONE),
        ConvergenceCase("spreading-plateau", lambda n: ind(0, n + 1, c=F(1, n + 1)), zero_step(), integral_liminf=ONE),
        ConvergenceCase(
            "alternating-halves",
            lambda n: ind(0, 1) if n % 2 == 0 else ind(1, 2),
            ind(1, 1),
            integral_liminf=ONE,
        ),
        ConvergenceCase("growing-interval", lambda n: ind(0, 1 - F(1, n + 2)), ind(0, 1, True, False), integral_liminf=ONE),
        ConvergenceCase("shrinking-interval", lambda n: ind(0, F(1, n + 1)), ind(0, 0), integral_liminf=ZERO),
        ConvergenceCase("constant-identity", lambda n: IDENTITY_01, IDENTITY_01, integral_liminf=xr(F(1, 2))),
        ConvergenceCase("constant-tent", lambda n: tent(0, 1, 2), tent(0, 1, 2), integral_liminf=xr(2)),
        ConvergenceCase("sharpening-tent", lambda n: tent(0, F(1, n + 1), n + 1), zero_step(), integral_liminf=ONE),
        ConvergenceCase("travelling-tent", lambda n: tent(2 * n, 1, 1), zero_step(), integral_liminf=ONE),
        ConvergenceCase("flattening-tent", lambda n: tent(0, n + 1, F(1, n + 1)), zero_step(), integral_liminf=ONE),
        ConvergenceCase(
            "adapted-stages-of-x",
            lambda n: Step(adapted_simple(IDENTITY_01, n)),
            IDENTITY_01,
            integral_liminf=xr(F(1, 2)),
        ),
        ConvergenceCase(
            "oscillating-height",
            lambda n: ind(0, 1, c=1 + F((-1) ** n, n + 2)),
            ind(0, 1),
            integral_liminf=ONE,
        ),
        ConvergenceCase(
            "bump-plus-escape",
            lambda n: _add(ind(0, 1), ind(n + 2, n + 3)),
            ind(0, 1),
            integral_liminf=xr(2),
        ),
        ConvergenceCase(
            "alternating-tents",
            lambda n: tent(0, 1, 1) if n % 2 else tent(2, 1, 1),
            zero_step(),
            integral_liminf=ONE,
        ),
        ConvergenceCase("zero", lambda n: zero_step(), zero_step(), integral_liminf=ZERO),
    ]
    for c in cases:
        c.measure = lam
    return cases + _finite_fatou_cases()


def _add(f: Step, g: Step) -> Step:
    from .functions import pointwise

    return pointwise("add", f, g)


def dominated_battery() -> List[ConvergenceCase]:
    return [
        ConvergenceCase(
            "shrinking-to-half",
            lambda n: ind(0, F(1, 2) + F(1, n + 2)),
            ind(0, F(1, 2)),
            dominator=ind(0, 1),
            rate=lambda n: F(1, n + 2),
        ),
        ConvergenceCase(
            "signed-damped",
            lambda n: ind(0, 1, c=F((-1) ** n, n + 1)),
            zero_step(),
            dominator=ind(0, 1),
            rate=lambda n: F(1, n + 1),
        ),
        ConvergenceCase(
            "shrinking-tent",
            lambda n: tent(0, 1, F(1, n + 1)),
            zero_step(),
            dominator=ind(-1, 1),
            rate=lambda n: F(1, n + 1),
        ),
        ConvergenceCase("constant", lambda n: ind(0, 1, c=-1), ind(0, 1, c=-1), dominator=ind(0, 1), rate=lambda n: F(0)),
    ]


def extended_dominated_battery() -> List[ConvergenceCase]:
    """Finite-space cases whose hypotheses only hold almost everywhere."""
    sp = FiniteSpace(3)
    mu = FiniteTable(sp, [1, 2, 0])
    return [
        ConvergenceCase(
            "bad-on-null-point",
            lambda n: FiniteMap(sp, [F(1, n + 1), 1 + F(1, n + 1), n]),
            FiniteMap(sp, [0, 1, 0]),
            dominator=FiniteMap(sp, [1, 2, 0]),
            rate=lambda n: F(3, n + 1),
            measure=mu,
        ),
        ConvergenceCase(
            "infinite-on-null-point",
            lambda n: FiniteMap(sp, [-F(1, n + 1), 0, INF]),
            FiniteMap(sp, [0, 0, -1]),
            dominator=FiniteMap(sp, [1, 0, 0]),
            rate=lambda n: F(1, n + 1),
            measure=mu,
        ),
    ]
