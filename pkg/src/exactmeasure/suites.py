"""Named verification suites run by ``exactmeasure verify``.

Every suite returns a :class:`Report`.  Random inputs come from a seeded
generator, so reports are reproducible byte for byte.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from .batteries import beppo_levi_battery, dominated_battery, extended_dominated_battery, fatou_battery, ind
from .boxes import BoxSet
from .functions import FiniteMap, PiecewiseLinear, Step
from .intervals import Interval, IntervalSet
from .lebint import chebyshev, verify_convergence
from .measures import Counting, Dirac, FiniteTable, LebesgueR, Lebesgue2, Measure, Tensor, verify_measure_axioms
from .product import StepFn2D, tensor_step, tonelli
from .report import Report
from .setsys import SubsetFamily, SystemKind, generate, verify_dynkin, verify_monotone_class
from .simplefn import SimpleFn
from .spaces import FiniteProductSpace, FiniteSpace, RealLine
from .xreal import xr

SEED = 20240917
F = Fraction


def _rng(salt: int = 0) -> random.Random:
    return random.Random(SEED + salt)


def rand_fraction(rng: random.Random, lo: int = -4, hi: int = 4, den: int = 4) -> Fraction:
    return F(rng.randint(lo * den, hi * den), rng.randint(1, den))


def rand_interval_set(rng: random.Random, k: int = 3) -> IntervalSet:
    ivs = []
    for _ in range(rng.randint(0, k)):
        a, b = sorted((rand_fraction(rng), rand_fraction(rng)))
        ivs.append(Interval.make(a, b, rng.random() < 0.5, rng.random() < 0.5))
    return IntervalSet(ivs)


def rand_step(rng: random.Random, signed: bool = True, k: int = 3) -> Step:
    terms = []
    for _ in range(rng.randint(1, k)):
        c = rand_fraction(rng, -3 if signed else 0, 3)
        terms.append((c, rand_interval_set(rng, 2)))
    return Step(SimpleFn(RealLine(), terms))


def rand_pwl(rng: random.Random, k: int = 3) -> PiecewiseLinear:
    pts = sorted({rand_fraction(rng) for _ in range(k + 1)})
    pieces = []
    for a, b in zip(pts, pts[1:]):
        pieces.append((Interval.make(a, b, True, False), rand_fraction(rng, -2, 2), rand_fraction(rng, -2, 2)))
    return PiecewiseLinear(pieces)


def rand_finite_map(rng: random.Random, space: FiniteSpace, nonneg: bool = False) -> FiniteMap:
    vals = {}
    for atom in space.atoms():
        v = rand_fraction(rng, 0 if nonneg else -3, 3)
        for i in space.universe.elements(atom):
            vals[i] = v
    return FiniteMap(space, [vals[i] for i in range(space.size)])


def suite_dynkin(size: int = 3) -> Report:
    return verify_dynkin(size)


def suite_monotone_class(size: int = 3) -> Report:
    return verify_monotone_class(size)


def suite_measure_axioms(size: int = 3) -> Report:
    rep = Report("measure-axioms")
    rng = _rng(1)
    sp = FiniteSpace(size)
    coarse = FiniteSpace(size, generate(SystemKind.SigmaAlgebra, SubsetFamily(sp.universe, [1])))
    measures: Dict[str, Measure] = {
        "table": FiniteTable(sp, [rng.randint(0, 5) for _ in range(size)]),
        "table-with-inf": FiniteTable(sp, ["inf"] + [1] * (size - 1)),
        "counting": Counting(sp, sp.full()),
        "dirac": Dirac(sp, 0),
        "coarse-table": FiniteTable(coarse, [1] + [F(1, 2)] * (size - 1)),
    }
    for name, mu in measures.items():
        rep.extend(verify_measure_axioms(mu, list(mu.space.sigma)), prefix=name)
    tensor = Tensor(FiniteTable(FiniteSpace(2), [1, 2]), Counting(FiniteSpace(2), 0b11))
    rep.extend(verify_measure_axioms(tensor, list(tensor.space.sigma)), prefix="tensor")
    line_sets = [rand_interval_set(rng) for _ in range(8)] + [IntervalSet.of("[0,inf)")]
    rep.extend(verify_measure_axioms(LebesgueR(), line_sets), prefix="lebesgue")
    rep.extend(verify_measure_axioms(Counting(RealLine(), [0, 1, F(5, 2)]), line_sets), prefix="counting-line")
    boxes = [BoxSet.box("[0,1]", "[0,2]"), BoxSet.box("(1/2,3)", "[1,4]"), BoxSet.box("[0,0]", "[0,inf)")]
    rep.extend(verify_measure_axioms(Lebesgue2(), boxes), prefix="lebesgue2")
    return rep


def suite_convergence(n_max: Optional[int] = None, tol=None) -> Report:
    rep = Report("convergence")
    lam = LebesgueR()
    rep.extend(verify_convergence("BeppoLevi", beppo_levi_battery(), lam, n_max or 8, tol or F(1, 2)), prefix="beppo-levi")
    rep.extend(verify_convergence("Fatou", fatou_battery(), lam, n_max or 12), prefix="fatou")
    dom = dominated_battery()
    rep.extend(verify_convergence("Dominated", dom[:1], lam, 1024, F(1, 1024)), prefix="dominated")
    rep.extend(verify_convergence("Dominated", dom[1:], lam, n_max or 128, tol or F(1, 64)), prefix="dominated")
    ext = extended_dominated_battery()
    rep.extend(verify_convergence("ExtendedDominated", ext, None, n_max or 256, tol or F(1, 64)), prefix="extended-dominated")
    return rep


def suite_chebyshev(count: int = 200) -> Report:
    rep = Report("chebyshev")
    rng = _rng(2)
    lam = LebesgueR()
    sp = FiniteSpace(4)
    for k in range(count):
        kind = k % 3
        a = xr(F(rng.randint(1, 12), rng.randint(1, 4)))
        if kind == 0:
            f, mu, label = rand_step(rng), lam, "step"
        elif kind == 1:
            f, mu, label = rand_pwl(rng), lam, "pwl"
        else:
            f, mu, label = rand_finite_map(rng, sp), FiniteTable(sp, [rng.randint(0, 4) for _ in range(4)]), "map"
        lhs, rhs = chebyshev(f, mu, a)
        margin = None if rhs.is_inf() else rhs - lhs
        rep.add(f"{label}-{k:03d}", lhs <= rhs, None if lhs <= rhs else {"lhs": lhs, "rhs": rhs, "a": a}, margin)
    return rep


def suite_tonelli(count: int = 100) -> Report:
    rep = Report("tonelli")
    rng = _rng(3)
    s1, s2 = FiniteSpace(3), FiniteSpace(3)
    prod = FiniteProductSpace(s1, s2)
    m1 = FiniteTable(s1, [1, F(1, 2), 0])
    m2 = FiniteTable(s2, [2, "inf", 3])
    for a1 in range(8):
        for a2 in range(8):
            rect = prod.rectangle(a1, a2)
            f = FiniteMap(prod, [1 if rect >> k & 1 else 0 for k in range(9)])
            _check_tonelli(rep, f"rectangle-{a1}-{a2}", f, m1, m2)
    for k in range(count):
        w1 = FiniteTable(s1, [rng.randint(0, 3) for _ in range(3)])
        w2 = FiniteTable(s2, [rng.randint(0, 3) for _ in range(3)])
        _check_tonelli(rep, f"map-{k:03d}", rand_finite_map(rng, prod, nonneg=True), w1, w2)
    lam = LebesgueR()
    from .lebint import integral_value

    for k in range(count):
        f1, f2 = rand_step(rng, signed=False), rand_step(rng, signed=False)
        g = tensor_step(f1, f2)
        d, i1 = tonelli(g, lam, lam, 1)
        _, i2 = tonelli(g, lam, lam, 2)
        prod_int = integral_value(f1, lam) * integral_value(f2, lam)
        ok = d == i1 == i2 == prod_int
        rep.add(f"tensor-step-{k:03d}", ok, None if ok else {"direct": d, "iterated": [i1, i2], "product": prod_int})
    g = StepFn2D([0, 1, 3], [0, F(1, 2), 2], [[1, 2], [0, F(1, 3)]])
    d, i1 = tonelli(g, lam, lam, 1)
    _, i2 = tonelli(g, lam, lam, 2)
    rep.add("grid-step", d == i1 == i2, None if d == i1 == i2 else {"direct": d, "iterated": [i1, i2]})
    return rep


def _check_tonelli(rep: Report, name: str, f, m1, m2) -> None:
    d, i1 = tonelli(f, m1, m2, 1)
    _, i2 = tonelli(f, m1, m2, 2)
    ok = d == i1 == i2
    rep.add(name, ok, None if ok else {"direct": d, "iterated": [i1, i2]})


SUITES: Dict[str, Callable[..., Report]] = {
    "dynkin": suite_dynkin,
    "monotone-class": suite_monotone_class,
    "measure-axioms": suite_measure_axioms,
    "convergence": suite_convergence,
    "chebyshev": suite_chebyshev,
    "tonelli": suite_tonelli,
}


def run_suite(name: str, size: Optional[int] = None, n_max: Optional[int] = None, tol=None) -> Report:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if name in ("dynkin", "monotone-class", "measure-axioms"):
        return SUITES[name](size or 3)
    if name == "convergence":
        return suite_convergence(n_max, tol)
    return SUITES[name]()
