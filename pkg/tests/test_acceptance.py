"""Acceptance criteria, one test per criterion.

Each test prints a single ``criterion N: PASS`` or ``criterion N: FAIL``
line (visible without ``-s``).  The module also runs standalone:

    python tests/test_acceptance.py
"""

import random
import subprocess
import sys
import time
from fractions import Fraction
from itertools import product
from math import floor
from pathlib import Path

import pytest

HERE = Path(__file__).resolve().parent
if str(HERE) not in sys.path:
    sys.path.insert(0, str(HERE))

import oracles  # noqa: E402
from exactmeasure import cli  # noqa: E402
from exactmeasure.batteries import IDENTITY_01, dominated_battery, fatou_battery  # noqa: E402
from exactmeasure.boxes import BoxSet  # noqa: E402
from exactmeasure.errors import HypothesisFailed, UndefinedSum  # noqa: E402
from exactmeasure.functions import FiniteMap, Step, pointwise  # noqa: E402
from exactmeasure.intervals import Interval, IntervalSet, extract_finite_subcover, lebesgue  # noqa: E402
from exactmeasure.lebint import (  # noqa: E402
    ae_equal,
    integral_value,
    seminorm_n1,
    stage_integral,
    verify_convergence,
)
from exactmeasure.measures import FiniteTable, Lebesgue2, LebesgueR, verify_uniqueness_pi_system  # noqa: E402
from exactmeasure.product import StepFn2D, tensor_step, tonelli  # noqa: E402
from exactmeasure.setsys import (  # noqa: E402
    SubsetFamily,
    SystemKind,
    enumerate_pi_systems,
    enumerate_set_algebras,
    generate,
    is_system,
    verify_dynkin,
    verify_monotone_class,
)
from exactmeasure.simplefn import (  # noqa: E402
    SimpleFn,
    canonicalize,
    combine,
    integral_by_terms,
    integral_sf_plus,
    le,
    to_disjoint,
)
from exactmeasure.spaces import FiniteProductSpace, FiniteSpace, RealLine  # noqa: E402
from exactmeasure.suites import suite_chebyshev  # noqa: E402
from exactmeasure.xreal import INF, NEG_INF, ZERO, add_checked, mul_mt, pow_mt, sum_nonneg, xabs, xr  # noqa: E402

F = Fraction
LAM = LebesgueR()
KIND_NAMES = {
    SystemKind.PiSystem: "pi",
    SystemKind.SetAlgebra: "algebra",
    SystemKind.LambdaSystem: "lambda",
    SystemKind.MonotoneClass: "monotone",
    SystemKind.SigmaAlgebra: "sigma",
}


def rand_q(rng, lo=-6, hi=6, den=6) -> Fraction:
    return F(rng.randint(lo * den, hi * den), rng.randint(1, den))


def fs(mask: int) -> frozenset:
    return oracles.mask_to_set(mask)


class Failed(AssertionError):
    pass


def expect(cond, what):
    if not cond:
        raise Failed(what)


# 1. extended-real laws


def _laws(a, b, c, failures):
    nonneg = all(v >= ZERO for v in (a, b, c))
    if nonneg:
        if add_checked(add_checked(a, b), c) != add_checked(a, add_checked(b, c)):
            failures.append(("add-assoc", a, b, c))
        if add_checked(a, b) != add_checked(b, a):
            failures.append(("add-comm", a, b))
        if mul_mt(mul_mt(a, b), c) != mul_mt(a, mul_mt(b, c)):
            failures.append(("mul-assoc", a, b, c))
        if mul_mt(a, b) != mul_mt(b, a):
            failures.append(("mul-comm", a, b))
        if mul_mt(a, add_checked(b, c)) != add_checked(mul_mt(a, b), mul_mt(a, c)):
            failures.append(("distributive", a, b, c))
        if mul_mt(a, b).is_zero() != (a.is_zero() or b.is_zero()):
            failures.append(("zero-product", a, b))
        if mul_mt(a, b).is_inf() != ((a.is_inf() and not b.is_zero()) or (b.is_inf() and not a.is_zero())):
            failures.append(("inf-product", a, b))
        half = xr(F(1, 2))
        if not mul_mt(a, b) <= add_checked(mul_mt(half, pow_mt(a, xr(2))), mul_mt(half, pow_mt(b, xr(2)))):
            failures.append(("young", a, b))
    try:
        s = add_checked(a, b)
    except UndefinedSum:
        if not (a.is_inf() and b.is_inf() and a != b):
            failures.append(("spurious-undefined", a, b))
        return
    if not xabs(s) <= add_checked(xabs(a), xabs(b)):
        failures.append(("triangle", a, b))


def criterion_1():
    rng = random.Random(1)
    failures = []
    count = 0
    for shape in product(("-inf", "fin", "+inf"), repeat=3):
        for _ in range(20):
            vals = [NEG_INF if s == "-inf" else INF if s == "+inf" else xr(rand_q(rng)) for s in shape]
            absvals = [v if v.is_finite() and v >= ZERO else xabs(v) for v in vals]
            _laws(*vals, failures)
            _laws(*absvals, failures)
            count += 2
    for _ in range(500):
        vals = [xr(rand_q(rng)) for _ in range(3)]
        _laws(*vals, failures)
        _laws(*[xabs(v) for v in vals], failures)
        count += 2
    expect(not failures, f"law failures: {failures[:3]}")
    return f"{count} triples over 27 shapes and 500 random rationals, zero failures"


# 2. generated-system minimality and idempotence


def criterion_2():
    checked = 0
    for size in (1, 2, 3):
        x = frozenset(range(size))
        n_subsets = 1 << size
        for kind, name in KIND_NAMES.items():
            qualifying = oracles.qualifying_families(name, x)
            for code in range(1 << n_subsets):
                gens = [m for m in range(n_subsets) if code >> m & 1]
                if kind is SystemKind.PiSystem and not gens:
                    continue
                got = generate(kind, SubsetFamily(size, gens))
                want = oracles.smallest_from(qualifying, {fs(m) for m in gens})
                expect({fs(m) for m in got} == want, f"minimality {name} {gens}")
                expect(generate(kind, got) == got, f"fixpoint {name} {gens}")
                checked += 1
    rng = random.Random(2)
    x5 = frozenset(range(5))
    for k in range(200):
        gens = rng.sample(range(32), rng.randint(1, 5))
        for kind, name in KIND_NAMES.items():
            got = generate(kind, SubsetFamily(5, gens))
            expect(bool(is_system(kind, got)), f"not a {name} system: {gens}")
            expect(set(gens) <= set(got), f"generators missing {gens}")
            expect(generate(kind, got) == got, f"fixpoint {name} {gens}")
            if kind in (SystemKind.PiSystem, SystemKind.SigmaAlgebra, SystemKind.MonotoneClass) or k % 4 == 0:
                want = oracles.naive_closure(name, [fs(m) for m in gens], x5)
                expect({fs(m) for m in got} == want, f"naive closure {name} {gens}")
            checked += 1
    return f"{checked} generator families (exhaustive on |X| <= 3, 200 random on |X| = 5), zero failures"


# 3. Dynkin and monotone-class theorems


def criterion_3():
    start = time.perf_counter()
    lines = []
    for size in range(1, 5):
        d = verify_dynkin(size)
        m = verify_monotone_class(size)
        expect(d.ok, d.summary())
        expect(m.ok, m.summary())
        expect(len(d.cases) == len(enumerate_pi_systems(size)), "dynkin case count")
        expect(len(m.cases) == len(enumerate_set_algebras(size)), "monotone case count")
        lines.append(f"{len(d.cases)}/{len(m.cases)}")
    x4 = frozenset(range(4))
    for members in enumerate_pi_systems(4):
        gens = [fs(m) for m in members]
        lam = oracles.naive_closure("lambda", gens, x4)
        sig = oracles.naive_closure("sigma", gens, x4)
        expect(lam == sig, f"naive lambda closure differs from sigma for {members}")
    elapsed = time.perf_counter() - start
    expect(elapsed <= 60, f"took {elapsed:.1f}s")
    return f"pi-systems/algebras per size 1..4: {', '.join(lines)}; {elapsed:.1f}s"


# 4. Lebesgue measure on interval sets


def _rand_iset(rng):
    ivs = []
    for _ in range(rng.randint(0, 3)):
        a, b = sorted((rand_q(rng), rand_q(rng)))
        ivs.append(Interval.make(a, b, rng.random() < 0.5, rng.random() < 0.5))
    return IntervalSet(ivs)


def criterion_4():
    rng = random.Random(4)
    for _ in range(1000):
        a, b = sorted((rand_q(rng, -50, 50, 12), rand_q(rng, -50, 50, 12)))
        expect(lebesgue(IntervalSet([Interval.closed(a, b)])) == xr(b - a), f"length of [{a},{b}]")
    for _ in range(1000):
        a, e = _rand_iset(rng), _rand_iset(rng)
        pts = a.finite_endpoints() + e.finite_endpoints()
        la, le_ = lebesgue(a), lebesgue(e)
        expect(la == xr(oracles.sweep_length(a, pts)), f"sweep length of {a}")
        expect(lebesgue(a | e) == lebesgue(a) + lebesgue(e - a), "finite additivity")
        expect(lebesgue(a | e) <= la + le_, "subadditivity")
        if (a & e) == a:
            expect(la <= le_, "monotonicity")
        expect(lebesgue(a & e) <= la, "monotonicity on intersection")
        expect(la == lebesgue(a & e) + lebesgue(a - e), "Caratheodory split")
    return "1000 closed intervals and 1000 interval-set pairs, all identities exact"


# 5. finite-subcover extraction


def criterion_5():
    rng = random.Random(5)
    for _ in range(200):
        a = F(rng.randint(-20, 20), rng.randint(1, 4))
        b = a + F(rng.randint(0, 20), rng.randint(1, 4))
        cover = oracles.random_cover(rng, a, b)
        chain = extract_finite_subcover(a, b, cover)
        problems = oracles.chain_problems(a, b, cover, chain)
        expect(not problems, f"[{a},{b}]: {problems}")
        expect(len(set(chain)) == len(chain), "repeated index")
    return "200 random covers, every chain valid"


# 6. simple-function integral


def _finite_setup(rng):
    n = rng.randint(1, 4)
    gens = rng.sample(range(1 << n), rng.randint(0, min(3, 1 << n)))
    sp = FiniteSpace(n, generate(SystemKind.SigmaAlgebra, SubsetFamily(n, gens)))
    w = [0] * n
    for atom in sp.atoms():
        low = (atom & -atom).bit_length() - 1
        w[low] = rng.choice([0, F(1, 2), 1, 3, "inf", rand_q(rng, 0, 4)])
    return sp, FiniteTable(sp, w), list(sp.sigma)


def _rand_sf(rng, sp, members):
    return SimpleFn(sp, [(rand_q(rng, 0, 5, 4), rng.choice(members)) for _ in range(rng.randint(1, 4))])


def _check_sf(f, g, c, mu):
    i = integral_sf_plus(f, mu)
    expect(integral_by_terms(f, mu) == i, "representation: terms")
    expect(integral_by_terms(to_disjoint(f), mu) == i, "representation: disjoint")
    expect(integral_by_terms(canonicalize(f), mu) == i, "representation: canonical")
    expect(integral_sf_plus(f + g, mu) == i + integral_sf_plus(g, mu), "additivity")
    expect(integral_sf_plus(c * f, mu) == mul_mt(xr(c), i), "homogeneity")
    hi = combine("max", f, g)
    expect(le(f, hi) and le(g, hi), "max dominates")
    expect(i <= integral_sf_plus(hi, mu), "monotonicity")


def criterion_6():
    rng = random.Random(6)
    for _ in range(500):
        sp, mu, members = _finite_setup(rng)
        f, g = _rand_sf(rng, sp, members), _rand_sf(rng, sp, members)
        i = integral_sf_plus(f, mu)
        atoms = sp.atoms()
        oracle = sum_nonneg(mul_mt(xr(f((a & -a).bit_length() - 1)), mu.measure(a)) for a in atoms)
        expect(i == oracle, "atom-sum oracle")
        _check_sf(f, g, rand_q(rng, 0, 4), mu)
    line = RealLine()
    for _ in range(200):
        f = SimpleFn(line, [(rand_q(rng, 0, 4, 4), _rand_iset(rng)) for _ in range(rng.randint(1, 3))])
        g = SimpleFn(line, [(rand_q(rng, 0, 4, 4), _rand_iset(rng)) for _ in range(rng.randint(1, 3))])
        pts = sorted({p for _, s in f.terms for p in s.finite_endpoints()})
        oracle = sum(((q - p) * f((p + q) / 2) for p, q in zip(pts, pts[1:])), F(0))
        expect(integral_sf_plus(f, LAM) == xr(oracle), "step-function sweep oracle")
        _check_sf(f, g, rand_q(rng, 0, 4), LAM)
    return "500 finite-space and 200 step simple functions, all identities exact"


# 7. adapted-sequence convergence


def criterion_7():
    for n in range(1, 21):
        want = F(1, 2) - F(1, 2 ** (n + 1))
        expect(stage_integral(IDENTITY_01, LAM, n) == xr(want), f"stage {n}")
        if n <= 12:
            expect(oracles.identity_stage_integral(n) == want, f"oracle stage {n}")
    rng = random.Random(7)
    for _ in range(200):
        terms = []
        for _ in range(rng.randint(1, 3)):
            a, b = sorted((rand_q(rng), rand_q(rng)))
            # multiples of 1/4: phi_n is exact on them once n >= 2, which n > max f + 1 guarantees
            terms.append((F(rng.randint(0, 24), 2 ** rng.randint(0, 2)), IntervalSet([Interval.closed(a, b)])))
        f = Step(SimpleFn(RealLine(), terms))
        exact = integral_value(f, LAM)
        top = f.bounds()[1].value
        first = floor(top + 1) + 1
        for n in range(first, first + 3):
            expect(stage_integral(f, LAM, n) == exact, f"stage {n} of {f}")
    return "stages 1..20 of x on [0,1] exact; 200 quarter-integer step functions stabilize for n > max f + 1"


# 8. Fatou, Chebyshev and null integrals


def criterion_8():
    battery = fatou_battery()
    expect(len(battery) == 20, "battery size")
    fatou = verify_convergence("Fatou", battery, LAM, 12)
    expect(fatou.ok, fatou.summary())
    cheb = suite_chebyshev(200)
    expect(cheb.ok and len(cheb.cases) == 200, cheb.summary())
    rng = random.Random(8)
    cases = 0
    for size in range(1, 5):
        for members in enumerate_set_algebras(size):
            sp = FiniteSpace(size, SubsetFamily(size, members))
            atoms = sp.atoms()
            for zero_pattern in product((True, False), repeat=len(atoms)):
                w = [0] * size
                atom_w = []
                for atom, is_zero in zip(atoms, zero_pattern):
                    v = 0 if is_zero else rng.choice([rand_q(rng, 0, 4) or F(1), INF])
                    atom_w.append(xr(v))
                    w[(atom & -atom).bit_length() - 1] = v
                mu = FiniteTable(sp, w)
                for vals in product((0, 1, 2), repeat=len(atoms)):
                    choices = [ZERO, xr(rand_q(rng, 0, 3) or F(1, 3)), INF]
                    table = [ZERO] * size
                    atom_v = []
                    for atom, k in zip(atoms, vals):
                        atom_v.append(choices[k])
                        for p in sp.universe.elements(atom):
                            table[p] = choices[k]
                    f = FiniteMap(sp, table)
                    null_oracle = sum_nonneg(mul_mt(v, m) for v, m in zip(atom_v, atom_w)).is_zero()
                    ae_oracle = all(v.is_zero() or m.is_zero() for v, m in zip(atom_v, atom_w))
                    zero_int = integral_value(f, mu).is_zero()
                    ae_zero = ae_equal(f, FiniteMap(sp, [0] * size), mu)
                    expect(zero_int == null_oracle and ae_zero == ae_oracle, f"null integral on {members}")
                    expect(zero_int == ae_zero, f"integral zero iff a.e. zero fails on {members}")
                    cases += 1
    return f"Fatou 20/20, Chebyshev 200/200, {cases} null-integral cases on |X| <= 4"


# 9. dominated convergence


def criterion_9():
    case = dominated_battery()[0]
    n_max, tol = 1024, F(1, 2**10)
    for n in range(n_max + 1):
        fn = case.term(n)
        expect(integral_value(fn, LAM) == xr(F(1, 2) + F(1, n + 2)), f"stage integral at n={n}")
        if n % 64 == 0 or n == n_max:
            expect(seminorm_n1(pointwise("sub", fn, case.limit), LAM) == xr(F(1, n + 2)), f"N1 at n={n}")
    last = seminorm_n1(pointwise("sub", case.term(n_max), case.limit), LAM)
    expect(last <= xr(tol), f"N1 at n_max is {last}")
    gap = integral_value(case.term(n_max), LAM) - integral_value(case.limit, LAM)
    expect(gap <= xr(tol), "integral gap")
    rep = verify_convergence("Dominated", [case], LAM, n_max, tol)
    expect(rep.ok, rep.summary())
    return f"N1(f_1024 - f) = {last} <= 2^-10; integrals 1/2 + 1/(n+2) exact for n = 0..1024"


# 10. Tonelli


def criterion_10():
    s3 = FiniteSpace(3)
    prod = FiniteProductSpace(s3, s3)
    rng = random.Random(10)
    tables = [([1, F(1, 2), 0], [2, "inf", 3])] + [
        ([rng.choice([0, 1, 2, "inf"]) for _ in range(3)], [rng.choice([0, 1, 2, "inf"]) for _ in range(3)]) for _ in range(3)
    ]
    count = 0
    for w1, w2 in tables:
        m1, m2 = FiniteTable(s3, w1), FiniteTable(s3, w2)
        for a1, a2 in product(range(8), repeat=2):
            rect = prod.rectangle(a1, a2)
            f = FiniteMap(prod, [1 if rect >> k & 1 else 0 for k in range(9)])
            d, i1 = tonelli(f, m1, m2, 1)
            _, i2 = tonelli(f, m1, m2, 2)
            expect(d == i1 == i2 == mul_mt(m1.measure(a1), m2.measure(a2)), f"rectangle {a1},{a2}")
            count += 1
    for _ in range(100):
        vals = [rng.choice([0, 1, F(1, 3), 2, INF]) for _ in range(9)]
        w1 = [rng.choice([0, F(1, 2), 1, 3, "inf"]) for _ in range(3)]
        w2 = [rng.choice([0, F(1, 2), 1, 3, "inf"]) for _ in range(3)]
        m1, m2 = FiniteTable(s3, w1), FiniteTable(s3, w2)
        f = FiniteMap(prod, vals)
        oracle = oracles.finite_double_sum(lambda i, j: xr(vals[3 * i + j]), [xr(w) for w in w1], [xr(w) for w in w2])
        d, i1 = tonelli(f, m1, m2, 1)
        _, i2 = tonelli(f, m1, m2, 2)
        expect(d == i1 == i2 == oracle, f"finite map {vals}")
    for _ in range(100):
        f1, f2 = (Step(SimpleFn(RealLine(), [(rand_q(rng, 0, 3, 4), _rand_iset(rng)) for _ in range(rng.randint(1, 3))])) for _ in range(2))
        g = tensor_step(f1, f2)
        d, i1 = tonelli(g, LAM, LAM, 1)
        _, i2 = tonelli(g, LAM, LAM, 2)
        expect(d == i1 == i2 == integral_value(f1, LAM) * integral_value(f2, LAM), "tensor step product")
    lam2 = Lebesgue2()
    for _ in range(200):
        x, y = _rand_iset(rng), _rand_iset(rng)
        expect(lam2.measure(BoxSet([(x, y)])) == mul_mt(lebesgue(x), lebesgue(y)), "box area")
    expect(lam2.measure(BoxSet.box("[0,0]", "[0,inf)")) == ZERO, "degenerate unbounded box")
    grid = StepFn2D([0, 1, 3], [0, F(1, 2), 2], [[1, 2], [0, F(1, 3)]])
    expect(tonelli(grid, LAM, LAM, 1) == (xr(F(9, 2)), xr(F(9, 2))), "grid step function")
    return f"{count} rectangles, 100 finite maps, 100 tensor steps, 200 boxes; all exact"


# 11. uniqueness from a pi-system


def criterion_11():
    sp = FiniteSpace(3)
    g = SubsetFamily(3, [0, 0b001, 0b010, 0b100])
    values = [0, F(1, 2), 1, 3, "inf"]
    tables = [FiniteTable(sp, list(w)) for w in product(values, repeat=3)]
    by_signature = {}
    for t in tables:
        by_signature.setdefault(tuple(t.measure(m) for m in g), []).append(t)
    pairs = proved = 0
    for group in by_signature.values():
        for m1, m2 in product(group, repeat=2):
            pairs += 1
            try:
                expect(verify_uniqueness_pi_system(sp, g, m1, m2), "equal on G but not on sigma")
                proved += 1
            except HypothesisFailed as exc:
                expect(exc.hypothesis == "contains a pseudopartition with finite measure", str(exc))
            expect(all(m1.measure(a) == m2.measure(a) for a in sp.sigma), "direct comparison")
    return f"{pairs} agreeing pairs out of {len(tables) ** 2}; {proved} with sigma-finite hypotheses, all equal on sigma"


# 12. CLI golden files


def criterion_12():
    import contextlib
    import io

    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli.main(["verify"])
    expect(code == 0, f"verify exited {code}:\n{buf.getvalue()}")
    task = HERE.parent / "tasks" / "integrate_x.json"
    argv = [sys.executable, "-m", "exactmeasure", "integrate", "--input", str(task)]
    runs = [subprocess.run(argv, capture_output=True) for _ in range(2)]
    expect(all(r.returncode == 0 for r in runs), "integrate exit code")
    expect(runs[0].stdout == runs[1].stdout, "output differs across runs")
    expect(runs[0].stdout == (HERE / "golden" / "integrate_x.txt").read_bytes(), "golden mismatch")
    text = runs[0].stdout.decode()
    expect(text.startswith("value: 1/2\n") and "bound: 1/2048\n" in text, "value or bound line")
    return "verify exits 0; integrate prints 1/2 with bound 1/2048, byte-identical across runs"


CRITERIA = {
    1: ("extended-real laws", criterion_1),
    2: ("generated-system minimality", criterion_2),
    3: ("Dynkin and monotone-class theorems", criterion_3),
    4: ("Lebesgue measure on interval sets", criterion_4),
    5: ("finite-subcover extraction", criterion_5),
    6: ("simple-function integral", criterion_6),
    7: ("adapted-sequence convergence", criterion_7),
    8: ("Fatou, Chebyshev, null integrals", criterion_8),
    9: ("dominated convergence", criterion_9),
    10: ("Tonelli", criterion_10),
    11: ("uniqueness from a pi-system", criterion_11),
    12: ("CLI golden files", criterion_12),
}


def run_criterion(number: int):
    title, fn = CRITERIA[number]
    start = time.perf_counter()
    try:
        detail = fn()
    except Exception as exc:
        return False, f"criterion {number}: FAIL {title}: {type(exc).__name__}: {exc}"
    return True, f"criterion {number}: PASS {title}: {detail} [{time.perf_counter() - start:.1f}s]"


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    ok, line = run_criterion(number)
    with capsys.disabled():
        print(f"\n{line}")
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(n) for n in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
