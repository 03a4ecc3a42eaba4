"""Brute-force reference implementations used by the tests.

These deliberately avoid the package's own algorithms: set systems are
checked on Python frozensets, closures are found by intersecting every
qualifying family, interval sets are compared through point membership, and
integrals come from antiderivatives and direct sums.
"""

from fractions import Fraction
from itertools import chain, combinations, product
from typing import Callable, Dict, FrozenSet, Iterable, List, Sequence, Set

F = Fraction


def powerset(xs: Sequence) -> List[FrozenSet]:
    xs = list(xs)
    return [frozenset(c) for c in chain.from_iterable(combinations(xs, r) for r in range(len(xs) + 1))]


def is_pi(fam: Set[FrozenSet]) -> bool:
    return bool(fam) and all(a & b in fam for a in fam for b in fam)


def is_algebra(fam: Set[FrozenSet], x: FrozenSet) -> bool:
    return frozenset() in fam and all(x - a in fam for a in fam) and all(a | b in fam for a in fam for b in fam)


def is_lambda(fam: Set[FrozenSet], x: FrozenSet) -> bool:
    return x in fam and all(x - a in fam for a in fam) and all(a | b in fam for a in fam for b in fam if not a & b)


def is_monotone(fam: Set[FrozenSet], x: FrozenSet) -> bool:
    # on a finite universe every monotone sequence is eventually constant
    return True


CHECKS: Dict[str, Callable] = {
    "pi": lambda fam, x: is_pi(fam),
    "algebra": is_algebra,
    "sigma": is_algebra,
    "lambda": is_lambda,
    "monotone": is_monotone,
}


def all_families(x: FrozenSet) -> Iterable[Set[FrozenSet]]:
    subsets = powerset(sorted(x))
    for code in range(1 << len(subsets)):
        yield {s for i, s in enumerate(subsets) if code >> i & 1}


def smallest_family(kind: str, gens: Set[FrozenSet], x: FrozenSet) -> Set[FrozenSet]:
    """Intersection of every family of the given kind containing ``gens``."""
    check = CHECKS[kind]
    best = None
    for fam in all_families(x):
        if gens <= fam and check(fam, x):
            best = set(fam) if best is None else best & fam
    return best


def mask_to_set(mask: int) -> FrozenSet[int]:
    return frozenset(i for i in range(mask.bit_length()) if mask >> i & 1)


def set_to_mask(s: Iterable[int]) -> int:
    return sum(1 << i for i in s)


def probe_points(endpoints: Iterable[Fraction]) -> List[Fraction]:
    """Every endpoint, a midpoint of each gap and a point beyond each end."""
    pts = sorted(set(endpoints))
    if not pts:
        return [F(0)]
    out = set(pts)
    out.update((a + b) / 2 for a, b in zip(pts, pts[1:]))
    out.update({pts[0] - 1, pts[-1] + 1})
    return sorted(out)


def interval_member(lo, hi, lo_closed, hi_closed, x) -> bool:
    """Membership in an interval given by raw ends (``None`` for infinite)."""
    if lo is not None and (x < lo or (x == lo and not lo_closed)):
        return False
    if hi is not None and (x > hi or (x == hi and not hi_closed)):
        return False
    return True


def pwl_integral(pieces) -> Fraction:
    """``int (a x + b) dx`` per piece via the antiderivative ``a x^2 / 2 + b x``."""
    total = F(0)
    for lo, hi, a, b in pieces:
        total += (F(a) / 2 * hi * hi + b * hi) - (F(a) / 2 * lo * lo + b * lo)
    return total


def identity_stage_integral(n: int) -> Fraction:
    """``sum_{i < 2^n} (i / 2^n) (1 / 2^n)``, the stage-``n`` integral of x on [0,1]."""
    h = F(1, 2**n)
    return sum((i * h * h for i in range(2**n)), F(0))


def finite_double_sum(f: Callable[[int, int], object], w1: Sequence, w2: Sequence):
    """``sum_{i,j} f(i,j) w1[i] w2[j]`` with ``0 * inf = 0``, on power-set factors."""
    from exactmeasure.xreal import mul_mt, sum_nonneg

    return sum_nonneg(mul_mt(mul_mt(f(i, j), w1[i]), w2[j]) for i, j in product(range(len(w1)), range(len(w2))))


def qualifying_families(kind: str, x: FrozenSet) -> List[Set[FrozenSet]]:
    """Every family on ``x`` satisfying the axioms of ``kind`` (feasible for |x| <= 3)."""
    check = CHECKS[kind]
    return [fam for fam in all_families(x) if check(fam, x)]


def smallest_from(qualifying: List[Set[FrozenSet]], gens: Set[FrozenSet]) -> Set[FrozenSet]:
    best = None
    for fam in qualifying:
        if gens <= fam:
            best = set(fam) if best is None else best & fam
    return best


def naive_closure(kind: str, gens: Iterable[FrozenSet], x: FrozenSet) -> Set[FrozenSet]:
    """Apply the closure operations of ``kind`` until nothing new appears."""
    fam = set(gens)
    if kind in ("algebra", "sigma"):
        fam.add(frozenset())
    if kind == "lambda":
        fam.add(x)
    if kind == "monotone":
        return fam
    while True:
        new = set()
        for a in fam:
            if kind != "pi":
                new.add(x - a)
            for b in fam:
                if kind == "pi":
                    new.add(a & b)
                elif kind == "lambda":
                    if not a & b:
                        new.add(a | b)
                else:
                    new.add(a | b)
        if new <= fam:
            return fam
        fam |= new


def sweep_length(s, points: Iterable[Fraction]) -> Fraction:
    """Length of a bounded interval set from membership at midpoints between sorted points."""
    pts = sorted(set(points))
    return sum(((q - p) for p, q in zip(pts, pts[1:]) if s.contains((p + q) / 2)), F(0))


def random_cover(rng, a: Fraction, b: Fraction):
    """A shuffled family of open intervals covering ``[a, b]``, with some distractors."""
    from exactmeasure.intervals import Interval

    cover = []
    x = a - F(rng.randint(1, 4), 8)
    while x <= b:
        step = F(rng.randint(1, 8), 4)
        lo = x - F(rng.randint(1, 4), 16)
        cover.append(Interval.open(lo, x + step))
        x = x + step
    for _ in range(rng.randint(0, 4)):
        lo = a + F(rng.randint(-8, 8), 4)
        cover.append(Interval.open(lo, lo + F(rng.randint(1, 8), 4)))
    rng.shuffle(cover)
    return cover


def chain_problems(a, b, cover, chain) -> List[str]:
    """Violated properties of a subcover chain, checked on raw endpoints."""
    ivs = [cover[i] for i in chain]
    lo = [iv.lo.value.value for iv in ivs]
    hi = [iv.hi.value.value for iv in ivs]
    out = []
    if not lo[0] < a:
        out.append("first interval does not start before a")
    if not b < hi[-1]:
        out.append("last interval does not end after b")
    if any(not lo[p + 1] < hi[p] for p in range(len(ivs) - 1)):
        out.append("consecutive intervals do not overlap")
    probe = probe_points([a, b] + lo + hi)
    for t in probe:
        if a <= t <= b and not any(l < t < h for l, h in zip(lo, hi)):
            out.append(f"point {t} of [a,b] is not covered")
            break
    if sum((h - l for l, h in zip(lo, hi)), F(0)) < b - a:
        out.append("total length below b - a")
    return out
