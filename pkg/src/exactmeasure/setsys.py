"""Subset systems over a finite universe.

Subsets are bitmasks (bit ``i`` set when element ``i`` belongs to the set).
On a finite universe every countable union is a finite sub-union and every
monotone sequence stabilizes, so the countable axioms of sigma-algebras,
lambda-systems and monotone classes reduce to their binary versions.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import EmptyGenerators, PreconditionFailed
from .report import Report

MAX_UNIVERSE = 24
MAX_VERIFY_SIZE = 4


@dataclass(frozen=True)
class FiniteUniverse:
    size: int
    labels: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        if not 1 <= self.size <= MAX_UNIVERSE:
            raise ValueError(f"universe size must be in [1, {MAX_UNIVERSE}], got {self.size}")
        if self.labels is not None:
            labels = tuple(str(l) for l in self.labels)
            if len(labels) != self.size or len(set(labels)) != self.size:
                raise ValueError("labels must be distinct and one per element")
            object.__setattr__(self, "labels", labels)

    @property
    def full(self) -> int:
        return (1 << self.size) - 1

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else f"e{i}"

    def index(self, label) -> int:
        if isinstance(label, int) and not isinstance(label, bool):
            if not 0 <= label < self.size:
                raise ValueError(f"element {label} outside the universe")
            return label
        label = str(label)
        for i in range(self.size):
            if self.label(i) == label:
                return i
        raise ValueError(f"unknown element label {label!r}")

    def mask(self, elements: Iterable) -> int:
        m = 0
        for e in elements:
            m |= 1 << self.index(e)
        return m

    def elements(self, mask: int) -> List[int]:
        return [i for i in range(self.size) if mask >> i & 1]

    def label_list(self, mask: int) -> List[str]:
        return [self.label(i) for i in self.elements(mask)]

    def check_mask(self, mask: int) -> int:
        if mask < 0 or mask & ~self.full:
            raise ValueError(f"mask {mask:#x} does not fit a universe of size {self.size}")
        return mask


class SubsetFamily:
    """A deduplicated family of subsets, kept sorted by mask value."""

    __slots__ = ("universe", "members", "_set")

    def __init__(self, universe: FiniteUniverse, members: Iterable[int] = ()):
        if isinstance(universe, int):
            universe = FiniteUniverse(universe)
        self.universe = universe
        uniq = {universe.check_mask(int(m)) for m in members}
        self.members: Tuple[int, ...] = tuple(sorted(uniq))
        self._set = frozenset(uniq)

    @classmethod
    def from_elements(cls, universe, sets: Iterable[Iterable]) -> "SubsetFamily":
        if isinstance(universe, int):
            universe = FiniteUniverse(universe)
        return cls(universe, [universe.mask(s) for s in sets])

    @classmethod
    def power_set(cls, universe) -> "SubsetFamily":
        if isinstance(universe, int):
            universe = FiniteUniverse(universe)
        return cls(universe, range(1 << universe.size))

    def __contains__(self, mask) -> bool:
        return mask in self._set

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __eq__(self, other):
        if not isinstance(other, SubsetFamily):
            return NotImplemented
        return self.universe.size == other.universe.size and self._set == other._set

    def __hash__(self):
        return hash((self.universe.size, self._set))

    def __le__(self, other: "SubsetFamily") -> bool:
        return self._set <= other._set

    def as_set(self) -> frozenset:
        return self._set

    def to_lists(self) -> List[List[str]]:
        return [self.universe.label_list(m) for m in self.members]

    def __repr__(self):
        body = ", ".join("{" + ",".join(self.universe.label_list(m)) + "}" for m in self.members)
        return f"SubsetFamily(n={self.universe.size}, [{body}])"


class SystemKind(enum.Enum):
    PiSystem = "pi"
    SetAlgebra = "algebra"
    LambdaSystem = "lambda"
    MonotoneClass = "monotone"
    SigmaAlgebra = "sigma"


@dataclass
class SystemCheck:
    """Result of :func:`is_system`; truthy when every axiom holds."""

    kind: SystemKind
    ok: bool
    axiom: Optional[str] = None
    witnesses: Tuple[int, ...] = field(default_factory=tuple)

    def __bool__(self):
        return self.ok


def _check_members(kind: SystemKind, members: Sequence[int], full: int) -> SystemCheck:
    fam = set(members)
    if kind is SystemKind.PiSystem:
        if not fam:
            return SystemCheck(kind, False, "nonempty")
        for a, b in itertools.combinations(members, 2):
            if a & b not in fam:
                return SystemCheck(kind, False, "closed under intersection", (a, b))
        return SystemCheck(kind, True)
    if kind is SystemKind.MonotoneClass:
        for a, b in itertools.combinations(members, 2):
            if a & b == a or a & b == b:
                if a | b not in fam:
                    return SystemCheck(kind, False, "closed under monotone union", (a, b))
                if a & b not in fam:
                    return SystemCheck(kind, False, "closed under monotone intersection", (a, b))
        return SystemCheck(kind, True)
    if kind is SystemKind.LambdaSystem:
        if full not in fam:
            return SystemCheck(kind, False, "contains the full set")
    elif 0 not in fam:
        return SystemCheck(kind, False, "contains the empty set")
    for a in members:
        if full ^ a not in fam:
            return SystemCheck(kind, False, "closed under complement", (a,))
    for a, b in itertools.combinations(members, 2):
        if kind is SystemKind.LambdaSystem and a & b:
            continue
        if a | b not in fam:
            axiom = "closed under disjoint union" if kind is SystemKind.LambdaSystem else "closed under union"
            return SystemCheck(kind, False, axiom, (a, b))
    return SystemCheck(kind, True)


def is_system(kind: SystemKind, fam: SubsetFamily) -> SystemCheck:
    """Check the axioms of ``kind`` on ``fam``; the first violation is reported."""
    return _check_members(kind, fam.members, fam.universe.full)


def atoms(members: Iterable[int], full: int) -> List[int]:
    """The coarsest partition of the universe refining every member."""
    cells = [full] if full else []
    for a in members:
        nxt = []
        for c in cells:
            inside, outside = c & a, c & ~a
            if inside:
                nxt.append(inside)
            if outside:
                nxt.append(outside)
        cells = nxt
    return sorted(cells)


def _unions_of(parts: Sequence[int]) -> set:
    out = {0}
    for p in parts:
        out |= {u | p for u in out}
    return out


def _closure(kind: SystemKind, members: Iterable[int], full: int) -> set:
    fam = set(members)
    if kind is SystemKind.MonotoneClass:
        return fam
    if kind is SystemKind.LambdaSystem:
        fam.add(full)
    work = list(fam)
    while work:
        a = work.pop()
        new = []
        if kind is not SystemKind.PiSystem:
            new.append(full ^ a)
        for b in list(fam):
            if kind is SystemKind.PiSystem:
                new.append(a & b)
            elif kind is SystemKind.LambdaSystem:
                if not a & b:
                    new.append(a | b)
            else:
                new.append(a | b)
        for c in new:
            if c not in fam:
                fam.add(c)
                work.append(c)
    return fam


def _generate_members(kind: SystemKind, members: Sequence[int], full: int) -> set:
    if kind is SystemKind.PiSystem and not members:
        raise EmptyGenerators("a generated pi-system needs at least one generator")
    if kind in (SystemKind.SigmaAlgebra, SystemKind.SetAlgebra):
        # finite unions of atoms: the same fixpoint, reached without pairwise closure
        return _unions_of(atoms(members, full))
    return _closure(kind, members, full)


def generate(kind: SystemKind, generators: SubsetFamily) -> SubsetFamily:
    """Smallest family of the given kind containing ``generators``."""
    u = generators.universe
    return SubsetFamily(u, _generate_members(kind, generators.members, u.full))


def closure_worklist(kind: SystemKind, generators: SubsetFamily) -> SubsetFamily:
    """Generated family by the pairwise worklist fixpoint, for every kind."""
    u = generators.universe
    if kind is SystemKind.PiSystem and not generators.members:
        raise EmptyGenerators("a generated pi-system needs at least one generator")
    members = set(generators.members)
    if kind in (SystemKind.SigmaAlgebra, SystemKind.SetAlgebra):
        members.add(0)
    return SubsetFamily(u, _closure(kind, members, u.full))


def disjointify(sets: Sequence[int]) -> List[int]:
    """``B_0 = A_0`` and ``B_{n+1} = A_{n+1}`` minus everything seen so far."""
    out = []
    seen = 0
    for a in sets:
        out.append(a & ~seen)
        seen |= a
    return out


def explicit_algebra(generators: SubsetFamily) -> SubsetFamily:
    """Set algebra as the finite disjoint unions of the generators.

    Raises :class:`PreconditionFailed` unless the generators contain the full
    set, are closed under intersection and split every complement into two
    disjoint generators.
    """
    u = generators.universe
    g = generators.members
    gs = set(g)
    if u.full not in gs:
        raise PreconditionFailed("generators must contain the full set")
    for a, b in itertools.combinations(g, 2):
        if a & b not in gs:
            raise PreconditionFailed(f"generators not closed under intersection: {a:#x}, {b:#x}")
    for a in g:
        comp = u.full ^ a
        if not any(b1 & b2 == 0 and b1 | b2 == comp for b1 in g for b2 in g):
            raise PreconditionFailed(f"complement of {a:#x} is not a disjoint union of two generators")
    unions = set(gs)
    work = list(unions)
    while work:
        x = work.pop()
        for b in g:
            if x & b == 0 and x | b not in unions:
                unions.add(x | b)
                work.append(x | b)
    return SubsetFamily(u, unions)


def compress(mask: int, y: int) -> int:
    """Re-index the bits of ``mask & y`` onto ``0..popcount(y)-1``."""
    out, j, i = 0, 0, 0
    while y >> i:
        if y >> i & 1:
            if mask >> i & 1:
                out |= 1 << j
            j += 1
        i += 1
    return out


def expand(mask: int, y: int) -> int:
    """Inverse of :func:`compress`."""
    out, j, i = 0, 0, 0
    while y >> i:
        if y >> i & 1:
            if mask >> j & 1:
                out |= 1 << i
            j += 1
        i += 1
    return out


def sub_universe(u: FiniteUniverse, y: int) -> FiniteUniverse:
    elems = u.elements(y)
    return FiniteUniverse(len(elems), tuple(u.label(i) for i in elems))


def trace_family(fam: SubsetFamily, y: int) -> SubsetFamily:
    """``{A & Y : A in fam}`` over the universe ``Y`` (labels are kept).

    The empty trace lives on no universe at all; it is returned as the
    family ``{0}`` over a one-point placeholder universe labelled ``"_"``.
    """
    u = fam.universe
    u.check_mask(y)
    if y == 0:
        return SubsetFamily(FiniteUniverse(1, ("_",)), [0])
    return SubsetFamily(sub_universe(u, y), {compress(a, y) for a in fam.members})


def product_universe(u1: FiniteUniverse, u2: FiniteUniverse) -> FiniteUniverse:
    """Element ``(i, j)`` gets index ``i * |X2| + j``."""
    n = u1.size * u2.size
    if n > MAX_UNIVERSE:
        raise ValueError(f"product universe of size {n} exceeds {MAX_UNIVERSE}")
    labels = tuple(f"({u1.label(i)},{u2.label(j)})" for i in range(u1.size) for j in range(u2.size))
    return FiniteUniverse(n, labels)


def rectangle(a1: int, a2: int, n1: int, n2: int) -> int:
    m = 0
    for i in range(n1):
        if a1 >> i & 1:
            m |= a2 << (i * n2)
    return m


def rectangles(s1: SubsetFamily, s2: SubsetFamily) -> SubsetFamily:
    n1, n2 = s1.universe.size, s2.universe.size
    u = product_universe(s1.universe, s2.universe)
    return SubsetFamily(u, {rectangle(a, b, n1, n2) for a in s1 for b in s2})


def product_sigma(s1: SubsetFamily, s2: SubsetFamily) -> SubsetFamily:
    """Sigma-algebra on the product generated by measurable rectangles."""
    for name, s in (("first", s1), ("second", s2)):
        chk = is_system(SystemKind.SigmaAlgebra, s)
        if not chk:
            raise PreconditionFailed(f"{name} factor is not a sigma-algebra ({chk.axiom})")
    return generate(SystemKind.SigmaAlgebra, rectangles(s1, s2))


# Exhaustive verifiers.  A family over n points is encoded as an int whose
# bit s is set when subset s belongs to the family.


def _family_members(code: int) -> List[int]:
    out = []
    s = 0
    while code:
        if code & 1:
            out.append(s)
        code >>= 1
        s += 1
    return out


def _is_pi_code(code: int, members: Sequence[int]) -> bool:
    for i, a in enumerate(members):
        for b in members[i + 1:]:
            if not code >> (a & b) & 1:
                return False
    return True


def _is_algebra_code(code: int, members: Sequence[int], full: int) -> bool:
    if not code & 1:
        return False
    for i, a in enumerate(members):
        if not code >> (full ^ a) & 1:
            return False
        for b in members[i + 1:]:
            if not code >> (a | b) & 1:
                return False
    return True


def _check_size(size: int) -> int:
    if not 1 <= size <= MAX_VERIFY_SIZE:
        raise ValueError(f"exhaustive verification needs 1 <= size <= {MAX_VERIFY_SIZE}")
    return size


def enumerate_pi_systems(size: int) -> List[Tuple[int, ...]]:
    """Every pi-system over ``size`` points, as sorted member tuples."""
    _check_size(size)
    out = []
    for code in range(1, 1 << (1 << size)):
        members = _family_members(code)
        if _is_pi_code(code, members):
            out.append(tuple(members))
    return out


def enumerate_set_algebras(size: int) -> List[Tuple[int, ...]]:
    """Every set algebra over ``size`` points, by brute force over all families."""
    _check_size(size)
    full = (1 << size) - 1
    out = []
    for code in range(1, 1 << (1 << size), 2):  # odd codes contain the empty set
        members = _family_members(code)
        if _is_algebra_code(code, members, full):
            out.append(tuple(members))
    return out


def verify_dynkin(universe_size: int) -> Report:
    """Lambda-closure equals sigma-closure for every pi-system on the universe."""
    _check_size(universe_size)
    full = (1 << universe_size) - 1
    report = Report(f"dynkin(size={universe_size})")
    for members in enumerate_pi_systems(universe_size):
        lam = _closure(SystemKind.LambdaSystem, members, full)
        sig = _unions_of(atoms(members, full))
        witness = None if lam == sig else sorted(lam ^ sig)
        report.add(repr(list(members)), lam == sig, witness)
    return report


def verify_monotone_class(universe_size: int) -> Report:
    """Monotone-class closure equals sigma-closure for every set algebra."""
    _check_size(universe_size)
    full = (1 << universe_size) - 1
    report = Report(f"monotone-class(size={universe_size})")
    for members in enumerate_set_algebras(universe_size):
        fam = set(members)
        mono = _closure(SystemKind.MonotoneClass, members, full)
        sig = _unions_of(atoms(members, full))
        is_sigma = bool(_check_members(SystemKind.SigmaAlgebra, members, full))
        ok = mono == sig == fam and is_sigma
        report.add(repr(list(members)), ok, None if ok else sorted(sig ^ mono))
    return report
