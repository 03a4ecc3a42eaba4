import random
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from exactmeasure.errors import EmptyGenerators, PreconditionFailed
from exactmeasure.setsys import (
    FiniteUniverse,
    SubsetFamily,
    SystemKind,
    atoms,
    closure_worklist,
    disjointify,
    enumerate_pi_systems,
    enumerate_set_algebras,
    explicit_algebra,
    generate,
    is_system,
    product_sigma,
    rectangle,
    rectangles,
    trace_family,
    verify_dynkin,
    verify_monotone_class,
)

import oracles

KIND_NAMES = {
    SystemKind.PiSystem: "pi",
    SystemKind.SetAlgebra: "algebra",
    SystemKind.SigmaAlgebra: "sigma",
    SystemKind.LambdaSystem: "lambda",
    SystemKind.MonotoneClass: "monotone",
}


def as_frozensets(fam: SubsetFamily):
    return {oracles.mask_to_set(m) for m in fam}


def test_universe_bounds():
    with pytest.raises(ValueError):
        FiniteUniverse(0)
    with pytest.raises(ValueError):
        FiniteUniverse(25)
    u = FiniteUniverse(3, ("a", "b", "c"))
    assert u.mask(["a", "c"]) == 0b101
    assert u.label_list(0b110) == ["b", "c"]


def test_sigma_generated_by_one_point():
    u = FiniteUniverse(3)
    fam = generate(SystemKind.SigmaAlgebra, SubsetFamily.from_elements(u, [["e0"]]))
    assert fam.to_lists() == [[], ["e0"], ["e1", "e2"], ["e0", "e1", "e2"]]


def test_pi_needs_generators():
    with pytest.raises(EmptyGenerators):
        generate(SystemKind.PiSystem, SubsetFamily(3, []))


def test_empty_generators_for_sigma():
    assert generate(SystemKind.SigmaAlgebra, SubsetFamily(2, [])).members == (0, 3)


def test_axiom_witness():
    chk = is_system(SystemKind.SigmaAlgebra, SubsetFamily(2, [0, 1, 3]))
    assert not chk and chk.axiom


@pytest.mark.parametrize("size", [1, 2, 3])
@pytest.mark.parametrize("kind", list(SystemKind))
def test_generate_is_minimal_exhaustive(size, kind):
    """Compare with the intersection of all qualifying families, for every generator family."""
    x = frozenset(range(size))
    n_subsets = 1 << size
    qualifying = oracles.qualifying_families(KIND_NAMES[kind], x)
    for code in range(1 << n_subsets):
        gens = [m for m in range(n_subsets) if code >> m & 1]
        g = SubsetFamily(size, gens)
        if kind is SystemKind.PiSystem and not gens:
            continue
        got = generate(kind, g)
        want = oracles.smallest_from(qualifying, as_frozensets(g))
        assert as_frozensets(got) == want, (kind, gens)
        assert generate(kind, got) == got


@pytest.mark.parametrize("kind", list(SystemKind))
def test_worklist_agrees_with_generate(kind):
    rng = random.Random(7)
    for _ in range(30):
        gens = SubsetFamily(4, rng.sample(range(16), rng.randint(1, 4)))
        assert closure_worklist(kind, gens) == generate(kind, gens)


def test_atoms_partition():
    fam = generate(SystemKind.SigmaAlgebra, SubsetFamily(4, [0b0011, 0b0110]))
    ats = atoms(fam.members, 0b1111)
    assert sorted(ats) == [0b0001, 0b0010, 0b0100, 0b1000]


def test_disjointify():
    out = disjointify([0b011, 0b110, 0b111])
    assert out == [0b011, 0b100, 0]
    for a, b in combinations(out, 2):
        assert a & b == 0


def test_explicit_algebra_matches_generate():
    u = FiniteUniverse(4)
    semi = SubsetFamily(u, [0, 0b0001, 0b0010, 0b1100, 0b1111])
    assert explicit_algebra(semi) == generate(SystemKind.SetAlgebra, semi)


def test_explicit_algebra_precondition():
    with pytest.raises(PreconditionFailed):
        explicit_algebra(SubsetFamily(3, [0b001]))


def test_trace():
    fam = SubsetFamily.power_set(3)
    tr = trace_family(fam, 0b101)
    assert tr.universe.size == 2 and len(tr) == 4
    assert trace_family(fam, 0).members == (0,)
    sig = generate(SystemKind.SigmaAlgebra, SubsetFamily(3, [0b011]))
    assert is_system(SystemKind.SigmaAlgebra, trace_family(sig, 0b110))


def test_product_sigma_on_rectangles():
    s1 = SubsetFamily.power_set(2)
    s2 = SubsetFamily.power_set(2)
    rects = rectangles(s1, s2)
    algebra = generate(SystemKind.SetAlgebra, rects)
    assert len(algebra) == 16
    assert product_sigma(s1, s2) == algebra
    assert rectangle(0b01, 0b11, 2, 2) == 0b0011


def test_enumeration_counts():
    assert len(enumerate_set_algebras(3)) == 5
    assert len(enumerate_set_algebras(4)) == 15
    pis = enumerate_pi_systems(2)
    for members in pis:
        assert oracles.is_pi({oracles.mask_to_set(m) for m in members})


@pytest.mark.parametrize("size", [1, 2, 3])
def test_dynkin_and_monotone(size):
    assert verify_dynkin(size).ok
    assert verify_monotone_class(size).ok


@given(st.lists(st.integers(0, 31), min_size=1, max_size=5))
def test_sigma_closure_properties(gens):
    fam = generate(SystemKind.SigmaAlgebra, SubsetFamily(5, gens))
    assert is_system(SystemKind.SigmaAlgebra, fam)
    assert set(gens) <= set(fam.members)
    assert len(fam) == 2 ** len(atoms(fam.members, 31))
