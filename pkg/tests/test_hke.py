import pytest
from hypothesis import given, settings, strategies as st

from conftest import TRIANGLE, TRIPLE, families
from hketools import (
    SetSystem,
    atom_profile,
    duality_equality,
    equivalence_audit,
    exercise_identities,
    generate_hke,
    hke_bruteforce,
    hke_pairs,
    hke_partition,
    uniform_alpha,
)
from hketools.errors import CapExceededError, EmptyFamilyError
from hketools.hke import (
    NONPOSITIVE_ALPHA,
    NONUNIFORM,
    PAIR,
    PARITY,
    SUBSET,
    PreconditionError,
    disjoint_pairs,
    elimination_terms,
    hke_from_cell_sizes,
)
from hketools.sets import subfamilies_by_size
from oracles import equality_one_everywhere, inter, is_hke_by_definition, nonempty_subfamilies, union

ORACLES = [hke_bruteforce, hke_pairs, hke_partition]


def idx(F, *sets):
    members = F.as_sets()
    return tuple(sorted(members.index(frozenset(map(str, s))) for s in sets))


@pytest.mark.parametrize("oracle", ORACLES)
def test_two_member_family_holds(oracle):
    v = oracle(SetSystem.from_sets([{1, 2}, {2, 3}]))
    assert v.holds and v.alpha == 2


@pytest.mark.parametrize("oracle", ORACLES)
def test_triple_holds_with_alpha_4(oracle, triple):
    v = oracle(triple)
    assert v.holds and v.alpha == 4


def test_triple_every_subfamily_sums_to_8(triple):
    sets = triple.as_sets()
    assert {len(union(g)) + len(inter(g)) for g in nonempty_subfamilies(sets)} == {8}


def test_bruteforce_triangle_witness_is_whole_family(triangle):
    v = hke_bruteforce(triangle)
    assert not v.holds
    assert v.witness.kind == SUBSET
    assert v.witness.subfamilies == ((0, 1, 2),)
    assert v.witness.values == (3, 4)
    # all proper subfamilies pass
    for sub in subfamilies_by_size(2):
        assert hke_bruteforce(triangle.restrict(sub)).holds


def test_pairs_triangle_witness(triangle):
    v = hke_pairs(triangle)
    assert not v.holds and v.witness.kind == PAIR
    g1, g2 = v.witness.subfamilies
    assert g1 == idx(triangle, {1, 2})
    assert g2 == idx(triangle, {2, 3}, {3, 1})
    assert v.witness.values == (0, 1)


def test_partition_triangle(triangle):
    v = hke_partition(triangle)
    assert not v.holds
    # |union| + |meet| = 3 is odd, which is caught before the cell scan
    assert v.witness.kind == PARITY
    prof = atom_profile(triangle)
    ab = idx(triangle, {1, 2}, {2, 3})
    c = idx(triangle, {3, 1})
    assert prof.cell(ab).as_set() == {"2"}
    assert prof.cell(c).as_set() == frozenset()


def test_partition_reports_cell_violation_when_parity_is_even():
    F = SetSystem.from_sets([{1, 2, 3}, {3}])
    v = hke_partition(F)  # 3 + 1 is even; member {3} comes first, its cell is empty
    assert v.witness.kind == PAIR and v.witness.values == (0, 2)
    assert v.witness.is_valid(F)


def test_single_member_holds_vacuously():
    F = SetSystem.from_sets([{1, 2}])
    for oracle in ORACLES:
        v = oracle(F)
        assert v.holds and v.alpha == 2
    assert list(disjoint_pairs(1)) == []


def test_partition_symmetric_pair():
    F = SetSystem.from_sets([{1}, {2}], ground=[1, 2])
    v = hke_partition(F)
    assert v.holds and v.alpha == 1 and v.member_sizes == (1, 1)


@pytest.mark.parametrize("oracle", ORACLES)
def test_empty_member_fails_alpha_positivity(oracle):
    v = oracle(SetSystem.from_sets([[]], ground=[1]))
    assert not v.holds and v.witness.kind == NONPOSITIVE_ALPHA


def test_nonuniform_reported_first():
    F = SetSystem.from_sets([{1, 2}, {3}])
    v = hke_bruteforce(F)
    assert v.witness.kind == NONUNIFORM and sorted(v.witness.values) == [1, 2]
    rep = equivalence_audit(F)
    assert not rep.holds
    assert all(not x.holds for x in rep.verdicts.values())


@pytest.mark.parametrize("oracle", ORACLES)
def test_empty_family_rejected(oracle):
    with pytest.raises(EmptyFamilyError):
        oracle(SetSystem.from_sets([]))


def test_caps():
    F = generate_hke(5, 1, 0)
    with pytest.raises(CapExceededError):
        hke_bruteforce(F, cap=4)
    with pytest.raises(CapExceededError):
        hke_pairs(F, cap=4)
    assert hke_partition(F).holds


def test_disjoint_pairs_enumerate_each_unordered_pair_once():
    for m in range(1, 7):
        got = list(disjoint_pairs(m))
        assert len(got) == (3**m - 2 ** (m + 1) + 1) // 2
        keys = {frozenset((a, b)) for a, b in got}
        assert len(keys) == len(got)
        assert all(a and b and not a & b for a, b in got)


def test_audit_examples(triangle):
    rep = equivalence_audit(triangle)
    assert not rep.holds
    assert {k: v.witness.kind for k, v in rep.verdicts.items()} == {
        "brute": SUBSET, "pairs": PAIR, "partition": PARITY,
    }
    assert set(rep.timings) == {"brute", "pairs", "partition"}


@settings(max_examples=300)
@given(families(max_members=6, max_ground=7))
def test_oracles_agree_with_definition(F):
    expected = is_hke_by_definition(F.as_sets())
    assert equality_one_everywhere(F.as_sets()) == (expected or F.as_sets() == [frozenset()])
    rep = equivalence_audit(F)
    assert rep.holds == expected
    for v in rep.verdicts.values():
        if v.witness:
            assert v.witness.is_valid(F)
        else:
            assert all(len(s) == v.alpha for s in F.as_sets())


@settings(max_examples=100)
@given(families(max_members=5))
def test_heredity(F):
    v = hke_bruteforce(F)
    if not v.holds:
        return
    for sub in subfamilies_by_size(F.m):
        w = hke_bruteforce(F.restrict(sub))
        assert w.holds and w.alpha == v.alpha


@given(families(max_members=2))
def test_at_most_two_uniform_members(F):
    if uniform_alpha(F) is None:
        return
    for oracle in ORACLES:
        assert oracle(F).holds


@settings(max_examples=200)
@given(families(max_members=6, max_ground=8))
def test_elimination_terms(F):
    terms = elimination_terms(F)
    for t in terms:
        assert t.union_size == t.x + t.y + t.core_size
        assert t.member_size == t.x + t.core_size
    if hke_partition(F).holds:
        alpha = (terms[0].union_size + terms[0].core_size) // 2
        for t in terms:
            assert t.x == t.y
            assert t.member_size == alpha


@given(st.integers(1, 6), st.integers(1, 3), st.integers(0, 10**6))
def test_generator_sound(m, bound, seed):
    F = generate_hke(m, bound, seed)
    assert F.m == m
    rep = equivalence_audit(F)
    assert rep.holds
    assert generate_hke(m, bound, seed) == F


def test_generator_reproduces_triple_shape(triple):
    F = hke_from_cell_sizes(3, [1, 1, 1], 1)
    assert F.m == 3 and len(F.ground) == 7
    # every one of the 7 non-empty signatures holds exactly one element
    assert sorted(c.bit_count() for s, c in atom_profile(F).cells.items() if s) == [1] * 7
    assert sorted(c.bit_count() for s, c in atom_profile(triple).cells.items() if s) == [1] * 7
    assert hke_bruteforce(F).alpha == 4


def test_generator_edge_cases():
    F = generate_hke(1, 2, 5)
    assert F.m == 1 and len(F.member(0)) >= 1
    F = generate_hke(2, 3, 1)
    assert F.m == 2 and uniform_alpha(F) is not None
    with pytest.raises(ValueError):
        generate_hke(0, 1, 0)
    with pytest.raises(ValueError):
        generate_hke(2, 0, 0)


def test_exercise_identities():
    for seed in range(20):
        F = generate_hke(4, 2, seed)
        rep = exercise_identities(F)
        assert rep.holds
        assert rep.clause1 == duality_equality(F, [0], [1, 2])[:2]
        assert rep.clause2 == duality_equality(F, [0, 1], [2, 3])[:2]


def test_exercise_identities_preconditions(triple):
    with pytest.raises(PreconditionError):
        exercise_identities(triple)
    bad = SetSystem.from_sets([{1, 2}, {2, 3}, {3, 1}, {1, 4}])
    with pytest.raises(PreconditionError):
        exercise_identities(bad)


def test_witnesses_replay_to_same_values(triangle):
    for oracle in ORACLES:
        w = oracle(triangle).witness
        assert w.replay(triangle) == w.values and w.is_valid(triangle)
