import itertools

import pytest
from hypothesis import given, settings, strategies as st

from boolgap.core import Relation, Template, relation_of_pp
from boolgap.galois import (AND, C0, C1, MAJ, MIN, NOT, OR, ArityTooLarge, PartialOperation, TotalOperation,
                            c_closure, canonical_definition, clone_closure, coclone_member, coclone_membership,
                            polymorphisms, preserves, preserves_partial, weak_coclone_member)
from boolgap.post import cols3

ONE_IN_THREE = Relation.from_strings(["100", "010", "001"])
NAE3 = Relation(t for t in itertools.product((0, 1), repeat=3) if len(set(t)) == 2)


def test_operation_tables():
    assert AND.to_string() == "0001"
    assert OR.to_string() == "0111"
    assert MAJ.to_string() == "00010111"
    assert MIN.to_string() == "01101001"
    assert NOT(0) == 1 and C0(1) == 0 and C1(0) == 1
    assert TotalOperation.projection(1, 2).to_string() == "0101"  # second argument
    with pytest.raises(ValueError):
        TotalOperation(2, (0, 1, 1))


def test_apply_rows_is_columnwise():
    assert AND.apply_rows([(1, 1, 0), (1, 0, 0)]) == (1, 0, 0)


def test_preservation():
    assert preserves(NOT, NAE3) and not preserves(NOT, ONE_IN_THREE)
    assert not preserves(MAJ, ONE_IN_THREE)
    assert preserves(MIN, Relation.from_strings(["100", "010", "001", "111"]))


def test_partial_preservation():
    # a partial operation defined only on (0,0) and (1,1) preserves every relation
    f = PartialOperation.restrict(AND, [(0, 0), (1, 1)])
    assert not f.is_total and f.dom == {(0, 0), (1, 1)}
    assert preserves_partial(f, ONE_IN_THREE)
    assert not preserves_partial(PartialOperation.from_total(AND), Relation.from_strings(["01", "10"]))


# frozen from a brute force over all 2^(2^n) tables
POLY_COUNTS = {
    ("1in3", 1): 1, ("1in3", 2): 2, ("1in3", 3): 3,
    ("nae3", 1): 2, ("nae3", 2): 4,
    ("eq", 1): 4, ("eq", 2): 16,
}


@pytest.mark.parametrize("key", sorted(POLY_COUNTS))
def test_polymorphism_counts(key):
    rel = {"1in3": ONE_IN_THREE, "nae3": NAE3, "eq": Relation.equality(2)}[key[0]]
    assert len(polymorphisms([rel], key[1])) == POLY_COUNTS[key]


def test_polymorphisms_match_brute_force():
    r = Relation.from_strings(["00", "01", "11"])
    want = []
    for table in itertools.product((0, 1), repeat=4):
        f = TotalOperation(2, table)
        if preserves(f, r):
            want.append(table)
    assert [f.table for f in polymorphisms([r], 2)] == want


def test_polymorphism_cap():
    with pytest.raises(ArityTooLarge):
        polymorphisms([ONE_IN_THREE], 5)


def test_clone_closure():
    assert len(clone_closure([], 2)) == 3  # the three projections of arity <= 2
    binary = {f.to_string() for f in clone_closure([AND], 2) if f.arity == 2}
    assert binary == {"0011", "0101", "0001"}
    # negation generates both unary maps that are not constant
    assert {f.to_string() for f in clone_closure([NOT], 1)} == {"01", "10"}


def test_c_closure_n2_of_cols3():
    got = c_closure(cols3(), [NOT]).to_strings()
    assert sorted(got) == sorted(["10001101", "01010101", "00111001", "01110010", "10101010", "11000110"])
    assert c_closure(cols3(), []) == cols3()


def test_coclone_membership_modes():
    # the first three columns of Cols3 form 1-in-3
    assert coclone_member(ONE_IN_THREE, [cols3()])
    assert coclone_membership(ONE_IN_THREE, [ONE_IN_THREE]).mode == "trivial"
    assert coclone_membership(Relation.from_strings(["01", "10"]), [ONE_IN_THREE]).mode == "enumeration"
    m = coclone_membership(NAE3, [ONE_IN_THREE])
    assert m.member and m.mode == "search"
    assert not coclone_member(ONE_IN_THREE, [Relation.from_strings(["00", "01", "11"])])


def test_weak_coclone_membership():
    n2 = c_closure(cols3(), [NOT])
    assert not weak_coclone_member(cols3(), [n2], with_equality=False)
    assert weak_coclone_member(ONE_IN_THREE, {"r": ONE_IN_THREE})
    # two 1-in-3 atoms force x1 = x2 without an equality atom
    r4 = Relation((a, a, b, c) for a, b, c in ONE_IN_THREE.rows)
    assert weak_coclone_member(r4, [ONE_IN_THREE], with_equality=False)
    # but binary equality itself has no equality-free definition
    eq = Relation.equality(2)
    assert weak_coclone_member(eq, [ONE_IN_THREE], with_equality=True)
    assert not weak_coclone_member(eq, [ONE_IN_THREE], with_equality=False)


def test_canonical_definition_defines_a_superset():
    t = Template.of(s=ONE_IN_THREE)
    r = Relation.from_strings(["100", "010"])
    phi = canonical_definition(r, t)
    assert phi.is_conjunct_atomic
    assert set(r.rows) <= set(relation_of_pp(phi, t).rows)


relations = st.builds(
    lambda arity, bits: Relation([t for t, b in zip(itertools.product((0, 1), repeat=arity), bits) if b]
                                 or [(0,) * arity]),
    st.integers(1, 3), st.lists(st.booleans(), min_size=8, max_size=8))


@settings(max_examples=60, deadline=None)
@given(relations, st.sampled_from([NOT, C0, C1, AND, OR, MAJ, MIN]))
def test_c_closure_is_least_closed_superset(r, op):
    closed = c_closure(r, [op])
    assert set(r.rows) <= set(closed.rows)
    assert preserves(op, closed)
    # least: every row is generated by op from the rows of r
    reach = set(r.rows)
    while True:
        new = {op.apply_rows(c) for c in itertools.product(sorted(reach), repeat=op.arity)} - reach
        if not new:
            break
        reach |= new
    assert reach == set(closed.rows)
