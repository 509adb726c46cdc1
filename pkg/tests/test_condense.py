import json

import pytest
from hypothesis import given, settings, strategies as st

from reflord import root_system
from reflord.affine import AffineRoot as R
from reflord.affine import HatSetDescriptor, b_zero, hat
from reflord.biclosed import AdmissibleChain, psi_sub
from reflord.condense import (condensation, initial_roots, order_type_of,
                              segment_type, signature_of_order)
from reflord.dyck import enumerate_words, insertable_indices
from reflord.ordertype import FIN
from reflord.rootsys import PositiveSystem
from reflord.synth import (ASCENDING, DESCENDING, LinePiece, StructuredOrder,
                           build_order, truncate, verify_reflection_order)

A, B, C = (1, 0, 0), (0, 1, 0), (0, 0, 1)
AB, BC, ABC = (1, 1, 0), (0, 1, 1), (1, 1, 1)


@pytest.fixture(scope="module")
def worked(a3):
    return build_order(a3, "001011", {3: 2, 5: 1})


def psi(rs, pi1, pi2):
    return psi_sub(rs, rs.standard_positive_system, pi1, pi2).roots


def test_initial_roots_worked(a3, worked):
    assert initial_roots(worked).roots == a3.positive_set


def test_condensation_worked(a3, worked):
    data = condensation(worked)
    j = {k: data.find(*k).descriptor for k in
         [("J", C), ("J", BC), ("J", ABC), ("J", B), ("J", AB), ("J", A),
          ("J'", C), ("J'", BC), ("J'", A)]}
    assert j["J", C] == j["J", BC] == j["J", ABC] == hat(a3, psi(a3, {A, B}, ()))
    assert j["J", B] == j["J", AB] == hat(a3, psi(a3, {A}, ()))
    minus = frozenset({R((0, 0, -1), 1)})
    assert j["J", A] == HatSetDescriptor(psi(a3, (), {C}), removed=minus)
    assert j["J'", C] == HatSetDescriptor(psi(a3, {A}, {C}) - {A},
                                          frozenset({R(A, 0), R(A, 1)}), minus)
    assert b_zero(j["J'", C]) == psi(a3, {A}, {C}) - {A}
    assert j["J'", BC] == hat(a3, psi(a3, (), {B, C}))
    assert j["J'", A] == hat(a3, a3.roots)
    assert data.class_of(A) == {A, AB, ABC}
    assert data.class_of(B) == {B, BC}
    assert data.n_map == {C: 1, B: 0, A: 0, BC: 0, AB: 0, ABC: 0}
    assert signature_of_order(worked) == "001011"


def test_worked_finite_parts(a3, worked):
    # J(<)_0 restricted to finite parts: the A3 chain for 001011
    sets = condensation(worked).chain_sets
    assert sets[3] == psi(a3, {A}, {C}) - {A} and len(sets) == 7


def test_a1_condensation():
    rs = root_system("A", 1)
    order = build_order(rs, "01")
    data = condensation(order)
    assert [j.descriptor for j in data.j_sets] == [hat(rs, {(1,)}), hat(rs, rs.roots)]
    assert signature_of_order(order) == "01"
    assert initial_roots(order).roots == {(1,)}


def test_a1_mirrored_order_has_negative_initial_root():
    rs = root_system("A", 1)
    base = PositiveSystem(frozenset({(-1,)}), frozenset({(-1,)}))
    d = base.simples
    chain = AdmissibleChain(rs, base, [(d, ()), ((), ()), ((), d)])
    pieces = (LinePiece(rs, ASCENDING, 0, frozenset({(-1,)}), (-1,), d),
              LinePiece(rs, DESCENDING, 1, frozenset({(1,)}), (1,), d))
    order = StructuredOrder(rs, chain, "01", pieces)
    assert truncate(order, 2) == [R((-1,), 1), R((-1,), 2), R((1,), 2), R((1,), 1), R((1,), 0)]
    assert verify_reflection_order(order, 6).ok
    assert initial_roots(order).roots == {(-1,)}
    assert signature_of_order(order) == "01"


@pytest.mark.parametrize("w,rendered", [("000111", "w+w+w+w*+w*+w*"), ("01", "w+w*")])
def test_order_type_examples(a3, w, rendered):
    assert order_type_of(build_order(a3, w)).render() == rendered


@pytest.mark.parametrize("w", enumerate_words(3, "trimmed"))
def test_a3_signature_round_trip(a3, w):
    assert signature_of_order(build_order(a3, w)) == w


def test_corner_words_admit_no_block(a3):
    for w in ["0111", "00111", "000111", "011", "0011", "00011", "01", "001", "0001"]:
        assert insertable_indices(w) == []
        assert not any(isinstance(t, FIN) for t in order_type_of(build_order(a3, w)).terms)


SEGMENT_TYPES = [("A", 3), ("B", 3), ("G", 2), ("C", 2)]


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(SEGMENT_TYPES), st.data())
def test_condensation_structure(t, data):
    rs = root_system(*t)
    w = data.draw(st.sampled_from(enumerate_words(rs.rank, "trimmed")))
    blocks = data.draw(st.fixed_dictionaries({i: st.integers(0, 3) for i in insertable_indices(w)}))
    order = build_order(rs, w, blocks)
    cd = condensation(order)
    assert cd.j_sets[0].tags[0][0] == "J"
    assert any(k == "J'" for k, _ in cd.j_sets[-1].tags)
    cuts = [(-1, float("inf"))] + [j.cut for j in cd.j_sets]
    for letter, lo, hi, j in zip(w, cuts, cuts[1:], cd.j_sets):
        ty = segment_type(order, lo, hi).render()
        if letter == "0":
            assert ty == "w"
        else:
            assert ty == "w*" or (ty.startswith("[") and ty.endswith("]+w*") and ty.count("+") == 1)
    prev = set()
    for j in cd.j_sets:
        cur = j.descriptor.members(4)
        diff = cur - prev
        gammas = {x.gamma for x in diff}
        assert not any(tuple(-c for c in g) in gammas for g in gammas)
        prev = cur


def test_condensation_json_is_deterministic(a3, worked):
    first = condensation(worked).dumps()
    assert first == condensation(build_order(a3, "001011", {3: 2, 5: 1})).dumps()
    assert json.loads(first)["classes"]
