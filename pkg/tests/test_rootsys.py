import pytest
from hypothesis import given, strategies as st

from reflord import CoxeterType, ReflordError, root_system
from reflord.rootsys import (neg, positive_systems, root_subsystem,
                             simple_system, validate_positive_system)

COUNTS = {("A", 1): 1, ("A", 3): 6, ("A", 5): 15, ("B", 2): 4, ("B", 4): 16,
          ("C", 3): 9, ("D", 4): 12, ("D", 5): 20, ("E", 6): 36, ("E", 7): 63,
          ("E", 8): 120, ("F", 4): 24, ("G", 2): 6}
TYPES = sorted(COUNTS)


def classical_a(n):
    """e_i - e_j, i < j, written in the simple basis e_k - e_{k+1}."""
    return {tuple(int(i <= k < j) for k in range(n)) for i in range(n) for j in range(i + 1, n + 1)}


def classical_b(n):
    """Simples e_k - e_{k+1} (k < n) and e_n; positives e_i - e_j, e_i, e_i + e_j."""
    out = set()
    for i in range(n):
        out.add(tuple(int(i <= k) for k in range(n)))  # e_i
        for j in range(i + 1, n):
            out.add(tuple(int(i <= k < j) for k in range(n)))
            out.add(tuple(int(i <= k < j) + 2 * int(k >= j) for k in range(n)))
    return out


@pytest.mark.parametrize("family,rank", TYPES)
def test_positive_counts(family, rank):
    assert len(root_system(family, rank).positives) == COUNTS[family, rank]


@pytest.mark.parametrize("n", [1, 2, 3, 4, 6])
def test_type_a_matches_classical_model(n):
    assert root_system("A", n).positive_set == classical_a(n)


@pytest.mark.parametrize("n", [2, 3, 5])
def test_type_b_matches_classical_model(n):
    assert root_system("B", n).positive_set == classical_b(n)


@pytest.mark.parametrize("family,rank", TYPES)
def test_closed_under_negation_and_simple_reflections(family, rank):
    rs = root_system(family, rank)
    roots = rs.root_set
    assert {neg(r) for r in roots} == roots
    for a in rs.simples:
        assert {rs.reflect(a, r) for r in roots} == roots


@pytest.mark.parametrize("family,rank", TYPES)
def test_highest_root_is_unique_maximal(family, rank):
    rs = root_system(family, rank)
    tops = [r for r in rs.positives
            if all(tuple(x + y for x, y in zip(r, a)) not in rs.root_set for a in rs.simples)]
    assert tops == [rs.highest_root]


def test_a3_highest_root():
    assert root_system("A", 3).highest_root == (1, 1, 1)


@pytest.mark.parametrize("family,rank", [("D", 3), ("B", 1), ("E", 5), ("F", 3), ("G", 3), ("H", 3), ("A", 0)])
def test_invalid_types_rejected(family, rank):
    with pytest.raises(ReflordError):
        CoxeterType(family, rank)


def test_parse_type():
    assert CoxeterType.parse("E7") == CoxeterType("E", 7)


@pytest.mark.parametrize("family,rank", [("B", 3), ("C", 3), ("G", 2), ("F", 4)])
def test_bilinear_form_is_symmetric_and_cartan_integral(family, rank):
    rs = root_system(family, rank)
    for x in rs.roots:
        for y in rs.roots:
            assert rs.pair(x, y) == rs.pair(y, x)
            assert (2 * rs.pair(x, y) / rs.pair(y, y)).denominator == 1


def test_subsystems(a3):
    a1, a2_, a3_ = a3.simples
    assert root_subsystem(a3, {a1}).roots == {a1, neg(a1)}
    two = root_subsystem(a3, {a1, a3_})
    assert len(two.roots) == 4 and len(two.components) == 2
    assert root_subsystem(a3, {a1, a2_}).roots == {a1, a2_, (1, 1, 0), neg(a1), neg(a2_), (-1, -1, 0)}


@pytest.mark.parametrize("family,rank,count", [("A", 1, 2), ("A", 2, 6), ("B", 2, 8), ("G", 2, 12), ("A", 3, 24)])
def test_positive_systems_count_weyl_order(family, rank, count):
    rs = root_system(family, rank)
    systems = positive_systems(rs)
    assert len(systems) == count
    for p in systems:
        assert validate_positive_system(rs, p.roots) == p
        assert len(p.simples) == rank


def test_validate_rejects_non_positive_system(a2):
    with pytest.raises(ReflordError):
        validate_positive_system(a2, {(1, 0), (0, 1), (-1, -1)})


@given(st.sampled_from(TYPES[:10]), st.data())
def test_combos_are_positive_combinations(t, data):
    rs = root_system(*t)
    x = data.draw(st.sampled_from(rs.roots))
    y = data.draw(st.sampled_from(rs.roots))
    for z, k1, k2 in rs.combos(x, y):
        assert k1 > 0 and k2 > 0
        assert z in rs.root_set
        assert all(k1 * a + k2 * b == c for a, b, c in zip(x, y, z))


def test_simple_system_of_standard_positives(a3):
    assert simple_system(a3, a3.positives) == frozenset(a3.simples)
