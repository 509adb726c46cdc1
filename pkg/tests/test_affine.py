from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from reflord import ReflordError, root_system
from reflord.affine import (AffineRoot, HatSetDescriptor, affine_combos,
                            affine_reflect, b_zero, hat, is_biclosed_affine,
                            is_positive_affine, theta_generators, zero)
from reflord.rootsys import neg

R = AffineRoot


def brute_combos(rs, x, y, max_level):
    ks = {Fraction(p, q) for p in range(1, 9) for q in range(1, 7)}
    out = set()
    for k1 in ks:
        for k2 in ks:
            g = tuple(k1 * a + k2 * b for a, b in zip(x.gamma, y.gamma))
            lev = k1 * x.level + k2 * y.level
            if all(c.denominator == 1 for c in g) and lev.denominator == 1:
                z = R(tuple(int(c) for c in g), int(lev))
                if z.gamma in rs.root_set and is_positive_affine(z) and z.level <= max_level:
                    out.add(z)
    return out


def test_hat_level_rule(a2):
    d = hat(a2, {(-1, 0)})
    assert R((-1, 0), 0) not in d and R((-1, 0), 1) in d
    assert zero((1, 1)) == R((1, 1), 0) and zero((-1, -1)) == R((-1, -1), 1)
    assert len(hat(a2, ()).members(5)) == 0


def test_hat_of_everything_counts(a3):
    d = hat(a3, a3.roots)
    for level in range(4):
        assert len(d.members(level)) == 12 * (level + 1) - 6


def test_reflection_examples(a2):
    t = R((-1, -1), 1)
    assert affine_reflect(a2, t, t) == (-1, t)
    assert affine_reflect(a2, R((1, 0), 0), R((0, 1), 0)) == (1, R((1, 1), 0))
    assert affine_reflect(a2, t, R((1, 0), 0)) == (1, R((0, -1), 1))


@given(st.sampled_from([("A", 2), ("B", 2), ("G", 2)]), st.data())
def test_reflection_is_an_involution(t, data):
    rs = root_system(*t)
    pick = st.builds(R, st.sampled_from(rs.roots), st.integers(1, 3))
    a, x = data.draw(pick), data.draw(pick)
    sign, y = affine_reflect(rs, a, x)
    sign2, back = affine_reflect(rs, a, y)
    assert back == x and sign == sign2


@given(st.sampled_from([("A", 2), ("B", 2), ("G", 2)]), st.data())
def test_combos_match_brute_force(t, data):
    rs = root_system(*t)
    x = data.draw(st.sampled_from(rs.roots).map(zero).flatmap(
        lambda z: st.integers(0, 2).map(lambda k: R(z.gamma, z.level + k))))
    y = data.draw(st.sampled_from(rs.roots).map(zero).flatmap(
        lambda z: st.integers(0, 2).map(lambda k: R(z.gamma, z.level + k))))
    assume(x != y)
    assert set(affine_combos(rs, x, y, 4)) == brute_combos(rs, x, y, 4)


def test_biclosed_examples(a2, a3):
    assert is_biclosed_affine(a3, hat(a3, a3.positives), 6).ok
    bad = HatSetDescriptor(frozenset({(1, 0)}), frozenset({R((1, 1), 0)}))
    audit = is_biclosed_affine(a2, bad, 6)
    assert not audit.ok and audit.witness is not None
    # hat of (Phi+)_{0,{a3}} without -a3+delta
    core = a3.positive_set | {(0, 0, -1)}
    j = HatSetDescriptor(frozenset(core), removed=frozenset({R((0, 0, -1), 1)}))
    assert is_biclosed_affine(a3, j, 6).ok


def test_level_floor_enforced(a2):
    d = HatSetDescriptor(frozenset({(1, 0)}), removed=frozenset({R((1, 0), 3)}))
    with pytest.raises(ReflordError):
        is_biclosed_affine(a2, d, 6)


def test_descriptor_validation_and_json(a3):
    with pytest.raises(ReflordError):
        HatSetDescriptor(frozenset({(1, 0, 0)}), frozenset({R((1, 0, 0), 3)}))
    with pytest.raises(ReflordError):
        HatSetDescriptor(frozenset(), removed=frozenset({R((1, 0, 0), 3)}))
    with pytest.raises(ReflordError):
        HatSetDescriptor(frozenset(), frozenset({R((-1, 0, 0), 0)}))
    core = a3.positive_set - {(1, 0, 0)} | {(0, 0, -1)}
    d = HatSetDescriptor(frozenset(core), frozenset({R((1, 0, 0), 0), R((1, 0, 0), 1)}),
                         frozenset({R((0, 0, -1), 1)}))
    assert HatSetDescriptor.from_json(d.to_json()) == d
    assert b_zero(d) == core
    assert R.parse(str(R((0, -1, 1), 7))) == R((0, -1, 1), 7)


def test_theta_generators(a3):
    a1, a2_, a3_ = a3.simples
    full = theta_generators(a3, a3.simples)
    assert set(full.finite_part) == {a1, a2_, a3_}
    assert full.affine_part == (R((-1, -1, -1), 1),)
    assert theta_generators(a3, {a1}).roots == (R(a1, 0), R(neg(a1), 1))
    two = theta_generators(a3, {a1, a3_})
    assert set(two.affine_part) == {R(neg(a1), 1), R(neg(a3_), 1)}
    assert theta_generators(a3, ()).roots == ()


def test_theta_generators_b2_long_short():
    rs = root_system("B", 2)
    # highest root of B2 in this numbering is a1 + 2 a2
    assert theta_generators(rs, rs.simples).affine_part == (R((-1, -2), 1),)
