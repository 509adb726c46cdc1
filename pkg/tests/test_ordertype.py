import random

import pytest
from hypothesis import given, strategies as st

from reflord import ReflordError
from reflord.ordertype import (FIN, OMEGA, OMEGA_STAR, OrderType, redexes,
                               rewrite, types_equal)

terms = st.lists(st.one_of(st.just(OMEGA), st.just(OMEGA_STAR),
                           st.integers(1, 4).map(FIN)), max_size=12)


def P(text):
    return OrderType.parse(text)


@pytest.mark.parametrize("p", range(1, 6))
def test_finite_between_duals_vanishes(p):
    assert types_equal(P(f"w*+[{p}]+w*"), P("w*+w*"))


def test_basic_identities():
    assert P("[2]+w").normalize() == P("w")
    assert not types_equal(P("[1]+w*"), P("w*"))
    assert P("[2]+[3]").normalize() == P("[5]")
    assert P("w+[1]").is_normal()


def test_fin_zero_rejected():
    with pytest.raises(ReflordError):
        FIN(0)


def test_parse_render_round_trip():
    for text in ["w+w+[2]+w*+w+[1]+w*+w*", "w*", "[3]", "0"]:
        assert P(text).render() == text
    assert P("ω+[0]+ω*").render() == "w+w*"


def random_normal_form(ts, rng):
    ts = tuple(ts)
    while True:
        found = redexes(ts)
        if not found:
            return ts
        ts = rewrite(ts, *rng.choice(found))


def test_confluence_smoke():
    rng = random.Random(20261015)
    for _ in range(1000):
        ts = [rng.choice([OMEGA, OMEGA_STAR, FIN(rng.randint(1, 5))]) for _ in range(rng.randint(0, 10))]
        forms = {random_normal_form(ts, rng) for _ in range(4)}
        assert forms == {OrderType(tuple(ts)).normalize().terms}


@given(terms)
def test_normalize_is_idempotent_and_normal(ts):
    n = OrderType(tuple(ts)).normalize()
    assert n.is_normal() and n.normalize() == n
    assert OrderType.parse(n.render()) == n


@given(terms, terms)
def test_normalization_is_compatible_with_sums(a, b):
    # normal forms of parts determine the normal form of the sum
    na, nb = OrderType(tuple(a)).normalize(), OrderType(tuple(b)).normalize()
    whole = OrderType(tuple(a) + tuple(b)).normalize()
    assert OrderType(na.terms + nb.terms).normalize() == whole


def test_rewrite_rejects_inapplicable_rule():
    with pytest.raises(ReflordError):
        rewrite((OMEGA, FIN(1)), 0, "R1")
