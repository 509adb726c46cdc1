"""Biclosed sets of a finite root system, admissible pairs and chains."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, NamedTuple, Optional

from .errors import ReflordError
from .rootsys import (PositiveSystem, RootSystem, neg, positive_systems,
                      root_subsystem)

BRUTE_GUARD = 20


class Closure(NamedTuple):
    closed: bool
    co_closed: bool

    @property
    def biclosed(self) -> bool:
        return self.closed and self.co_closed


@dataclass(frozen=True)
class FiniteBiclosed:
    roots: frozenset
    # (psys, pi1, pi2) when built as psys_{pi1, pi2}
    canonical: Optional[tuple] = field(default=None, compare=False, hash=False)

    def __len__(self):
        return len(self.roots)

    def __contains__(self, r):
        return r in self.roots

    def __le__(self, other):
        return self.roots <= other.roots


def _is_closed(rs: RootSystem, s: frozenset, ambient: frozenset) -> bool:
    for x in s:
        for y in s:
            for z, _, _ in rs.combos(x, y):
                if z in ambient and z not in s:
                    return False
    return True


def is_biclosed(rs: RootSystem, s: Iterable, ambient: Iterable | None = None) -> Closure:
    """Closedness of ``s`` and of ``ambient \\ s`` inside ``ambient``
    (the whole root system by default)."""
    s = frozenset(s)
    ambient = rs.root_set if ambient is None else frozenset(ambient)
    if not s <= ambient:
        raise ReflordError(f"set not contained in ambient: {sorted(s - ambient)}")
    return Closure(_is_closed(rs, s, ambient), _is_closed(rs, ambient - s, ambient))


def _orthogonal(rs: RootSystem, a: Iterable, b: Iterable) -> bool:
    return all(rs.pair(x, y) == 0 for x in a for y in b)


def psi_sub(rs: RootSystem, psys: PositiveSystem, pi1: Iterable, pi2: Iterable) -> FiniteBiclosed:
    """``(psys \\ Phi_pi1) u Phi_pi2``."""
    pi1, pi2 = frozenset(pi1), frozenset(pi2)
    extra = (pi1 | pi2) - psys.simples
    if extra:
        raise ReflordError(f"not simple roots of the positive system: {sorted(extra)}")
    if not _orthogonal(rs, pi1, pi2):
        raise ReflordError("pi1 and pi2 are not orthogonal")
    roots = (psys.roots - _span(rs, pi1)) | _span(rs, pi2)
    return FiniteBiclosed(roots, (psys, pi1, pi2))


def _span(rs: RootSystem, gens: frozenset) -> frozenset:
    if not gens:
        return frozenset()
    return root_subsystem(rs, gens).roots


def _orthogonal_pairs(rs: RootSystem, simples: frozenset):
    simples = sorted(simples)
    for labels in itertools.product((0, 1, 2), repeat=len(simples)):
        pi1 = frozenset(a for a, t in zip(simples, labels) if t == 1)
        pi2 = frozenset(a for a, t in zip(simples, labels) if t == 2)
        if _orthogonal(rs, pi1, pi2):
            yield pi1, pi2


def enumerate_biclosed(rs: RootSystem, method: str = "formula", guard: int = BRUTE_GUARD) -> set:
    """All biclosed subsets of the root system, as a set of frozensets."""
    if method == "brute":
        n = len(rs.roots)
        if n > guard:
            raise ReflordError(f"brute enumeration refused: |Phi| = {n} > guard {guard} "
                               f"({2 ** n} subsets)")
        roots = rs.roots
        out = set()
        for mask in range(1 << n):
            s = frozenset(r for i, r in enumerate(roots) if mask >> i & 1)
            if is_biclosed(rs, s).biclosed:
                out.add(s)
        return out
    if method == "formula":
        return set(_formula_family(rs))
    raise ReflordError(f"unknown method {method!r}")


@lru_cache(maxsize=None)
def _formula_family(rs: RootSystem) -> frozenset:
    out = set()
    for psys in positive_systems(rs):
        for pi1, pi2 in _orthogonal_pairs(rs, psys.simples):
            out.add(psi_sub(rs, psys, pi1, pi2).roots)
    return frozenset(out)


class PairTag(NamedTuple):
    admissible: bool
    tag: Optional[int]


def admissible_tag(b1: frozenset, b2: frozenset) -> PairTag:
    if not b1 <= b2:
        raise ReflordError("pair is not nested")
    diff = b2 - b1
    neg_b1 = {neg(r) for r in b1}
    if diff.isdisjoint(neg_b1):
        return PairTag(True, 0)
    if diff <= neg_b1:
        return PairTag(True, 1)
    return PairTag(False, None)


def is_admissible_pair(rs: RootSystem, b1, b2) -> PairTag:
    """Tag 1 when ``b2\\b1`` lies in ``-b1``, tag 0 when it misses ``-b1``.
    An empty difference satisfies both and is reported as 0."""
    b1 = b1.roots if isinstance(b1, FiniteBiclosed) else frozenset(b1)
    b2 = b2.roots if isinstance(b2, FiniteBiclosed) else frozenset(b2)
    return admissible_tag(b1, b2)


@dataclass(frozen=True, eq=False)
class AdmissibleChain:
    rs: RootSystem
    base: PositiveSystem
    steps: tuple  # ((delta1, delta2), ...) for i = 0..k

    def __post_init__(self):
        steps = tuple((frozenset(a), frozenset(b)) for a, b in self.steps)
        object.__setattr__(self, "steps", steps)
        delta = self.base.simples
        if len(steps) < 2:
            raise ReflordError("a chain needs at least one step")
        if steps[0] != (delta, frozenset()) or steps[-1] != (frozenset(), delta):
            raise ReflordError("chain must run from (Delta, {}) to ({}, Delta)")
        for (p1, p2), (q1, q2) in zip(steps, steps[1:]):
            if not (q1 <= p1 and p2 <= q2):
                raise ReflordError("steps must shrink delta1 and grow delta2")
            if (p1 == q1) == (p2 == q2):
                raise ReflordError("each step must move exactly one side")

    def __eq__(self, other):
        return (isinstance(other, AdmissibleChain) and self.rs == other.rs
                and self.base == other.base and self.steps == other.steps)

    def __hash__(self):
        return hash((self.rs, self.base.roots, self.steps))

    @property
    def length(self) -> int:
        return len(self.steps) - 1

    @cached_property
    def sets(self) -> tuple:
        return tuple(psi_sub(self.rs, self.base, d1, d2) for d1, d2 in self.steps)


def signature_of_sets(rs: RootSystem, sets) -> str:
    bits = []
    for i, (b1, b2) in enumerate(zip(sets, sets[1:])):
        b1 = b1.roots if isinstance(b1, FiniteBiclosed) else frozenset(b1)
        b2 = b2.roots if isinstance(b2, FiniteBiclosed) else frozenset(b2)
        if b1 == b2:
            raise ReflordError(f"chain not strictly increasing at step {i}")
        t = admissible_tag(b1, b2)
        if not t.admissible:
            raise ReflordError(f"inadmissible pair at step {i}")
        bits.append(str(t.tag))
    return "".join(bits)


def signature_of_chain(chain: AdmissibleChain) -> str:
    return signature_of_sets(chain.rs, chain.sets)


def _canonical_chains(rs: RootSystem, psys: PositiveSystem):
    n = rs.rank
    delta = psys.simples

    def extend(path):
        d1, d2 = path[-1]
        if len(path) == 2 * n + 1:
            yield tuple(path)
            return
        for a in sorted(d1):
            yield from extend(path + [(d1 - {a}, d2)])
        for a in sorted(delta - d1 - d2):
            if all(rs.pair(a, b) == 0 for b in d1):
                yield from extend(path + [(d1, d2 | {a})])

    yield from extend([(delta, frozenset())])


def enumerate_maximal_admissible_chains(rs: RootSystem, max_rank: int = 3) -> list:
    """Maximal admissible chains, built one simple root at a time over every
    positive system and deduplicated by their sequence of sets."""
    if rs.rank > max_rank:
        raise ReflordError(f"rank {rs.rank} exceeds guard {max_rank}")
    seen = set()
    out = []
    for psys in positive_systems(rs):
        for steps in _canonical_chains(rs, psys):
            chain = AdmissibleChain(rs, psys, steps)
            key = tuple(b.roots for b in chain.sets)
            if key not in seen:
                seen.add(key)
                out.append(chain)
    return out


def admissible_chains_brute(rs: RootSystem, length: int, guard: int = BRUTE_GUARD) -> set:
    """Independent oracle: strictly increasing chains of biclosed sets from
    the empty set to the whole root system with admissible consecutive
    pairs, found by search over the brute-force biclosed family."""
    family = enumerate_biclosed(rs, "brute", guard)
    full = rs.root_set
    by_size = sorted(family, key=len)
    out = set()

    def walk(path):
        cur = path[-1]
        if len(path) == length + 1:
            if cur == full:
                out.add(tuple(path))
            return
        for b in by_size:
            if len(b) > len(cur) and cur < b and admissible_tag(cur, b).admissible:
                walk(path + [b])

    walk([frozenset()])
    return out
