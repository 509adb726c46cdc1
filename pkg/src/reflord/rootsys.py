"""Finite irreducible crystallographic root systems over exact rationals.

Roots are integer tuples in the simple-root basis of the standard positive
system. Simple roots are numbered as in Bourbaki; in particular for type E
node 2 hangs off the branch vertex 4 (1-3-4-5-6-7-8 with 2-4).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable

from .errors import ReflordError

Root = tuple  # tuple[int, ...] in the simple-root basis

_FAMILIES = "ABCDEFG"


@dataclass(frozen=True, order=True)
class CoxeterType:
    family: str
    rank: int

    def __post_init__(self):
        f, n = self.family, self.rank
        if f not in _FAMILIES or not isinstance(n, int):
            raise ReflordError(f"unknown Coxeter type {f!r}{n!r}")
        ok = {
            "A": n >= 1,
            "B": n >= 2,
            "C": n >= 2,
            "D": n >= 4,
            "E": n in (6, 7, 8),
            "F": n == 4,
            "G": n == 2,
        }[f]
        if not ok:
            raise ReflordError(f"invalid rank {n} for family {f}")

    @classmethod
    def parse(cls, text: str) -> "CoxeterType":
        text = text.strip().upper()
        if len(text) < 2 or not text[1:].isdigit():
            raise ReflordError(f"cannot parse Coxeter type {text!r}")
        return cls(text[0], int(text[1:]))

    def __str__(self):
        return f"{self.family}{self.rank}"


def _edges(ctype: CoxeterType) -> list[tuple[int, int]]:
    f, n = ctype.family, ctype.rank
    if f == "D":
        return [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)]
    if f == "E":
        return [(1, 3), (3, 4), (4, 5), (2, 4)] + [(i, i + 1) for i in range(5, n)]
    return [(i, i + 1) for i in range(1, n)]


def _squared_lengths(ctype: CoxeterType) -> list[int]:
    f, n = ctype.family, ctype.rank
    if f == "B":
        return [2] * (n - 1) + [1]
    if f == "C":
        return [1] * (n - 1) + [2]
    if f == "F":
        return [2, 2, 1, 1]
    if f == "G":
        return [1, 3]
    return [1] * n


def cartan_matrix(ctype: CoxeterType) -> tuple[tuple[int, ...], ...]:
    """``A[i][j] = 2(a_i, a_j) / (a_j, a_j)`` (0-indexed)."""
    n = ctype.rank
    d = _squared_lengths(ctype)
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in _edges(ctype):
        i, j = i - 1, j - 1
        # the longer root pairs with the shorter coroot to give -(ratio)
        if d[i] >= d[j]:
            a[i][j], a[j][i] = -(d[i] // d[j]), -1
        else:
            a[i][j], a[j][i] = -1, -(d[j] // d[i])
    return tuple(tuple(row) for row in a)


@dataclass(frozen=True)
class PositiveSystem:
    roots: frozenset
    simples: frozenset

    def __contains__(self, root) -> bool:
        return root in self.roots


@dataclass(frozen=True, eq=False)
class RootSystem:
    ctype: CoxeterType
    cartan: tuple
    bilinear: tuple
    roots: tuple
    positives: tuple
    highest_root: Root
    _combo_cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __eq__(self, other):
        return isinstance(other, RootSystem) and self.ctype == other.ctype

    def __hash__(self):
        return hash(self.ctype)

    @property
    def rank(self) -> int:
        return self.ctype.rank

    @cached_property
    def simples(self) -> tuple:
        n = self.rank
        return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))

    @cached_property
    def root_set(self) -> frozenset:
        return frozenset(self.roots)

    @cached_property
    def positive_set(self) -> frozenset:
        return frozenset(self.positives)

    @cached_property
    def negatives(self) -> tuple:
        return tuple(neg(r) for r in self.positives)

    @cached_property
    def standard_positive_system(self) -> PositiveSystem:
        return PositiveSystem(self.positive_set, frozenset(self.simples))

    def simple(self, i: int) -> Root:
        """Simple root with 1-based index ``i``."""
        return self.simples[i - 1]

    def pair(self, a: Root, b: Root) -> Fraction:
        """The symmetric bilinear form."""
        total = Fraction(0)
        for i, ai in enumerate(a):
            if ai:
                row = self.bilinear[i]
                for j, bj in enumerate(b):
                    if bj:
                        total += ai * bj * row[j]
        return total

    def reflect(self, a: Root, b: Root) -> Root:
        """``s_a(b) = b - 2(b,a)/(a,a) a``."""
        c = 2 * self.pair(b, a) / self.pair(a, a)
        if c.denominator != 1:
            raise ReflordError(f"non-integral Cartan number for {a}, {b}")
        k = int(c)
        return tuple(bi - k * ai for ai, bi in zip(a, b))

    def is_root(self, v) -> bool:
        return tuple(v) in self.root_set

    def combos(self, x: Root, y: Root) -> tuple:
        """Roots ``z = k1 x + k2 y`` with rational ``k1, k2 > 0``.

        Returns tuples ``(z, k1, k2)``; empty when ``x, y`` are dependent
        (the only such roots are then ``x`` itself or ``+-x``, never a
        proper positive combination producing a new root).
        """
        key = (x, y)
        hit = self._combo_cache.get(key)
        if hit is not None:
            return hit
        out = []
        solver = _pair_solver(x, y)
        if solver is not None:
            for z in self.roots:
                k = solver(z)
                if k is not None and k[0] > 0 and k[1] > 0:
                    out.append((z, k[0], k[1]))
        out = tuple(out)
        self._combo_cache[key] = out
        return out


def neg(r: Root) -> Root:
    return tuple(-c for c in r)


def add(a: Root, b: Root) -> Root:
    return tuple(x + y for x, y in zip(a, b))


def height(r: Root) -> int:
    return sum(r)


def is_positive(r: Root) -> bool:
    return any(c > 0 for c in r)


def _pair_solver(x: Root, y: Root):
    """Return ``z -> (k1, k2)`` solving ``z = k1 x + k2 y`` or ``None``
    when ``x`` and ``y`` are linearly dependent."""
    n = len(x)
    for i in range(n):
        for j in range(i + 1, n):
            det = x[i] * y[j] - x[j] * y[i]
            if det:
                def solve(z, i=i, j=j, det=det):
                    k1 = Fraction(z[i] * y[j] - z[j] * y[i], det)
                    k2 = Fraction(x[i] * z[j] - x[j] * z[i], det)
                    if all(k1 * a + k2 * b == c for a, b, c in zip(x, y, z)):
                        return k1, k2
                    return None
                return solve
    return None


@lru_cache(maxsize=None)
def build_root_system(ctype: CoxeterType) -> RootSystem:
    n = ctype.rank
    cartan = cartan_matrix(ctype)
    d = _squared_lengths(ctype)
    bilinear = tuple(
        tuple(Fraction(cartan[i][j] * d[j], 2) for j in range(n)) for i in range(n)
    )
    for i in range(n):
        for j in range(n):
            assert bilinear[i][j] == bilinear[j][i], "symmetrization failed"

    simples = [tuple(int(i == j) for j in range(n)) for i in range(n)]

    def s(i: int, v: Root) -> Root:
        k = sum(v[a] * cartan[a][i] for a in range(n))
        return tuple(c - k * int(a == i) for a, c in enumerate(v))

    seen = set(simples)
    queue = deque(simples)
    while queue:
        v = queue.popleft()
        for i in range(n):
            w = s(i, v)
            if w not in seen:
                seen.add(w)
                queue.append(w)
    positives = tuple(sorted((r for r in seen if is_positive(r)),
                             key=lambda r: (height(r), r)))
    roots = positives + tuple(neg(r) for r in positives)
    pos_set = set(positives)
    top = [r for r in positives
           if all(add(r, a) not in seen for a in simples)]
    if len(top) != 1:
        raise ReflordError(f"{ctype}: expected a unique highest root, found {top}")
    assert len(roots) == 2 * len(pos_set)
    return RootSystem(ctype, cartan, bilinear, roots, positives, top[0])


def root_system(family: str, rank: int) -> RootSystem:
    return build_root_system(CoxeterType(family, rank))


@dataclass(frozen=True)
class Subsystem:
    roots: frozenset
    components: tuple  # tuple of frozensets
    component_highest: tuple  # highest root of each component w.r.t. Phi+

    @property
    def positives(self) -> frozenset:
        return frozenset(r for r in self.roots if is_positive(r))


def root_subsystem(rs: RootSystem, gens: Iterable[Root]) -> Subsystem:
    gens = frozenset(tuple(g) for g in gens)
    return _root_subsystem(rs, gens)


@lru_cache(maxsize=4096)
def _root_subsystem(rs: RootSystem, gens: frozenset) -> Subsystem:
    bad = [g for g in gens if g not in rs.root_set]
    if bad:
        raise ReflordError(f"not roots of {rs.ctype}: {sorted(bad)}")
    found = set(gens)
    queue = deque(found)
    while queue:
        a = queue.popleft()
        for b in list(found):
            for w in (rs.reflect(a, b), rs.reflect(b, a)):
                if w not in found:
                    found.add(w)
                    queue.append(w)
    # connectivity by nonzero pairing
    remaining = set(found)
    comps = []
    while remaining:
        start = remaining.pop()
        comp = {start}
        stack = [start]
        while stack:
            a = stack.pop()
            linked = [b for b in remaining if rs.pair(a, b) != 0]
            for b in linked:
                remaining.discard(b)
                comp.add(b)
                stack.append(b)
        comps.append(frozenset(comp))
    comps.sort(key=lambda c: min(tuple(-x for x in r) for r in c))
    highest = tuple(
        max((r for r in c if is_positive(r)), key=lambda r: (height(r), r)) for c in comps
    )
    return Subsystem(frozenset(found), tuple(comps), highest)


def simple_system(rs: RootSystem, pos: Iterable[Root]) -> frozenset:
    """Indecomposable members of a positive system of some subsystem."""
    pos = frozenset(pos)
    out = set()
    for r in pos:
        if not any(tuple(c - d for c, d in zip(r, a)) in pos for a in pos):
            out.add(r)
    return frozenset(out)


def positive_systems(rs: RootSystem) -> list[PositiveSystem]:
    """All Weyl images of the standard positive system, by orbit search."""
    return list(_positive_systems(rs))


@lru_cache(maxsize=None)
def _positive_systems(rs: RootSystem) -> tuple:
    start = rs.standard_positive_system
    seen = {start.roots: start}
    queue = deque([start])
    while queue:
        ps = queue.popleft()
        for a in ps.simples:
            img = PositiveSystem(
                frozenset(rs.reflect(a, r) for r in ps.roots),
                frozenset(rs.reflect(a, r) for r in ps.simples),
            )
            if img.roots not in seen:
                seen[img.roots] = img
                queue.append(img)
    return tuple(seen.values())


def validate_positive_system(rs: RootSystem, roots: Iterable[Root]) -> PositiveSystem:
    """Check ``roots`` is a positive system of ``rs`` and attach its simples."""
    roots = frozenset(roots)
    for r in rs.roots:
        if (r in roots) == (neg(r) in roots):
            raise ReflordError(f"not a positive system: root {r} vs its negative")
    for x in roots:
        for y in roots:
            for z, _, _ in rs.combos(x, y):
                if z not in roots:
                    raise ReflordError(f"not closed: {x} + {y} -> {z}")
    simples = simple_system(rs, roots)
    if len(simples) != rs.rank:
        raise ReflordError(f"simple system of size {len(simples)} != rank {rs.rank}")
    return PositiveSystem(roots, simples)
