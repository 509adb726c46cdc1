"""From trimmed Dyck words to admissible chains to reflection orders.

Each chain step ``B_i -> B_{i+1}`` contributes the piece
``D_i = hat(B_{i+1}) \\ hat(B_i)``. A piece is listed as the inversion
sequence of an infinite reduced word of the affine reflection subgroup over
``Phi_{Delta_{i,1}}`` (tag 0, ascending) or ``Phi_{Delta_{i+1,2}}`` (tag 1,
listed backwards). The word is the one traced by a straight ray leaving the
fundamental alcove along a coweight that is positive exactly on the finite
part of ``D_i``: the affine root ``gamma + m*delta`` is crossed at time
``(m + eps*f(gamma)) / g(gamma)`` where ``g`` is that coweight and ``eps*f``
places the start point infinitesimally close to the origin inside the alcove.
"""
from __future__ import annotations

import heapq
import os
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from itertools import accumulate, islice
from typing import Optional

from .affine import (DEFAULT_LEVEL_BOUND, AffineRoot,
                     affine_combos, affine_reflect, is_biclosed_affine,
                     is_positive_affine, theta_generators, zero)
from .biclosed import AdmissibleChain, signature_of_chain
from .dyck import classify_word, insertable_indices, least_expansion
from .errors import ReflordError
from .rootsys import RootSystem, height, neg, root_subsystem

ASCENDING = "ascending"
DESCENDING = "descending"
FINITE = "finite"


def level_bound_default() -> int:
    env = os.environ.get("REFLORD_LEVEL_BOUND")
    return int(env) if env else DEFAULT_LEVEL_BOUND


# ---------------------------------------------------------------- chains

def _family_orders(rs: RootSystem) -> tuple[list[int], list[int]]:
    """Order in which simple roots leave delta1 (letter 0) and the preference
    order for joining delta2 (letter 1), as 1-based indices."""
    f, n = rs.ctype.family, rs.rank
    if f == "D":
        seq = list(range(1, n + 1))
    elif f == "E":
        seq = list(range(n, 4, -1)) + [4, 2, 3, 1]
    else:
        seq = list(range(n, 0, -1))
    return seq, seq


def maximal_chain_from_word(rs: RootSystem, w: str) -> AdmissibleChain:
    """Maximal chain over the standard positive system for an extended word."""
    n = rs.rank
    if not classify_word(w, n).extended:
        raise ReflordError(f"{w!r} is not an extended Dyck word of length {2 * n}")
    drop, prefer = _family_orders(rs)
    simple = rs.simple
    d1 = frozenset(rs.simples)
    d2 = frozenset()
    drop_iter = iter(drop)
    steps = [(d1, d2)]
    for pos, c in enumerate(w, start=1):
        if c == "0":
            d1 = d1 - {simple(next(drop_iter))}
        else:
            for j in prefer:
                a = simple(j)
                if a not in d1 and a not in d2 and all(rs.pair(a, b) == 0 for b in d1):
                    d2 = d2 | {a}
                    break
            else:
                raise ReflordError(f"no simple root can join delta2 at letter {pos} of {w}")
        steps.append((d1, d2))
    return AdmissibleChain(rs, rs.standard_positive_system, tuple(steps))


def chain_from_word(rs: RootSystem, w: str) -> AdmissibleChain:
    """Admissible chain with signature ``w`` for a trimmed word of rank ``n``.

    Non-extended words are expanded to their lexicographically least
    extended word; the resulting maximal chain is then coarsened so that each
    expanded run becomes a single step.
    """
    n = rs.rank
    cls = classify_word(w, n)
    if not cls.trimmed:
        raise ReflordError(f"{w!r} is not a {2 * n}-trimmed Dyck word")
    if cls.extended:
        chain = maximal_chain_from_word(rs, w)
    else:
        full, mult = least_expansion(w, n)
        big = maximal_chain_from_word(rs, full)
        keep = [0] + list(accumulate(mult))
        chain = AdmissibleChain(rs, big.base, tuple(big.steps[b] for b in keep))
    got = signature_of_chain(chain)
    if got != w:
        raise ReflordError(f"constructed chain has signature {got}, expected {w}")
    return chain


# ---------------------------------------------------------------- pieces

def _crossing_key(gamma: tuple, m: int, g: int) -> tuple:
    return (Fraction(m, g), Fraction(height(gamma), g)) + tuple(Fraction(c, g) for c in gamma)


@dataclass(frozen=True, eq=False)
class LinePiece:
    """An infinite piece ``hat(core)`` minus its first ``skip`` inversions."""
    rs: RootSystem
    kind: str
    step: int  # 0-based chain step
    core: frozenset
    weights: tuple  # the coweight g, in simple-root coordinates
    generators: frozenset  # delta' whose affine subgroup carries the word
    skip: int = 0
    construction: str = "line"

    def g(self, gamma) -> int:
        return sum(w * c for w, c in zip(self.weights, gamma))

    def key(self, x: AffineRoot) -> tuple:
        return _crossing_key(x.gamma, x.level, self.g(x.gamma))

    def inversions(self, start: int = 0):
        """The inversion sequence, skipping the first ``start`` entries."""
        def stream(gamma):
            g = self.g(gamma)
            m = zero(gamma).level
            while True:
                yield _crossing_key(gamma, m, g), AffineRoot(gamma, m)
                m += 1
        merged = heapq.merge(*(stream(gm) for gm in sorted(self.core)))
        return (x for _, x in islice(merged, start, None))

    def rank(self, x: AffineRoot) -> int:
        """Index of ``x`` in the full inversion sequence (ignoring skip)."""
        kx = self.key(x)
        count = 0
        for gm in self.core:
            g = self.g(gm)
            m0 = zero(gm).level
            bound = kx[0] * g  # levels m with m/g < kx[0]
            top = -((-bound.numerator) // bound.denominator)  # ceil
            count += max(0, top - m0)
            if bound.denominator == 1 and bound >= m0:
                if _crossing_key(gm, int(bound), g) < kx:
                    count += 1
        return count

    def contains(self, x: AffineRoot) -> bool:
        return x.gamma in self.core and is_positive_affine(x) and self.rank(x) >= self.skip

    def upto_level(self, level: int) -> list:
        """Members of level at most ``level``, in order."""
        out = []
        for x in self.inversions(self.skip):
            if Fraction(x.level, self.g(x.gamma)) > level:
                break
            if x.level <= level:
                out.append(x)
        # crossing times exceed ``level`` only after every such root is out
        if self.kind == DESCENDING:
            out.reverse()
        return out

    def head(self, count: int) -> list:
        """The next ``count`` inversions after the skipped ones."""
        return list(islice(self.inversions(self.skip), count))

    def reduced_word(self, length: int) -> list:
        """Recover ``r_1 r_2 ...`` from the inversion sequence
        ``beta_k = r_1 ... r_{k-1}(alpha_{r_k})``; each ``alpha_{r_k}`` must be a
        generator of the affine reflection subgroup."""
        theta = set(theta_generators(self.rs, self.generators).roots)
        word = []
        for beta in islice(self.inversions(), length):
            x = beta
            for r in word:
                sign, x = affine_reflect(self.rs, r, x)
                if sign < 0:
                    raise ReflordError(f"inversion {beta} is not produced by a reduced word")
            if x not in theta:
                raise ReflordError(f"{beta} pulls back to {x}, not a subgroup generator")
            word.append(x)
        return word


@dataclass(frozen=True)
class FinitePiece:
    roots: tuple
    before_step: int  # the descending step this block sits in front of
    source_step: int
    kind: str = FINITE

    def contains(self, x) -> bool:
        return x in self.roots

    def upto_level(self, level: int) -> list:
        return [x for x in self.roots if x.level <= level]


# ---------------------------------------------------------------- orders

@dataclass(frozen=True, eq=False)
class StructuredOrder:
    rs: RootSystem
    chain: AdmissibleChain
    word: str
    base_pieces: tuple  # one LinePiece per chain step, before block moves
    block_assignments: tuple = ()  # sorted ((index, n_i), ...)
    pieces: tuple = field(default=())

    def __post_init__(self):
        if not self.pieces:
            object.__setattr__(self, "pieces", _place_blocks(self))

    @property
    def blocks(self) -> dict:
        return dict(self.block_assignments)

    @cached_property
    def _finite_index(self) -> dict:
        out = {}
        for p_idx, p in enumerate(self.pieces):
            if p.kind == FINITE:
                for r, x in enumerate(p.roots):
                    out[x] = (p_idx, r)
        return out

    @cached_property
    def _core_index(self) -> dict:
        return {gm: p_idx for p_idx, p in enumerate(self.pieces)
                if p.kind != FINITE for gm in p.core}

    def locate(self, x: AffineRoot) -> tuple:
        """Sortable position ``(piece index, offset)``; descending pieces use
        negative offsets counted from their top."""
        hit = self._finite_index.get(x)
        if hit is not None:
            return hit
        if not is_positive_affine(x):
            raise ReflordError(f"{x} is not a positive affine root")
        p_idx = self._core_index[x.gamma]
        p = self.pieces[p_idx]
        r = p.rank(x) - p.skip
        if r < 0:
            raise ReflordError(f"{x} lost from piece {p_idx}")
        return (p_idx, r) if p.kind == ASCENDING else (p_idx, -r)

    def precedes(self, x: AffineRoot, y: AffineRoot) -> bool:
        return self.locate(x) < self.locate(y)

    def interval_is_finite(self, x: AffineRoot, y: AffineRoot) -> bool:
        px, py = self.locate(x), self.locate(y)
        if px > py:
            px, py = py, px
        if px[0] == py[0]:
            return True
        if self.pieces[px[0]].kind == ASCENDING or self.pieces[py[0]].kind == DESCENDING:
            return False
        return all(self.pieces[j].kind == FINITE for j in range(px[0] + 1, py[0]))

    def piece_of_step(self, step: int) -> int:
        for idx, p in enumerate(self.pieces):
            if p.kind != FINITE and p.step == step:
                return idx
        raise KeyError(step)


def synthesize_order(rs: RootSystem, chain: AdmissibleChain) -> StructuredOrder:
    """Reflection order whose condensation recovers ``chain``."""
    if chain.base != rs.standard_positive_system:
        raise ReflordError("synthesis is built over the standard positive system")
    n = rs.rank
    pieces = []
    sets = chain.sets
    for i, ((p1, p2), (q1, q2)) in enumerate(zip(chain.steps, chain.steps[1:])):
        if p2 == q2:
            moved, gens, sign, kind = p1 - q1, p1, 1, ASCENDING
        else:
            moved, gens, sign, kind = q2 - p2, q2, -1, DESCENDING
        weights = tuple(sign * int(rs.simples[j] in moved) for j in range(n))
        sub = root_subsystem(rs, gens).roots
        core = frozenset(gm for gm in sub
                         if sum(w * c for w, c in zip(weights, gm)) > 0)
        expected = sets[i + 1].roots - sets[i].roots
        if core != expected:
            raise ReflordError(f"step {i}: piece core {sorted(core)} != {sorted(expected)}")
        pieces.append(LinePiece(rs, kind, i, core, weights, frozenset(gens)))
    word = signature_of_chain(chain)
    return StructuredOrder(rs, chain, word, tuple(pieces))


def _place_blocks(order: StructuredOrder) -> tuple:
    word = order.word
    pieces = list(order.base_pieces)
    blocks = order.blocks
    before = {}  # step -> FinitePiece
    slots = insertable_indices(word) if blocks else []
    for rank_, p in enumerate(slots):
        count = blocks.get(p, 0)
        if count == 0:
            continue
        if rank_ == 0:
            # head of the first ascending piece after the run of 1s at p
            q = next(j for j in range(p + 1, len(word) + 1) if word[j - 1] == "0")
            src = pieces[q - 1]
            block = tuple(src.head(count))
        else:
            # tail of the last descending piece before p
            q = max(j for j in range(1, p) if word[j - 1] == "1")
            src = pieces[q - 1]
            block = tuple(reversed(src.head(count)))
        pieces[q - 1] = replace(src, skip=src.skip + count)
        before[p - 1] = FinitePiece(block, p - 1, q - 1)
    out = []
    for i, piece in enumerate(pieces):
        if i in before:
            out.append(before[i])
        out.append(piece)
    return tuple(out)


def insert_blocks(order: StructuredOrder, assignments: dict) -> StructuredOrder:
    """Move finite blocks of the requested sizes in front of the descending
    pieces at insertable indices (1-based positions in the signature)."""
    assignments = {int(k): int(v) for k, v in dict(assignments).items()}
    if not assignments:
        return order
    allowed = set(insertable_indices(order.word))
    bad = sorted(set(assignments) - allowed)
    if bad:
        raise ReflordError(f"indices {bad} are not insertable in {order.word} "
                           f"(insertable: {sorted(allowed)})")
    if any(v < 0 for v in assignments.values()):
        raise ReflordError("block sizes must be nonnegative")
    clash = set(assignments) & set(order.blocks)
    if clash:
        raise ReflordError(f"indices {sorted(clash)} already carry blocks")
    merged = tuple(sorted({**order.blocks, **assignments}.items()))
    return StructuredOrder(order.rs, order.chain, order.word, order.base_pieces, merged)


def build_order(rs: RootSystem, w: str, blocks: Optional[dict] = None) -> StructuredOrder:
    order = synthesize_order(rs, chain_from_word(rs, w))
    return insert_blocks(order, blocks or {})


def truncate(order: StructuredOrder, level: int) -> list:
    """The finite total order induced on roots of level at most ``level``."""
    if level < 0:
        raise ReflordError("truncation level must be nonnegative")
    out = []
    for p in order.pieces:
        out.extend(p.upto_level(level))
    return out


# ---------------------------------------------------------------- audit

@dataclass
class VerificationReport:
    level_bound: int
    size: int = 0
    betweenness: list = field(default_factory=list)
    boundaries: list = field(default_factory=list)
    dihedral: list = field(default_factory=list)
    boundaries_checked: int = 0

    @property
    def ok(self) -> bool:
        return not (self.betweenness or self.boundaries or self.dihedral)

    def summary(self) -> str:
        state = "ok" if self.ok else "FAILED"
        return (f"{state}: level<={self.level_bound}, {self.size} roots, "
                f"{len(self.betweenness)} betweenness, {len(self.boundaries)}/"
                f"{self.boundaries_checked} boundary, {len(self.dihedral)} dihedral violations")


def betweenness_violations(rs: RootSystem, seq: list, level: int, limit: int = 20) -> list:
    """Triples ``(x, z, y)`` with ``x`` before ``y`` and ``z`` a positive
    combination of them not strictly between."""
    pos = {x: i for i, x in enumerate(seq)}
    bad = []
    for i, x in enumerate(seq):
        for j in range(i + 1, len(seq)):
            y = seq[j]
            for z in affine_combos(rs, x, y, level):
                k = pos.get(z)
                if k is None or not i < k < j:
                    bad.append((x, z, y))
                    if len(bad) >= limit:
                        return bad
    return bad


def dihedral_violations(rs: RootSystem, seq: list, level: int) -> list:
    bad = []
    for gm in rs.positives:
        pair = (gm, neg(gm))
        got = [x for x in seq if x.gamma in pair]
        patterns = []
        for a, b in (pair, pair[::-1]):
            up = [AffineRoot(a, m) for m in range(zero(a).level, level + 1)]
            down = [AffineRoot(b, m) for m in range(level, zero(b).level - 1, -1)]
            patterns.append(up + down)
        if got not in patterns:
            bad.append((gm, got))
    return bad


def verify_reflection_order(order: StructuredOrder, level: Optional[int] = None) -> VerificationReport:
    from .condense import boundary_descriptors
    level = level_bound_default() if level is None else level
    rs = order.rs
    seq = truncate(order, level)
    report = VerificationReport(level, len(seq))
    report.betweenness = betweenness_violations(rs, seq, level)
    for where, d in boundary_descriptors(order):
        bound = max(level, 2 * (1 + d.max_adjusted_level))
        audit = is_biclosed_affine(rs, d, bound)
        report.boundaries_checked += 1
        if not audit.ok:
            report.boundaries.append((where, audit.witness))
    report.dihedral = dihedral_violations(rs, seq, level)
    return report
