"""Reading a structured reflection order back: initial roots, the function
``n``, the classes ``[alpha]``, the condensation ``J(<)`` and its chain of
finite parts, the signature and the order type.

Positions in an order are pairs ``(piece index, offset)`` as produced by
:meth:`StructuredOrder.locate`. A *cut* is an inclusive position bounding an
initial interval; ``(p, END)`` takes all of piece ``p``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from math import inf as END

from .affine import AffineRoot, HatSetDescriptor, b_zero, hat, zero
from .biclosed import signature_of_sets
from .errors import ReflordError
from .ordertype import FIN, OMEGA, OMEGA_STAR, OrderType, types_equal
from .rootsys import PositiveSystem, neg, validate_positive_system
from .synth import ASCENDING, DESCENDING, FINITE, StructuredOrder

__all__ = [
    "CondensationData", "JSet", "boundary_descriptors", "condensation",
    "initial_roots", "order_type_of", "prefix_descriptor", "segment_type",
    "signature_of_order", "types_equal", "normalize",
]

START = (-1, END)


def normalize(t: OrderType) -> OrderType:
    return t.normalize()


# ---------------------------------------------------------------- cuts

def _last_offset(order: StructuredOrder, p: int):
    piece = order.pieces[p]
    if piece.kind == FINITE:
        return len(piece.roots) - 1
    return 0 if piece.kind == DESCENDING else None


def normalize_cut(order: StructuredOrder, cut: tuple) -> tuple:
    p, off = cut
    if off != END and off == _last_offset(order, p):
        return (p, END)
    return cut


def prefix_descriptor(order: StructuredOrder, cut: tuple) -> HatSetDescriptor:
    """The initial interval ending at ``cut`` (inclusive) as a descriptor."""
    p, off = cut
    core = set()
    excluded = []
    for j, piece in enumerate(order.pieces[: p + 1]):
        if piece.kind == FINITE:
            continue
        if j < p or off == END:
            core |= piece.core
        elif piece.kind == DESCENDING:
            core |= piece.core
            # offsets -(r-1) .. 0 lie beyond the cut
            excluded += piece.head(-off)
    added, removed = set(), set(excluded)
    for j, piece in enumerate(order.pieces):
        if piece.kind != FINITE:
            continue
        for r, x in enumerate(piece.roots):
            inside = (j, r) <= cut
            if x.gamma in core and not inside:
                removed.add(x)
            elif x.gamma not in core and inside:
                added.add(x)
    if p >= 0 and off != END and order.pieces[p].kind == ASCENDING:
        piece = order.pieces[p]
        added |= set(piece.head(off + 1))
    return HatSetDescriptor(frozenset(core), frozenset(added), frozenset(removed))


def boundary_descriptors(order: StructuredOrder):
    """``(label, descriptor)`` for each proper initial interval made of whole
    pieces."""
    for p in range(len(order.pieces) - 1):
        yield f"after piece {p} ({order.pieces[p].kind})", prefix_descriptor(order, (p, END))


def segment_type(order: StructuredOrder, lo: tuple, hi: tuple) -> OrderType:
    """Order type of the interval strictly after ``lo`` up to ``hi``."""
    terms = []
    for p in range(lo[0] if lo[0] >= 0 else 0, hi[0] + 1):
        piece = order.pieces[p]
        a = lo[1] if p == lo[0] else None  # exclusive lower offset
        b = hi[1] if p == hi[0] else END  # inclusive upper offset
        if a == END:
            continue
        if piece.kind == FINITE:
            first = 0 if a is None else a + 1
            last = len(piece.roots) - 1 if b == END else b
            k = last - first + 1
        elif piece.kind == ASCENDING:
            if b == END:
                terms.append(OMEGA)
                continue
            k = b - (-1 if a is None else a)
        else:
            if a is None:
                terms.append(OMEGA_STAR)
                continue
            k = (0 if b == END else b) - a
        if k > 0:
            terms.append(FIN(k))
    return OrderType(tuple(terms)).normalize()


# ---------------------------------------------------------------- analysis

def initial_roots(order: StructuredOrder) -> PositiveSystem:
    rs = order.rs
    chosen = set()
    for g in rs.positives:
        up = order.locate(zero(g)) < order.locate(zero(neg(g)))
        chosen.add(g if up else neg(g))
    return validate_positive_system(rs, chosen)


def _n_value(order: StructuredOrder, alpha: tuple) -> int:
    """Least ``n`` with every gap ``[(-a)_0+(q+1)d, (-a)_0+q d]``, ``q >= n``,
    finite. Beyond the last finite-block member of ``hat(-alpha)`` the roots
    sit consecutively in one piece, so only lower ``q`` need testing."""
    g = neg(alpha)
    base = zero(g).level
    top = max((x.level for piece in order.pieces if piece.kind == FINITE
               for x in piece.roots if x.gamma == g), default=base)
    n = 0
    for q in range(0, top - base + 1):
        lo, hi = AffineRoot(g, base + q + 1), AffineRoot(g, base + q)
        if not order.interval_is_finite(lo, hi):
            n = q + 1
    return n


def _marker(alpha: tuple, n: int) -> AffineRoot:
    g = neg(alpha)
    return AffineRoot(g, zero(g).level + n)


@dataclass(frozen=True)
class JSet:
    descriptor: HatSetDescriptor
    tags: tuple  # e.g. ("J", (0, 1, 0)) or ("J'", (1, 0, 0))
    cut: tuple

    def to_json(self) -> dict:
        return {"descriptor": self.descriptor.to_json(),
                "tags": [[k, list(a)] for k, a in self.tags]}


@dataclass(frozen=True)
class CondensationData:
    initial_roots: PositiveSystem
    n_map: dict
    classes: tuple  # ((representative m([a]), frozenset of members), ...)
    j_sets: tuple  # JSet, strictly increasing

    def class_of(self, alpha) -> frozenset:
        for _, members in self.classes:
            if tuple(alpha) in members:
                return members
        raise KeyError(alpha)

    def find(self, kind: str, alpha) -> JSet:
        alpha = tuple(alpha)
        for j in self.j_sets:
            for k, a in j.tags:
                if k == kind and (a == alpha or (kind == "J'" and alpha in self.class_of(a))):
                    return j
        raise KeyError((kind, alpha))

    @property
    def chain_sets(self) -> list:
        return [frozenset()] + [b_zero(j.descriptor) for j in self.j_sets]

    def to_json(self) -> dict:
        return {
            "initial_roots": [list(g) for g in sorted(self.initial_roots.roots)],
            "n": [[list(a), v] for a, v in sorted(self.n_map.items())],
            "classes": [{"m": list(m), "members": [list(a) for a in sorted(ms)]}
                        for m, ms in self.classes],
            "j_sets": [j.to_json() for j in self.j_sets],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def condensation(order: StructuredOrder) -> CondensationData:
    psys = initial_roots(order)
    psi = sorted(psys.roots)
    n_map = {a: _n_value(order, a) for a in psi}
    marker_pos = {a: order.locate(_marker(a, n_map[a])) for a in psi}

    classes = []
    for a in psi:
        for members in classes:
            b = members[0]
            if order.interval_is_finite(_marker(a, n_map[a]), _marker(b, n_map[b])):
                members.append(a)
                break
        else:
            classes.append([a])
    classes = tuple((max(ms, key=marker_pos.__getitem__), frozenset(ms)) for ms in classes)

    cuts = {}
    for a in psi:
        cut = (order._core_index[a], END)
        cuts.setdefault(normalize_cut(order, cut), []).append(("J", a))
    for m, _ in classes:
        cuts.setdefault(normalize_cut(order, marker_pos[m]), []).append(("J'", m))
    j_sets = tuple(JSet(prefix_descriptor(order, c), tuple(tags), c)
                   for c, tags in sorted(cuts.items()))

    data = CondensationData(psys, n_map, classes, j_sets)
    _check(order, data)
    return data


def _check(order: StructuredOrder, data: CondensationData):
    rs = order.rs
    js = data.j_sets
    if not js or all(k != "J" for k, _ in js[0].tags):
        raise ReflordError("least member of J(<) is not of the form J(alpha)")
    if all(k != "J'" for k, _ in js[-1].tags):
        raise ReflordError("greatest member of J(<) is not of the form J'([alpha])")
    if js[-1].descriptor != hat(rs, rs.roots):
        raise ReflordError("greatest member of J(<) is not all positive affine roots")
    zeros = data.chain_sets
    for k0, l0 in zip(zeros, zeros[1:]):
        if not k0 < l0:
            raise ReflordError("finite parts of J(<) do not strictly increase")


def signature_of_order(order: StructuredOrder) -> str:
    data = condensation(order)
    return signature_of_sets(order.rs, data.chain_sets)


def order_type_of(order: StructuredOrder) -> OrderType:
    terms = []
    for piece in order.pieces:
        if piece.kind == ASCENDING:
            terms.append(OMEGA)
        elif piece.kind == DESCENDING:
            terms.append(OMEGA_STAR)
        elif piece.roots:
            terms.append(FIN(len(piece.roots)))
    return OrderType(tuple(terms)).normalize()
