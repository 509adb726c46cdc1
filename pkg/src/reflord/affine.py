"""Real affine roots ``gamma + level*delta`` over a finite root system.

Sets of positive affine roots that matter here are hats of finite sets with
finitely many exceptions; they are carried as :class:`HatSetDescriptor`.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional

from .errors import ReflordError
from .rootsys import RootSystem, is_positive, neg, root_subsystem, simple_system

DEFAULT_LEVEL_BOUND = 6


class AffineRoot(NamedTuple):
    gamma: tuple
    level: int

    def __str__(self):
        return json.dumps(list(self.gamma), separators=(",", ":")) + f"@{self.level}"

    @classmethod
    def parse(cls, text: str) -> "AffineRoot":
        m = re.fullmatch(r"\s*(\[[-\d,\s]*\])\s*@\s*(-?\d+)\s*", text)
        if not m:
            raise ReflordError(f"cannot parse affine root {text!r}")
        return cls(tuple(json.loads(m.group(1))), int(m.group(2)))


def is_positive_affine(x: AffineRoot) -> bool:
    """Membership in hat(Phi): level >= 0 over positive roots, >= 1 over negative."""
    return x.level >= (0 if is_positive(x.gamma) else 1)


def zero(gamma: tuple) -> AffineRoot:
    """``(gamma)_0``: the lowest member of ``hat(gamma)``."""
    return AffineRoot(tuple(gamma), 0 if is_positive(gamma) else 1)


def hat_members(gamma: tuple, max_level: int):
    start = zero(gamma).level
    return [AffineRoot(tuple(gamma), m) for m in range(start, max_level + 1)]


def affine_reflect(rs: RootSystem, t: AffineRoot, x: AffineRoot) -> tuple[int, AffineRoot]:
    """``s_t(x)`` returned as ``(sign, positive root)``; ``delta`` is isotropic."""
    tt = rs.pair(t.gamma, t.gamma)
    if tt == 0:
        raise ReflordError("reflection in a zero-norm vector")
    c = 2 * rs.pair(x.gamma, t.gamma) / tt
    if c.denominator != 1:
        raise ReflordError(f"non-integral reflection coefficient {c}")
    k = int(c)
    gamma = tuple(a - k * b for a, b in zip(x.gamma, t.gamma))
    img = AffineRoot(gamma, x.level - k * t.level)
    if is_positive_affine(img):
        return 1, img
    flipped = AffineRoot(neg(gamma), -img.level)
    if not is_positive_affine(flipped):
        raise ReflordError(f"reflection left the real roots: {img}")
    return -1, flipped


def affine_combos(rs: RootSystem, x: AffineRoot, y: AffineRoot, max_level: int) -> list:
    """Positive real affine roots ``k1 x + k2 y`` (``k1, k2 > 0``) of level at
    most ``max_level``. Multiples of ``delta`` are not real roots and never
    appear."""
    a, b = x.gamma, y.gamma
    lx, ly = x.level, y.level
    out = []
    if a == b:
        lo, hi = sorted((lx, ly))
        out = [AffineRoot(a, m) for m in range(lo + 1, min(hi, max_level + 1))]
    elif a == neg(b):
        total = lx + ly
        for s, g in ((1, a), (-1, b)):
            for m in range(zero(g).level, max_level + 1):
                k2 = Fraction(m - s * lx, total)
                if k2 > 0 and s + k2 > 0:
                    out.append(AffineRoot(g, m))
    else:
        for c, k1, k2 in rs.combos(a, b):
            lev = k1 * lx + k2 * ly
            if lev.denominator == 1 and lev <= max_level:
                z = AffineRoot(c, int(lev))
                if is_positive_affine(z):
                    out.append(z)
    return out


@dataclass(frozen=True)
class HatSetDescriptor:
    """The set ``hat(core) u added \\ removed``."""
    core: frozenset
    added: frozenset = frozenset()
    removed: frozenset = frozenset()

    def __post_init__(self):
        core = frozenset(tuple(g) for g in self.core)
        added = frozenset(AffineRoot(tuple(x[0]), x[1]) for x in self.added)
        removed = frozenset(AffineRoot(tuple(x[0]), x[1]) for x in self.removed)
        object.__setattr__(self, "core", core)
        object.__setattr__(self, "added", added)
        object.__setattr__(self, "removed", removed)
        for x in added | removed:
            if not is_positive_affine(x):
                raise ReflordError(f"{x} is not a positive affine root")
        if any(x.gamma in core for x in added):
            raise ReflordError("added roots must lie outside hat(core)")
        if any(x.gamma not in core for x in removed):
            raise ReflordError("removed roots must lie inside hat(core)")

    def __contains__(self, x: AffineRoot) -> bool:
        if x.gamma in self.core:
            return is_positive_affine(x) and x not in self.removed
        return x in self.added

    @property
    def max_adjusted_level(self) -> int:
        return max((x.level for x in self.added | self.removed), default=-1)

    def members(self, max_level: int) -> set:
        out = {x for g in self.core for x in hat_members(g, max_level)}
        out -= self.removed
        out |= {x for x in self.added if x.level <= max_level}
        return out

    def to_json(self) -> dict:
        return {
            "core": [list(g) for g in sorted(self.core)],
            "added": [str(x) for x in sorted(self.added)],
            "removed": [str(x) for x in sorted(self.removed)],
        }

    @classmethod
    def from_json(cls, data: dict) -> "HatSetDescriptor":
        return cls(
            frozenset(tuple(g) for g in data["core"]),
            frozenset(AffineRoot.parse(s) for s in data.get("added", [])),
            frozenset(AffineRoot.parse(s) for s in data.get("removed", [])),
        )


def hat(rs: RootSystem, core: Iterable) -> HatSetDescriptor:
    core = frozenset(tuple(g) for g in core)
    bad = core - rs.root_set
    if bad:
        raise ReflordError(f"not roots of {rs.ctype}: {sorted(bad)}")
    return HatSetDescriptor(core)


def b_zero(d: HatSetDescriptor) -> frozenset:
    """Finite roots whose hat meets the set infinitely often."""
    return d.core


class AffineAudit(NamedTuple):
    ok: bool
    witness: Optional[tuple]  # (x, y, z, side)
    level_bound: int


def affine_universe(rs: RootSystem, max_level: int) -> list:
    return [x for g in rs.roots for x in hat_members(g, max_level)]


def is_biclosed_affine(rs: RootSystem, d: HatSetDescriptor,
                       level_bound: int = DEFAULT_LEVEL_BOUND) -> AffineAudit:
    """Level-bounded closure audit of ``d`` and of its complement in hat(Phi)."""
    floor = 2 * (1 + d.max_adjusted_level)
    if level_bound < floor:
        raise ReflordError(f"level bound {level_bound} below floor {floor}")
    universe = affine_universe(rs, level_bound)
    inside = [x for x in universe if x in d]
    outside = [x for x in universe if x not in d]
    for side, part in (("set", inside), ("complement", outside)):
        members = set(part)
        for i, x in enumerate(part):
            for y in part[i + 1:]:
                for z in affine_combos(rs, x, y, level_bound):
                    if z not in members:
                        return AffineAudit(False, (x, y, z, side), level_bound)
    return AffineAudit(True, None, level_bound)


@dataclass(frozen=True)
class ThetaGenerators:
    finite_part: tuple
    affine_part: tuple

    @property
    def roots(self) -> tuple:
        return tuple(AffineRoot(g, 0) for g in self.finite_part) + self.affine_part


def theta_generators(rs: RootSystem, delta_prime: Iterable) -> ThetaGenerators:
    """Simple system of the affine reflection subgroup over ``Phi_{delta'}``:
    the simple roots of ``Phi_{delta'} n Phi+`` plus ``delta - rho_c`` for
    the highest root ``rho_c`` of every irreducible component."""
    delta_prime = frozenset(tuple(g) for g in delta_prime)
    if not delta_prime:
        return ThetaGenerators((), ())
    sub = root_subsystem(rs, delta_prime)
    simples = tuple(sorted(simple_system(rs, sub.positives), key=lambda r: tuple(-c for c in r)))
    affine = tuple(AffineRoot(neg(rho), 1) for rho in sub.component_highest)
    return ThetaGenerators(simples, affine)
