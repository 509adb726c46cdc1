"""Formal sums over ``w`` (omega), ``w*`` (omega dual) and finite ``[k]``.

Normal forms come from three terminating rewrite rules::

    R1  [a] + [b] -> [a+b]
    R2  [a] + w   -> w
    R3  w* + [a]  -> w*
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ReflordError

OMEGA = "w"
OMEGA_STAR = "w*"


@dataclass(frozen=True)
class FIN:
    k: int

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 1:
            raise ReflordError(f"finite summand must have size >= 1, got {self.k!r}")

    def __str__(self):
        return f"[{self.k}]"


def _is_fin(t) -> bool:
    return isinstance(t, FIN)


def redexes(terms) -> list[tuple[int, str]]:
    """Every ``(position, rule)`` where a rule applies to ``terms[pos:pos+2]``."""
    out = []
    for i, (a, b) in enumerate(zip(terms, terms[1:])):
        if _is_fin(a) and _is_fin(b):
            out.append((i, "R1"))
        elif _is_fin(a) and b == OMEGA:
            out.append((i, "R2"))
        elif a == OMEGA_STAR and _is_fin(b):
            out.append((i, "R3"))
    return out


def rewrite(terms, pos: int, rule: str) -> tuple:
    terms = tuple(terms)
    a, b = terms[pos], terms[pos + 1]
    if (0, rule) not in redexes((a, b)):
        raise ReflordError(f"{rule} does not apply at {pos}")
    if rule == "R1":
        new = FIN(a.k + b.k)
    elif rule == "R2":
        new = OMEGA
    else:
        new = OMEGA_STAR
    return terms[:pos] + (new,) + terms[pos + 2:]


@dataclass(frozen=True)
class OrderType:
    terms: tuple

    def __post_init__(self):
        for t in self.terms:
            if t not in (OMEGA, OMEGA_STAR) and not _is_fin(t):
                raise ReflordError(f"bad order-type term {t!r}")

    def normalize(self) -> "OrderType":
        terms = self.terms
        while True:
            found = redexes(terms)
            if not found:
                return OrderType(terms)
            terms = rewrite(terms, *found[0])

    def is_normal(self) -> bool:
        return not redexes(self.terms)

    def render(self) -> str:
        return "+".join(str(t) for t in self.terms) if self.terms else "0"

    __str__ = render

    @classmethod
    def parse(cls, text: str) -> "OrderType":
        text = text.replace(" ", "").replace("ω", "w")
        if text in ("", "0"):
            return cls(())
        terms = []
        for tok in text.split("+"):
            if tok in (OMEGA, OMEGA_STAR):
                terms.append(tok)
            elif re.fullmatch(r"\[\d+\]", tok):
                k = int(tok[1:-1])
                if k:  # [0] is the empty summand
                    terms.append(FIN(k))
            else:
                raise ReflordError(f"cannot parse order-type term {tok!r}")
        return cls(tuple(terms))


def types_equal(a: OrderType, b: OrderType) -> bool:
    return a.normalize() == b.normalize()
