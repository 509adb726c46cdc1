"""Extended and trimmed Dyck words and the order-type templates they index.

Words are plain strings over ``"01"``. Positions are 1-indexed wherever they
leave this module (insertable indices, template slots).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, groupby
from typing import NamedTuple, Optional

from .errors import ReflordError

MAX_N = 10

OMEGA = "w"
OMEGA_STAR = "w*"


class WordClass(NamedTuple):
    extended: bool
    trimmed: bool


def _check_alphabet(w: str):
    if not isinstance(w, str) or set(w) - {"0", "1"}:
        raise ReflordError(f"word must be a string over '0'/'1': {w!r}")


def is_extended(w: str, n: int) -> bool:
    _check_alphabet(w)
    if len(w) != 2 * n or w.count("0") != n:
        return False
    depth = 0
    for i, c in enumerate(w):
        depth += 1 if c == "0" else -1
        if i < len(w) - 1 and depth <= 0:
            return False
    return depth == 0


def compositions(total: int, parts: int):
    """Ordered tuples of ``parts`` positive integers summing to ``total``."""
    if parts <= 0 or total < parts:
        return
    for cuts in combinations(range(1, total), parts - 1):
        bounds = (0,) + cuts + (total,)
        yield tuple(b - a for a, b in zip(bounds, bounds[1:]))


def expansions(w: str, n: int):
    """Extended words of length ``2n`` that contract to ``w``, paired with
    the multiplicity assigned to each letter of ``w``."""
    _check_alphabet(w)
    for mult in compositions(2 * n, len(w)):
        e = "".join(c * m for c, m in zip(w, mult))
        if is_extended(e, n):
            yield e, mult


def classify_word(w: str, n: int) -> WordClass:
    if n < 1:
        raise ReflordError("n must be >= 1")
    _check_alphabet(w)
    return WordClass(is_extended(w, n), next(expansions(w, n), None) is not None)


def least_expansion(w: str, n: int) -> tuple[str, tuple]:
    """Lexicographically least extended word contracting to ``w``."""
    found = sorted(expansions(w, n))
    if not found:
        raise ReflordError(f"{w!r} is not a {2 * n}-trimmed Dyck word")
    return found[0]


@lru_cache(maxsize=None)
def _extended(n: int) -> tuple:
    out = []

    def grow(prefix, zeros, ones):
        if zeros == n and ones == n:
            out.append(prefix)
            return
        if zeros < n:
            grow(prefix + "0", zeros + 1, ones)
        # proper prefixes keep strictly more 0s, except the full word
        if ones < zeros - 1 or (zeros == n and ones < n):
            grow(prefix + "1", zeros, ones + 1)

    grow("", 0, 0)
    return tuple(sorted(out))


def _contractions(w: str) -> set:
    """All words obtained by contracting constant substrings to one letter."""
    runs = [(c, len(list(g))) for c, g in groupby(w)]
    choices = [[]]
    for c, m in runs:
        # a run of length m splits into 1..m nonempty consecutive substrings
        choices = [ch + [(c, k)] for ch in choices for k in range(1, m + 1)]
    return {"".join(c * k for c, k in ch) for ch in choices}


@lru_cache(maxsize=None)
def _trimmed(n: int) -> tuple:
    out = set()
    for e in _extended(n):
        out |= _contractions(e)
    return tuple(sorted(out))


def enumerate_words(n: int, kind: str = "extended", guard: int = MAX_N) -> list[str]:
    if n < 1:
        raise ReflordError("n must be >= 1")
    if n > guard:
        raise ReflordError(f"n = {n} exceeds enumeration guard {guard}")
    if kind == "extended":
        return list(_extended(n))
    if kind == "trimmed":
        return list(_trimmed(n))
    raise ReflordError(f"unknown word kind {kind!r}")


def _require_trimmed(w: str):
    _check_alphabet(w)
    # trimmed for n implies trimmed for n+1 (pad the expansion as 0e1), so
    # it suffices to look between the letter counts and the word length
    lo = max(w.count("0"), w.count("1"), 1)
    if not w or not any(classify_word(w, m).trimmed for m in range(lo, len(w) + 1)):
        raise ReflordError(f"{w!r} is not a trimmed Dyck word")


def _is_case_c(w: str, i: int) -> bool:
    return set(w[: i - 1]) <= {"0"} and set(w[i - 1:]) <= {"1"}


def insertable_indices(w: str) -> list[int]:
    """1-indexed positions that may carry a free finite block before their
    descending piece."""
    _require_trimmed(w)
    return [i for i in range(2, len(w) + 1)
            if w[i - 2] == "0" and w[i - 1] == "1" and not _is_case_c(w, i)]


@dataclass(frozen=True)
class Slot:
    index: int

    def __str__(self):
        return f"[a_{self.index}]+{OMEGA_STAR}"


@dataclass(frozen=True)
class OrderTypeTemplate:
    terms: tuple  # OMEGA, OMEGA_STAR or Slot

    @property
    def slots(self) -> list[int]:
        return [t.index for t in self.terms if isinstance(t, Slot)]

    def render(self) -> str:
        return "+".join(str(t) for t in self.terms)

    def instantiate(self, blocks: Optional[dict] = None):
        """Substitute ``[n_i]+w*`` for each slot (``n_i`` defaults to 0)."""
        from .ordertype import FIN, OrderType
        blocks = dict(blocks or {})
        unknown = set(blocks) - set(self.slots)
        if unknown:
            raise ReflordError(f"no slot at indices {sorted(unknown)}")
        out = []
        for t in self.terms:
            if isinstance(t, Slot):
                k = blocks.get(t.index, 0)
                if k:
                    out.append(FIN(k))
                out.append(OMEGA_STAR)
            else:
                out.append(t)
        return OrderType(tuple(out)).normalize()


def order_type_template(w: str) -> OrderTypeTemplate:
    slots = set(insertable_indices(w))
    terms = []
    for i, c in enumerate(w, start=1):
        if c == "0":
            terms.append(OMEGA)
        elif i in slots:
            terms.append(Slot(i))
        else:
            terms.append(OMEGA_STAR)
    return OrderTypeTemplate(tuple(terms))


def catalan(n: int) -> int:
    from math import comb
    return comb(2 * n, n) // (n + 1)
