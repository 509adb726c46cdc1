"""Named end-to-end checks, shared by the command line and the scripts."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Optional

from .biclosed import enumerate_biclosed
from .condense import order_type_of, signature_of_order
from .dyck import enumerate_words, insertable_indices, order_type_template
from .errors import ReflordError
from .ordertype import OrderType
from .rootsys import root_system
from .synth import (build_order, dihedral_violations, level_bound_default,
                    truncate, verify_reflection_order)

# Order types of reflection orders on affine A3, one row per trimmed word;
# ``a`` and ``b`` are the free finite blocks.
A3_TABLE = (
    ("0111", "w+w*+w*+w*"),
    ("00111", "w+w+w*+w*+w*"),
    ("000111", "w+w+w+w*+w*+w*"),
    ("011", "w+w*+w*"),
    ("0011", "w+w+w*+w*"),
    ("00011", "w+w+w+w*+w*"),
    ("01", "w+w*"),
    ("001", "w+w+w*"),
    ("0001", "w+w+w+w*"),
    ("001011", "w+w+[a]+w*+w+[b]+w*+w*"),
    ("01011", "w+[a]+w*+w+[b]+w*+w*"),
    ("00101", "w+w+[a]+w*+w+[b]+w*"),
    ("0101", "w+[a]+w*+w+[b]+w*"),
)

DEFAULT_TYPES = ("A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "G2")
ORACLE_TYPES = ("A1", "A2", "B2", "G2", "A3")


@dataclass(frozen=True)
class SuiteRow:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}" + (f"  {self.detail}" if self.detail else "")


def table_type(template: str, a: int = 0, b: int = 0) -> OrderType:
    return OrderType.parse(template.replace("[a]", f"[{a}]").replace("[b]", f"[{b}]")).normalize()


def _rs(label: str):
    return root_system(label[0], int(label[1:]))


def suite_a3_table(level: Optional[int] = None, params=range(3)) -> list:
    rs = root_system("A", 3)
    rows = []
    for word, template in A3_TABLE:
        slots = insertable_indices(word)
        combos = list(itertools.product(params, repeat=len(slots))) if slots else [()]
        bad = []
        for values in combos:
            blocks = dict(zip(slots, values))
            order = build_order(rs, word, blocks)
            got = order_type_of(order)
            want = table_type(template, *values)
            if got != want or signature_of_order(order) != word:
                bad.append(f"{blocks}: {got} != {want}")
        detail = f"{template}  ({len(combos)} block choice{'s' * (len(combos) > 1)})"
        rows.append(SuiteRow(word, not bad, "; ".join(bad) or detail))
    return rows


def suite_biclosed_oracle(types=ORACLE_TYPES, level=None) -> list:
    rows = []
    for label in types:
        rs = _rs(label)
        brute = enumerate_biclosed(rs, "brute")
        formula = enumerate_biclosed(rs, "formula")
        rows.append(SuiteRow(label, brute == formula,
                             f"{len(formula)} biclosed sets, 2^{len(rs.roots)} subsets scanned"))
    return rows


def _orders(types):
    for label in types:
        rs = _rs(label)
        for w in enumerate_words(rs.rank, "trimmed"):
            slots = insertable_indices(w)
            yield label, rs, w, {}
            if slots:
                yield label, rs, w, {i: 1 + k % 2 for k, i in enumerate(slots)}


def suite_roundtrip(types=DEFAULT_TYPES, level=None) -> list:
    rows = []
    for label in types:
        bad, count = [], 0
        for _, rs, w, blocks in _orders([label]):
            order = build_order(rs, w, blocks)
            count += 1
            sig = signature_of_order(order)
            ty = order_type_of(order)
            want = order_type_template(w).instantiate(blocks)
            if sig != w or ty != want:
                bad.append(f"{w} {blocks}: signature {sig}, type {ty} vs {want}")
        rows.append(SuiteRow(label, not bad, "; ".join(bad[:3]) or f"{count} orders"))
    return rows


def suite_dihedral(types=DEFAULT_TYPES, level=None) -> list:
    level = level_bound_default() if level is None else level
    rows = []
    for label in types:
        bad, count = [], 0
        for _, rs, w, blocks in _orders([label]):
            order = build_order(rs, w, blocks)
            count += 1
            v = dihedral_violations(rs, truncate(order, level), level)
            if v:
                bad.append(f"{w} {blocks}: {len(v)} directions")
        rows.append(SuiteRow(label, not bad, "; ".join(bad[:3]) or f"{count} orders at level <= {level}"))
    return rows


def suite_audit(types=DEFAULT_TYPES, level=None) -> list:
    level = level_bound_default() if level is None else level
    rows = []
    for label in types:
        bad, count = [], 0
        for _, rs, w, blocks in _orders([label]):
            report = verify_reflection_order(build_order(rs, w, blocks), level)
            count += 1
            if not report.ok:
                bad.append(f"{w} {blocks}: {report.summary()}")
        rows.append(SuiteRow(label, not bad, "; ".join(bad[:3]) or f"{count} orders at level <= {level}"))
    return rows


SUITES: dict[str, Callable] = {
    "a3-table": suite_a3_table,
    "biclosed-oracle": suite_biclosed_oracle,
    "roundtrip": suite_roundtrip,
    "dihedral": suite_dihedral,
    "audit": suite_audit,
}


def run_suite(name: str, types=None, level: Optional[int] = None) -> list:
    if name not in SUITES:
        raise ReflordError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    fn = SUITES[name]
    if name == "a3-table":
        return fn(level)
    return fn(types, level) if types else fn(level=level)
