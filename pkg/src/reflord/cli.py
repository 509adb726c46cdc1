"""``reflord``: command-line access to the pipeline.

Exit status is 0 on success, 1 on a domain error (bad word, failed suite)
and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .biclosed import (AdmissibleChain, enumerate_biclosed, is_biclosed,
                       signature_of_chain)
from .condense import condensation, order_type_of, signature_of_order
from .dyck import (classify_word, enumerate_words, insertable_indices,
                   order_type_template)
from .errors import ReflordError
from .rootsys import height, root_system
from .suites import SUITES, run_suite
from .synth import build_order, chain_from_word, level_bound_default, truncate


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def parse_blocks(text: Optional[str]) -> dict:
    """``"3=2,5=1"`` -> ``{3: 2, 5: 1}``."""
    if not text:
        return {}
    out = {}
    for item in text.split(","):
        key, sep, value = item.partition("=")
        if not sep:
            raise ReflordError(f"block assignment {item!r} is not INDEX=SIZE")
        try:
            out[int(key)] = int(value)
        except ValueError:
            raise ReflordError(f"block assignment {item!r} is not INDEX=SIZE") from None
    return out


def _simple_indices(rs, roots) -> list:
    return sorted(rs.simples.index(a) + 1 for a in roots)


def dump_chain(chain: AdmissibleChain) -> dict:
    rs = chain.rs
    return {
        "family": rs.ctype.family,
        "rank": rs.rank,
        "signature": signature_of_chain(chain),
        "steps": [{"delta1": _simple_indices(rs, d1), "delta2": _simple_indices(rs, d2)}
                  for d1, d2 in chain.steps],
        "sets": [[list(r) for r in sorted(b.roots)] for b in chain.sets],
    }


def load_chain(data: dict) -> AdmissibleChain:
    rs = root_system(data["family"], data["rank"])
    steps = tuple((frozenset(rs.simple(i) for i in s["delta1"]),
                   frozenset(rs.simple(i) for i in s["delta2"])) for s in data["steps"])
    return AdmissibleChain(rs, rs.standard_positive_system, steps)


def order_report(request: dict) -> dict:
    """``{"word", "family", "rank", "blocks", "truncate_level"}`` ->
    ``{"chain", "order_prefix", "order_type", ...}``."""
    rs = root_system(request["family"], int(request["rank"]))
    blocks = {int(k): int(v) for k, v in (request.get("blocks") or {}).items()}
    level = int(request.get("truncate_level", 0))
    order = build_order(rs, request["word"], blocks)
    return {
        "word": order.word,
        "family": rs.ctype.family,
        "rank": rs.rank,
        "blocks": {str(k): v for k, v in sorted(blocks.items())},
        "truncate_level": level,
        "chain": dump_chain(order.chain),
        "pieces": [p.kind for p in order.pieces],
        "order_prefix": [str(x) for x in truncate(order, level)],
        "order_type": order_type_of(order).render(),
        "signature": signature_of_order(order),
    }


# ---------------------------------------------------------------- commands

def cmd_roots(args, out):
    rs = root_system(args.family, args.rank)
    if args.json:
        out(_dumps({
            "type": str(rs.ctype),
            "cartan": [list(row) for row in rs.cartan],
            "simple_roots": [list(a) for a in rs.simples],
            "positive_roots": [list(r) for r in rs.roots[: len(rs.positives)]],
            "highest_root": list(rs.highest_root),
        }))
        return
    out(f"{rs.ctype}: {len(rs.roots)} roots, {len(rs.positives)} positive, "
        f"highest root {list(rs.highest_root)}")
    out("cartan: " + " ".join(str(list(row)) for row in rs.cartan))
    for r in rs.roots[: len(rs.positives)]:
        out(f"  {str(list(r)):<24} height {height(r):>2}  |r|^2 = {rs.pair(r, r)}")


def cmd_biclosed(args, out):
    rs = root_system(args.family, args.rank)
    if args.action == "enum":
        family = enumerate_biclosed(rs, args.method)
        sets = sorted(sorted(list(r) for r in s) for s in family)
        sets.sort(key=len)
        if args.json:
            out(_dumps({"type": str(rs.ctype), "method": args.method,
                        "count": len(sets), "sets": sets}))
        else:
            out(f"{rs.ctype}: {len(sets)} biclosed sets ({args.method})")
            for s in sets:
                out("  " + json.dumps(s))
        return
    if args.set is None:
        raise ReflordError("biclosed check needs --set JSON")
    roots = [tuple(r) for r in json.loads(args.set)]
    res = is_biclosed(rs, roots)
    report = {"closed": res.closed, "co_closed": res.co_closed, "biclosed": res.biclosed}
    out(_dumps(report) if args.json else " ".join(f"{k}={v}" for k, v in report.items()))


def cmd_dyck(args, out):
    if args.action == "enum":
        words = enumerate_words(args.n, args.kind)
        out(_dumps(words) if args.json else "\n".join(words))
        return
    if args.word is None:
        raise ReflordError("dyck check needs --word")
    cls = classify_word(args.word, args.n)
    report = {"word": args.word, "n": args.n, "extended": cls.extended, "trimmed": cls.trimmed}
    if cls.trimmed:
        report["insertable"] = insertable_indices(args.word)
        report["template"] = order_type_template(args.word).render()
    if args.json:
        out(_dumps(report))
    else:
        out(" ".join(f"{k}={v}" for k, v in report.items()))
    if not (cls.extended if args.kind == "extended" else cls.trimmed):
        raise SystemExit(1)


def cmd_chain(args, out):
    rs = root_system(args.family, args.rank)
    chain = chain_from_word(rs, args.word)
    data = dump_chain(chain)
    if args.json:
        out(_dumps(data))
        return
    out(f"{rs.ctype} word {args.word}: signature {data['signature']}")
    for i, s in enumerate(data["steps"]):
        out(f"  B_{i}: delta1={s['delta1']} delta2={s['delta2']}  |B|={len(data['sets'][i])}")


def cmd_order(args, out):
    report = order_report({"word": args.word, "family": args.family, "rank": args.rank,
                           "blocks": parse_blocks(args.blocks),
                           "truncate_level": args.truncate_level})
    if args.json:
        out(_dumps(report))
        return
    out(f"order type {report['order_type']}  signature {report['signature']}")
    out(f"pieces: {' '.join(report['pieces'])}")
    for x in report["order_prefix"]:
        out("  " + x)


def cmd_ordertype(args, out):
    rs = root_system(args.family, args.rank)
    order = build_order(rs, args.word, parse_blocks(args.blocks))
    ty = order_type_of(order)
    out(_dumps({"order_type": ty.render()}) if args.json else ty.render())


def cmd_condense(args, out):
    rs = root_system(args.family, args.rank)
    data = condensation(build_order(rs, args.word, parse_blocks(args.blocks)))
    out(_dumps(data.to_json()))


def cmd_verify(args, out):
    types = args.types.split(",") if args.types else None
    level = args.level if args.level is not None else level_bound_default()
    rows = run_suite(args.suite, types, level)
    for row in rows:
        out(row.line())
    passed = sum(r.ok for r in rows)
    out(f"{args.suite}: {passed}/{len(rows)} PASS")
    if passed != len(rows):
        raise SystemExit(1)


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="reflord", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def typed(sp):
        sp.add_argument("--family", required=True, choices=list("ABCDEFG"))
        sp.add_argument("--rank", required=True, type=int)

    def jsonflag(sp):
        sp.add_argument("--json", action="store_true", help="machine-readable output")

    sp = sub.add_parser("roots", help="root system data")
    typed(sp), jsonflag(sp)
    sp.set_defaults(func=cmd_roots)

    sp = sub.add_parser("biclosed", help="enumerate or check biclosed sets")
    sp.add_argument("action", choices=["enum", "check"])
    typed(sp), jsonflag(sp)
    sp.add_argument("--method", choices=["brute", "formula"], default="formula")
    sp.add_argument("--set", help="JSON list of roots in simple-root coordinates")
    sp.set_defaults(func=cmd_biclosed)

    sp = sub.add_parser("dyck", help="enumerate or check Dyck words")
    sp.add_argument("action", choices=["enum", "check"])
    sp.add_argument("--n", required=True, type=int)
    sp.add_argument("--kind", choices=["extended", "trimmed"], default="trimmed")
    sp.add_argument("--word")
    jsonflag(sp)
    sp.set_defaults(func=cmd_dyck)

    sp = sub.add_parser("chain", help="admissible chain for a trimmed word")
    typed(sp), jsonflag(sp)
    sp.add_argument("--word", required=True)
    sp.set_defaults(func=cmd_chain)

    sp = sub.add_parser("order", help="synthesize and truncate a reflection order")
    typed(sp), jsonflag(sp)
    sp.add_argument("--word", required=True)
    sp.add_argument("--blocks", help="INDEX=SIZE,... at insertable indices")
    sp.add_argument("--truncate-level", type=int, default=0)
    sp.set_defaults(func=cmd_order)

    sp = sub.add_parser("ordertype", help="order type of a synthesized order")
    typed(sp), jsonflag(sp)
    sp.add_argument("--word", required=True)
    sp.add_argument("--blocks")
    sp.set_defaults(func=cmd_ordertype)

    sp = sub.add_parser("condense", help="condensation data of a synthesized order (JSON)")
    typed(sp)
    sp.add_argument("--word", required=True)
    sp.add_argument("--blocks")
    sp.set_defaults(func=cmd_condense)

    sp = sub.add_parser("verify", help="run a named check suite")
    sp.add_argument("--suite", required=True, choices=list(SUITES))
    sp.add_argument("--level", type=int)
    sp.add_argument("--types", help="comma-separated types, e.g. A2,G2")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[list] = None, out=print) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args, out)
    except ReflordError as exc:
        print(f"reflord: error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:
        return int(exc.code or 0)
    return 0


if __name__ == "__main__":
    sys.exit(main())
