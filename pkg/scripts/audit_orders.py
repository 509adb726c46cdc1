"""Synthesize every reflection order indexed by a trimmed word (with and
without finite blocks) for the given types and audit each truncation."""
import argparse
import time

from reflord.suites import DEFAULT_TYPES, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--types", default=",".join(DEFAULT_TYPES))
    ap.add_argument("--level", type=int, default=6)
    args = ap.parse_args()
    types = args.types.split(",")
    for name in ("roundtrip", "audit"):
        start = time.perf_counter()
        rows = run_suite(name, types, args.level)
        for row in rows:
            print(f"{name:<10} {row.line()}")
        print(f"{name}: {sum(r.ok for r in rows)}/{len(rows)} in {time.perf_counter() - start:.1f}s")


if __name__ == "__main__":
    main()
