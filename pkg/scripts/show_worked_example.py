"""Walk through word 001011 on A3 with blocks a=2, b=1: chain, order
prefix, condensation and order type."""
import argparse

from reflord import root_system
from reflord.cli import dump_chain
from reflord.condense import condensation, order_type_of
from reflord.synth import build_order, truncate


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--level", type=int, default=2)
    args = ap.parse_args()
    rs = root_system("A", 3)
    order = build_order(rs, "001011", {3: 2, 5: 1})
    for i, step in enumerate(dump_chain(order.chain)["steps"]):
        print(f"B_{i}: delta1={step['delta1']} delta2={step['delta2']}")
    print("order up to level", args.level)
    print("  " + " < ".join(str(x) for x in truncate(order, args.level)))
    data = condensation(order)
    print("n:", {str(list(k)): v for k, v in data.n_map.items()})
    for j in data.j_sets:
        d = j.descriptor
        print(f"{[f'{k}{list(a)}' for k, a in j.tags]}: |core|={len(d.core)} "
              f"added={sorted(map(str, d.added))} removed={sorted(map(str, d.removed))}")
    print("order type:", order_type_of(order))


if __name__ == "__main__":
    main()
