"""Print the order types of reflection orders on affine A3, one row per
trimmed word, with the free blocks realized for a few sizes."""
import argparse

from reflord import root_system
from reflord.condense import order_type_of, signature_of_order
from reflord.dyck import insertable_indices
from reflord.suites import A3_TABLE
from reflord.synth import build_order


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-block", type=int, default=2)
    args = ap.parse_args()
    rs = root_system("A", 3)
    for word, template in A3_TABLE:
        slots = insertable_indices(word)
        realized = []
        for a in range(args.max_block + 1):
            blocks = {i: a for i in slots}
            order = build_order(rs, word, blocks)
            assert signature_of_order(order) == word
            realized.append(order_type_of(order).render())
            if not slots:
                break
        print(f"{word:<7} {template:<26} " + " | ".join(realized))


if __name__ == "__main__":
    main()
