"""Time ground enumeration under the star rules on a chain of k
disjunctions; k = 8 is the decidability smoke test."""

import argparse
import time

from ground_kit.bars import enumerate_grounds
from ground_kit.config import CalculusConfig
from ground_kit.formula import And, Atom, Or


def chain(k):
    f = Or(Atom("a1"), Atom("b1"))
    for i in range(2, k + 1):
        f = And(f, Or(Atom(f"a{i}"), Atom(f"b{i}")))
    return f


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-k", type=int, default=9)
    args = ap.parse_args()
    print(f"{'k':>3} {'selections':>10} {'grounds':>9} {'seconds':>8}")
    for k in range(1, args.max_k + 1):
        start = time.perf_counter()
        n = len(enumerate_grounds(chain(k), CalculusConfig(star=True)))
        print(f"{k:>3} {3 ** k:>10} {n:>9} {time.perf_counter() - start:>8.2f}")


if __name__ == "__main__":
    main()
