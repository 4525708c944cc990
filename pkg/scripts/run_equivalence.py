"""Bars vs. saturation oracle over a formula corpus.

    python scripts/run_equivalence.py --height 3 --out results/eq_h3.json
    python scripts/run_equivalence.py --height 4 --config star=false,am=false

Prints one line per configuration and optionally writes every mismatch
(with both sides) to a JSON file.
"""

import argparse
import json
import pathlib
import time

from ground_kit.bars import enumerate_grounds, sorted_grounds
from ground_kit.config import ALL_CONFIGS
from ground_kit.corpus import exhaustive, mixed_sample
from ground_kit.oracle import ClaimUniverse, Oracle


def parse_config(text):
    for cfg in ALL_CONFIGS:
        if str(cfg) == text:
            return cfg
    raise argparse.ArgumentTypeError(f"expected one of {[str(c) for c in ALL_CONFIGS]}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--height", type=int, default=3, help="levels of the exhaustive corpus")
    ap.add_argument("--mixed", type=int, default=200, help="extra random formulas with -> and _|_")
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--config", type=parse_config, action="append",
                    help="e.g. star=true,am=false (repeatable; default all four)")
    ap.add_argument("--cap", type=int, default=14, help="oracle element cap when am=true")
    ap.add_argument("--out", type=pathlib.Path)
    args = ap.parse_args()

    corpus = exhaustive(args.height) + mixed_sample(args.mixed, seed=args.seed, max_height=args.height)
    summary = []
    for cfg in args.config or ALL_CONFIGS:
        cap = args.cap if cfg.am else 64
        fs = [f for f in corpus if len(ClaimUniverse.of(f).elements) <= cap]
        oracle = Oracle(cfg, cap)
        start = time.perf_counter()
        bad = []
        for f in fs:
            theirs = oracle.run(f).grounds()
            ours = enumerate_grounds(f, cfg)
            if ours != theirs:
                bad.append({"formula": f.text, "only_bars": sorted_grounds(ours - theirs),
                            "only_oracle": sorted_grounds(theirs - ours)})
        elapsed = time.perf_counter() - start
        print(f"{cfg}: {len(fs)} formulas, {len(bad)} mismatches, {elapsed:.1f}s", flush=True)
        summary.append({"cfg": str(cfg), "formulas": len(fs), "seconds": round(elapsed, 2), "mismatches": bad})
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(json.dumps(summary, indent=2) + "\n")


if __name__ == "__main__":
    main()
