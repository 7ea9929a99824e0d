"""Run the built-in corpus and print one line per entry with its verdict table.

Exit status 1 if any entry fails to reproduce its expected table or breaks
the implication diagram.
"""
from __future__ import annotations

import argparse
import sys
import time

from newtonflat.corpus import CORPUS, run_entry


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--budget", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    failed = 0
    start = time.perf_counter()
    for e in CORPUS:
        t0 = time.perf_counter()
        res = run_entry(e, args.budget, args.seed)
        status = "ok" if res.passed else "FAIL"
        failed += not res.passed
        print(f"{e.id:16s} {res.table}  expected {e.expected}  {status:4s} {time.perf_counter() - t0:6.2f}s  {e.title}")
    print(f"{len(CORPUS) - failed}/{len(CORPUS)} entries reproduced in {time.perf_counter() - start:.1f}s")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
