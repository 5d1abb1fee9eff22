"""Classify every 5-card hand of the 20-card sweep deck with the pattern-matching
classifier and compare against the counting classifier.

    python scripts/poker_sweep.py [--limit N]
"""
import argparse
import time
from collections import Counter
from itertools import combinations
from pathlib import Path

from nfm import Interpreter
from nfm.oracle import classify_hand, hand_source, sweep_deck

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def poker_interpreter():
    interp = Interpreter()
    source = (CORPUS / "poker.nfm").read_text()
    head = source[:source.index("; one hand per category")]
    interp.eval_text(head)
    return interp


def sweep(limit=None):
    interp = poker_interpreter()
    hands = list(combinations(sweep_deck(), 5))[:limit]
    mismatches = []
    tally = Counter()
    for hand in hands:
        (got,) = interp.eval_text(f"(poker-hands {hand_source(hand)})")
        want = f"<{classify_hand(hand)}>"
        tally[want] += 1
        if got != want:
            mismatches.append((hand, got, want))
    return len(hands), tally, mismatches


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--limit", type=int, default=None)
    args = ap.parse_args()
    t0 = time.perf_counter()
    n, tally, bad = sweep(args.limit)
    dt = time.perf_counter() - t0
    for cat, k in sorted(tally.items(), key=lambda kv: -kv[1]):
        print(f"{cat:18} {k}")
    for hand, got, want in bad[:10]:
        print("MISMATCH", hand, got, want)
    print(f"{n} hands, {len(bad)} mismatches, {dt:.1f}s")


if __name__ == "__main__":
    main()
