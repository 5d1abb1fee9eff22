"""Measure the two schedule-dependent regression bounds.

K: position (1-based) by which every pair [m n] with m+n <= 10 has appeared
in the result stream of the nats program.
cells: stream cells forced while printing ``take 8`` of that program.

    python scripts/measure_schedule.py [--max-sum 10]
"""
import argparse

from nfm import Interpreter
from nfm.runtime import stats

NATS_PROGRAM = "(match-all nats (set integer) [<cons $m <cons $n _>> [m n]])"


def pairs_prefix(count):
    """The first ``count`` results of the nats program as Python pairs."""
    interp = Interpreter(print_limit=None)
    (text,) = interp.eval_text(f"(take {count} {NATS_PROGRAM})")
    body = text.strip("{}")
    return [tuple(map(int, p.split())) for p in body[1:-1].split("] [")] if body else []


def fairness_k(max_sum=10, horizon=200):
    wanted = {(m, s - m) for s in range(2, max_sum + 1) for m in range(1, s)}
    for k, pair in enumerate(pairs_prefix(horizon), 1):
        wanted.discard(pair)
        if not wanted:
            return k
    raise RuntimeError(f"{len(wanted)} pairs missing from the first {horizon} results")


def cells_for_take8():
    interp = Interpreter()
    stats.reset()
    (out,) = interp.eval_text(f"(take 8 {NATS_PROGRAM})")
    return out, stats.cells_forced


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-sum", type=int, default=10)
    args = ap.parse_args()
    print("K =", fairness_k(args.max_sum))
    out, cells = cells_for_take8()
    print(out)
    print("cells forced =", cells)


if __name__ == "__main__":
    main()
