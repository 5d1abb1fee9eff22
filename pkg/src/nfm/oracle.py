"""Brute-force reference implementations used by the test-suite.

Nothing here touches the matching engine or the lazy runtime: targets are
plain Python lists of integers and results are computed eagerly by
exhaustive enumeration.

* lists: every structural decomposition, by recursion;
* multisets: every permutation of the position-labelled target is matched
  with list semantics and the results are de-duplicated by *witness* (which
  positions each pattern node consumed), so a value occurring twice still
  yields two results, once per position;
* sets: ``cons`` picks any position and leaves the whole set as the rest,
  ``join`` picks any position subset and leaves the whole set.

Collection-valued bindings are reported as tuples: in order for lists,
sorted for multisets and sets.
"""
from __future__ import annotations

from collections import Counter
from itertools import combinations, permutations

from .errors import OracleTooLarge
from .syntax import (
    Apply,
    InductivePat,
    IntConst,
    PatVar,
    ValuePat,
    Var,
    Wildcard,
    show,
)

ORACLE_CAP = 7


def _value(expr, bindings):
    if isinstance(expr, IntConst):
        return expr.value
    if isinstance(expr, Var):
        return bindings[expr.name]
    if isinstance(expr, Apply) and isinstance(expr.fn, Var) and expr.fn.name in ("+", "-"):
        a, b = (_value(x, bindings) for x in expr.args)
        return a + b if expr.fn.name == "+" else a - b
    raise ValueError(f"oracle cannot evaluate {show(expr)}")


def _bind(b, name, value):
    if name in b:
        raise ValueError(f"${name} bound twice")
    out = dict(b)
    out[name] = value
    return out


class _Labelled:
    """Matching over sequences of (position, value) pairs with list semantics."""

    def __init__(self, canon_coll, equal_coll):
        self.canon_coll = canon_coll
        self.equal_coll = equal_coll

    def elem(self, pat, item, b, path):
        pos, val = item
        if isinstance(pat, Wildcard):
            yield b, ((path, pos),)
        elif isinstance(pat, PatVar):
            yield _bind(b, pat.name, val), ((path, pos),)
        elif isinstance(pat, ValuePat):
            if _value(pat.expr, b) == val:
                yield b, ((path, pos),)
        else:
            raise ValueError(f"oracle: integer elements only take _, $x, ,e; got {show(pat)}")

    def coll(self, pat, items, b, path):
        here = ((path, frozenset(p for p, _ in items)),)
        values = tuple(v for _, v in items)
        if isinstance(pat, Wildcard):
            yield b, here
        elif isinstance(pat, PatVar):
            yield _bind(b, pat.name, self.canon_coll(values)), here
        elif isinstance(pat, ValuePat):
            if self.equal_coll(_value(pat.expr, b), values):
                yield b, here
        elif isinstance(pat, InductivePat) and pat.ctor == "nil" and not pat.args:
            if not items:
                yield b, here
        elif isinstance(pat, InductivePat) and pat.ctor == "cons" and len(pat.args) == 2:
            if items:
                for b1, w1 in self.elem(pat.args[0], items[0], b, path + (0,)):
                    for b2, w2 in self.coll(pat.args[1], items[1:], b1, path + (1,)):
                        yield b2, here + w1 + w2
        elif isinstance(pat, InductivePat) and pat.ctor == "join" and len(pat.args) == 2:
            for k in range(len(items) + 1):
                for b1, w1 in self.coll(pat.args[0], items[:k], b, path + (0,)):
                    for b2, w2 in self.coll(pat.args[1], items[k:], b1, path + (1,)):
                        yield b2, here + w1 + w2
        else:
            raise ValueError(f"oracle does not support {show(pat)}")


def _sorted(values):
    return tuple(sorted(values))


def _list_oracle(pattern, target):
    m = _Labelled(tuple, lambda a, b: tuple(a) == tuple(b))
    items = tuple(enumerate(target))
    return [b for b, _ in m.coll(pattern, items, {}, ())]


def _multiset_oracle(pattern, target):
    m = _Labelled(_sorted, lambda a, b: Counter(a) == Counter(b))
    seen = {}
    for perm in permutations(enumerate(target)):
        for b, witness in m.coll(pattern, perm, {}, ()):
            seen.setdefault(frozenset(witness), b)
    return list(seen.values())


def _set_oracle(pattern, target):
    def elem(pat, val, b):
        if isinstance(pat, Wildcard):
            return [b]
        if isinstance(pat, PatVar):
            return [_bind(b, pat.name, val)]
        if isinstance(pat, ValuePat):
            return [b] if _value(pat.expr, b) == val else []
        raise ValueError(f"oracle: integer elements only take _, $x, ,e; got {show(pat)}")

    def coll(pat, values, b):
        # every set-level target is either the whole set or a selected subset
        if isinstance(pat, Wildcard):
            return [b]
        if isinstance(pat, PatVar):
            return [_bind(b, pat.name, _sorted(values))]
        if isinstance(pat, ValuePat):
            return [b] if set(_value(pat.expr, b)) == set(values) else []
        if isinstance(pat, InductivePat) and pat.ctor == "nil":
            return [b] if not values else []
        if isinstance(pat, InductivePat) and pat.ctor == "cons":
            out = []
            for v in values:
                for b1 in elem(pat.args[0], v, b):
                    out.extend(coll(pat.args[1], values, b1))
            return out
        if isinstance(pat, InductivePat) and pat.ctor == "join":
            out = []
            idx = range(len(values))
            for r in range(len(values) + 1):
                for chosen in combinations(idx, r):
                    sub = tuple(values[i] for i in chosen)
                    for b1 in coll(pat.args[0], sub, b):
                        out.extend(coll(pat.args[1], values, b1))
            return out
        raise ValueError(f"oracle does not support {show(pat)}")

    return coll(pattern, tuple(target), {})


def oracle_enumerate(kind, pattern, target, cap=ORACLE_CAP):
    """All binding dicts of ``pattern`` against the finite integer list ``target``.

    ``kind`` is ``"list"``, ``"multiset"`` or ``"set"`` (element matcher ``integer``).
    """
    if len(target) > cap:
        raise OracleTooLarge(f"target of {len(target)} elements exceeds the oracle cap {cap}")
    fn = {"list": _list_oracle, "multiset": _multiset_oracle, "set": _set_oracle}[kind]
    return fn(pattern, list(target))


def as_multiset(results):
    """Results as a Counter of sorted binding tuples, for order-free comparison."""
    return Counter(tuple(sorted(b.items())) for b in results)


# ---------------------------------------------------------------------------
# Poker

SUITS = ("Spade", "Heart", "Club", "Diamond")

CATEGORIES = ("Straight-Flush", "Four-of-Kind", "Full-House", "Flush", "Straight",
              "Three-of-Kind", "Two-Pair", "One-Pair", "Nothing")


def sweep_deck():
    """20 cards: Spade and Heart 1-6, Club and Diamond 1-4.

    Uneven suits so that every category, including a plain flush, occurs.
    """
    tops = {"Spade": 6, "Heart": 6, "Club": 4, "Diamond": 4}
    return [(s, n) for s in SUITS for n in range(1, tops[s] + 1)]


def classify_hand(hand):
    """Rank-and-suit counting classifier; straights are five consecutive numbers, no wrap."""
    ranks = sorted(n for _, n in hand)
    counts = sorted(Counter(ranks).values(), reverse=True)
    flush = len({s for s, _ in hand}) == 1
    straight = counts[0] == 1 and ranks[-1] - ranks[0] == 4
    if straight and flush:
        return "Straight-Flush"
    if counts[0] == 4:
        return "Four-of-Kind"
    if counts[:2] == [3, 2]:
        return "Full-House"
    if flush:
        return "Flush"
    if straight:
        return "Straight"
    if counts[0] == 3:
        return "Three-of-Kind"
    if counts[:2] == [2, 2]:
        return "Two-Pair"
    if counts[0] == 2:
        return "One-Pair"
    return "Nothing"


def hand_source(hand):
    return "{" + " ".join(f"<Card <{s}> {n}>" for s, n in hand) + "}"
