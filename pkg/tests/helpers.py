"""Shared plumbing for the test modules: run the engine on plain Python data."""
from itertools import product

from nfm.engine import match_all
from nfm.matchers import INTEGER, ListOf, MultisetOf, SetOf
from nfm.runtime import NIL, Cons, Thunk, from_values, iter_thunks
from nfm.stdlib import base_env
from nfm.syntax import parse_pattern, read_forms

MATCHERS = {"list": ListOf, "multiset": MultisetOf, "set": SetOf}

BATTERY = (
    "<nil>",
    "<cons $x $r>",
    "<cons $x <cons $y $r>>",
    "<join $a $b>",
    "<cons $x <cons ,x $r>>",
    "<join _ <cons $x _>>",
    "<cons $x <cons ,(+ x 1) _>>",
)


def pattern(text):
    # read inside a clause so a bare value-pattern `,e` is legal
    (clause,) = read_forms(f"[{text} 0]")
    return parse_pattern(clause.items[0])


def targets(max_len=5, alphabet=(1, 2, 3)):
    for n in range(max_len + 1):
        yield from product(alphabet, repeat=n)


def plain(value, kind):
    """Engine value -> int or tuple (sorted unless ``kind`` is list)."""
    if type(value) is int:
        return value
    if value is NIL or type(value) is Cons:
        items = tuple(plain(t.force(), kind) for t in iter_thunks(value))
        return items if kind == "list" else tuple(sorted(items))
    raise TypeError(value)


def engine_results(kind, pat_text, target, env=None):
    env = env or base_env()
    m = MATCHERS[kind](INTEGER)
    thunk = Thunk.ready(from_values(list(target)))
    return [{k: plain(t.force(), kind) for k, t in b.items()}
            for b in match_all(thunk, m, pattern(pat_text), env)]
