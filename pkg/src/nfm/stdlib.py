"""Builtin values and the pattern-matching list library.

The builtin frame holds arithmetic, the lazy list primitives (``take``,
``map``, ``append``), the infinite streams ``nats`` and ``primes`` and the
matcher constructors.  The library frame on top of it defines
``member?``, ``delete``, ``pm-map`` and ``pm-take`` by pattern matching, plus
the ``bool`` matcher.
"""
from __future__ import annotations

from itertools import count

from .errors import NegativeCount, TypeMismatch
from .evaluator import apply, evaluate
from .matchers import (
    EQ,
    INTEGER,
    SOMETHING,
    ListOf,
    MultisetOf,
    SetOf,
    TupleOf,
    declare_adt_matcher,
    is_matcher,
)
from .runtime import (
    NIL,
    Builtin,
    Closure,
    Env,
    Thunk,
    boolean,
    canonical,
    expect_collection,
    from_iter,
    iter_thunks,
    render,
)
from .syntax import Define, DefineMatcher, parse_program

# The list library written with pattern matching.  Free names in these
# definitions resolve in the builtin frame, so ``take`` and ``map`` inside
# the pattern-matching ``take`` are the builtins.
LIBRARY_SOURCE = """\
(define $map (lambda [$xs $fn] (match-all xs (list something)
  [<join _ <cons $x _>> (fn x)])))

(define $member? (lambda [$x $xs] (match xs (multiset eq)
  {[<cons ,x _> <True>] [_ <False>]})))

(define $delete (lambda [$x $xs] (match xs (list eq)
  {[<join $hs <cons ,x $ts>> (append hs ts)] [_ xs]})))

(define $take (lambda [$n $xs] (match xs (list something)
  {[(loop $i [1 n] <cons $a_i ...> _)
    (map (lambda [$i] a_i) (take n nats))]})))
"""

# library definition -> name exposed in the library frame
LIBRARY_EXPORTS = {"map": "pm-map", "member?": "member?", "delete": "delete", "take": "pm-take"}

PRELUDE_SOURCE = """\
(define-matcher $bool {[<true>] [<false>]})
"""


def _int(thunk, who):
    v = thunk.force()
    if type(v) is not int:
        raise TypeMismatch(f"{who} expects integers, got {render(v, limit=10)}")
    return v


def _add(*args):
    return sum(_int(a, "+") for a in args)


def _mul(*args):
    out = 1
    for a in args:
        out *= _int(a, "*")
    return out


def _sub(first, *rest):
    x = _int(first, "-")
    if not rest:
        return -x
    for a in rest:
        x -= _int(a, "-")
    return x


def _compare(name, op):
    def fn(a, b):
        return boolean(op(_int(a, name), _int(b, name)))
    return Builtin(name, 2, fn)


def _if(cond, then, other):
    c = cond.force()
    ctor = getattr(c, "ctor", None)
    if ctor == "True":
        return then.force()
    if ctor == "False":
        return other.force()
    raise TypeMismatch(f"if expects <True> or <False>, got {render(c, limit=10)}")


def builtin_take(n, xs):
    """First ``n`` elements of ``xs``, pulled lazily."""
    count_ = _int(n, "take")
    if count_ < 0:
        raise NegativeCount(f"take {count_}")

    def cells():
        rest = xs
        for _ in range(count_):
            cell = expect_collection(rest.force())
            if cell is NIL:
                return
            yield cell.head
            rest = cell.tail

    return from_iter(cells())


def _callable(v):
    return type(v) in (Closure, Builtin)


def builtin_map(a, b):
    # accepts (map fn xs) and (map xs fn)
    first = a.force()
    fn, xs = (first, b) if _callable(first) else (b.force(), a)
    if not _callable(fn):
        raise TypeMismatch(f"map expects a function, got {render(fn, limit=10)}")

    def cells():
        for h in iter_thunks(xs.force()):
            yield Thunk(lambda h=h: apply(fn, [h]))

    return from_iter(cells())


def builtin_append(xs, ys):
    def cells():
        yield from iter_thunks(xs.force())
        yield from iter_thunks(ys.force())

    return from_iter(cells())


def prime_numbers():
    """Primes in ascending order by trial division against the primes found so far."""
    found = []
    for n in count(2):
        for p in found:
            if p * p > n:
                found.append(n)
                yield n
                break
            if n % p == 0:
                break
        else:
            found.append(n)
            yield n


def builtin_primes():
    return from_iter(Thunk.ready(p) for p in prime_numbers())


def builtin_nats():
    return from_iter(Thunk.ready(n) for n in count(1))


def _matcher_arg(t, who):
    m = t.force()
    if not is_matcher(m):
        raise TypeMismatch(f"{who} expects a matcher, got {render(m, limit=10)}")
    return m


def _equal(a, b):
    return boolean(canonical(a.force()) == canonical(b.force()))


def builtin_frame():
    table = {
        "+": Builtin("+", None, _add),
        "-": Builtin("-", None, _sub),
        "*": Builtin("*", None, _mul),
        "quotient": Builtin("quotient", 2, lambda a, b: _int(a, "quotient") // _int(b, "quotient")),
        "modulo": Builtin("modulo", 2, lambda a, b: _int(a, "modulo") % _int(b, "modulo")),
        "=": Builtin("=", 2, _equal),
        "<": _compare("<", int.__lt__),
        "<=": _compare("<=", int.__le__),
        ">": _compare(">", int.__gt__),
        ">=": _compare(">=", int.__ge__),
        "if": Builtin("if", 3, _if),
        "take": Builtin("take", 2, builtin_take),
        "map": Builtin("map", 2, builtin_map),
        "append": Builtin("append", 2, builtin_append),
        "something": SOMETHING,
        "integer": INTEGER,
        "eq": EQ,
        "list": Builtin("list", 1, lambda m: ListOf(_matcher_arg(m, "list"))),
        "multiset": Builtin("multiset", 1, lambda m: MultisetOf(_matcher_arg(m, "multiset"))),
        "set": Builtin("set", 1, lambda m: SetOf(_matcher_arg(m, "set"))),
        "tuple": Builtin("tuple", None, lambda *ms: TupleOf(_matcher_arg(m, "tuple") for m in ms)),
    }
    frame = {k: Thunk.ready(v) for k, v in table.items()}
    frame["nats"] = Thunk(builtin_nats)
    frame["primes"] = Thunk(builtin_primes)
    return Env(frame)


def library_frame(builtins):
    frame = Env({}, builtins)
    for node, _src in parse_program(LIBRARY_SOURCE):
        assert isinstance(node, Define)
        frame.define(LIBRARY_EXPORTS[node.name], Thunk(lambda e=node.expr: evaluate(e, builtins)))
    for node, _src in parse_program(PRELUDE_SOURCE):
        assert isinstance(node, DefineMatcher)
        sigs = [(c, [evaluate(f, frame) for f in fields]) for c, fields in node.ctors]
        frame.define(node.name, Thunk.ready(declare_adt_matcher(node.name, sigs)))
    return frame


def base_env(with_library=True):
    builtins = builtin_frame()
    return library_frame(builtins) if with_library else builtins
