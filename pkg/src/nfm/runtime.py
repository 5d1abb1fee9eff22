"""Runtime values: thunks, environments, lazy collections and rendering.

Values in weak head normal form are plain Python objects:

* ``int`` for integers (arbitrary precision comes for free),
* :class:`DataVal` for constructor terms, including ``<True>``/``<False>``,
* :class:`TupleVal`, :class:`Closure`, :class:`Builtin`,
* collection cells, either :data:`NIL` or :class:`Cons`,
* matchers (see :mod:`nfm.matchers`).

Every component of a compound value is a :class:`Thunk`.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import BlackHole, TypeMismatch


class Stats:
    """Instrumentation counters used by the laziness tests."""

    def __init__(self):
        self.reset()

    def reset(self):
        self.thunks_forced = 0
        self.cells_forced = 0


stats = Stats()

_PENDING = object()
_RUNNING = object()


class Thunk:
    """A suspended computation, forced at most once."""

    __slots__ = ("_fn", "_value")

    def __init__(self, fn):
        self._fn = fn
        self._value = _PENDING

    @classmethod
    def ready(cls, value):
        t = cls.__new__(cls)
        t._fn = None
        t._value = value
        return t

    @property
    def forced(self):
        return self._value is not _PENDING and self._value is not _RUNNING

    def force(self):
        v = self._value
        if v is _PENDING:
            fn = self._fn
            self._value = _RUNNING
            try:
                v = fn()
            except BaseException:
                self._value = _PENDING
                raise
            self._value = v
            self._fn = None
            stats.thunks_forced += 1
            if v is NIL or type(v) is Cons:
                stats.cells_forced += 1
            return v
        if v is _RUNNING:
            raise BlackHole("thunk forced while being evaluated")
        return v

    def __repr__(self):
        return f"Thunk({self._value!r})" if self.forced else "Thunk(<pending>)"


# ---------------------------------------------------------------------------
# Environments


class Env:
    """A lexical frame.  Keys are names, or ``(name, (i, ...))`` for indexed variables."""

    __slots__ = ("vars", "parent")

    def __init__(self, vars=None, parent=None):
        self.vars = {} if vars is None else vars
        self.parent = parent

    def lookup(self, key):
        env = self
        while env is not None:
            t = env.vars.get(key)
            if t is not None:
                return t
            env = env.parent
        return None

    def extend(self, bindings):
        return Env(bindings, self) if bindings else self

    def define(self, key, thunk):
        self.vars[key] = thunk


# ---------------------------------------------------------------------------
# Values


@dataclass(frozen=True, eq=False)
class DataVal:
    ctor: str
    args: tuple = ()


@dataclass(frozen=True, eq=False)
class TupleVal:
    items: tuple


@dataclass(frozen=True, eq=False)
class Closure:
    params: tuple
    body: object
    env: Env


@dataclass(frozen=True, eq=False)
class Builtin:
    name: str
    arity: int | None  # None means variadic
    fn: object


class _Nil:
    __slots__ = ()

    def __repr__(self):
        return "NIL"


NIL = _Nil()


class Cons:
    __slots__ = ("head", "tail")

    def __init__(self, head, tail):
        self.head = head
        self.tail = tail


TRUE = DataVal("True")
FALSE = DataVal("False")


def boolean(flag):
    return TRUE if flag else FALSE


def is_collection(v):
    return v is NIL or type(v) is Cons


# ---------------------------------------------------------------------------
# Collections


def from_thunks(thunks, tail=None):
    """Build a collection from a sequence of element thunks, ending in ``tail``."""
    items = list(thunks)
    if not items:
        return NIL if tail is None else tail.force()
    last = Thunk.ready(NIL) if tail is None else tail
    for h in reversed(items[1:]):
        last = Thunk.ready(Cons(h, last))
    return Cons(items[0], last)


def from_values(values):
    return from_thunks([Thunk.ready(v) for v in values])


def lazy_concat(prefix, tail):
    """A thunk for ``prefix`` element thunks followed by the collection thunk ``tail``."""
    if not prefix:
        return tail
    prefix = tuple(prefix)
    return Thunk(lambda: from_thunks(prefix, tail))


def lazy_list(prefix):
    prefix = tuple(prefix)
    if not prefix:
        return Thunk.ready(NIL)
    return Thunk(lambda: from_thunks(prefix))


def from_iter(iterator):
    """A collection whose cells are pulled from ``iterator`` (of thunks) on demand."""
    try:
        h = next(iterator)
    except StopIteration:
        return NIL
    return Cons(h, Thunk(lambda: from_iter(iterator)))


def expect_collection(v, what="collection"):
    if v is NIL or type(v) is Cons:
        return v
    raise TypeMismatch(f"expected a {what}, got {render(v, limit=10)}")


def iter_thunks(cell):
    """Yield element thunks of a collection value, forcing cells as it goes."""
    cell = expect_collection(cell)
    while cell is not NIL:
        yield cell.head
        cell = expect_collection(cell.tail.force())


def force_list(cell):
    return list(iter_thunks(cell))


# ---------------------------------------------------------------------------
# Structural forms


def canonical(v):
    """Deep-force ``v`` into a hashable structural representation.

    Nontermination on infinite collections is accepted.
    """
    if type(v) is int:
        return v
    if v is NIL or type(v) is Cons:
        return ("coll", tuple(canonical(t.force()) for t in iter_thunks(v)))
    if type(v) is DataVal:
        return ("data", v.ctor, tuple(canonical(t.force()) for t in v.args))
    if type(v) is TupleVal:
        return ("tuple", tuple(canonical(t.force()) for t in v.items))
    raise TypeMismatch(f"no structural equality for {render(v, limit=10)}")


def render(v, limit=None):
    """Print a value in surface notation; collections are cut after ``limit`` elements."""
    out = []
    _render(v, limit, out)
    return "".join(out)


def _render(v, limit, out):
    if type(v) is int:
        out.append(str(v))
    elif v is NIL or type(v) is Cons:
        out.append("{")
        n = 0
        cell = v
        while cell is not NIL:
            if limit is not None and n >= limit:
                out.append(" ..." if n else "...")
                break
            if n:
                out.append(" ")
            _render(cell.head.force(), limit, out)
            n += 1
            cell = expect_collection(cell.tail.force())
        out.append("}")
    elif type(v) is DataVal:
        out.append("<" + v.ctor)
        for a in v.args:
            out.append(" ")
            _render(a.force(), limit, out)
        out.append(">")
    elif type(v) is TupleVal:
        out.append("[")
        for k, a in enumerate(v.items):
            if k:
                out.append(" ")
            _render(a.force(), limit, out)
        out.append("]")
    elif type(v) is Closure:
        out.append("#<lambda [" + " ".join("$" + p for p in v.params) + "]>")
    elif type(v) is Builtin:
        out.append(f"#<builtin {v.name}>")
    elif hasattr(v, "show"):
        out.append(f"#<matcher {v.show()}>")
    else:
        out.append(repr(v))
