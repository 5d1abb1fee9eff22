"""Matcher values.

A matcher decides two things for the engine: how an inductive pattern
``<ctor p ...>`` splits a target into sub-atoms (:meth:`decompose`), and when
a value-pattern ``,e`` matches (:meth:`value_equal`).  Wildcards and pattern
variables never reach the matcher: binding is the same for every matcher and
never forces the target.

``decompose`` returns an iterable of alternatives.  Each alternative is a
list of ``(pattern, target_thunk, matcher)`` atoms in left-to-right order.
The iterables are lazy so that infinite targets give infinite streams.
"""
from __future__ import annotations

from collections import Counter

from .errors import (
    DuplicateConstructor,
    EqualityTooLarge,
    MatcherMismatch,
    TypeMismatch,
    UnknownFieldMatcher,
    ValuePatternUnderSomething,
)
from .runtime import (
    NIL,
    DataVal,
    TupleVal,
    canonical,
    expect_collection,
    force_list,
    lazy_concat,
    lazy_list,
    render,
)

EQUALITY_SIZE_CAP = 64


class Matcher:
    name = "matcher"

    def decompose(self, ctor, args, target):
        raise MatcherMismatch(f"{self.show()} has no pattern constructor {ctor!r}")

    def value_equal(self, expected, target):
        raise NotImplementedError

    def show(self):
        return self.name

    def __repr__(self):
        return f"<matcher {self.show()}>"


def is_matcher(v):
    return isinstance(v, Matcher)


class Something(Matcher):
    name = "something"

    def decompose(self, ctor, args, target):
        raise MatcherMismatch(f"something only matches wildcards and pattern variables, not <{ctor} ...>")

    def value_equal(self, expected, target):
        raise ValuePatternUnderSomething("something only matches wildcards and pattern variables")


class Eq(Matcher):
    """Structural equality on fully forced values."""

    name = "eq"

    def value_equal(self, expected, target):
        return canonical(expected) == canonical(target.force())


class Integer(Eq):
    name = "integer"

    def value_equal(self, expected, target):
        got = target.force()
        if type(expected) is not int or type(got) is not int:
            raise TypeMismatch(
                f"integer matcher compares integers, got {render(expected, 10)} and {render(got, 10)}")
        return expected == got


SOMETHING = Something()
EQ = Eq()
INTEGER = Integer()


def _check_arity(matcher, ctor, args, n):
    if len(args) != n:
        raise MatcherMismatch(f"<{ctor}> under {matcher.show()} takes {n} argument(s), got {len(args)}")


def _elements(value):
    items = force_list(expect_collection(value))
    if len(items) > EQUALITY_SIZE_CAP:
        raise EqualityTooLarge(f"collection of {len(items)} elements exceeds {EQUALITY_SIZE_CAP}")
    return items


def _is_structural(m):
    return isinstance(m, Eq)


def _contains(m, expected_thunk, pool):
    v = expected_thunk.force()
    return any(m.value_equal(v, t) for t in pool)


class _Collection(Matcher):
    kind = ""

    def __init__(self, elem):
        self.elem = elem

    def show(self):
        return f"({self.kind} {self.elem.show()})"

    def decompose(self, ctor, args, target):
        if ctor not in ("nil", "cons", "join"):
            raise MatcherMismatch(f"{self.show()} has no pattern constructor {ctor!r}")
        _check_arity(self, ctor, args, 0 if ctor == "nil" else 2)
        return getattr(self, "_" + ctor)(*args, target)

    def _nil(self, target):
        if expect_collection(target.force()) is NIL:
            return ([],)
        return ()


class ListOf(_Collection):
    kind = "list"

    def _cons(self, p1, p2, target):
        cell = expect_collection(target.force())
        if cell is NIL:
            return ()
        return ([(p1, cell.head, self.elem), (p2, cell.tail, self)],)

    def _join(self, p1, p2, target):
        # split points 0, 1, 2, ... in increasing order
        prefix = []
        rest = target
        while True:
            yield [(p1, lazy_list(prefix), self), (p2, rest, self)]
            cell = expect_collection(rest.force())
            if cell is NIL:
                return
            prefix.append(cell.head)
            rest = cell.tail

    def value_equal(self, expected, target):
        xs, ys = _elements(expected), _elements(target.force())
        return len(xs) == len(ys) and all(
            self.elem.value_equal(x.force(), y) for x, y in zip(xs, ys))


def _positions(target):
    """Yield (index, head thunk, tail thunk) for each cell of a collection."""
    rest = target
    j = 0
    while True:
        cell = expect_collection(rest.force())
        if cell is NIL:
            return
        yield j, cell.head, cell.tail
        rest = cell.tail
        j += 1


def _subsets(target):
    """Index subsets in binary-counting order: yields (selected, unselected, rest-thunk).

    ``rest`` is the part of the target past the highest position considered,
    so infinite targets enumerate by increasing highest selected index.
    """
    heads = []
    tails = [target]
    done = False
    mask = 0
    while True:
        hi = mask.bit_length()
        while len(heads) < hi and not done:
            cell = expect_collection(tails[-1].force())
            if cell is NIL:
                done = True
            else:
                heads.append(cell.head)
                tails.append(cell.tail)
        if hi > len(heads):
            return
        sel = [heads[i] for i in range(hi) if mask >> i & 1]
        unsel = [heads[i] for i in range(hi) if not mask >> i & 1]
        yield sel, unsel, tails[hi]
        mask += 1


class MultisetOf(_Collection):
    kind = "multiset"

    def _cons(self, p1, p2, target):
        prefix = []
        for _, head, tail in _positions(target):
            yield [(p1, head, self.elem), (p2, lazy_concat(prefix, tail), self)]
            prefix.append(head)

    def _join(self, p1, p2, target):
        for sel, unsel, rest in _subsets(target):
            yield [(p1, lazy_list(sel), self), (p2, lazy_concat(unsel, rest), self)]

    def value_equal(self, expected, target):
        xs, ys = _elements(expected), _elements(target.force())
        if len(xs) != len(ys):
            return False
        if _is_structural(self.elem):
            return Counter(canonical(x.force()) for x in xs) == Counter(canonical(y.force()) for y in ys)
        # element equality is an equivalence relation, so pairing each element
        # with any unused equal partner never blocks a perfect pairing
        pool = list(ys)
        for x in xs:
            v = x.force()
            for k, y in enumerate(pool):
                if self.elem.value_equal(v, y):
                    del pool[k]
                    break
            else:
                return False
        return True


class SetOf(_Collection):
    kind = "set"

    def _cons(self, p1, p2, target):
        for _, head, _tail in _positions(target):
            yield [(p1, head, self.elem), (p2, target, self)]

    def _join(self, p1, p2, target):
        for sel, _unsel, _rest in _subsets(target):
            yield [(p1, lazy_list(sel), self), (p2, target, self)]

    def value_equal(self, expected, target):
        xs, ys = _elements(expected), _elements(target.force())
        if _is_structural(self.elem):
            return {canonical(x.force()) for x in xs} == {canonical(y.force()) for y in ys}
        return all(_contains(self.elem, x, ys) for x in xs) and all(
            _contains(self.elem, y, xs) for y in ys)


class TupleOf(Matcher):
    """Componentwise matcher for tuples; pattern constructor ``<tuple p ...>``."""

    def __init__(self, elems):
        self.elems = tuple(elems)

    def show(self):
        return "(tuple " + " ".join(m.show() for m in self.elems) + ")"

    def _items(self, v):
        if type(v) is not TupleVal or len(v.items) != len(self.elems):
            raise TypeMismatch(f"{self.show()} expects a {len(self.elems)}-tuple, got {render(v, 10)}")
        return v.items

    def decompose(self, ctor, args, target):
        if ctor != "tuple":
            raise MatcherMismatch(f"{self.show()} has no pattern constructor {ctor!r}")
        _check_arity(self, ctor, args, len(self.elems))
        items = self._items(target.force())
        return ([(p, t, m) for p, t, m in zip(args, items, self.elems)],)

    def value_equal(self, expected, target):
        xs, ys = self._items(expected), self._items(target.force())
        return all(m.value_equal(x.force(), y) for m, x, y in zip(self.elems, xs, ys))


def data_name(ctor):
    """Data constructor for a pattern constructor: ``card`` -> ``Card``."""
    return ctor[:1].upper() + ctor[1:]


class AdtMatcher(Matcher):
    """Matcher for algebraic data declared with ``define-matcher``."""

    def __init__(self, name, signatures):
        self.name = name
        self.signatures = dict(signatures)  # pattern ctor -> tuple of field matchers

    def decompose(self, ctor, args, target):
        fields = self.signatures.get(ctor)
        if fields is None:
            raise MatcherMismatch(f"{self.name} has no pattern constructor {ctor!r}")
        if len(args) != len(fields):
            _check_arity(self, ctor, args, len(fields))
        v = target.force()
        if type(v) is not DataVal:
            raise TypeMismatch(f"{self.name} expects constructor data, got {render(v, 10)}")
        if v.ctor != data_name(ctor) or len(v.args) != len(fields):
            return ()
        return (list(zip(args, v.args, fields)),)

    def value_equal(self, expected, target):
        got = target.force()
        if type(expected) is not DataVal or type(got) is not DataVal:
            raise TypeMismatch(f"{self.name} compares constructor data")
        if expected.ctor != got.ctor or len(expected.args) != len(got.args):
            return False
        fields = self.signatures.get(expected.ctor[:1].lower() + expected.ctor[1:])
        if fields is None or len(fields) != len(got.args):
            return canonical(expected) == canonical(got)
        return all(m.value_equal(x.force(), y) for m, x, y in zip(fields, expected.args, got.args))


def declare_adt_matcher(name, signatures):
    """Build an :class:`AdtMatcher` from ``[(ctor, [field matcher values])]``."""
    table = {}
    for ctor, fields in signatures:
        if ctor in table:
            raise DuplicateConstructor(f"{ctor!r} declared twice in matcher {name}")
        for f in fields:
            if not is_matcher(f):
                raise UnknownFieldMatcher(f"field of <{ctor}> in {name} is not a matcher: {render(f, 10)}")
        table[ctor] = tuple(fields)
    return AdtMatcher(name, table)

