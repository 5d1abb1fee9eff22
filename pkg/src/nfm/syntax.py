"""Reader, abstract syntax and printer for the parenthesized surface language.

Reading happens in two stages.  :func:`read_forms` turns text into a tree of
source forms (atoms, indexed atoms, ``,``-marked forms and the four kinds of
delimited groups).  :func:`parse_top`, :func:`parse_expr` and
:func:`parse_pattern` turn those forms into :class:`Expr` / :class:`Pattern`
nodes.  :func:`show` prints any node back to source text.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

from .errors import (
    MisplacedEllipsis,
    NfmSyntaxError,
    StrayToken,
    UnbalancedDelimiter,
    UnexpectedEnd,
)

# ---------------------------------------------------------------------------
# Source forms


@dataclass(frozen=True)
class Atom:
    text: str
    start: int = field(default=0, compare=False)
    end: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Indexed:
    """An identifier followed by ``_index`` parts, e.g. ``a_i`` or ``$a_(+ i 1)``."""

    base: str
    indexes: tuple
    start: int = field(default=0, compare=False)
    end: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Mark:
    """A ``,``-prefixed form (value-pattern)."""

    form: "SourceForm"
    start: int = field(default=0, compare=False)
    end: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Group:
    open: str
    items: tuple
    start: int = field(default=0, compare=False)
    end: int = field(default=0, compare=False)


SourceForm = Union[Atom, Indexed, Mark, Group]

CLOSERS = {"(": ")", "[": "]", "{": "}", "<": ">"}
_HARD_STOP = set("()[]{};,") | {" ", "\t", "\n", "\r", "\f", "\v"}


def _where(text, offset):
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return f"{line}:{col}"


class _Reader:
    def __init__(self, text):
        self.text = text
        self.i = 0

    def skip(self):
        text, n = self.text, len(self.text)
        while self.i < n:
            c = text[self.i]
            if c.isspace():
                self.i += 1
            elif c == ";":
                nl = text.find("\n", self.i)
                self.i = n if nl < 0 else nl + 1
            else:
                break

    def at_end(self):
        self.skip()
        return self.i >= len(self.text)

    def fail(self, cls, msg, offset):
        raise cls(msg, _where(self.text, offset))

    def form(self, closer):
        """Read one form; ``closer`` is the innermost open group's closing char."""
        self.skip()
        text = self.text
        if self.i >= len(text):
            self.fail(UnexpectedEnd, "unexpected end of input", self.i)
        c = text[self.i]
        start = self.i
        if c in "([{" or (c == "<" and self.i + 1 < len(text) and text[self.i + 1].isalpha()):
            return self.group(c)
        if c in ")]}" or (c == ">" and closer == ">"):
            self.fail(UnbalancedDelimiter, f"unexpected {c!r}", start)
        if c == ",":
            self.i += 1
            self.skip()
            if self.i >= len(text) or text[self.i] in ")]}" or (text[self.i] == ">" and closer == ">"):
                cls = UnexpectedEnd if self.i >= len(text) else StrayToken
                self.fail(cls, "',' without a following form", start)
            inner = self.form(closer)
            return Mark(inner, start, self.i)
        return self.atom(closer)

    def group(self, opener):
        start = self.i
        self.i += 1
        want = CLOSERS[opener]
        items = []
        while True:
            self.skip()
            if self.i >= len(self.text):
                self.fail(UnexpectedEnd, f"unclosed {opener!r}", start)
            c = self.text[self.i]
            if c == want:
                self.i += 1
                return Group(opener, tuple(items), start, self.i)
            if c in ")]}" or (c == ">" and want == ">"):
                self.fail(UnbalancedDelimiter, f"{c!r} does not close {opener!r}", self.i)
            items.append(self.form(want))

    def atom(self, closer):
        text, n = self.text, len(self.text)
        start = self.i
        parts = []  # str chunks and Group index forms
        chunk_start = self.i
        while self.i < n:
            c = text[self.i]
            if c in _HARD_STOP or (c == ">" and closer == ">"):
                break
            self.i += 1
            if c == "_" and self.i < n and text[self.i] == "(" and self.i - 1 > start:
                parts.append(text[chunk_start:self.i])
                parts.append(self.group("("))
                chunk_start = self.i
        parts.append(text[chunk_start:self.i])
        raw = text[start:self.i]
        if not raw:
            self.fail(StrayToken, f"unexpected {text[start]!r}", start)
        if len(parts) == 1:
            return _split_index(raw, start, self.i)
        return _build_indexed(parts, start, self.i)


def _split_index(raw, start, end):
    body = raw[1:] if raw.startswith("$") else raw
    if "_" not in body or body in ("_",) or body.startswith("_") or body == "...":
        return Atom(raw, start, end)
    pieces = raw.split("_")
    if any(p == "" for p in pieces):
        raise NfmSyntaxError(f"malformed indexed variable {raw!r}")
    return Indexed(pieces[0], tuple(Atom(p, start, end) for p in pieces[1:]), start, end)


def _build_indexed(parts, start, end):
    groups = [p for p in parts if isinstance(p, Group)]
    flat = "".join("\0" if isinstance(p, Group) else p for p in parts)
    base, *pieces = flat.split("_")
    indexes = []
    it = iter(groups)
    for piece in pieces:
        if piece == "\0":
            indexes.append(next(it))
        elif piece and "\0" not in piece:
            indexes.append(Atom(piece, start, end))
        else:
            raise NfmSyntaxError(f"malformed indexed variable near offset {start}")
    if not base or base == "$" or "\0" in base:
        raise NfmSyntaxError(f"malformed indexed variable near offset {start}")
    return Indexed(base, tuple(indexes), start, end)


def read_forms(text: str) -> list:
    """Read every top-level form of ``text`` in order."""
    r = _Reader(text)
    forms = []
    while not r.at_end():
        c = text[r.i]
        if c == ",":
            r.fail(StrayToken, "',' outside any group", r.i)
        f = r.form(None)
        if isinstance(f, Atom) and f.text == "...":
            r.fail(StrayToken, "'...' outside any group", f.start)
        forms.append(f)
    return forms


# ---------------------------------------------------------------------------
# Abstract syntax


@dataclass(frozen=True)
class IntConst:
    value: int


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class IndexedVar:
    name: str
    indexes: tuple


@dataclass(frozen=True)
class DataExpr:
    ctor: str
    args: tuple


@dataclass(frozen=True)
class TupleExpr:
    elems: tuple


@dataclass(frozen=True)
class CollectionExpr:
    elems: tuple


@dataclass(frozen=True)
class Lambda:
    params: tuple
    body: "Expr"


@dataclass(frozen=True)
class Clause:
    pattern: "Pattern"
    body: "Expr"


@dataclass(frozen=True)
class MatchAll:
    target: "Expr"
    matcher: "Expr"
    clause: Clause


@dataclass(frozen=True)
class Match:
    target: "Expr"
    matcher: "Expr"
    clauses: tuple


@dataclass(frozen=True)
class Apply:
    fn: "Expr"
    args: tuple


@dataclass(frozen=True)
class Define:
    name: str
    expr: "Expr"


@dataclass(frozen=True)
class DefineMatcher:
    """``(define-matcher $name {[<ctor field-matcher ...>] ...})``"""

    name: str
    ctors: tuple  # of (ctor-name, tuple of field matcher Exprs)


Expr = Union[IntConst, Var, IndexedVar, DataExpr, TupleExpr, CollectionExpr,
             Lambda, MatchAll, Match, Apply]


@dataclass(frozen=True)
class Wildcard:
    pass


@dataclass(frozen=True)
class PatVar:
    name: str


@dataclass(frozen=True)
class IndexedPatVar:
    name: str
    indexes: tuple


@dataclass(frozen=True)
class ValuePat:
    expr: Expr


@dataclass(frozen=True)
class InductivePat:
    ctor: str
    args: tuple


@dataclass(frozen=True)
class LoopPat:
    var: str
    start: Expr
    end: Expr
    repeat: "Pattern"
    tail: "Pattern"


@dataclass(frozen=True)
class LoopPlaceholder:
    pass


Pattern = Union[Wildcard, PatVar, IndexedPatVar, ValuePat, InductivePat, LoopPat, LoopPlaceholder]

WILDCARD = Wildcard()
PLACEHOLDER = LoopPlaceholder()

# ---------------------------------------------------------------------------
# Parser

_INT = re.compile(r"-?[0-9]+\Z")
_IDENT = re.compile(r"[A-Za-z+\-*/=<>!?%&^~.:@#][A-Za-z0-9+\-*/=<>!?%&^~.:@#']*\Z")
KEYWORDS = {"lambda", "match-all", "match", "define", "define-matcher", "loop"}


def _show_form(form):
    if isinstance(form, Atom):
        return form.text
    if isinstance(form, Indexed):
        return form.base + "".join("_" + _show_form(i) for i in form.indexes)
    if isinstance(form, Mark):
        return "," + _show_form(form.form)
    return form.open + " ".join(_show_form(i) for i in form.items) + CLOSERS[form.open]


def _err(production, form, reason):
    raise NfmSyntaxError(f"{production}: {reason} in {_show_form(form)}")


def _is_ident(text):
    return bool(_IDENT.match(text)) and text != "..." and not _INT.match(text)


def _pat_var_name(form, production):
    if isinstance(form, Atom) and form.text.startswith("$") and _is_ident(form.text[1:]):
        return form.text[1:]
    _err(production, form, "expected a pattern variable like $name")


def parse_top(form):
    """Parse a top-level form into :class:`Define`, :class:`DefineMatcher` or an expression."""
    if isinstance(form, Group) and form.open == "(" and form.items:
        head = form.items[0]
        if isinstance(head, Atom) and head.text == "define":
            if len(form.items) != 3:
                _err("define", form, "expected (define $name expr)")
            return Define(_pat_var_name(form.items[1], "define"), parse_expr(form.items[2]))
        if isinstance(head, Atom) and head.text == "define-matcher":
            return _parse_define_matcher(form)
    return parse_expr(form)


def _parse_define_matcher(form):
    if len(form.items) != 3:
        _err("define-matcher", form, "expected (define-matcher $name {[<ctor m ...>] ...})")
    name = _pat_var_name(form.items[1], "define-matcher")
    body = form.items[2]
    if not (isinstance(body, Group) and body.open == "{"):
        _err("define-matcher", form, "constructor list must be a {} group")
    ctors = []
    for entry in body.items:
        if not (isinstance(entry, Group) and entry.open == "[" and len(entry.items) == 1):
            _err("define-matcher", entry, "each constructor is written [<ctor m ...>]")
        sig = entry.items[0]
        if not (isinstance(sig, Group) and sig.open == "<"):
            _err("define-matcher", entry, "each constructor is written [<ctor m ...>]")
        head = sig.items[0]
        if not (isinstance(head, Atom) and _is_ident(head.text) and head.text[0].islower()):
            _err("define-matcher", sig, "constructor names start with a lowercase letter")
        ctors.append((head.text, tuple(parse_expr(f) for f in sig.items[1:])))
    return DefineMatcher(name, tuple(ctors))


def parse_expr(form):
    if isinstance(form, Atom):
        t = form.text
        if _INT.match(t):
            return IntConst(int(t))
        if t == "_" or t == "...":
            _err("expr", form, f"{t!r} is only allowed in patterns")
        if t.startswith("$"):
            _err("expr", form, "pattern variable outside a pattern")
        if t in KEYWORDS:
            _err("expr", form, f"keyword {t!r} used as a variable")
        if not _is_ident(t):
            _err("expr", form, "not an identifier or integer")
        return Var(t)
    if isinstance(form, Indexed):
        if form.base.startswith("$") or not _is_ident(form.base):
            _err("indexed variable", form, "bad variable name")
        return IndexedVar(form.base, tuple(parse_expr(i) for i in form.indexes))
    if isinstance(form, Mark):
        _err("expr", form, "value-pattern outside a pattern")
    items = form.items
    if form.open == "[":
        return TupleExpr(tuple(parse_expr(i) for i in items))
    if form.open == "{":
        return CollectionExpr(tuple(parse_expr(i) for i in items))
    if form.open == "<":
        head = items[0]
        if not (isinstance(head, Atom) and _is_ident(head.text) and head.text[0].isupper()):
            _err("algebraic data", form, "data constructors start with an uppercase letter")
        return DataExpr(head.text, tuple(parse_expr(i) for i in items[1:]))
    if not items:
        _err("application", form, "empty application")
    head = items[0]
    kw = head.text if isinstance(head, Atom) else None
    if kw == "lambda":
        return _parse_lambda(form)
    if kw == "match-all":
        if len(items) != 4:
            _err("match-all", form, "expected (match-all target matcher [pattern body])")
        return MatchAll(parse_expr(items[1]), parse_expr(items[2]), _parse_clause(items[3], "match-all"))
    if kw == "match":
        if len(items) != 4 or not (isinstance(items[3], Group) and items[3].open == "{"):
            _err("match", form, "expected (match target matcher {[pattern body] ...})")
        clauses = tuple(_parse_clause(c, "match") for c in items[3].items)
        return Match(parse_expr(items[1]), parse_expr(items[2]), clauses)
    if kw in ("define", "define-matcher"):
        _err(kw, form, "only allowed at top level")
    if kw == "loop":
        _err("expr", form, "loop is only allowed in patterns")
    return Apply(parse_expr(head), tuple(parse_expr(i) for i in items[1:]))


def _parse_lambda(form):
    items = form.items
    if len(items) != 3 or not (isinstance(items[1], Group) and items[1].open == "["):
        _err("lambda", form, "expected (lambda [$x ...] body)")
    params = tuple(_pat_var_name(p, "lambda") for p in items[1].items)
    if len(set(params)) != len(params):
        _err("lambda", form, "parameter names must be distinct")
    return Lambda(params, parse_expr(items[2]))


def _parse_clause(form, production):
    if not (isinstance(form, Group) and form.open == "[" and len(form.items) == 2):
        _err(production, form, "a match clause is [pattern body]")
    return Clause(parse_pattern(form.items[0]), parse_expr(form.items[1]))


def parse_pattern(form):
    """Parse a pattern and check that every ``...`` belongs to a loop."""
    pat = _pattern(form)
    check_placeholders(pat)
    return pat


def _pattern(form):
    if isinstance(form, Atom):
        t = form.text
        if t == "_":
            return WILDCARD
        if t == "...":
            return PLACEHOLDER
        if t.startswith("$") and _is_ident(t[1:]):
            return PatVar(t[1:])
        _err("pattern", form, "expected _, $var, ,expr, <ctor ...>, (loop ...) or ...")
    if isinstance(form, Indexed):
        if not (form.base.startswith("$") and _is_ident(form.base[1:])):
            _err("pattern", form, "indexed variables in patterns are written $name_index")
        return IndexedPatVar(form.base[1:], tuple(parse_expr(i) for i in form.indexes))
    if isinstance(form, Mark):
        return ValuePat(parse_expr(form.form))
    items = form.items
    if form.open == "<":
        head = items[0]
        if not (isinstance(head, Atom) and _is_ident(head.text) and head.text[0].islower()):
            _err("inductive-pattern", form, "pattern constructors start with a lowercase letter")
        return InductivePat(head.text, tuple(_pattern(i) for i in items[1:]))
    if form.open == "(" and items and isinstance(items[0], Atom) and items[0].text == "loop":
        if len(items) != 5:
            _err("loop-pattern", form, "expected (loop $i [start end] repeat tail)")
        var = _pat_var_name(items[1], "loop-pattern")
        rng = items[2]
        if not (isinstance(rng, Group) and rng.open == "[" and len(rng.items) == 2):
            _err("loop-pattern", form, "range must be [start end]")
        return LoopPat(var, parse_expr(rng.items[0]), parse_expr(rng.items[1]),
                       _pattern(items[3]), _pattern(items[4]))
    _err("pattern", form, "not a pattern")


def placeholder_chain(pattern):
    """Follow the last-argument chain of a loop's repeat-pattern.

    Descends into the last argument of inductive patterns and into the tail of
    nested loops.  Returns the path (tuple of child indexes) of the
    placeholder at the end of the chain, or None.
    """
    path = []
    p = pattern
    while True:
        if isinstance(p, LoopPlaceholder):
            return tuple(path)
        if isinstance(p, InductivePat) and p.args:
            path.append(len(p.args) - 1)
            p = p.args[-1]
        elif isinstance(p, LoopPat):
            path.append("tail")
            p = p.tail
        else:
            return None


def _children(p):
    if isinstance(p, InductivePat):
        return list(enumerate(p.args))
    if isinstance(p, LoopPat):
        return [("repeat", p.repeat), ("tail", p.tail)]
    return []


def check_placeholders(pattern):
    claimed = set()
    found = []

    def walk(p, path):
        if isinstance(p, LoopPlaceholder):
            found.append(path)
            return
        if isinstance(p, LoopPat):
            chain = placeholder_chain(p.repeat)
            if chain is None:
                raise MisplacedEllipsis(
                    f"loop-pattern without '...' at the end of its repeat-pattern: {show(p)}")
            claimed.add(path + ("repeat",) + chain)
        for key, child in _children(p):
            walk(child, path + (key,))

    walk(pattern, ())
    for path in found:
        if path not in claimed:
            raise MisplacedEllipsis(f"'...' must end the last-argument chain of a loop in {show(pattern)}")


# ---------------------------------------------------------------------------
# Printer


def show(node) -> str:
    """Render an Expr, Pattern, top-level form or clause as source text."""
    if isinstance(node, IntConst):
        return str(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, IndexedVar):
        return node.name + "".join("_" + _show_index(i) for i in node.indexes)
    if isinstance(node, DataExpr):
        return "<" + " ".join([node.ctor, *map(show, node.args)]) + ">"
    if isinstance(node, TupleExpr):
        return "[" + " ".join(map(show, node.elems)) + "]"
    if isinstance(node, CollectionExpr):
        return "{" + " ".join(map(show, node.elems)) + "}"
    if isinstance(node, Lambda):
        return "(lambda [" + " ".join("$" + p for p in node.params) + "] " + show(node.body) + ")"
    if isinstance(node, Clause):
        return "[" + show(node.pattern) + " " + show(node.body) + "]"
    if isinstance(node, MatchAll):
        return f"(match-all {show(node.target)} {show(node.matcher)} {show(node.clause)})"
    if isinstance(node, Match):
        clauses = " ".join(map(show, node.clauses))
        return f"(match {show(node.target)} {show(node.matcher)} {{{clauses}}})"
    if isinstance(node, Apply):
        return "(" + " ".join([show(node.fn), *map(show, node.args)]) + ")"
    if isinstance(node, Define):
        return f"(define ${node.name} {show(node.expr)})"
    if isinstance(node, DefineMatcher):
        sigs = " ".join("[<" + " ".join([c, *map(show, fs)]) + ">]" for c, fs in node.ctors)
        return f"(define-matcher ${node.name} {{{sigs}}})"
    if isinstance(node, Wildcard):
        return "_"
    if isinstance(node, LoopPlaceholder):
        return "..."
    if isinstance(node, PatVar):
        return "$" + node.name
    if isinstance(node, IndexedPatVar):
        return "$" + node.name + "".join("_" + _show_index(i) for i in node.indexes)
    if isinstance(node, ValuePat):
        return "," + show(node.expr)
    if isinstance(node, InductivePat):
        return "<" + " ".join([node.ctor, *map(show, node.args)]) + ">"
    if isinstance(node, LoopPat):
        return (f"(loop ${node.var} [{show(node.start)} {show(node.end)}] "
                f"{show(node.repeat)} {show(node.tail)})")
    raise TypeError(f"cannot show {node!r}")


def _show_index(expr):
    # a negative literal index would read back as part of the name
    if isinstance(expr, IntConst) and expr.value < 0:
        return f"(- 0 {-expr.value})"
    return show(expr)


def parse_program(text):
    """Read and parse ``text``; returns a list of (top-level node, source slice) pairs."""
    return [(parse_top(f), text[f.start:f.end]) for f in read_forms(text)]
