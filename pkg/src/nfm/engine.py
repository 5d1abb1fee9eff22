"""The nondeterministic matching machine.

A :class:`MatchState` holds a stack of matching atoms ``(pattern, target,
matcher)`` and the pattern-variable bindings collected so far.  :func:`step`
pops the head atom and returns the successor states; a state with an empty
stack is a success leaf.  :func:`schedule` walks the resulting search tree
breadth-first in round-robin sweeps so that every success is reached after
finitely many steps, even when some branches have infinitely many
successors.
"""
from __future__ import annotations

from . import evaluator
from .errors import (
    DuplicateBinding,
    NoMatch,
    NonIntegerLoopBound,
    TypeMismatch,
)
from .syntax import (
    Apply,
    Clause,
    CollectionExpr,
    DataExpr,
    IndexedPatVar,
    IndexedVar,
    InductivePat,
    IntConst,
    Lambda,
    LoopPat,
    LoopPlaceholder,
    Match,
    MatchAll,
    PatVar,
    TupleExpr,
    ValuePat,
    Var,
    Wildcard,
    show,
)


class MatchState:
    """``stack`` is a linked list ``(atom, rest)`` or None; ``bindings`` maps keys to thunks."""

    __slots__ = ("stack", "bindings")

    def __init__(self, stack, bindings):
        self.stack = stack
        self.bindings = bindings

    @property
    def is_leaf(self):
        return self.stack is None

    def atoms(self):
        out = []
        s = self.stack
        while s is not None:
            out.append(s[0])
            s = s[1]
        return out

    def __repr__(self):
        atoms = ", ".join(f"({show(p)}, {m.show()})" for p, _, m in self.atoms())
        return f"MatchState([{atoms}], {sorted(map(str, self.bindings))})"


def initial_state(pattern, target, matcher, bindings=None):
    return MatchState(((pattern, target, matcher), None), {} if bindings is None else bindings)


def _evaluate(expr, env):
    return evaluator.evaluate(expr, env)


def _push(atoms, rest):
    for atom in reversed(atoms):
        rest = (atom, rest)
    return rest


def _bind(bindings, key, thunk):
    if key in bindings:
        name = key if isinstance(key, str) else key[0] + "".join(f"_{i}" for i in key[1])
        raise DuplicateBinding(f"pattern variable ${name} bound twice")
    new = dict(bindings)
    new[key] = thunk
    return new


def eval_indexes(indexes, env):
    out = []
    for e in indexes:
        v = _evaluate(e, env)
        if type(v) is not int:
            raise TypeMismatch(f"index {show(e)} is not an integer")
        out.append(v)
    return tuple(out)


def step(state, env):
    """Decompose the head atom of ``state`` (whose stack must be non-empty).

    Returns the successors: a single :class:`MatchState`, None when the atom
    fails, or an iterable of states for a nondeterministic decomposition.
    """
    (pat, target, matcher), rest = state.stack
    b = state.bindings
    t = type(pat)
    if t is Wildcard:
        return MatchState(rest, b)
    if t is PatVar:
        return MatchState(rest, _bind(b, pat.name, target))
    if t is InductivePat:
        alts = matcher.decompose(pat.ctor, pat.args, target)
        if type(alts) is tuple:
            if not alts:
                return None
            if len(alts) == 1:
                return MatchState(_push(alts[0], rest), b)
        return (MatchState(_push(alt, rest), b) for alt in alts)
    if t is ValuePat:
        expected = _evaluate(pat.expr, env.extend(b))
        return MatchState(rest, b) if matcher.value_equal(expected, target) else None
    if t is IndexedPatVar:
        key = (pat.name, eval_indexes(pat.indexes, env.extend(b)))
        return MatchState(rest, _bind(b, key, target))
    if t is LoopPat:
        return MatchState(((expand_loop(pat, b, env), target, matcher), rest), b)
    if t is LoopPlaceholder:
        raise AssertionError("'...' reached the engine outside a loop expansion")
    raise TypeError(f"not a pattern: {pat!r}")


def successors(state, env):
    """The successor stream of ``state`` as a list (for inspection and tests)."""
    r = step(state, env)
    if r is None:
        return []
    if type(r) is MatchState:
        return [r]
    return list(r)


def schedule(root, env):
    """Fair enumeration of the success bindings below ``root``.

    The working list holds successor streams.  Each sweep takes at most one
    node from every stream present at the start of the sweep: leaves are
    emitted, inner nodes are stepped and their successor streams appended
    after all existing entries.  Exhausted streams are dropped.

    A stream with exactly one state is stored as that state and dropped as
    soon as it is taken; it would be found exhausted on the next sweep
    without emitting anything, so the order is the same.
    """
    if root.stack is None:
        yield root.bindings
        return
    first = step(root, env)
    if first is None:
        return
    working = [first if type(first) is MatchState else iter(first)]
    State = MatchState
    while working:
        survivors = []
        keep = survivors.append
        spawned = []
        spawn = spawned.append
        for entry in working:
            if type(entry) is State:
                state = entry
            else:
                state = next(entry, None)
                if state is None:
                    continue
                keep(entry)
            if state.stack is None:
                yield state.bindings
                continue
            r = step(state, env)
            if r is None:
                continue
            spawn(r if type(r) is State else iter(r))
        survivors.extend(spawned)
        working = survivors


def match_all(target, matcher, pattern, env):
    """Lazy stream of binding dicts for every way ``pattern`` matches ``target``."""
    return schedule(initial_state(pattern, target, matcher), env)


def match_first(target, matcher, clauses, env):
    """Index of the first clause that matches, with its first bindings."""
    for i, clause in enumerate(clauses):
        pattern = clause.pattern if isinstance(clause, Clause) else clause
        for bindings in match_all(target, matcher, pattern, env):
            return i, bindings
    raise NoMatch(f"no clause matched under {matcher.show()}")


# ---------------------------------------------------------------------------
# Loop patterns


def expand_loop(loop, bindings, env):
    """Unroll one iteration of ``loop``.

    While the current index does not exceed the last index, the result is the
    repeat-pattern with the loop variable replaced by the current index and
    its ``...`` replaced by the same loop starting one index later.
    Otherwise it is the tail pattern.
    """
    scope = env.extend(bindings)
    lo = _evaluate(loop.start, scope)
    hi = _evaluate(loop.end, scope)
    if type(lo) is not int or type(hi) is not int:
        raise NonIntegerLoopBound(f"loop range [{show(loop.start)} {show(loop.end)}] is not integral")
    if lo > hi:
        return loop.tail
    rest = LoopPat(loop.var, IntConst(lo + 1), IntConst(hi), loop.repeat, loop.tail)
    body = subst_pattern(loop.repeat, loop.var, lo)
    return fill_placeholder(body, rest)


def fill_placeholder(pattern, replacement):
    """Replace the ``...`` at the end of the last-argument chain of ``pattern``."""
    if isinstance(pattern, LoopPlaceholder):
        return replacement
    if isinstance(pattern, InductivePat) and pattern.args:
        *init, last = pattern.args
        return InductivePat(pattern.ctor, (*init, fill_placeholder(last, replacement)))
    if isinstance(pattern, LoopPat):
        return LoopPat(pattern.var, pattern.start, pattern.end, pattern.repeat,
                       fill_placeholder(pattern.tail, replacement))
    raise AssertionError(f"no '...' on the last-argument chain of {show(pattern)}")


def subst_pattern(p, name, k):
    t = type(p)
    if t is IndexedPatVar:
        return IndexedPatVar(p.name, tuple(subst_expr(e, name, k) for e in p.indexes))
    if t is ValuePat:
        return ValuePat(subst_expr(p.expr, name, k))
    if t is InductivePat:
        return InductivePat(p.ctor, tuple(subst_pattern(a, name, k) for a in p.args))
    if t is LoopPat:
        # an inner loop over the same variable shadows it in its repeat-pattern
        repeat = p.repeat if p.var == name else subst_pattern(p.repeat, name, k)
        return LoopPat(p.var, subst_expr(p.start, name, k), subst_expr(p.end, name, k),
                       repeat, subst_pattern(p.tail, name, k))
    return p


def pattern_binds(p, name):
    t = type(p)
    if t is PatVar:
        return p.name == name
    if t is InductivePat:
        return any(pattern_binds(a, name) for a in p.args)
    if t is LoopPat:
        return p.var == name or pattern_binds(p.repeat, name) or pattern_binds(p.tail, name)
    return False


def subst_expr(e, name, k):
    t = type(e)
    if t is Var:
        return IntConst(k) if e.name == name else e
    if t is IntConst:
        return e
    if t is IndexedVar:
        return IndexedVar(e.name, tuple(subst_expr(i, name, k) for i in e.indexes))
    if t is Apply:
        return Apply(subst_expr(e.fn, name, k), tuple(subst_expr(a, name, k) for a in e.args))
    if t is DataExpr:
        return DataExpr(e.ctor, tuple(subst_expr(a, name, k) for a in e.args))
    if t is TupleExpr:
        return TupleExpr(tuple(subst_expr(a, name, k) for a in e.elems))
    if t is CollectionExpr:
        return CollectionExpr(tuple(subst_expr(a, name, k) for a in e.elems))
    if t is Lambda:
        return e if name in e.params else Lambda(e.params, subst_expr(e.body, name, k))
    if t is MatchAll:
        return MatchAll(subst_expr(e.target, name, k), subst_expr(e.matcher, name, k),
                        _subst_clause(e.clause, name, k))
    if t is Match:
        return Match(subst_expr(e.target, name, k), subst_expr(e.matcher, name, k),
                     tuple(_subst_clause(c, name, k) for c in e.clauses))
    return e


def _subst_clause(c, name, k):
    body = c.body if pattern_binds(c.pattern, name) else subst_expr(c.body, name, k)
    return Clause(subst_pattern(c.pattern, name, k), body)
