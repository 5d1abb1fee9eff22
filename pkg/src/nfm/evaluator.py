"""Lazy evaluator.

:func:`evaluate` reduces an expression to weak head normal form; arguments,
constructor fields, tuple items and collection elements stay suspended in
thunks until something demands them.
"""
from __future__ import annotations

from . import engine
from .errors import (
    ArityMismatch,
    NfmError,
    NotAFunction,
    TypeMismatch,
    UnboundVariable,
    UnknownFieldMatcher,
)
from .matchers import declare_adt_matcher, is_matcher
from .runtime import (
    NIL,
    Builtin,
    Closure,
    Cons,
    DataVal,
    Env,
    Thunk,
    TupleVal,
    from_iter,
    render,
)
from .syntax import (
    Apply,
    CollectionExpr,
    DataExpr,
    Define,
    DefineMatcher,
    IndexedVar,
    IntConst,
    Lambda,
    Match,
    MatchAll,
    TupleExpr,
    Var,
    parse_program,
    show,
)


def delay(expr, env):
    t = type(expr)
    if t is IntConst:
        return Thunk.ready(expr.value)
    if t is Var:
        found = env.lookup(expr.name)
        if found is not None:
            return found
    return Thunk(lambda: evaluate(expr, env))


def lookup(env, key, shown):
    t = env.lookup(key)
    if t is None:
        raise UnboundVariable(shown)
    return t.force()


def evaluate(expr, env):
    t = type(expr)
    if t is Var:
        return lookup(env, expr.name, expr.name)
    if t is IntConst:
        return expr.value
    if t is Apply:
        fn = evaluate(expr.fn, env)
        return apply(fn, [delay(a, env) for a in expr.args])
    if t is IndexedVar:
        key = (expr.name, engine.eval_indexes(expr.indexes, env))
        return lookup(env, key, expr.name + "".join(f"_{i}" for i in key[1]))
    if t is DataExpr:
        return DataVal(expr.ctor, tuple(delay(a, env) for a in expr.args))
    if t is TupleExpr:
        return TupleVal(tuple(delay(a, env) for a in expr.elems))
    if t is CollectionExpr:
        cell = NIL
        for e in reversed(expr.elems):
            cell = Cons(delay(e, env), Thunk.ready(cell))
        return cell
    if t is Lambda:
        return Closure(expr.params, expr.body, env)
    if t is MatchAll:
        target = delay(expr.target, env)
        matcher = _matcher(expr.matcher, env)
        body = expr.clause.body
        results = engine.match_all(target, matcher, expr.clause.pattern, env)
        return from_iter(Thunk(_body(body, env, b)) for b in results)
    if t is Match:
        target = delay(expr.target, env)
        matcher = _matcher(expr.matcher, env)
        i, bindings = engine.match_first(target, matcher, expr.clauses, env)
        return evaluate(expr.clauses[i].body, env.extend(bindings))
    raise TypeError(f"cannot evaluate {expr!r}")


def _body(body, env, bindings):
    return lambda: evaluate(body, env.extend(bindings))


def _matcher(expr, env):
    m = evaluate(expr, env)
    if not is_matcher(m):
        raise TypeMismatch(f"{show(expr)} is not a matcher: {render(m, limit=10)}")
    return m


def apply(fn, args):
    if type(fn) is Closure:
        if len(fn.params) != len(args):
            raise ArityMismatch(f"lambda of {len(fn.params)} argument(s) applied to {len(args)}")
        return evaluate(fn.body, Env(dict(zip(fn.params, args)), fn.env))
    if type(fn) is Builtin:
        if fn.arity is not None and fn.arity != len(args):
            raise ArityMismatch(f"{fn.name} takes {fn.arity} argument(s), got {len(args)}")
        return fn.fn(*args)
    raise NotAFunction(render(fn, limit=10))


class Interpreter:
    """One interpreter session: a global frame on top of the builtin/library frames."""

    def __init__(self, stdlib=True, print_limit=100):
        from .stdlib import base_env
        self.print_limit = print_limit
        self.globals = Env({}, base_env(with_library=stdlib))

    def define(self, name, expr):
        env = self.globals
        env.define(name, Thunk(lambda: evaluate(expr, env)))

    def execute(self, node):
        """Run one parsed top-level node; returns the rendered value or None."""
        if isinstance(node, Define):
            self.define(node.name, node.expr)
            return None
        if isinstance(node, DefineMatcher):
            try:
                sigs = [(c, [evaluate(f, self.globals) for f in fields]) for c, fields in node.ctors]
            except UnboundVariable as e:
                raise UnknownFieldMatcher(f"{e.detail} in matcher {node.name}") from None
            m = declare_adt_matcher(node.name, sigs)
            self.globals.define(node.name, Thunk.ready(m))
            return None
        return render(evaluate(node, self.globals), limit=self.print_limit)

    def eval_text(self, text):
        """Evaluate every form in ``text``; returns the rendered outputs."""
        out = []
        for node, _src in parse_program(text):
            r = self.execute(node)
            if r is not None:
                out.append(r)
        return out

    def run_program(self, nodes):
        """Run parsed nodes; an error aborts only the form that raised it."""
        out = []
        for node in nodes:
            try:
                r = self.execute(node)
            except NfmError as e:
                r = e.render()
            if r is not None:
                out.append(r)
        return out
