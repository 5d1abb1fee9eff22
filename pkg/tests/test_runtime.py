import pytest
from hypothesis import given, strategies as st

from nfm import Interpreter
from nfm.errors import BlackHole, EvalError, UnboundVariable
from nfm.runtime import Thunk, from_iter, iter_thunks, stats


def test_thunk_memoises():
    calls = []
    t = Thunk(lambda: calls.append(1) or 42)
    assert t.force() == 42 and t.force() == 42
    assert calls == [1]


def test_black_hole():
    t = Thunk(lambda: t.force())
    with pytest.raises(BlackHole):
        t.force()


def test_failed_force_can_be_retried():
    attempts = []

    def body():
        attempts.append(1)
        if len(attempts) == 1:
            raise UnboundVariable("first time")
        return 7

    t = Thunk(body)
    with pytest.raises(UnboundVariable):
        t.force()
    assert t.force() == 7


def test_self_reference_in_source_is_a_black_hole():
    out = Interpreter().run_program(_nodes("(define $x (+ x 1)) x"))
    assert out == ["Error: BlackHole: thunk forced while being evaluated"]


def _nodes(text):
    from nfm.syntax import parse_program
    return [n for n, _ in parse_program(text)]


def test_recursive_define_is_lazy():
    interp = Interpreter()
    assert interp.eval_text("(define $f (lambda [$n] (f n))) 1") == ["1"]


def test_arguments_are_not_forced():
    interp = Interpreter()
    assert interp.eval_text("((lambda [$x $y] y) (undefined-name) 3)") == ["3"]


def counting_stream(log):
    def gen():
        n = 0
        while True:
            n += 1
            log.append(n)
            yield Thunk.ready(n)
    return Thunk(lambda: from_iter(gen()))


def test_take_forces_exactly_n_cells():
    from nfm.stdlib import builtin_take
    log = []
    xs = counting_stream(log)
    out = builtin_take(Thunk.ready(3), xs)
    assert [t.force() for t in iter_thunks(out)] == [1, 2, 3]
    assert log == [1, 2, 3]


def test_take_of_short_input():
    assert Interpreter().eval_text("(take 3 {1 2}) (take 0 nats)") == ["{1 2}", "{}"]


def test_unforced_elements_stay_unforced():
    interp = Interpreter()
    # the poisoned element is never demanded
    assert interp.eval_text("(take 1 {1 (undefined-name)})") == ["{1}"]


def test_render_truncates_only_longer_collections():
    assert Interpreter(print_limit=3).eval_text("nats {1 2 3}") == ["{1 2 3 ...}", "{1 2 3}"]
    assert Interpreter(print_limit=3).eval_text("(take 5 primes)") == ["{2 3 5 ...}"]


def test_render_nested():
    out = Interpreter().eval_text("[1 {2 <Foo 3 {}>} [4]]")
    assert out == ["[1 {2 <Foo 3 {}>} [4]]"]


def test_cells_forced_counter():
    stats.reset()
    Interpreter().eval_text("(take 4 nats)")
    assert stats.cells_forced > 0


def test_closure_and_builtin_rendering():
    out = Interpreter().eval_text("(lambda [$x $y] x) + (list integer)")
    assert out == ["#<lambda [$x $y]>", "#<builtin +>", "#<matcher (list integer)>"]


values = st.recursive(
    st.integers(-50, 50).map(str),
    lambda sub: st.one_of(
        st.lists(sub, max_size=4).map(lambda xs: "{" + " ".join(xs) + "}"),
        st.lists(sub, min_size=1, max_size=3).map(lambda xs: "[" + " ".join(xs) + "]"),
        st.tuples(st.sampled_from(["Foo", "Bar", "True"]), st.lists(sub, max_size=2)).map(
            lambda p: "<" + " ".join([p[0], *p[1]]) + ">"),
    ),
    max_leaves=12,
)


@given(values)
def test_printed_values_read_back(src):
    interp = Interpreter()
    (once,) = interp.eval_text(src)
    (twice,) = interp.eval_text(once)
    assert once == twice


def test_negative_literals_print_and_read():
    assert Interpreter().eval_text("(- 3 5) {-1 (- 0 2)}") == ["-2", "{-1 -2}"]


def test_eval_errors_are_eval_errors():
    with pytest.raises(EvalError):
        Interpreter().eval_text("(1 2)")
