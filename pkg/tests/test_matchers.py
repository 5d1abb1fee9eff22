import pytest
from hypothesis import given, strategies as st

from nfm import Interpreter
from nfm.errors import (
    DuplicateConstructor,
    EqualityTooLarge,
    MatcherMismatch,
    TypeMismatch,
    UnknownFieldMatcher,
    ValuePatternUnderSomething,
)
from nfm.matchers import (
    EQ,
    INTEGER,
    SOMETHING,
    ListOf,
    MultisetOf,
    SetOf,
    TupleOf,
    data_name,
    declare_adt_matcher,
)
from nfm.runtime import DataVal, Thunk, TupleVal, from_values
from nfm.syntax import WILDCARD, parse_program

from helpers import engine_results, plain


def coll(*xs):
    return Thunk.ready(from_values(list(xs)))


def splits(matcher, target):
    return [tuple(plain(t.force(), "list") for _, t, _ in alt)
            for alt in matcher.decompose("join", (WILDCARD, WILDCARD), target)]


def test_list_join_split_points_in_order():
    assert splits(ListOf(INTEGER), coll(1, 2, 3)) == [
        ((), (1, 2, 3)), ((1,), (2, 3)), ((1, 2), (3,)), ((1, 2, 3), ())]


def test_multiset_join_subsets_in_mask_order():
    assert splits(MultisetOf(INTEGER), coll(1, 2)) == [
        ((), (1, 2)), ((1,), (2,)), ((2,), (1,)), ((1, 2), ())]


def test_set_join_leaves_whole_set():
    assert splits(SetOf(INTEGER), coll(1, 2)) == [
        ((), (1, 2)), ((1,), (1, 2)), ((2,), (1, 2)), ((1, 2), (1, 2))]


def test_cons_alternatives():
    def heads(m):
        return [tuple(plain(t.force(), "list") for _, t, _ in alt)
                for alt in m.decompose("cons", (WILDCARD, WILDCARD), coll(1, 2, 3))]
    assert heads(ListOf(INTEGER)) == [(1, (2, 3))]
    assert heads(MultisetOf(INTEGER)) == [(1, (2, 3)), (2, (1, 3)), (3, (1, 2))]
    assert heads(SetOf(INTEGER)) == [(1, (1, 2, 3)), (2, (1, 2, 3)), (3, (1, 2, 3))]


def test_nil_matches_only_empty():
    for m in (ListOf(INTEGER), MultisetOf(INTEGER), SetOf(INTEGER)):
        assert list(m.decompose("nil", (), coll())) == [[]]
        assert list(m.decompose("nil", (), coll(1))) == []


def test_collection_constructor_errors():
    with pytest.raises(MatcherMismatch):
        ListOf(INTEGER).decompose("card", (), coll(1))
    with pytest.raises(MatcherMismatch):
        ListOf(INTEGER).decompose("cons", (WILDCARD,), coll(1))
    with pytest.raises(TypeMismatch):
        ListOf(INTEGER).decompose("cons", (WILDCARD, WILDCARD), Thunk.ready(3))


def test_something():
    with pytest.raises(MatcherMismatch):
        SOMETHING.decompose("cons", (), coll(1))
    with pytest.raises(ValuePatternUnderSomething):
        SOMETHING.value_equal(1, Thunk.ready(1))


def test_polymorphic_constructor():
    # the same pattern, three meanings
    results = {k: engine_results(k, "<cons $x $r>", (1, 2, 3)) for k in ("list", "multiset", "set")}
    assert [b["r"] for b in results["list"]] == [(2, 3)]
    assert [b["r"] for b in results["multiset"]] == [(2, 3), (1, 3), (1, 2)]
    assert [b["r"] for b in results["set"]] == [(1, 2, 3)] * 3


def test_value_equality():
    assert INTEGER.value_equal(3, Thunk.ready(3))
    with pytest.raises(TypeMismatch):
        INTEGER.value_equal(from_values([1]), Thunk.ready(3))
    assert ListOf(INTEGER).value_equal(from_values([1, 2]), coll(1, 2))
    assert not ListOf(INTEGER).value_equal(from_values([2, 1]), coll(1, 2))
    assert MultisetOf(INTEGER).value_equal(from_values([2, 1, 2]), coll(2, 2, 1))
    assert not MultisetOf(INTEGER).value_equal(from_values([2, 1, 1]), coll(2, 2, 1))
    assert SetOf(INTEGER).value_equal(from_values([2, 1, 1]), coll(1, 2))
    assert not SetOf(INTEGER).value_equal(from_values([3]), coll(1, 3))


def test_nested_collection_equality():
    inner = MultisetOf(MultisetOf(INTEGER))
    a = from_values([from_values([1, 2]), from_values([3])])
    assert inner.value_equal(a, Thunk.ready(from_values([from_values([3]), from_values([2, 1])])))
    assert not ListOf(ListOf(INTEGER)).value_equal(
        a, Thunk.ready(from_values([from_values([2, 1]), from_values([3])])))


def test_equality_size_cap():
    big = list(range(65))
    with pytest.raises(EqualityTooLarge):
        ListOf(INTEGER).value_equal(from_values(big), coll(*big))


small = st.lists(st.integers(1, 3), max_size=4)
nested = st.lists(small, max_size=3)

COLLECTIONS = [ListOf, MultisetOf, SetOf]


def nested_value(xss):
    return from_values([from_values(xs) for xs in xss])


@pytest.mark.parametrize("outer", COLLECTIONS)
@pytest.mark.parametrize("inner", COLLECTIONS)
@given(a=nested, b=nested, c=nested)
def test_value_equal_is_an_equivalence(outer, inner, a, b, c):
    m = outer(inner(INTEGER))

    def eq(x, y):
        return m.value_equal(nested_value(x), Thunk.ready(nested_value(y)))

    assert eq(a, a)
    assert eq(a, b) == eq(b, a)
    if eq(a, b) and eq(b, c):
        assert eq(a, c)


@pytest.mark.parametrize("kind", COLLECTIONS)
@given(a=small, b=small)
def test_structural_and_pairwise_equality_agree(kind, a, b):
    # with eq elements the Counter / set shortcut is used; with integer the pairwise path
    x, y = from_values(a), Thunk.ready(from_values(b))
    assert kind(EQ).value_equal(x, y) == kind(INTEGER).value_equal(x, y)


def test_tuple_matcher():
    m = TupleOf([INTEGER, ListOf(INTEGER)])
    t = Thunk.ready(TupleVal((Thunk.ready(1), coll(2, 3))))
    (alt,) = m.decompose("tuple", (WILDCARD, WILDCARD), t)
    assert [plain(x.force(), "list") for _, x, _ in alt] == [1, (2, 3)]
    assert m.value_equal(TupleVal((Thunk.ready(1), coll(2, 3))), t)


def test_adt_matcher():
    suit = declare_adt_matcher("suit", [("spade", []), ("heart", [])])
    card = declare_adt_matcher("card", [("card", [suit, INTEGER])])
    v = Thunk.ready(DataVal("Card", (Thunk.ready(DataVal("Spade")), Thunk.ready(5))))
    (alt,) = card.decompose("card", (WILDCARD, WILDCARD), v)
    assert alt[0][2] is suit and alt[1][2] is INTEGER
    assert suit.decompose("heart", (), alt[0][1]) == ()
    assert card.value_equal(DataVal("Card", (Thunk.ready(DataVal("Spade")), Thunk.ready(5))), v)
    assert data_name("card") == "Card"


def test_adt_declaration_errors():
    with pytest.raises(DuplicateConstructor):
        declare_adt_matcher("x", [("a", []), ("a", [])])
    with pytest.raises(UnknownFieldMatcher):
        declare_adt_matcher("x", [("a", [3])])
    out = Interpreter().run_program(
        [n for n, _ in parse_program("(define-matcher $x {[<a nosuch>]})")])
    assert out[0].startswith("Error: UnknownFieldMatcher")


def test_bool_matcher_from_prelude():
    out = Interpreter().eval_text("(match <True> bool {[<false> 0] [<true> 1]})")
    assert out == ["1"]


def test_nested_matcher_session():
    out = Interpreter().eval_text(
        "(match-all {{1 2 3} {4 1 5} {1 6}} (multiset (multiset integer)) "
        "[<cons <cons $n _> <cons <cons ,n _> <cons <cons ,n _> _>>> n])")
    # 1 is in every inner multiset: one result per ordering of the three
    assert out == ["{1 1 1 1 1 1}"]
