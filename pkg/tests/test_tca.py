import random

import pytest
from hypothesis import given, settings, strategies as st

from tcalab.kernel import (
    App,
    Arrow,
    Const,
    Lam,
    N,
    Sum,
    TypeCheckError,
    Var,
    app,
    elaborate,
    free_vars,
    infer_type,
    nat_value,
    normalize,
    numeral,
    parse_term,
    terms_equal,
)
from tcalab.kernel.terms import has_binders
from tcalab.tca import (
    LAWS,
    TERM_MODEL,
    bounded_min_term,
    bracket_abstract,
    build_d,
    check_law,
    numeral_injective,
    transcribed_d_candidate,
    random_term,
)


def substitute(t, name, value):
    if isinstance(t, Var):
        return value if t.name == name else t
    if isinstance(t, App):
        return App(substitute(t.fun, name, value), substitute(t.arg, name, value))
    if isinstance(t, Lam) and t.var != name:
        return Lam(t.var, t.ty, substitute(t.body, name, value))
    return t


class TestBracketAbstract:
    def test_identity(self):
        x = Var("x", N)
        L = bracket_abstract(x, x)
        assert not has_binders(L) and not free_vars(L)
        assert normalize(App(L, numeral(5))) == numeral(5)

    def test_succ(self):
        x = Var("x", N)
        L = bracket_abstract(x, App(Const("succ"), x))
        assert normalize(App(L, numeral(2))) == numeral(3)

    def test_nested_returns_first(self):
        x = Var("x", N)
        L = bracket_abstract(x, parse_term("fn y:Unit. x", {"x": x}))
        assert normalize(app(L, numeral(7), Const("unit"))) == numeral(7)

    def test_untyped_variable(self):
        with pytest.raises(TypeCheckError):
            bracket_abstract(Var("x"), Var("x"))

    def test_beta_on_corpus(self, rng):
        bodies = [
            "pair x (succ x)",
            "rec x (fn n:N. fn r:N. succ r) 2",
            "case (fn u:N. u) (fn u:Unit. x) (inr unit)",
            "fst (pair (succ (succ x)) unit)",
            "K x 3",
        ]
        for src in bodies:
            x = Var("x", N)
            body, _ = elaborate(parse_term(src, {"x": x}))
            L = bracket_abstract(x, body)
            for _ in range(5):
                arg = random_term(N, rng, 2)
                assert terms_equal(App(L, arg), substitute(body, "x", arg))


class TestNumerals:
    def test_zero(self):
        assert numeral(0) == Const("zero")

    def test_two(self):
        assert numeral(2) == App(Const("succ"), App(Const("succ"), Const("zero")))

    def test_nat_value_after_normalizing(self):
        assert nat_value(parse_term("S K K 1")) == 1

    def test_nat_value_rejects_non_numeral(self):
        with pytest.raises(ValueError):
            nat_value(parse_term("fn x:N. x"))

    @pytest.mark.parametrize("n", [0, 1, 5, 32])
    def test_inverse(self, n):
        assert nat_value(numeral(n)) == n

    def test_injective_up_to_32(self):
        assert numeral_injective(32)


class TestDecidableEquality:
    def test_transcribed_candidate_is_ill_typed(self):
        with pytest.raises(TypeCheckError):
            elaborate(transcribed_d_candidate())

    def test_type(self):
        assert infer_type(build_d()) == Arrow(N, Arrow(N, N))

    @pytest.mark.parametrize("a, b, expected", [(3, 3, 1), (2, 5, 0), (0, 0, 1)])
    def test_examples(self, a, b, expected):
        assert nat_value(app(build_d(), numeral(a), numeral(b))) == expected


def _scan(p, bound):
    # native oracle: least k <= bound with p(k) == 1, else bound + 1
    for k in range(bound + 1):
        if p(k) == 1:
            return k
    return bound + 1


class TestBoundedMin:
    def test_equal_to_two(self):
        p = parse_term("fn k:N. d k 2", {"d": build_d()})
        assert nat_value(bounded_min_term(p, numeral(5))) == 2

    def test_no_hit(self):
        assert nat_value(bounded_min_term(parse_term("fn k:N. 0"), numeral(3))) == 4

    def test_immediate_hit(self):
        assert nat_value(bounded_min_term(parse_term("fn k:N. 1"), numeral(7))) == 0

    def test_against_scan(self, rng):
        for _ in range(60):
            table = [rng.choice((0, 1, 1, 2)) if rng.random() < 0.3 else 0 for _ in range(14)]
            bound = rng.randrange(13)
            # p as a term: lookup table by repeated d-guards
            body = numeral(0)
            for k in reversed(range(14)):
                body = parse_term(
                    "rec other (fn a:N. fn b:N. v) (d x k)",
                    {"other": body, "v": numeral(table[k]), "d": build_d(), "k": numeral(k), "x": Var("x", N)},
                )
            p = bracket_abstract(Var("x", N), body)
            assert nat_value(bounded_min_term(p, numeral(bound))) == _scan(lambda k: table[k], bound)


class TestTermModel:
    def test_discriminator(self):
        h = TERM_MODEL.discriminator()
        for a in range(4):
            left = elaborate(App(h, parse_term(f"inl {a}")), N)[0]
            right = elaborate(App(h, App(Const("inr", Arrow(N, Sum(N, N))), numeral(a))), N)[0]
            assert nat_value(left) == 0 and nat_value(right) == 1

    def test_apply_checks_domain(self):
        with pytest.raises(TypeCheckError):
            TERM_MODEL.apply(Const("succ"), Const("unit"))

    def test_is_realizer(self):
        assert TERM_MODEL.is_realizer(parse_term("pair 1 unit"), elaborate(parse_term("pair 1 unit"))[1])
        assert not TERM_MODEL.is_realizer(parse_term("pair 1 unit"), N)


@pytest.mark.parametrize("law", sorted(LAWS))
def test_combinator_law(law):
    rng = random.Random(sum(map(ord, law)))
    for _ in range(30):
        lhs, rhs, ok = check_law(law, rng)
        assert ok, (lhs, rhs)


@settings(max_examples=60, deadline=None)
@given(a=st.integers(0, 40), b=st.integers(0, 40))
def test_d_property(a, b):
    assert nat_value(app(build_d(), numeral(a), numeral(b))) == int(a == b)
