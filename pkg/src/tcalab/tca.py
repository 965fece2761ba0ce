"""Combinatory completeness over the kernel: lambda compilation, numerals,
decidable equality on N, bounded search, and random well-typed terms."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

from .kernel import (
    App,
    Arrow,
    Const,
    Lam,
    N,
    Prod,
    Sum,
    Term,
    TypeCheckError,
    TypeExpr,
    UNIT,
    Var,
    app,
    elaborate,
    free_vars,
    nat_value,
    normalize,
    numeral,
    parse_term,
    terms_equal,
    type_of,
)
from .kernel.check import checked_type
from .kernel.terms import as_numeral
from .kernel.types import arrows

__all__ = [
    "bracket_abstract",
    "compile_lambdas",
    "numeral",
    "nat_value",
    "build_d",
    "transcribed_d_candidate",
    "bounded_min",
    "bounded_min_term",
    "ifz",
    "TermModel",
    "TERM_MODEL",
    "random_type",
    "random_term",
]


def _identity(a: TypeExpr) -> Term:
    aa = Arrow(a, a)
    s = Const("S", arrows(Arrow(a, Arrow(aa, a)), Arrow(a, aa), a, a))
    k1 = Const("K", arrows(a, aa, a))
    k2 = Const("K", arrows(a, a, a))
    return app(s, k1, k2)


def _abstract(x: str, a: TypeExpr, body: Term) -> Term:
    if x not in free_vars(body):
        b = type_of(body)
        return App(Const("K", arrows(b, a, b)), body)
    if isinstance(body, Var):
        return _identity(a)
    if isinstance(body, Lam):
        raise ValueError("compile inner binders before abstracting")
    fun_ty = type_of(body.fun)
    b, c = fun_ty.dom, fun_ty.cod
    s = Const("S", arrows(arrows(a, b, c), Arrow(a, b), a, c))
    return app(s, _abstract(x, a, body.fun), _abstract(x, a, body.arg))


def bracket_abstract(v: Var, body: Term) -> Term:
    """S/K/I translation of `fn v. body` (with the K rule for v-free subterms).

    The result L satisfies L N = body[v := N] up to convertibility.
    """
    if v.ty is None:
        raise TypeCheckError(f"cannot abstract untyped variable {v.name!r}", v)
    lam, _ = elaborate(Lam(v.name, v.ty, body))
    return compile_lambdas(lam)


def compile_lambdas(t: Term) -> Term:
    """Replace every binder of an elaborated term by its bracket abstraction."""
    if checked_type(t) is not None:
        return t
    if isinstance(t, App):
        return App(compile_lambdas(t.fun), compile_lambdas(t.arg))
    if isinstance(t, Lam):
        return _abstract(t.var, t.ty, compile_lambdas(t.body))
    return t


def ifz(c: Term, zero_branch: Term, other: Term) -> Term:
    """`zero_branch` when c normalizes to 0, `other` otherwise (via rec)."""
    fresh = next(_fresh)
    return app(Const("rec"), zero_branch, Lam(f"_n{fresh}", N, Lam(f"_r{fresh}", None, other)), c)


_fresh = itertools.count()


def transcribed_d_candidate() -> Term:
    """The one-line decidable-equality term, transcribed with its explicit
    instantiations: R_{N->N} (R_N 1 k_{N,N}) (fn x y. R_N 0 y)."""
    nn = Arrow(N, N)
    rec_nn = Const("rec", arrows(nn, arrows(N, nn, nn), N, nn))
    rec_n = Const("rec", arrows(N, arrows(N, N, N), N, N))
    k_nn = Const("K", arrows(N, N, N))
    step = Lam("x", None, Lam("y", None, app(rec_n, numeral(0), Var("y"))))
    return app(rec_nn, app(rec_n, numeral(1), k_nn), step)


_ISZERO = "fn y:N. rec 1 (fn a:N. fn s:N. 0) y"
_D_SOURCE = f"rec ({_ISZERO}) (fn n:N. fn r:N -> N. fn y:N. rec 0 (fn m:N. fn s:N. r m) y)"


def _d_holds(d: Term, bound: int = 16) -> bool:
    for a in range(bound + 1):
        for b in range(bound + 1):
            if nat_value(app(d, numeral(a), numeral(b))) != (1 if a == b else 0):
                return False
    return True


@lru_cache(maxsize=None)
def build_d() -> Term:
    """A closed d : N -> N -> N with d a b = 1 if a = b and 0 otherwise.

    The compact textbook term is tried first.  It does not type-check (its
    step function is unary where rec needs a binary step), so d falls back
    to a double recursion: d 0 = iszero, d (n+1) 0 = 0, d (n+1) (m+1) = d n m.
    """
    try:
        candidate, ty = elaborate(transcribed_d_candidate())
        if ty == arrows(N, N, N) and _d_holds(candidate):
            return compile_lambdas(candidate)
    except TypeCheckError:
        pass
    d, _ = elaborate(parse_term(_D_SOURCE), arrows(N, N, N))
    return compile_lambdas(d)


@lru_cache(maxsize=None)
def bounded_min() -> Term:
    """Closed term of type (N -> N) -> N -> N: least k <= bound with p k = 1,
    or bound + 1 when there is none."""
    d = build_d()
    p, n, r = Var("p"), Var("n"), Var("r")
    hit = lambda k: app(d, App(p, k), numeral(1))  # noqa: E731
    base = ifz(hit(numeral(0)), numeral(1), numeral(0))
    sn = App(Const("succ"), n)
    step_not_found = ifz(hit(sn), App(Const("succ"), sn), sn)
    step = Lam("n", N, Lam("r", N, ifz(app(d, r, sn), r, step_not_found)))
    body = app(Const("rec"), base, step, Var("b"))
    term, _ = elaborate(Lam("p", Arrow(N, N), Lam("b", N, body)), arrows(Arrow(N, N), N, N))
    return compile_lambdas(term)


def bounded_min_term(p: Term, bound: Term) -> Term:
    return app(bounded_min(), p, bound)


# -- the term model as a typed combinatory algebra ------------------------------------


@dataclass(frozen=True)
class TermModel:
    """Closed terms of Gödel's T as a tca: realizers of a type are its closed
    terms, application is App, and equality is convertibility."""

    def apply(self, f: Term, a: Term) -> Term:
        fty = elaborate(f)[1]
        aty = elaborate(a)[1]
        if not isinstance(fty, Arrow) or fty.dom != aty:
            raise TypeCheckError(f"cannot apply {fty} to {aty}", App(f, a))
        return App(f, a)

    def equal(self, a: Term, b: Term) -> bool:
        return terms_equal(a, b)

    def is_realizer(self, t: Term, ty: TypeExpr) -> bool:
        try:
            return free_vars(t) == set() and elaborate(t)[1] == ty
        except TypeCheckError:
            return False

    def combinator(self, name: str, ty: Optional[TypeExpr] = None) -> Term:
        c = Const(name, ty)
        elaborate(c)
        return c

    def numeral(self, n: int) -> Term:
        return numeral(n)

    def discriminator(self) -> Term:
        """h = case (fn x. 0) (fn x. 1): separates inl-images from inr-images."""
        return parse_term("case (fn x. 0) (fn x. 1)")


TERM_MODEL = TermModel()

# the nine defining equations: name -> (argument types builder, lhs, rhs)
LAWS: dict[str, Callable] = {}


def _law(name):
    def register(fn):
        LAWS[name] = fn
        return fn

    return register


@_law("k")
def _k(rng, gen):
    a, b = random_type(rng), random_type(rng)
    x, y = gen(a), gen(b)
    return app(Const("K"), x, y), x


@_law("s")
def _s(rng, gen):
    a, b, c = random_type(rng), random_type(rng), random_type(rng)
    f, g, x = gen(arrows(a, b, c)), gen(Arrow(a, b)), gen(a)
    return app(Const("S"), f, g, x), app(f, x, App(g, x))


@_law("fst")
def _fst(rng, gen):
    a, b = random_type(rng), random_type(rng)
    x, y = gen(a), gen(b)
    return App(Const("fst"), app(Const("pair"), x, y)), x


@_law("snd")
def _snd(rng, gen):
    a, b = random_type(rng), random_type(rng)
    x, y = gen(a), gen(b)
    return App(Const("snd"), app(Const("pair"), x, y)), y


@_law("case_inl")
def _case_inl(rng, gen):
    a, b, c = random_type(rng), random_type(rng), random_type(rng)
    f, g, x = gen(Arrow(a, c)), gen(Arrow(b, c)), gen(a)
    return app(Const("case"), f, g, app(Const("inl", Arrow(a, Sum(a, b))), x)), App(f, x)


@_law("case_inr")
def _case_inr(rng, gen):
    a, b, c = random_type(rng), random_type(rng), random_type(rng)
    f, g, x = gen(Arrow(a, c)), gen(Arrow(b, c)), gen(b)
    return app(Const("case"), f, g, app(Const("inr", Arrow(b, Sum(a, b))), x)), App(g, x)


@_law("rec_zero")
def _rec_zero(rng, gen):
    a = random_type(rng)
    x, f = gen(a), gen(arrows(N, a, a))
    return app(Const("rec"), x, f, numeral(0)), x


@_law("rec_succ")
def _rec_succ(rng, gen):
    a = random_type(rng)
    x, f, n = gen(a), gen(arrows(N, a, a)), gen(N)
    return (
        app(Const("rec"), x, f, App(Const("succ"), n)),
        app(f, n, app(Const("rec"), x, f, n)),
    )


# -- random generation ------------------------------------------------------------

_SMALL_TYPES = (N, UNIT, Prod(N, N), Sum(N, UNIT), Arrow(N, N))


def random_type(rng: random.Random, depth: int = 1) -> TypeExpr:
    if depth <= 0 or rng.random() < 0.5:
        return rng.choice((N, N, UNIT))
    kind = rng.choice(("prod", "sum", "arrow"))
    l, r = random_type(rng, depth - 1), random_type(rng, depth - 1)
    return {"prod": Prod, "sum": Sum, "arrow": Arrow}[kind](l, r)


def random_term(ty: TypeExpr, rng: random.Random, depth: int = 3) -> Term:
    """A random closed term of type ty containing redexes of every kind.

    Numerals stay small so that recursion-heavy terms normalize quickly.
    """
    if depth <= 0:
        return _canonical(ty, rng, depth)
    choice = rng.randrange(9)
    sub = lambda t: random_term(t, rng, depth - 1)  # noqa: E731
    if choice == 0:
        return _canonical(ty, rng, depth)
    if choice == 1:
        return app(Const("K"), sub(ty), sub(rng.choice(_SMALL_TYPES)))
    if choice == 2:
        other = rng.choice(_SMALL_TYPES)
        if rng.random() < 0.5:
            return App(Const("fst"), app(Const("pair"), sub(ty), sub(other)))
        return App(Const("snd"), app(Const("pair"), sub(other), sub(ty)))
    if choice == 3:
        a, b = rng.choice(_SMALL_TYPES), rng.choice(_SMALL_TYPES)
        scrut = app(Const("inl", Arrow(a, Sum(a, b))), sub(a)) if rng.random() < 0.5 else app(
            Const("inr", Arrow(b, Sum(a, b))), sub(b)
        )
        return app(Const("case"), sub(Arrow(a, ty)), sub(Arrow(b, ty)), scrut)
    if choice == 4:
        k = numeral(rng.randrange(3))
        return app(Const("rec"), sub(ty), sub(arrows(N, ty, ty)), k)
    if choice == 5:
        a = rng.choice((N, UNIT, Prod(N, N)))
        return App(sub(Arrow(a, ty)), sub(a))
    if choice == 6 and isinstance(ty, Arrow):
        b = rng.choice((N, UNIT))
        return app(Const("S"), sub(arrows(ty.dom, b, ty.cod)), sub(Arrow(ty.dom, b)))
    if choice == 7 and ty == N:
        return App(Const("succ"), sub(N))
    if choice == 8 and isinstance(ty, Arrow) and ty.dom == ty.cod:
        return _identity(ty.dom)
    return _canonical(ty, rng, depth)


def _canonical(ty: TypeExpr, rng: random.Random, depth: int) -> Term:
    sub = lambda t: random_term(t, rng, depth - 1) if depth > 0 else _canonical(t, rng, 0)  # noqa: E731
    if ty == N:
        return numeral(rng.randrange(4))
    if ty == UNIT:
        return Const("unit")
    if isinstance(ty, Prod):
        return app(Const("pair"), sub(ty.left), sub(ty.right))
    if isinstance(ty, Sum):
        if rng.random() < 0.5:
            return App(Const("inl", Arrow(ty.left, ty)), sub(ty.left))
        return App(Const("inr", Arrow(ty.right, ty)), sub(ty.right))
    if isinstance(ty, Arrow):
        if ty == Arrow(N, N) and rng.random() < 0.3:
            return Const("succ")
        return App(Const("K", arrows(ty.cod, ty.dom, ty.cod)), sub(ty.cod))
    raise ValueError(f"no closed terms of type {ty}")


def check_law(name: str, rng: random.Random) -> tuple[Term, Term, bool]:
    """Draw one random instance of a defining equation and test it."""
    gen = lambda t: random_term(t, rng, 2)  # noqa: E731
    lhs, rhs = LAWS[name](rng, gen)
    return lhs, rhs, terms_equal(lhs, rhs)


def numeral_injective(bound: int) -> bool:
    values = [normalize(numeral(n)) for n in range(bound + 1)]
    return len(set(values)) == len(values) and all(as_numeral(v) == i for i, v in enumerate(values))
