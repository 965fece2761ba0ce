"""Applicative combinator terms, plus the binder nodes the surface syntax produces."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

from .types import TypeExpr

# name -> number of arguments needed before a rule (or constructor) is saturated
ARITY = {
    "K": 2,
    "S": 3,
    "pair": 2,
    "fst": 1,
    "snd": 1,
    "inl": 1,
    "inr": 1,
    "case": 3,
    "zero": 0,
    "succ": 1,
    "rec": 3,
    "exf": 1,
    "unit": 0,
}
COMBINATORS = frozenset(ARITY)
CONSTRUCTORS = frozenset({"pair", "inl", "inr", "zero", "succ", "unit"})


@dataclass(frozen=True)
class Const:
    name: str
    # full instantiated type of this occurrence; ignored by equality so that
    # realizers differing only in internal instantiations are identified
    ty: Optional[TypeExpr] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.name not in COMBINATORS:
            raise ValueError(f"unknown combinator {self.name!r}")

    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True)
class Var:
    name: str
    ty: Optional[TypeExpr] = None

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Lam:
    var: str
    ty: Optional[TypeExpr]
    body: "Term"

    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True)
class App:
    fun: "Term"
    arg: "Term"
    _hash: int = field(default=0, init=False, repr=False, compare=False)
    # memo for kernel.check.checked_type: False = not yet computed
    _ty: object = field(default=False, init=False, repr=False, compare=False)
    # memo for free_vars
    _fv: object = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_hash", hash((self.fun, self.arg)))

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return show(self)


Term = Union[Const, Var, Lam, App]

ZERO = Const("zero")
SUCC = Const("succ")
UNIT_VAL = Const("unit")


def app(f: Term, *args: Term) -> Term:
    for a in args:
        f = App(f, a)
    return f


def spine(t: Term) -> tuple[Term, list[Term]]:
    args: list[Term] = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fun
    args.reverse()
    return t, args


def numeral(n: int) -> Term:
    """The numeral succ^n zero."""
    if n < 0:
        raise ValueError("numerals are non-negative")
    t: Term = ZERO
    for _ in range(n):
        t = App(SUCC, t)
    return t


def as_numeral(t: Term) -> Optional[int]:
    """Decode a literal numeral; None if t is not syntactically succ^n zero."""
    n = 0
    while isinstance(t, App):
        if not (isinstance(t.fun, Const) and t.fun.name == "succ"):
            return None
        n += 1
        t = t.arg
    if isinstance(t, Const) and t.name == "zero":
        return n
    return None


_NO_VARS: frozenset[str] = frozenset()


def free_vars(t: Term) -> frozenset[str]:
    if isinstance(t, Var):
        return frozenset((t.name,))
    if isinstance(t, Const):
        return _NO_VARS
    if isinstance(t, Lam):
        return free_vars(t.body) - {t.var}
    if t._fv is None:
        object.__setattr__(t, "_fv", free_vars(t.fun) | free_vars(t.arg))
    return t._fv


def has_binders(t: Term) -> bool:
    if isinstance(t, Lam):
        return True
    if isinstance(t, App):
        return has_binders(t.fun) or has_binders(t.arg)
    return False


def subterms(t: Term) -> Iterator[Term]:
    yield t
    if isinstance(t, App):
        yield from subterms(t.fun)
        yield from subterms(t.arg)
    elif isinstance(t, Lam):
        yield from subterms(t.body)


def size(t: Term) -> int:
    return sum(1 for _ in subterms(t))


def show(t: Term) -> str:
    """Render in the surface grammar; numerals print as literals."""
    n = as_numeral(t)
    if n is not None:
        return str(n)
    if isinstance(t, Const):
        return t.name
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Lam):
        ann = f":{t.ty}" if t.ty is not None else ""
        return f"fn {t.var}{ann}. {show(t.body)}"
    head, args = spine(t)
    parts = [f"({show(head)})" if isinstance(head, Lam) else show(head)]
    for a in args:
        s = show(a)
        if isinstance(a, (App, Lam)) and as_numeral(a) is None:
            s = f"({s})"
        parts.append(s)
    return " ".join(parts)
