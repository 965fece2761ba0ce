"""Normalization of closed combinator terms.

Evaluation is lazy graph reduction: leftmost-outermost with shared argument
thunks, followed by readback of every argument.  Since the rewrite system is
orthogonal and well-typed terms are strongly normalizing, this yields the same
normal form as naive leftmost-outermost rewriting, without re-reducing
duplicated arguments.
"""

from __future__ import annotations

import sys
from functools import lru_cache
from typing import Callable, Optional, Union

from .check import TypeCheckError, checked_type, elaborate
from .terms import ARITY, CONSTRUCTORS, App, Const, Term, Var, as_numeral, has_binders, show
from .types import N, Arrow, TypeExpr

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


class Value:
    __slots__ = ("name", "ty", "args", "stuck")

    def __init__(self, name: str, ty: Optional[TypeExpr], args: tuple, stuck: bool = False):
        self.name = name
        self.ty = ty
        self.args = args
        self.stuck = stuck


class Thunk:
    __slots__ = ("_code", "_value")

    def __init__(self, code=None, value: Optional[Value] = None):
        self._code = code
        self._value = value

    def force(self) -> Value:
        if self._value is None:
            code, self._code = self._code, None
            self._value = _drive(code)
        return self._value


# Tail-call states consumed by _drive.
class _Eval:
    __slots__ = ("term",)

    def __init__(self, term: Term):
        self.term = term


class _Force:
    __slots__ = ("thunk",)

    def __init__(self, thunk: Thunk):
        self.thunk = thunk


class _Apply:
    __slots__ = ("fun", "arg")

    def __init__(self, fun: Union[Value, Thunk], arg: Thunk):
        self.fun = fun
        self.arg = arg


class _Call:
    __slots__ = ("fn",)

    def __init__(self, fn: Callable[[], object]):
        self.fn = fn


def _drive(state) -> Value:
    pending: list[Thunk] = []  # thunks whose value is the value of the current state
    while True:
        if isinstance(state, Value):
            for th in pending:
                th._value = state
            return state
        if isinstance(state, _Force):
            th = state.thunk
            if th._value is not None:
                state = th._value
            else:
                pending.append(th)
                state, th._code = th._code, None
        elif isinstance(state, _Eval):
            state = _eval(state.term)
        elif isinstance(state, _Apply):
            fun = state.fun.force() if isinstance(state.fun, Thunk) else state.fun
            state = _apply(fun, state.arg)
        elif isinstance(state, _Call):
            state = state.fn()
        else:
            raise TypeError(f"bad evaluation state {state!r}")


def _eval(t: Term):
    if isinstance(t, Const):
        return Value(t.name, t.ty, ())
    if isinstance(t, App):
        return _Apply(_drive(_eval(t.fun)), Thunk(_Eval(t.arg)))
    if isinstance(t, Var):
        raise ValueError(f"cannot evaluate open term: free variable {t.name}")
    raise ValueError("lambda terms must be compiled before evaluation")


def _apply(f: Value, arg: Thunk):
    args = f.args + (arg,)
    if f.stuck:
        return Value(f.name, f.ty, args, stuck=True)
    arity = ARITY[f.name]
    if len(args) < arity or (len(args) == arity and f.name in CONSTRUCTORS):
        return Value(f.name, f.ty, args)
    if len(args) > arity:
        raise TypeCheckError(f"over-application of {f.name}")
    return _fire(f.name, f.ty, args)


def _fire(name: str, ty, args: tuple):
    if name == "K":
        return _Force(args[0])
    if name == "S":
        a, b, c = args
        return _Apply(_drive(_Apply(a, c)), Thunk(_Apply(b, c)))
    if name in ("fst", "snd"):
        p = args[0].force()
        if p.name == "pair" and not p.stuck and len(p.args) == 2:
            return _Force(p.args[0 if name == "fst" else 1])
        return Value(name, ty, args, stuck=True)
    if name == "case":
        s = args[2].force()
        if not s.stuck and s.name in ("inl", "inr") and len(s.args) == 1:
            return _Apply(args[0] if s.name == "inl" else args[1], s.args[0])
        return Value(name, ty, args, stuck=True)
    if name == "rec":
        a, b, n = args
        nv = n.force()
        if not nv.stuck and nv.name == "zero":
            return _Force(a)
        if not nv.stuck and nv.name == "succ" and len(nv.args) == 1:
            m = nv.args[0]
            inner = Thunk(_Call(lambda: _fire("rec", ty, (a, b, m))))
            return _Apply(_drive(_Apply(b, m)), inner)
        return Value(name, ty, args, stuck=True)
    # exf: no rule
    return Value(name, ty, args, stuck=True)


_SUCC = Const("succ", Arrow(N, N))


def _readback(v: Value) -> Term:
    # succ chains are read back iteratively so large numerals stay shallow
    depth = 0
    while v.name == "succ" and not v.stuck and len(v.args) == 1:
        depth += 1
        v = v.args[0].force()
    t: Term = Const(v.name, v.ty)
    for a in v.args:
        t = App(t, _readback(a.force()))
    for _ in range(depth):
        t = App(_SUCC, t)
    return t


def whnf(t: Term) -> Value:
    """Weak head normal form of a compiled closed term (exposed for tests)."""
    return _drive(_Eval(t))


def _prepare(t: Term) -> tuple[Term, TypeExpr]:
    annotated, ty = elaborate(t)
    if checked_type(annotated) is None and has_binders(annotated):
        from ..tca import compile_lambdas

        annotated = compile_lambdas(annotated)
    return annotated, ty


@lru_cache(maxsize=1 << 16)
def _normalize_cached(t: Term, ty: TypeExpr) -> Term:
    return _readback(whnf(t))


def normalize(t: Term) -> Term:
    """Full normal form of a closed well-typed term.

    Surface lambdas are compiled away by bracket abstraction first; ill-typed
    input raises TypeCheckError before any reduction happens.
    """
    compiled, ty = _prepare(t)
    return _normalize_cached(compiled, ty)


def terms_equal(a: Term, b: Term) -> bool:
    """Convertibility: equality of normal forms (type annotations erased)."""
    _, ta = elaborate(a)
    _, tb = elaborate(b)
    if ta != tb:
        raise TypeCheckError(f"cannot compare terms of types {ta} and {tb}")
    return normalize(a) == normalize(b)


@lru_cache(maxsize=1 << 16)
def nat_value(t: Term) -> int:
    """Decode the normal form of a type-N term to a Python int."""
    nf = normalize(t)
    n = as_numeral(nf)
    if n is None:
        raise ValueError(f"normal form `{show(nf)}` is not a numeral")
    return n


def is_normal(t: Term) -> bool:
    return normalize(t) == t

