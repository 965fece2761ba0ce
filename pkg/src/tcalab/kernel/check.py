"""Type inference for combinator terms.

Combinators are polymorphic in the surface syntax, so inference runs
first-order unification over their type schemes.  Instantiations left
unconstrained after inference are defaulted to N.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Optional

from .terms import App, Const, Lam, Term, Var, show
from .types import EMPTY, N, UNIT, Arrow, Prod, Sum, TVar, TypeExpr, has_tvars


class TypeCheckError(Exception):
    def __init__(self, message: str, subterm: Optional[Term] = None):
        self.subterm = subterm
        if subterm is not None:
            message = f"{message} in subterm `{show(subterm)}`"
        super().__init__(message)


def scheme(name: str, fresh) -> TypeExpr:
    a, b, c = fresh(), fresh(), fresh()
    return {
        "K": Arrow(a, Arrow(b, a)),
        "S": Arrow(Arrow(a, Arrow(b, c)), Arrow(Arrow(a, b), Arrow(a, c))),
        "pair": Arrow(a, Arrow(b, Prod(a, b))),
        "fst": Arrow(Prod(a, b), a),
        "snd": Arrow(Prod(a, b), b),
        "inl": Arrow(a, Sum(a, b)),
        "inr": Arrow(b, Sum(a, b)),
        "case": Arrow(Arrow(a, c), Arrow(Arrow(b, c), Arrow(Sum(a, b), c))),
        "zero": N,
        "succ": Arrow(N, N),
        "rec": Arrow(a, Arrow(Arrow(N, Arrow(a, a)), Arrow(N, a))),
        "exf": Arrow(EMPTY, a),
        "unit": UNIT,
    }[name]


class _Unifier:
    def __init__(self) -> None:
        self.subst: dict[int, TypeExpr] = {}
        self._ids = itertools.count()

    def fresh(self) -> TVar:
        return TVar(next(self._ids))

    def resolve(self, t: TypeExpr) -> TypeExpr:
        while isinstance(t, TVar) and t.ident in self.subst:
            t = self.subst[t.ident]
        return t

    def zonk(self, t: TypeExpr) -> TypeExpr:
        t = self.resolve(t)
        if not has_tvars(t):
            return t
        if isinstance(t, Arrow):
            return Arrow(self.zonk(t.dom), self.zonk(t.cod))
        if isinstance(t, Prod):
            return Prod(self.zonk(t.left), self.zonk(t.right))
        if isinstance(t, Sum):
            return Sum(self.zonk(t.left), self.zonk(t.right))
        return t

    def occurs(self, v: TVar, t: TypeExpr) -> bool:
        t = self.resolve(t)
        if t == v:
            return True
        if isinstance(t, Arrow):
            return self.occurs(v, t.dom) or self.occurs(v, t.cod)
        if isinstance(t, (Prod, Sum)):
            return self.occurs(v, t.left) or self.occurs(v, t.right)
        return False

    def unify(self, s: TypeExpr, t: TypeExpr) -> bool:
        s, t = self.resolve(s), self.resolve(t)
        if s == t:
            return True
        if isinstance(s, TVar):
            if self.occurs(s, t):
                return False
            self.subst[s.ident] = t
            return True
        if isinstance(t, TVar):
            return self.unify(t, s)
        if isinstance(s, Arrow) and isinstance(t, Arrow):
            return self.unify(s.dom, t.dom) and self.unify(s.cod, t.cod)
        if type(s) is type(t) and isinstance(s, (Prod, Sum)):
            return self.unify(s.left, t.left) and self.unify(s.right, t.right)
        return False


def _default(t: TypeExpr) -> TypeExpr:
    if isinstance(t, TVar):
        return N
    if not has_tvars(t):
        return t
    if isinstance(t, Arrow):
        return Arrow(_default(t.dom), _default(t.cod))
    if isinstance(t, Prod):
        return Prod(_default(t.left), _default(t.right))
    if isinstance(t, Sum):
        return Sum(_default(t.left), _default(t.right))
    return t


@lru_cache(maxsize=None)
def _valid_instance(name: str, ty: TypeExpr) -> bool:
    u = _Unifier()
    return u.unify(scheme(name, u.fresh), ty)


def checked_type(t: Term) -> Optional[TypeExpr]:
    """Type of a closed, binder-free, fully annotated term; None otherwise.

    The result is memoized on App nodes, so already elaborated subterms are
    not re-inferred when embedded in larger terms.
    """
    if isinstance(t, Const):
        if t.ty is None or has_tvars(t.ty) or not _valid_instance(t.name, t.ty):
            return None
        return t.ty
    if not isinstance(t, App):
        return None
    if t._ty is not False:
        return t._ty
    result = None
    fty = checked_type(t.fun)
    if isinstance(fty, Arrow):
        aty = checked_type(t.arg)
        if aty is not None and aty == fty.dom:
            result = fty.cod
    object.__setattr__(t, "_ty", result)
    return result


def _annotate(u: _Unifier, t: Term, env: dict[str, TypeExpr]) -> tuple[Term, TypeExpr]:
    known = checked_type(t)
    if known is not None:
        return t, known
    if isinstance(t, Const):
        sch = scheme(t.name, u.fresh)
        if t.ty is not None and not u.unify(sch, t.ty):
            raise TypeCheckError(f"annotation {t.ty} is not an instance of {t.name}'s type", t)
        return Const(t.name, sch), sch
    if isinstance(t, Var):
        if t.name in env:
            if t.ty is not None and not u.unify(env[t.name], t.ty):
                raise TypeCheckError(f"variable annotated {t.ty} but bound at {u.zonk(env[t.name])}", t)
            return Var(t.name, env[t.name]), env[t.name]
        if t.ty is None:
            raise TypeCheckError(f"unbound variable {t.name!r} has no type annotation", t)
        return Var(t.name, t.ty), t.ty
    if isinstance(t, Lam):
        dom = t.ty if t.ty is not None else u.fresh()
        body, cod = _annotate(u, t.body, {**env, t.var: dom})
        return Lam(t.var, dom, body), Arrow(dom, cod)
    f, fty = _annotate(u, t.fun, env)
    a, aty = _annotate(u, t.arg, env)
    cod = u.fresh()
    if not u.unify(fty, Arrow(aty, cod)):
        raise TypeCheckError(
            f"cannot apply a function of type {_default(u.zonk(fty))} "
            f"to an argument of type {_default(u.zonk(aty))}",
            t,
        )
    return App(f, a), cod


def _finish(u: _Unifier, t: Term) -> Term:
    if checked_type(t) is not None:
        return t
    if isinstance(t, Const):
        return Const(t.name, _default(u.zonk(t.ty)))
    if isinstance(t, Var):
        return Var(t.name, _default(u.zonk(t.ty)))
    if isinstance(t, Lam):
        return Lam(t.var, _default(u.zonk(t.ty)), _finish(u, t.body))
    return App(_finish(u, t.fun), _finish(u, t.arg))


def elaborate(t: Term, expected: Optional[TypeExpr] = None) -> tuple[Term, TypeExpr]:
    """Return t with every constant, variable and binder annotated, and its type."""
    u = _Unifier()
    annotated, ty = _annotate(u, t, {})
    if expected is not None and not u.unify(ty, expected):
        raise TypeCheckError(f"expected type {expected}, found {_default(u.zonk(ty))}", t)
    return _finish(u, annotated), _default(u.zonk(ty))


def infer_type(t: Term) -> TypeExpr:
    return elaborate(t)[1]


def type_of(t: Term) -> TypeExpr:
    """Type of an already elaborated term, read off its annotations."""
    if isinstance(t, (Const, Var)):
        if t.ty is None:
            raise TypeCheckError("term is not elaborated", t)
        return t.ty
    if isinstance(t, Lam):
        return Arrow(t.ty, type_of(t.body))
    fty = type_of(t.fun)
    if not isinstance(fty, Arrow):
        raise TypeCheckError(f"applying a non-function of type {fty}", t)
    return fty.cod
