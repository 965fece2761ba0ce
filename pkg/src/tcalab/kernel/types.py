"""Finite types: N | Unit | Empty | σ×τ | σ+τ | σ→τ."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Union


@dataclass(frozen=True)
class Base:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Prod:
    left: "TypeExpr"
    right: "TypeExpr"
    _hash: int = field(default=0, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_hash", hash((type(self).__name__, self.left, self.right)))

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return f"{_wrap(self.left)} * {_wrap(self.right)}"


@dataclass(frozen=True)
class Sum:
    left: "TypeExpr"
    right: "TypeExpr"
    _hash: int = field(default=0, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_hash", hash((type(self).__name__, self.left, self.right)))

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return f"{_wrap(self.left)} + {_wrap(self.right)}"


@dataclass(frozen=True)
class Arrow:
    dom: "TypeExpr"
    cod: "TypeExpr"
    _hash: int = field(default=0, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_hash", hash((type(self).__name__, self.dom, self.cod)))

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        dom = f"({self.dom})" if isinstance(self.dom, Arrow) else _wrap(self.dom)
        return f"{dom} -> {self.cod}"


@dataclass(frozen=True)
class TVar:
    """Unification variable; only lives inside the type checker."""

    ident: int

    def __str__(self) -> str:
        return f"?{self.ident}"


TypeExpr = Union[Base, Prod, Sum, Arrow, TVar]

N = Base("N")
UNIT = Base("Unit")
EMPTY = Base("Empty")


def _wrap(t: TypeExpr) -> str:
    return str(t) if isinstance(t, (Base, TVar)) else f"({t})"


def arrows(*ts: TypeExpr) -> TypeExpr:
    """Right-nested arrow: arrows(a, b, c) = a -> b -> c."""
    out = ts[-1]
    for t in reversed(ts[:-1]):
        out = Arrow(t, out)
    return out


def finite_type(n: int) -> TypeExpr:
    """Numeric shorthand: 0 is N and n+1 is n -> N."""
    if n < 0:
        raise ValueError("finite type index must be non-negative")
    t: TypeExpr = N
    for _ in range(n):
        t = Arrow(t, N)
    return t


def depth(t: TypeExpr) -> int:
    if isinstance(t, (Base, TVar)):
        return 0
    if isinstance(t, Arrow):
        return 1 + max(depth(t.dom), depth(t.cod))
    return 1 + max(depth(t.left), depth(t.right))


@lru_cache(maxsize=1 << 16)
def has_tvars(t: TypeExpr) -> bool:
    if isinstance(t, TVar):
        return True
    if isinstance(t, Base):
        return False
    if isinstance(t, Arrow):
        return has_tvars(t.dom) or has_tvars(t.cod)
    return has_tvars(t.left) or has_tvars(t.right)
