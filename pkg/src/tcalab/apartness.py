"""Apartness types over the term model.

Every finite type sigma is translated into a pair of types: sigma+ (the
carrier, whose members may represent elements of sigma) and sigma- (evidence
that two members are apart).  Two predicates go with it: dom(x) picks out the
members of sigma+ that really represent something, and app(x, y, z) says that
z witnesses x and y being apart.

dom and app are decided exactly at N, Unit, products and sums.  At arrow types
they contain genuine universal quantifiers over sigma+, which are checked on a
finite pool of sample elements; the answer is then Unknown("sampled") unless a
sample refutes it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Optional, Sequence

from .kernel import (
    HOLDS,
    Arrow,
    Fails,
    N,
    Prod,
    Sum,
    Term,
    TypeCheckError,
    TypeExpr,
    UNIT,
    Unknown,
    Verdict,
    app,
    as_numeral,
    conj,
    elaborate,
    normalize,
    numeral,
    parse_term,
    plausible,
    refuted,
    spine,
)
from .kernel.check import checked_type
from .kernel.terms import Const
from .tca import build_d, compile_lambdas

__all__ = [
    "TranslatedType",
    "translate_type",
    "ApartnessStructure",
    "build_apartness_structure",
    "Checker",
    "dom_check",
    "app_check",
    "symmetry_term",
    "transitivity_term",
    "Premorphism",
    "element_pool",
    "witness_pool",
]

SAMPLED = Unknown("sampled")


@dataclass(frozen=True)
class TranslatedType:
    source: TypeExpr
    plus: TypeExpr
    minus: TypeExpr


def translate_type(sigma: TypeExpr) -> TranslatedType:
    """The (plus, minus) pair of a finite type, by structural recursion."""
    if sigma == N:
        return TranslatedType(sigma, N, N)
    if sigma == UNIT:
        return TranslatedType(sigma, UNIT, UNIT)
    if isinstance(sigma, Prod):
        a, b = translate_type(sigma.left), translate_type(sigma.right)
        return TranslatedType(sigma, Prod(a.plus, b.plus), Sum(a.minus, b.minus))
    if isinstance(sigma, Sum):
        a, b = translate_type(sigma.left), translate_type(sigma.right)
        return TranslatedType(sigma, Sum(a.plus, b.plus), Prod(a.minus, b.minus))
    if isinstance(sigma, Arrow):
        a, b = translate_type(sigma.dom), translate_type(sigma.cod)
        reflector = Arrow(a.plus, Arrow(a.plus, Arrow(b.minus, a.minus)))
        return TranslatedType(sigma, Prod(Arrow(a.plus, b.plus), reflector), Prod(a.plus, b.minus))
    raise ValueError(f"type {sigma} has no apartness translation")


# ---------------------------------------------------------------------------
# small term-building helpers


def _closed(text: str, ty: TypeExpr, **env: Term) -> Term:
    t, _ = elaborate(parse_term(text, env), ty)
    return compile_lambdas(t)


def _apply(f: Term, *args: Term) -> Term:
    return normalize(app(f, *args))


def _args(t: Term, head: str, n: int) -> Optional[list[Term]]:
    h, args = spine(t)
    if isinstance(h, Const) and h.name == head and len(args) == n:
        return args
    return None


def _split_pair(t: Term) -> tuple[Term, Term]:
    args = _args(t, "pair", 2)
    if args is None:
        raise TypeCheckError("expected a closed pair", t)
    return args[0], args[1]


def _split_sum(t: Term) -> tuple[str, Term]:
    for tag in ("inl", "inr"):
        args = _args(t, tag, 1)
        if args is not None:
            return tag, args[0]
    raise TypeCheckError("expected a closed injection", t)


# ---------------------------------------------------------------------------
# structures


@dataclass(frozen=True)
class ApartnessStructure:
    """Carrier type, witness type and the s/t functionals of one apartness type.

    Built compositionally: `nno`, `terminal`, `product`, `coproduct` and
    `exponential` (functions from `parts[0]` to `parts[1]`).
    """

    kind: str
    parts: tuple["ApartnessStructure", ...]
    source: TypeExpr
    carrier_type: TypeExpr = field(compare=False)
    witness_type: TypeExpr = field(compare=False)

    @classmethod
    def nno(cls) -> "ApartnessStructure":
        return cls("nno", (), N, N, N)

    @classmethod
    def terminal(cls) -> "ApartnessStructure":
        return cls("terminal", (), UNIT, UNIT, UNIT)

    @classmethod
    def product(cls, a: "ApartnessStructure", b: "ApartnessStructure") -> "ApartnessStructure":
        return cls("product", (a, b), Prod(a.source, b.source),
                   Prod(a.carrier_type, b.carrier_type), Sum(a.witness_type, b.witness_type))

    @classmethod
    def coproduct(cls, a: "ApartnessStructure", b: "ApartnessStructure") -> "ApartnessStructure":
        return cls("coproduct", (a, b), Sum(a.source, b.source),
                   Sum(a.carrier_type, b.carrier_type), Prod(a.witness_type, b.witness_type))

    @classmethod
    def exponential(cls, b: "ApartnessStructure", a: "ApartnessStructure") -> "ApartnessStructure":
        """Premorphisms from b to a: a forward map paired with a reflector."""
        tb, ta = b.carrier_type, a.carrier_type
        reflector = Arrow(tb, Arrow(tb, Arrow(a.witness_type, b.witness_type)))
        return cls("exponential", (b, a), Arrow(b.source, a.source),
                   Prod(Arrow(tb, ta), reflector), Prod(tb, a.witness_type))

    def __str__(self) -> str:
        return f"ApartnessStructure({self.source})"

    @property
    def trivial_dom(self) -> bool:
        """dom is provably true on the whole carrier (no sampling needed)."""
        if self.kind in ("nno", "terminal"):
            return True
        if self.kind in ("product", "coproduct"):
            return all(p.trivial_dom for p in self.parts)
        b, a = self.parts
        return a.trivial_dom and b.kind in ("nno", "terminal")

    # checkers -------------------------------------------------------------

    def dom(self, x: Term, samples: Sequence[Term] = ()) -> Verdict:
        return Checker(samples).dom(self, self.member(x))

    def app(self, x: Term, y: Term, z: Term, samples: Sequence[Term] = ()) -> Verdict:
        c = Checker(samples)
        return c.app(self, self.member(x), self.member(y), self.witness(z))

    def apart(self, x: Term, y: Term, candidates: Iterable[Term], samples: Sequence[Term] = ()) -> Optional[Term]:
        """The first candidate witness z with app(x, y, z) not refuted, if any."""
        c = Checker(samples)
        x, y = self.member(x), self.member(y)
        for z in candidates:
            z = self.witness(z)
            if plausible(c.app(self, x, y, z)):
                return z
        return None

    def equivalent(self, x: Term, y: Term, candidates: Iterable[Term], samples: Sequence[Term] = ()) -> bool:
        """x ~ y: no apartness witness among the supplied candidates."""
        return self.apart(x, y, candidates, samples) is None

    def member(self, x: Term) -> Term:
        """Normal form of x, after checking it lives in the carrier type."""
        t, _ = elaborate(x, self.carrier_type)
        return normalize(t)

    def witness(self, z: Term) -> Term:
        t, _ = elaborate(z, self.witness_type)
        return normalize(t)

    # functionals ------------------------------------------------------------

    @cached_property
    def default_member(self) -> Term:
        return normalize(_default_plus(self))

    @cached_property
    def default_witness(self) -> Term:
        return normalize(_default_minus(self))

    @cached_property
    def sym(self) -> Term:
        """s : T -> T -> T- -> T-, turning a witness for x # y into one for y # x."""
        return _sym(self)

    @cached_property
    def trans(self) -> Term:
        """t : T -> T -> T -> T- -> T- + T-, splitting x # y across a third point."""
        return _trans(self)

    def check_axioms(self, checker: Optional["Checker"] = None, cap: int = 5, witness_cap: int = 3) -> dict[str, Verdict]:
        return check_axioms(self, checker, cap, witness_cap)


def build_apartness_structure(sigma: TypeExpr) -> ApartnessStructure:
    if sigma == N:
        return ApartnessStructure.nno()
    if sigma == UNIT:
        return ApartnessStructure.terminal()
    if isinstance(sigma, Prod):
        return ApartnessStructure.product(build_apartness_structure(sigma.left), build_apartness_structure(sigma.right))
    if isinstance(sigma, Sum):
        return ApartnessStructure.coproduct(build_apartness_structure(sigma.left), build_apartness_structure(sigma.right))
    if isinstance(sigma, Arrow):
        return ApartnessStructure.exponential(build_apartness_structure(sigma.dom), build_apartness_structure(sigma.cod))
    raise ValueError(f"type {sigma} has no apartness structure")


def _default_plus(s: ApartnessStructure) -> Term:
    if s.kind == "nno":
        return numeral(0)
    if s.kind == "terminal":
        return Const("unit")
    a, b = s.parts
    if s.kind == "product":
        return app(Const("pair"), _default_plus(a), _default_plus(b))
    if s.kind == "coproduct":
        return _closed("inl a", s.carrier_type, a=_default_plus(a))
    # constant map with a reflector that ignores everything
    return _closed(
        f"pair (fn u:{a.carrier_type}. c) (fn u:{a.carrier_type}. fn v:{a.carrier_type}. fn w:{b.witness_type}. r)",
        s.carrier_type, c=_default_plus(b), r=_default_minus(a))


def _default_minus(s: ApartnessStructure) -> Term:
    if s.kind == "nno":
        return numeral(0)
    if s.kind == "terminal":
        return Const("unit")
    a, b = s.parts
    if s.kind == "product":
        return _closed("inl a", s.witness_type, a=_default_minus(a))
    if s.kind == "coproduct":
        return app(Const("pair"), _default_minus(a), _default_minus(b))
    return app(Const("pair"), _default_plus(a), _default_minus(b))


@lru_cache(maxsize=None)
def _sym(s: ApartnessStructure) -> Term:
    T, W = s.carrier_type, s.witness_type
    head = f"fn x:{T}. fn y:{T}. fn z:{W}."
    if s.kind in ("nno", "terminal"):
        return _closed(f"{head} z", arrow3(T, T, W, W))
    a, b = s.parts
    if s.kind == "product":
        body = (f"case (fn u:{a.witness_type}. inl (s0 (fst x) (fst y) u)) "
                f"(fn v:{b.witness_type}. inr (s1 (snd x) (snd y) v)) z")
        return _closed(f"{head} {body}", arrow3(T, T, W, W), s0=_sym(a), s1=_sym(b))
    if s.kind == "coproduct":
        getl = f"(fn p:{T}. case (fn u:{a.carrier_type}. u) (fn v:{b.carrier_type}. da) p)"
        getr = f"(fn p:{T}. case (fn u:{a.carrier_type}. db) (fn v:{b.carrier_type}. v) p)"
        body = (f"pair (s0 ({getl} x) ({getl} y) (fst z)) "
                f"(s1 ({getr} x) ({getr} y) (snd z))")
        return _closed(f"{head} {body}", arrow3(T, T, W, W), s0=_sym(a), s1=_sym(b),
                       da=_default_plus(a), db=_default_plus(b))
    # keep the evaluation point, recurse on the value witness
    body = "pair (fst z) (sc (fst x (fst z)) (fst y (fst z)) (snd z))"
    return _closed(f"{head} {body}", arrow3(T, T, W, W), sc=_sym(b))


def arrow3(a: TypeExpr, b: TypeExpr, c: TypeExpr, d: TypeExpr) -> TypeExpr:
    return Arrow(a, Arrow(b, Arrow(c, d)))


def _trans_type(s: ApartnessStructure) -> TypeExpr:
    T, W = s.carrier_type, s.witness_type
    return Arrow(T, arrow3(T, T, W, Sum(W, W)))


@lru_cache(maxsize=None)
def _trans(s: ApartnessStructure) -> Term:
    T, W = s.carrier_type, s.witness_type
    head = f"fn x:{T}. fn y:{T}. fn z:{T}. fn u:{W}."
    ty = _trans_type(s)
    if s.kind == "nno":
        # d x z = 0 means x and z differ, so u keeps working on the left
        return _closed(f"{head} rec (inl u) (fn a:N. fn b:{Sum(W, W)}. inr u) (d x z)", ty, d=build_d())
    if s.kind == "terminal":
        return _closed(f"{head} inl u", ty)
    a, b = s.parts
    if s.kind == "product":
        wa, wb = a.witness_type, b.witness_type
        left = f"case (fn v:{wa}. inl (inl v)) (fn w:{wa}. inr (inl w)) (t0 (fst x) (fst y) (fst z) p)"
        right = f"case (fn v:{wb}. inl (inr v)) (fn w:{wb}. inr (inr w)) (t1 (snd x) (snd y) (snd z) q)"
        body = f"case (fn p:{wa}. {left}) (fn q:{wb}. {right}) u"
        return _closed(f"{head} {body}", ty, t0=_trans(a), t1=_trans(b))
    if s.kind == "coproduct":
        ta, tb = a.carrier_type, b.carrier_type
        wa, wb = a.witness_type, b.witness_type
        both_l = (f"case (fn v:{wa}. inl (pair v e1)) (fn w:{wa}. inr (pair w e1)) "
                  f"(t0 p q r (fst u))")
        both_r = (f"case (fn v:{wb}. inl (pair e0 v)) (fn w:{wb}. inr (pair e0 w)) "
                  f"(t1 p q r (snd u))")
        # mixed tags are apart with any witness, so u is passed on unchanged
        x_left = (f"fn p:{ta}. case "
                  f"(fn q:{ta}. case (fn r:{ta}. {both_l}) (fn r:{tb}. inl u) z) "
                  f"(fn q:{tb}. case (fn r:{ta}. inr u) (fn r:{tb}. inl u) z) y")
        x_right = (f"fn p:{tb}. case "
                   f"(fn q:{ta}. case (fn r:{ta}. inl u) (fn r:{tb}. inr u) z) "
                   f"(fn q:{tb}. case (fn r:{ta}. inl u) (fn r:{tb}. {both_r}) z) y")
        body = f"case ({x_left}) ({x_right}) x"
        return _closed(f"{head} {body}", ty, t0=_trans(a), t1=_trans(b),
                       e0=_default_minus(a), e1=_default_minus(b))
    wc = b.witness_type
    body = (f"case (fn v:{wc}. inl (pair (fst u) v)) (fn w:{wc}. inr (pair (fst u) w)) "
            f"(tc (fst x (fst u)) (fst y (fst u)) (fst z (fst u)) (snd u))")
    return _closed(f"{head} {body}", ty, tc=_trans(b))


def symmetry_term(sigma: TypeExpr) -> Term:
    return build_apartness_structure(sigma).sym


def transitivity_term(sigma: TypeExpr) -> Term:
    return build_apartness_structure(sigma).trans


# ---------------------------------------------------------------------------
# sample pools


def _interleave(*seqs: Sequence[Term]) -> list[Term]:
    out = []
    for group in itertools.zip_longest(*seqs):
        out.extend(t for t in group if t is not None)
    return out


def _diagonal(xs: Sequence[Term], ys: Sequence[Term]) -> list[tuple[Term, Term]]:
    """All pairs, ordered so that small index sums come first."""
    pairs = [(i, j) for i in range(len(xs)) for j in range(len(ys))]
    pairs.sort(key=lambda ij: (ij[0] + ij[1], ij[0]))
    return [(xs[i], ys[j]) for i, j in pairs]


def _sub_cap(cap: int) -> int:
    return max(2, min(cap, 4))


@lru_cache(maxsize=None)
def element_pool(s: ApartnessStructure, cap: int = 9) -> tuple[Term, ...]:
    """Canonical members of the carrier, all in dom, at most `cap` of them."""
    if s.kind == "nno":
        return tuple(numeral(i) for i in range(min(cap, 9)))
    if s.kind == "terminal":
        return (Const("unit"),)
    a, b = s.parts
    sub = _sub_cap(cap)
    if s.kind == "product":
        pairs = _diagonal(element_pool(a, sub), element_pool(b, sub))
        out = [normalize(app(Const("pair"), x, y)) for x, y in pairs[:cap]]
        return tuple(out)
    if s.kind == "coproduct":
        lefts = [normalize(_closed("inl u", s.carrier_type, u=u)) for u in element_pool(a, sub)]
        rights = [normalize(_closed("inr u", s.carrier_type, u=u)) for u in element_pool(b, sub)]
        return tuple(_interleave(lefts, rights)[:cap])
    return tuple(_function_pool(s, cap))


def _function_pool(s: ApartnessStructure, cap: int) -> list[Term]:
    b, c = s.parts
    tb, wc = b.carrier_type, c.witness_type
    ty = s.carrier_type
    refl_ignore = f"(fn u:{tb}. fn v:{tb}. fn w:{wc}. r)"
    out: list[Term] = []

    def add(text: str, **env: Term) -> None:
        out.append(normalize(_closed(text, ty, r=b.default_witness, **env)))

    if b.source == c.source:
        add(f"pair (fn u:{tb}. u) (fn u:{tb}. fn v:{tb}. fn w:{wc}. w)")
    if b.kind == "nno" and c.kind == "nno":
        add(f"pair succ {refl_ignore}")
        add(f"pair (fn n:N. rec 0 (fn m:N. fn k:N. m) n) {refl_ignore}")
        add(f"pair (fn n:N. d n 3) {refl_ignore}", d=build_d())
        add(f"pair (fn n:N. rec 0 (fn m:N. fn k:N. succ (succ k)) n) {refl_ignore}")
    if b.kind == "exponential" and b.parts[1].source == c.source:
        # evaluation at a point p, which is also the reflected witness
        for p in element_pool(b.parts[0], 3):
            add(f"pair (fn f:{tb}. fst f p) (fn f:{tb}. fn g:{tb}. fn w:{wc}. pair p w)", p=p)
    if b.kind == "product":
        for i, part in enumerate(b.parts):
            if part.source == c.source:
                proj, tag = ("fst", "inl") if i == 0 else ("snd", "inr")
                add(f"pair (fn u:{tb}. {proj} u) (fn u:{tb}. fn v:{tb}. fn w:{wc}. {tag} w)")
    if c.kind == "coproduct":
        for i, part in enumerate(c.parts):
            if part.source == b.source:
                tag, proj = ("inl", "fst") if i == 0 else ("inr", "snd")
                add(f"pair (fn u:{tb}. {tag} u) (fn u:{tb}. fn v:{tb}. fn w:{wc}. {proj} w)")
    for k in element_pool(c, 3):
        add(f"pair (fn u:{tb}. k) {refl_ignore}", k=k)
    return list(dict.fromkeys(out))[:cap]


@lru_cache(maxsize=None)
def witness_pool(s: ApartnessStructure, cap: int = 4) -> tuple[Term, ...]:
    if s.kind == "nno":
        return tuple(numeral(i) for i in range(min(cap, 2)))
    if s.kind == "terminal":
        return (Const("unit"),)
    a, b = s.parts
    sub = _sub_cap(cap)
    if s.kind == "product":
        lefts = [normalize(_closed("inl u", s.witness_type, u=u)) for u in witness_pool(a, sub)]
        rights = [normalize(_closed("inr u", s.witness_type, u=u)) for u in witness_pool(b, sub)]
        return tuple(_interleave(lefts, rights)[:cap])
    if s.kind == "coproduct":
        pairs = _diagonal(witness_pool(a, sub), witness_pool(b, sub))[:cap]
    else:
        # every sample point once, then a few more value witnesses
        w0 = witness_pool(b, 1)[0]
        pairs = [(p, w0) for p in element_pool(a)]
        pairs += _diagonal(element_pool(a, sub), witness_pool(b, sub))[:cap]
    return tuple(dict.fromkeys(normalize(app(Const("pair"), x, y)) for x, y in pairs))


# ---------------------------------------------------------------------------
# the checkers


class Checker:
    """dom/app evaluation with a fixed sample pool and memoized verdicts.

    `samples` may contain closed terms of any type; each one joins the pools of
    every structure whose carrier (or witness) type it inhabits.  Verdicts are
    cached per checker, so one checker should be reused across related calls.
    """

    def __init__(self, samples: Iterable[Term] = (), cap: int = 9, witness_cap: int = 4):
        self.cap = cap
        self.witness_cap = witness_cap
        self._extra: dict[TypeExpr, list[Term]] = {}
        for t in samples:
            ty = checked_type(t)
            if ty is None:
                t, ty = elaborate(t)
            self._extra.setdefault(ty, []).append(normalize(t))
        self._dom: dict = {}
        self._app: dict = {}

    def members(self, s: ApartnessStructure) -> list[Term]:
        return list(dict.fromkeys([*element_pool(s, self.cap), *self._extra.get(s.carrier_type, ())]))

    def witnesses(self, s: ApartnessStructure) -> list[Term]:
        return list(dict.fromkeys([*witness_pool(s, self.witness_cap), *self._extra.get(s.witness_type, ())]))

    def assume_member(self, s: ApartnessStructure, x: Term) -> None:
        """Record x in dom(s) as a hypothesis, together with its components.

        Used when a property is conditional on membership, e.g. reflection of
        apartness by a map on inputs already known to be members.
        """
        x = normalize(x)
        self._dom[(s, x)] = HOLDS
        if s.kind == "product":
            for part, u in zip(s.parts, _split_pair(x)):
                self.assume_member(part, u)
        elif s.kind == "coproduct":
            tag, u = _split_sum(x)
            self.assume_member(s.parts[0] if tag == "inl" else s.parts[1], u)

    def dom(self, s: ApartnessStructure, x: Term) -> Verdict:
        key = (s, x)
        if key not in self._dom:
            self._dom[key] = self._dom_uncached(s, x)
        return self._dom[key]

    def app(self, s: ApartnessStructure, x: Term, y: Term, z: Term) -> Verdict:
        key = (s, x, y, z)
        if key not in self._app:
            self._app[key] = self._app_uncached(s, x, y, z)
        return self._app[key]

    def _dom_uncached(self, s: ApartnessStructure, x: Term) -> Verdict:
        if s.kind in ("nno", "terminal"):
            return HOLDS
        if s.kind == "product":
            a, b = _split_pair(x)
            return conj(self._lazy([lambda: self.dom(s.parts[0], a), lambda: self.dom(s.parts[1], b)]))
        if s.kind == "coproduct":
            tag, u = _split_sum(x)
            return self.dom(s.parts[0] if tag == "inl" else s.parts[1], u)
        return self._dom_arrow(s, x)

    def _dom_arrow(self, s: ApartnessStructure, x: Term) -> Verdict:
        b, c = s.parts
        f, r = _split_pair(x)
        if s.trivial_dom:
            return HOLDS
        pool = self.members(b)
        # values of members in dom land in dom
        if not c.trivial_dom:
            for u in pool:
                du = self.dom(b, u)
                if refuted(du):
                    continue
                dv = self.dom(c, _apply(f, u))
                if refuted(dv):
                    if du is HOLDS:
                        return Fails((x, u), "value outside the domain")
        # apartness of values is reflected into apartness of arguments
        if b.kind not in ("nno", "terminal"):
            values = {u: _apply(f, u) for u in pool}
            for u, v in itertools.product(pool, repeat=2):
                for w in self.witnesses(c):
                    premise = self.app(c, values[u], values[v], w)
                    if refuted(premise):
                        continue
                    back = self.app(b, u, v, _apply(r, u, v, w))
                    if refuted(back):
                        if premise is HOLDS:
                            return Fails((x, u, v, w), "apartness not reflected")
        return SAMPLED

    def _app_uncached(self, s: ApartnessStructure, x: Term, y: Term, z: Term) -> Verdict:
        if s.kind == "nno":
            return HOLDS if as_numeral(x) != as_numeral(y) else Fails((x, y, z), "equal numerals")
        if s.kind == "terminal":
            return Fails((x, y, z), "nothing is apart in the terminal type")
        a, b = s.parts
        if s.kind == "product":
            tag, w = _split_sum(z)
            (x0, x1), (y0, y1) = _split_pair(x), _split_pair(y)
            if tag == "inl":
                first = lambda: self.app(a, x0, y0, w)
            else:
                first = lambda: self.app(b, x1, y1, w)
        elif s.kind == "coproduct":
            (tx, u), (ty, v) = _split_sum(x), _split_sum(y)
            za, zb = _split_pair(z)
            if tx != ty:
                first = lambda: HOLDS
            elif tx == "inl":
                first = lambda: self.app(a, u, v, za)
            else:
                first = lambda: self.app(b, u, v, zb)
        else:
            (f, _), (g, _) = _split_pair(x), _split_pair(y)
            p, w = _split_pair(z)
            first = lambda: conj(self._lazy([
                lambda: self.dom(a, p),
                lambda: self.app(b, _apply(f, p), _apply(g, p), w),
            ]))
        return conj(self._lazy([first, lambda: self.dom(s, x), lambda: self.dom(s, y)]))

    @staticmethod
    def _lazy(thunks):
        # stop evaluating conjuncts once one of them fails
        for th in thunks:
            v = th()
            yield v
            if refuted(v):
                return


def dom_check(sigma: TypeExpr, x: Term, samples: Sequence[Term] = ()) -> Verdict:
    s = build_apartness_structure(sigma)
    return Checker(samples).dom(s, s.member(x))


def app_check(sigma: TypeExpr, x: Term, y: Term, z: Term, samples: Sequence[Term] = ()) -> Verdict:
    s = build_apartness_structure(sigma)
    return Checker(samples).app(s, s.member(x), s.member(y), s.witness(z))


# ---------------------------------------------------------------------------
# axioms on samples


def check_axioms(s: ApartnessStructure, checker: Optional[Checker] = None, cap: int = 5,
                 witness_cap: int = 3) -> dict[str, Verdict]:
    """Reflexivity, symmetry, co-transitivity and 'app implies dom', sampled."""
    c = checker or Checker()
    xs = list(dict.fromkeys([*element_pool(s, cap), *c._extra.get(s.carrier_type, ())]))
    zs = list(dict.fromkeys([*witness_pool(s, witness_cap), *c._extra.get(s.witness_type, ())]))
    sym, trans = s.sym, s.trans
    results: dict[str, Verdict] = {}

    def run(name, cases):
        verdict = HOLDS
        for ok, cx in cases:
            if ok is False:
                verdict = Fails(cx, name)
                break
        results[name] = verdict

    def reflexivity():
        for x in xs:
            if plausible(c.dom(s, x)):
                for z in zs:
                    yield refuted(c.app(s, x, x, z)), (x, z)

    apart = [(x, y, z) for x in xs for y in xs for z in zs if plausible(c.app(s, x, y, z))]

    def app_implies_dom():
        for x, y, z in apart:
            yield plausible(c.dom(s, x)) and plausible(c.dom(s, y)), (x, y, z)

    def symmetry():
        for x, y, z in apart:
            before = c.app(s, x, y, z)
            after = c.app(s, y, x, _apply(sym, x, y, z))
            ok = plausible(after) and (after is HOLDS or before is not HOLDS)
            yield ok, (x, y, z)

    def transitivity():
        for x, y, u in apart:
            for z in xs:
                if not plausible(c.dom(s, z)):
                    continue
                tag, v = _split_sum(_apply(trans, x, y, z, u))
                verdict = c.app(s, x, z, v) if tag == "inl" else c.app(s, y, z, v)
                yield plausible(verdict), (x, y, z, u)

    run("reflexivity", reflexivity())
    run("app_implies_dom", app_implies_dom())
    run("symmetry", symmetry())
    run("transitivity", transitivity())
    return results


# ---------------------------------------------------------------------------
# premorphisms


@dataclass(frozen=True)
class Premorphism:
    """A map between apartness types together with its apartness reflector."""

    source: ApartnessStructure
    target: ApartnessStructure
    forward: Term
    reflect: Term

    def __post_init__(self):
        a, b = self.source, self.target
        fwd, _ = elaborate(self.forward, Arrow(a.carrier_type, b.carrier_type))
        refl, _ = elaborate(self.reflect, arrow3(a.carrier_type, a.carrier_type, b.witness_type, a.witness_type))
        object.__setattr__(self, "forward", normalize(fwd))
        object.__setattr__(self, "reflect", normalize(refl))

    @classmethod
    def from_term(cls, source: ApartnessStructure, target: ApartnessStructure, f: Term) -> "Premorphism":
        """Split a member of the exponential carrier into its two components."""
        exp = ApartnessStructure.exponential(source, target)
        fwd, refl = _split_pair(exp.member(f))
        return cls(source, target, fwd, refl)

    def as_term(self) -> Term:
        return normalize(app(Const("pair"), self.forward, self.reflect))

    def __call__(self, a: Term) -> Term:
        return _apply(self.forward, a)

    def check(self, checker: Optional[Checker] = None, inputs: Optional[Sequence[Term]] = None,
              witnesses: Optional[Sequence[Term]] = None) -> Verdict:
        """Members go to members, and image apartness is reflected back (sampled)."""
        c = checker or Checker()
        a, b = self.source, self.target
        xs = [a.member(x) for x in inputs] if inputs is not None else c.members(a)
        ns = [b.witness(n) for n in witnesses] if witnesses is not None else c.witnesses(b)
        verdicts: list[Verdict] = []
        for x in xs:
            if plausible(c.dom(a, x)):
                v = c.dom(b, self(x))
                if refuted(v):
                    return Fails((x,), "image outside the domain")
                verdicts.append(v)
        verdicts.append(self._reflection(c, xs, ns))
        return conj(verdicts)

    def check_reflection(self, checker: Optional[Checker] = None, inputs: Optional[Sequence[Term]] = None,
                         witnesses: Optional[Sequence[Term]] = None, assume_members: bool = False) -> Verdict:
        """Only the reflection half of `check`: every sampled witness between
        images is sent to one between the inputs.

        With `assume_members`, the inputs and their images are taken to be in
        the domain, so the verdict is exact relative to that hypothesis.
        """
        c = checker or Checker()
        a, b = self.source, self.target
        xs = [a.member(x) for x in inputs] if inputs is not None else c.members(a)
        ns = [b.witness(n) for n in witnesses] if witnesses is not None else c.witnesses(b)
        if assume_members:
            for x in xs:
                c.assume_member(a, x)
                c.assume_member(b, self(x))
        return self._reflection(c, xs, ns)

    def _reflection(self, c: Checker, xs: Sequence[Term], ns: Sequence[Term]) -> Verdict:
        a, b = self.source, self.target
        verdicts: list[Verdict] = []
        for x0, x1 in itertools.product(xs, repeat=2):
            for n in ns:
                premise = c.app(b, self(x0), self(x1), n)
                if refuted(premise):
                    continue
                back = c.app(a, x0, x1, _apply(self.reflect, x0, x1, n))
                if refuted(back):
                    if premise is HOLDS:
                        return Fails((x0, x1, n), "apartness not reflected")
                    back = SAMPLED
                verdicts.append(back)
        return conj(verdicts)

    def preserves_equivalence(self, checker: Optional[Checker] = None,
                              inputs: Optional[Sequence[Term]] = None) -> Verdict:
        """Inputs with no sampled apartness witness have images with none either."""
        c = checker or Checker()
        a, b = self.source, self.target
        xs = [a.member(x) for x in inputs] if inputs is not None else c.members(a)
        for x0, x1 in itertools.product(xs, repeat=2):
            if any(plausible(c.app(a, x0, x1, z)) for z in c.witnesses(a)):
                continue
            for n in c.witnesses(b):
                if c.app(b, self(x0), self(x1), n) is HOLDS:
                    return Fails((x0, x1, n), "equivalent inputs with apart images")
        return HOLDS
