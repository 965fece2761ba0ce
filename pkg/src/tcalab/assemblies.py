"""Assemblies over the term model, on finite underlying sets.

An assembly is a finite set of points, a realizer type, and for every point a
non-empty set of closed normal terms realizing it.  Predicates, their Heyting
operations and the quantifiers along morphisms follow the usual realizability
constructions.  Where a realizer set quantifies over a whole function type it
is kept intensional: a membership test plus a finite universe of candidate
terms to enumerate from.  Every check is exact relative to that universe.
"""

from __future__ import annotations

import itertools
from enum import Enum
from functools import cached_property
from typing import Callable, Hashable, Iterable, Mapping, Optional, Sequence

from .kernel import (
    HOLDS,
    EMPTY,
    Arrow,
    Fails,
    N,
    Prod,
    Sum,
    Term,
    TypeCheckError,
    TypeExpr,
    UNIT,
    Verdict,
    app,
    elaborate,
    normalize,
    numeral,
    parse_term,
    parse_type,
    show,
    spine,
)
from .kernel.terms import Const
from .tca import compile_lambdas

__all__ = [
    "Realizers",
    "FiniteRealizers",
    "IntensionalRealizers",
    "Assembly",
    "AsmMorphism",
    "Predicate",
    "HeytingOp",
    "term_pool",
    "embed_type",
    "product_assembly",
    "exponential_assembly",
    "pullback",
    "top",
    "bottom",
    "heyting_op",
    "pred_neg",
    "reindex",
    "exists_along",
    "forall_along",
    "leq_check",
    "equivalent",
    "subobject_of",
    "predicate_of",
    "lift_morphism",
    "ip_premise",
    "ip_conclusion",
    "ip_witness",
    "ac_premise",
    "ac_conclusion",
    "ac_witness",
    "load_assemblies",
    "exists_adjunction",
    "forall_adjunction",
    "beck_chevalley",
    "subobject_round_trip",
    "mono_round_trip",
    "random_fixture",
    "run_fixture_checks",
]

Point = Hashable


def _nf(t: Term, ty: Optional[TypeExpr] = None) -> Term:
    t, _ = elaborate(t, ty)
    return normalize(t)


def _closed(text: str, ty: TypeExpr, **env: Term) -> Term:
    t, _ = elaborate(parse_term(text, env), ty)
    return normalize(compile_lambdas(t))


def _pair(a: Term, b: Term) -> Term:
    return normalize(app(Const("pair"), a, b))


def _apply(f: Term, *args: Term) -> Term:
    return normalize(app(f, *args))


# ---------------------------------------------------------------------------
# realizer sets


class Realizers:
    """A set of closed normal terms; membership is up to convertibility."""

    def __contains__(self, t: Term) -> bool:
        raise NotImplementedError

    def elements(self) -> tuple[Term, ...]:
        raise NotImplementedError

    def __bool__(self) -> bool:
        return bool(self.elements())

    def __iter__(self):
        return iter(self.elements())


class FiniteRealizers(Realizers):
    def __init__(self, terms: Iterable[Term] = ()):
        self._terms = tuple(dict.fromkeys(normalize(t) for t in terms))
        self._set = frozenset(self._terms)

    def __contains__(self, t: Term) -> bool:
        return normalize(t) in self._set

    def elements(self) -> tuple[Term, ...]:
        return self._terms

    def __repr__(self) -> str:
        return "{" + ", ".join(show(t) for t in self._terms) + "}"


class IntensionalRealizers(Realizers):
    """Given by a membership test; enumerated by filtering a candidate universe."""

    def __init__(self, test: Callable[[Term], bool], candidates: Iterable[Term]):
        self._test = test
        self._candidates = tuple(candidates)

    def __contains__(self, t: Term) -> bool:
        return self._test(normalize(t))

    @cached_property
    def _elements(self) -> tuple[Term, ...]:
        return tuple(c for c in dict.fromkeys(normalize(c) for c in self._candidates) if self._test(c))

    def elements(self) -> tuple[Term, ...]:
        return self._elements

    def __repr__(self) -> str:
        return f"<intensional, {len(self._elements)} of {len(self._candidates)} candidates>"


def _pairs(left: Realizers, right: Realizers) -> Realizers:
    if isinstance(left, FiniteRealizers) and isinstance(right, FiniteRealizers):
        return FiniteRealizers(_pair(a, b) for a in left for b in right)

    def test(k: Term) -> bool:
        parts = _split_pair(k)
        return parts is not None and parts[0] in left and parts[1] in right

    return IntensionalRealizers(test, [_pair(a, b) for a in left for b in right])


def _union(sets: Sequence[Realizers]) -> Realizers:
    if all(isinstance(s, FiniteRealizers) for s in sets):
        return FiniteRealizers(t for s in sets for t in s)
    return IntensionalRealizers(lambda t: any(t in s for s in sets), [t for s in sets for t in s])


def _split_pair(t: Term) -> Optional[tuple[Term, Term]]:
    h, args = spine(t)
    if isinstance(h, Const) and h.name == "pair" and len(args) == 2:
        return args[0], args[1]
    return None


# ---------------------------------------------------------------------------
# candidate universes


def term_pool(ty: TypeExpr, extra: Iterable[Term] = (), size: int = 4) -> tuple[Term, ...]:
    """A small universe of closed normal terms of type `ty`, plus `extra`.

    Numerals 0..size-1, unit, pairs and injections of smaller pools, and at
    arrow types constants, identities, projections and injections.
    """
    out = [_nf(t, ty) for t in extra]
    out.extend(_base_pool(ty, size))
    return tuple(dict.fromkeys(out))


def _base_pool(ty: TypeExpr, size: int) -> list[Term]:
    if ty == N:
        return [numeral(i) for i in range(size)]
    if ty == UNIT:
        return [Const("unit")]
    if ty == EMPTY:
        return []
    small = max(2, size // 2)
    if isinstance(ty, Prod):
        return [_pair(a, b) for a, b in itertools.product(_base_pool(ty.left, small), _base_pool(ty.right, small))][:size * size]
    if isinstance(ty, Sum):
        left = [_closed("inl u", ty, u=u) for u in _base_pool(ty.left, small)]
        right = [_closed("inr u", ty, u=u) for u in _base_pool(ty.right, small)]
        return left + right
    if isinstance(ty, Arrow):
        a, b = ty.dom, ty.cod
        out = []
        if a == b:
            out.append(_closed(f"fn x:{a}. x", ty))
        if isinstance(a, Prod):
            if a.left == b:
                out.append(_closed(f"fn x:{a}. fst x", ty))
            if a.right == b:
                out.append(_closed(f"fn x:{a}. snd x", ty))
        if isinstance(b, Sum):
            if b.left == a:
                out.append(_closed("inl", ty))
            if b.right == a:
                out.append(_closed("inr", ty))
        out.extend(_closed(f"fn x:{a}. c", ty, c=c) for c in _base_pool(b, small))
        return out
    raise TypeCheckError(f"no closed terms for type {ty}", Const("unit"))


# ---------------------------------------------------------------------------
# assemblies and morphisms


class Assembly:
    """(X, A, alpha) with X finite and every alpha(x) a non-empty set of terms."""

    def __init__(self, carrier: Iterable[Point], realizer_type: TypeExpr,
                 realizers: Mapping[Point, Iterable[Term]], name: str = ""):
        self.carrier = tuple(carrier)
        if len(set(self.carrier)) != len(self.carrier):
            raise ValueError("duplicate points in carrier")
        self.realizer_type = realizer_type
        self.name = name
        self._alpha: dict[Point, FiniteRealizers] = {}
        for x in self.carrier:
            terms = [_nf(t, realizer_type) for t in realizers.get(x, ())]
            if not terms:
                raise ValueError(f"point {x!r} has no realizer")
            self._alpha[x] = FiniteRealizers(terms)

    def alpha(self, x: Point) -> FiniteRealizers:
        return self._alpha[x]

    def __repr__(self) -> str:
        label = self.name or "Assembly"
        return f"{label}({len(self.carrier)} points, {self.realizer_type})"

    def points_realized_by(self, a: Term) -> list[Point]:
        return [x for x in self.carrier if a in self._alpha[x]]

    @cached_property
    def all_realizers(self) -> tuple[Term, ...]:
        return tuple(dict.fromkeys(t for x in self.carrier for t in self._alpha[x]))

    def is_modest(self) -> bool:
        """No realizer is shared by two distinct points."""
        seen: dict[Term, Point] = {}
        for x in self.carrier:
            for a in self._alpha[x]:
                if seen.setdefault(a, x) != x:
                    return False
        return True

    def is_strongly_modest(self) -> bool:
        return self.is_modest() and all(len(self._alpha[x].elements()) == 1 for x in self.carrier)

    def is_exhaustive(self, universe: Optional[Iterable[Term]] = None) -> bool:
        """Every term of the universe (default: the standard pool) realizes some point."""
        terms = term_pool(self.realizer_type) if universe is None else universe
        return all(self.points_realized_by(_nf(t, self.realizer_type)) for t in terms)

    def is_basic(self, universe: Optional[Iterable[Term]] = None) -> bool:
        return self.is_strongly_modest() and self.is_exhaustive(universe)

    def unique_realizer(self, x: Point) -> Term:
        (a,) = self._alpha[x].elements()
        return a


class AsmMorphism:
    """A point map together with a term tracking it."""

    def __init__(self, source: Assembly, target: Assembly, function: Mapping[Point, Point] | Callable[[Point], Point],
                 tracker: Term):
        self.source = source
        self.target = target
        fn = function if callable(function) else function.__getitem__
        self.graph = {x: fn(x) for x in source.carrier}
        self.tracker = _nf(tracker, Arrow(source.realizer_type, target.realizer_type))
        for x, y in self.graph.items():
            if y not in target._alpha:
                raise ValueError(f"{x!r} is sent outside the target carrier")
            for a in source.alpha(x):
                if _apply(self.tracker, a) not in target.alpha(y):
                    raise ValueError(f"tracker does not send the realizer {show(a)} of {x!r} into {y!r}")

    def __call__(self, x: Point) -> Point:
        return self.graph[x]

    def preimage(self, y: Point) -> list[Point]:
        return [x for x, fx in self.graph.items() if fx == y]

    @classmethod
    def identity(cls, x: Assembly) -> "AsmMorphism":
        return cls(x, x, lambda p: p, _closed(f"fn a:{x.realizer_type}. a", Arrow(x.realizer_type, x.realizer_type)))


def embed_type(sigma: TypeExpr, carrier_sample: Sequence[Term]) -> Assembly:
    """E(sigma) restricted to a sample: each term is a point realized by itself."""
    points = [_nf(t, sigma) for t in carrier_sample]
    if len(set(points)) != len(points):
        raise ValueError("sample contains convertible duplicates")
    return Assembly(points, sigma, {p: [p] for p in points}, name=f"E({sigma})")


def product_assembly(x: Assembly, y: Assembly) -> Assembly:
    carrier = [(p, q) for p in x.carrier for q in y.carrier]
    real = {(p, q): [_pair(a, b) for a in x.alpha(p) for b in y.alpha(q)] for p, q in carrier}
    return Assembly(carrier, Prod(x.realizer_type, y.realizer_type), real, name=f"{x.name or 'X'}x{y.name or 'Y'}")


def pullback(f: AsmMorphism, g: AsmMorphism) -> tuple[Assembly, AsmMorphism, AsmMorphism]:
    """The pullback of f: X -> Z and g: Y -> Z, with its two projections."""
    if f.target is not g.target:
        raise ValueError("pullback needs a common codomain")
    x, y = f.source, g.source
    carrier = [(p, q) for p in x.carrier for q in y.carrier if f(p) == g(q)]
    real = {(p, q): [_pair(a, b) for a in x.alpha(p) for b in y.alpha(q)] for p, q in carrier}
    ty = Prod(x.realizer_type, y.realizer_type)
    pb = Assembly(carrier, ty, real, name="P")
    px = AsmMorphism(pb, x, lambda pq: pq[0], _closed("fst", Arrow(ty, x.realizer_type)))
    py = AsmMorphism(pb, y, lambda pq: pq[1], _closed("snd", Arrow(ty, y.realizer_type)))
    return pb, px, py


def exponential_assembly(x: Assembly, y: Assembly, trackers: Optional[Iterable[Term]] = None) -> Assembly:
    """X^Y: the morphisms Y -> X that some candidate term tracks.

    Points are frozen graphs (tuples of (y, x) pairs).  Since the term model is
    not extensional, trackers are identified when they agree on every realizer
    of Y; one normal form per behaviour is kept.
    """
    ty = Arrow(y.realizer_type, x.realizer_type)
    candidates = term_pool(ty) if trackers is None else [_nf(t, ty) for t in trackers]
    by_behaviour: dict[tuple[Term, ...], Term] = {}
    for c in candidates:
        by_behaviour.setdefault(tuple(_apply(c, b) for b in y.all_realizers), c)
    graphs: dict[tuple, list[Term]] = {}
    for c in by_behaviour.values():
        for graph in _tracked_graphs(c, y, x):
            graphs.setdefault(graph, []).append(c)
    return Assembly(list(graphs), ty, graphs, name=f"{x.name or 'X'}^{y.name or 'Y'}")


def _tracked_graphs(c: Term, y: Assembly, x: Assembly) -> list[tuple]:
    """Every point map Y -> X that c tracks, as a tuple of (y, x) pairs."""
    choices = []
    for q in y.carrier:
        allowed = set(x.carrier)
        for b in y.alpha(q):
            allowed &= set(x.points_realized_by(_apply(c, b)))
        if not allowed:
            return []
        choices.append([(q, p) for p in x.carrier if p in allowed])
    return [tuple(g) for g in itertools.product(*choices)]


def lift_morphism(f: Term, x: Assembly, y: Assembly) -> AsmMorphism:
    """The unique morphism X -> Y tracked by f (X strongly modest, Y modest)."""
    if not x.is_strongly_modest():
        raise ValueError("source assembly is not strongly modest")
    if not y.is_modest():
        raise ValueError("target assembly is not modest")
    f = _nf(f, Arrow(x.realizer_type, y.realizer_type))
    graph = {}
    for p in x.carrier:
        image = _apply(f, x.unique_realizer(p))
        hits = y.points_realized_by(image)
        if not hits:
            raise ValueError(f"image {show(image)} of {p!r} realizes no point of the target")
        graph[p] = hits[0]
    return AsmMorphism(x, y, graph, f)


# ---------------------------------------------------------------------------
# predicates


class Predicate:
    """(B, beta) on an assembly, with a support witness e : B -> A."""

    def __init__(self, over: Assembly, pred_type: TypeExpr, holds: Mapping[Point, Iterable[Term] | Realizers],
                 support_witness: Term, name: str = ""):
        self.over = over
        self.pred_type = pred_type
        self.name = name
        self.support_witness = _nf(support_witness, Arrow(pred_type, over.realizer_type))
        self._holds: dict[Point, Realizers] = {}
        for x in over.carrier:
            r = holds.get(x, ())
            if not isinstance(r, Realizers):
                r = FiniteRealizers(_nf(t, pred_type) for t in r)
            self._holds[x] = r
        for x in over.carrier:
            for b in self._holds[x]:
                if _apply(self.support_witness, b) not in over.alpha(x):
                    raise ValueError(f"support witness sends {show(b)} outside the realizers of {x!r}")

    def at(self, x: Point) -> Realizers:
        return self._holds[x]

    def support(self) -> list[Point]:
        return [x for x in self.over.carrier if self._holds[x]]

    def __repr__(self) -> str:
        return f"Predicate({self.name or self.pred_type} on {self.over!r})"


class HeytingOp(Enum):
    AND = "and"
    OR = "or"
    IMPLIES = "implies"


def top(x: Assembly) -> Predicate:
    ty = x.realizer_type
    return Predicate(x, ty, {p: x.alpha(p) for p in x.carrier}, _closed(f"fn a:{ty}. a", Arrow(ty, ty)), "top")


def bottom(x: Assembly, ty: TypeExpr = EMPTY) -> Predicate:
    """Nowhere realized. At Empty the support witness is exf; at an inhabited
    type it is a constant map, which is never applied."""
    if ty == EMPTY:
        w = _closed("exf", Arrow(EMPTY, x.realizer_type))
    else:
        w = _closed(f"fn b:{ty}. a", Arrow(ty, x.realizer_type), a=x.all_realizers[0])
    return Predicate(x, ty, {}, w, "bottom")


def _same_base(p: Predicate, q: Predicate) -> Assembly:
    if p.over is not q.over:
        raise ValueError("predicates live on different assemblies")
    return p.over


def heyting_op(op: HeytingOp | str, p: Predicate, q: Predicate,
               functions: Optional[Iterable[Term]] = None) -> Predicate:
    """Conjunction, disjunction or implication of two predicates on one assembly.

    The implication p => q has realizers pair a m with a realizing the point
    and m sending every realizer of p into q; `functions` is the universe m
    ranges over (default: the standard pool plus q's support-compatible maps).
    """
    op = HeytingOp(op)
    x = _same_base(p, q)
    B, C, A = p.pred_type, q.pred_type, x.realizer_type
    if op is HeytingOp.AND:
        holds = {pt: _pairs(p.at(pt), q.at(pt)) for pt in x.carrier}
        w = _closed("fn k. e (fst k)", Arrow(Prod(B, C), A), e=p.support_witness)
        return Predicate(x, Prod(B, C), holds, w, "and")
    if op is HeytingOp.OR:
        ty = Sum(B, C)
        holds = {}
        for pt in x.carrier:
            left = [_closed("inl u", ty, u=u) for u in p.at(pt)]
            right = [_closed("inr u", ty, u=u) for u in q.at(pt)]
            holds[pt] = FiniteRealizers(left + right)
        w = _closed(f"fn k:{ty}. case eb ec k", Arrow(ty, A), eb=p.support_witness, ec=q.support_witness)
        return Predicate(x, ty, holds, w, "or")
    fn_ty = Arrow(B, C)
    pool = term_pool(fn_ty, functions or ())
    ty = Prod(A, fn_ty)
    holds = {}
    for pt in x.carrier:
        def test(k: Term, pt=pt) -> bool:
            parts = _split_pair(k)
            if parts is None or parts[0] not in x.alpha(pt):
                return False
            return all(_apply(parts[1], n) in q.at(pt) for n in p.at(pt))

        holds[pt] = IntensionalRealizers(test, [_pair(a, m) for a in x.alpha(pt) for m in pool])
    return Predicate(x, ty, holds, _closed("fst", Arrow(ty, A)), "implies")


def pred_neg(p: Predicate) -> Predicate:
    """Negation computed directly: alpha(x) where p has no realizer, else empty."""
    x = p.over
    ty = x.realizer_type
    holds = {pt: (() if p.at(pt) else x.alpha(pt)) for pt in x.carrier}
    return Predicate(x, ty, holds, _closed(f"fn a:{ty}. a", Arrow(ty, ty)), "not")


def reindex(f: AsmMorphism, p: Predicate) -> Predicate:
    """Pull a predicate on f's codomain back along f: realizers pair m n."""
    if p.over is not f.target:
        raise ValueError("predicate does not live on the codomain")
    y = f.source
    ty = Prod(p.pred_type, y.realizer_type)
    holds = {q: _pairs(p.at(f(q)), y.alpha(q)) for q in y.carrier}
    return Predicate(y, ty, holds, _closed("snd", Arrow(ty, y.realizer_type)), "reindex")


def exists_along(f: AsmMorphism, p: Predicate) -> Predicate:
    """Union of the realizers over each fibre of f."""
    if p.over is not f.source:
        raise ValueError("predicate does not live on the domain")
    x = f.target
    holds = {pt: _union([p.at(q) for q in f.preimage(pt)]) for pt in x.carrier}
    w = _closed("fn c. t (e c)", Arrow(p.pred_type, x.realizer_type), t=f.tracker, e=p.support_witness)
    return Predicate(x, p.pred_type, holds, w, "exists")


def forall_along(f: AsmMorphism, p: Predicate, functions: Optional[Iterable[Term]] = None) -> Predicate:
    """Realizers pair a m: a realizes the point, m sends every realizer of
    every fibre point into p at that point."""
    if p.over is not f.source:
        raise ValueError("predicate does not live on the domain")
    x, y = f.target, f.source
    fn_ty = Arrow(y.realizer_type, p.pred_type)
    ty = Prod(x.realizer_type, fn_ty)
    pool = term_pool(fn_ty, functions or ())
    holds = {}
    for pt in x.carrier:
        fibre = f.preimage(pt)

        def test(k: Term, pt=pt, fibre=fibre) -> bool:
            parts = _split_pair(k)
            if parts is None or parts[0] not in x.alpha(pt):
                return False
            return all(_apply(parts[1], b) in p.at(q) for q in fibre for b in y.alpha(q))

        holds[pt] = IntensionalRealizers(test, [_pair(a, m) for a in x.alpha(pt) for m in pool])
    return Predicate(x, ty, holds, _closed("fst", Arrow(ty, x.realizer_type)), "forall")


def leq_check(p: Predicate, q: Predicate, witness: Term) -> Verdict:
    """p <= q via `witness`: it sends every realizer of p at x into q at x."""
    x = _same_base(p, q)
    w = _nf(witness, Arrow(p.pred_type, q.pred_type))
    for pt in x.carrier:
        for b in p.at(pt):
            image = _apply(w, b)
            if image not in q.at(pt):
                return Fails((b, image), f"at point {pt!r}")
    return HOLDS


def equivalent(p: Predicate, q: Predicate, forth: Term, back: Term) -> Verdict:
    """Mutual <= with the two given witnesses."""
    first = leq_check(p, q, forth)
    return first if isinstance(first, Fails) else leq_check(q, p, back)


# ---------------------------------------------------------------------------
# predicates and subobjects


def subobject_of(p: Predicate) -> tuple[Assembly, AsmMorphism]:
    """The sub-assembly of supported points, realized by p, with its inclusion."""
    x = p.over
    points = p.support()
    sub = Assembly(points, p.pred_type, {pt: p.at(pt).elements() for pt in points}, name="Sub")
    return sub, AsmMorphism(sub, x, lambda pt: pt, p.support_witness)


def predicate_of(mono: AsmMorphism) -> Predicate:
    """The predicate of a mono: realizers of each fibre, collected."""
    y, x = mono.source, mono.target
    holds = {pt: [b for q in mono.preimage(pt) for b in y.alpha(q)] for pt in x.carrier}
    return Predicate(x, y.realizer_type, holds, mono.tracker, "image")


# ---------------------------------------------------------------------------
# independence of premise


def _check_ip_shapes(not_phi: Predicate, psi: Predicate, y: Assembly) -> Assembly:
    x = not_phi.over
    if not_phi.pred_type != x.realizer_type:
        raise ValueError("negated premise must be realized by the context's own realizers")
    if set(psi.over.carrier) != {(p, q) for p in x.carrier for q in y.carrier}:
        raise ValueError("psi must live on the product of the context and Y")
    return x


def ip_premise(not_phi: Predicate, psi: Predicate, y: Assembly,
               functions: Optional[Iterable[Term]] = None) -> Predicate:
    """not phi -> exists y. psi, on the context: realizers pair m n with n
    realizing x and m sending not-phi realizers into some psi(x, y)."""
    x = _check_ip_shapes(not_phi, psi, y)
    A, D = x.realizer_type, psi.pred_type
    fn_ty = Arrow(A, D)
    ty = Prod(fn_ty, A)
    pool = term_pool(fn_ty, functions or ())
    holds = {}
    for pt in x.carrier:
        targets = _union([psi.at((pt, q)) for q in y.carrier])

        def test(k: Term, pt=pt, targets=targets) -> bool:
            parts = _split_pair(k)
            if parts is None or parts[1] not in x.alpha(pt):
                return False
            return all(_apply(parts[0], i) in targets for i in not_phi.at(pt))

        holds[pt] = IntensionalRealizers(test, [_pair(m, n) for m in pool for n in x.alpha(pt)])
    return Predicate(x, ty, holds, _closed("snd", Arrow(ty, A)), "ip-premise")


def ip_conclusion(not_phi: Predicate, psi: Predicate, y: Assembly,
                  functions: Optional[Iterable[Term]] = None) -> Predicate:
    """exists y. (not phi -> psi(y)): realizers pair k l with l realizing
    (x, y) and k sending every pair of a not-phi realizer and a realizer of y
    into psi(x, y)."""
    x = _check_ip_shapes(not_phi, psi, y)
    A, B, D = x.realizer_type, y.realizer_type, psi.pred_type
    fn_ty = Arrow(Prod(A, B), D)
    ty = Prod(fn_ty, Prod(A, B))
    pool = term_pool(fn_ty, functions or ())
    holds = {}
    for pt in x.carrier:
        def test(k: Term, pt=pt) -> bool:
            parts = _split_pair(k)
            if parts is None:
                return False
            fn, l = parts
            ab = _split_pair(l)
            if ab is None or ab[0] not in x.alpha(pt):
                return False
            for q in y.points_realized_by(ab[1]):
                if all(_apply(fn, _pair(i, b)) in psi.at((pt, q)) for i in not_phi.at(pt) for b in y.alpha(q)):
                    return True
            return False

        cands = [_pair(k, _pair(a, b)) for k in pool for a in x.alpha(pt) for b in y.all_realizers]
        holds[pt] = IntensionalRealizers(test, cands)
    return Predicate(x, ty, holds, _closed("fn k. fst (snd k)", Arrow(ty, A)), "ip-conclusion")


def ip_witness(not_phi: Predicate, psi: Predicate, y: Assembly) -> Term:
    """The map (m, n) |-> (fn i. m n, (n, snd (g (m n)))), g psi's support."""
    x = _check_ip_shapes(not_phi, psi, y)
    if psi.support_witness is None:
        raise ValueError("psi needs a support witness")
    A, B, D = x.realizer_type, y.realizer_type, psi.pred_type
    src = Prod(Arrow(A, D), A)
    dst = Prod(Arrow(Prod(A, B), D), Prod(A, B))
    return _closed(
        f"fn p:{src}. pair (fn i:{Prod(A, B)}. fst p (snd p)) (pair (snd p) (snd (g (fst p (snd p)))))",
        Arrow(src, dst), g=psi.support_witness)


# ---------------------------------------------------------------------------
# axiom of choice


def _context(phi: Predicate, x: Assembly, y: Assembly, z: Assembly) -> None:
    carrier = {(p, (q, r)) for p in x.carrier for q in y.carrier for r in z.carrier}
    if set(phi.over.carrier) != carrier:
        raise ValueError("phi must live on X x (Y x Z)")


def ac_premise(phi: Predicate, x: Assembly, y: Assembly, z: Assembly,
               functions: Optional[Iterable[Term]] = None) -> Predicate:
    """forall x exists y. phi on Z: realizers pair n m with n realizing z and
    m sending each pair (a, n') with a realizing x, n' realizing z, into
    phi(x, y, z) for some y."""
    _context(phi, x, y, z)
    A, C, D = x.realizer_type, z.realizer_type, phi.pred_type
    fn_ty = Arrow(Prod(A, C), D)
    ty = Prod(C, fn_ty)
    pool = term_pool(fn_ty, functions or ())
    holds = {}
    for r in z.carrier:
        def test(k: Term, r=r) -> bool:
            parts = _split_pair(k)
            if parts is None or parts[0] not in z.alpha(r):
                return False
            m = parts[1]
            for p in x.carrier:
                for a in x.alpha(p):
                    for c in z.alpha(r):
                        value = _apply(m, _pair(a, c))
                        if not any(value in phi.at((p, (q, r))) for q in y.carrier):
                            return False
            return True

        holds[r] = IntensionalRealizers(test, [_pair(n, m) for n in z.alpha(r) for m in pool])
    return Predicate(z, ty, holds, _closed("fst", Arrow(ty, C)), "ac-premise")


def _ac_conclusion_type(x: Assembly, y: Assembly, z: Assembly, d: TypeExpr) -> tuple[TypeExpr, TypeExpr]:
    A, B, C = x.realizer_type, y.realizer_type, z.realizer_type
    k_ty = Prod(A, Prod(Arrow(A, B), C))
    return k_ty, Prod(Prod(Arrow(A, B), C), Arrow(k_ty, Prod(d, k_ty)))


def ac_conclusion(phi: Predicate, x: Assembly, y: Assembly, z: Assembly,
                  functions: Optional[Iterable[Term]] = None, trackers: Optional[Iterable[Term]] = None) -> Predicate:
    """exists f. forall x. phi(x, f x, z) on Z.

    Realizers pair n m: fst n tracks some f : X -> Y, snd n realizes z, and m
    sends every k = (a, (t, c)) with a realizing x and t tracking f to
    pair d k with d realizing phi(x, f x, z).  The trackers t range over
    `trackers` (default: the standard pool) together with fst n itself.
    """
    _context(phi, x, y, z)
    A, B, C = x.realizer_type, y.realizer_type, z.realizer_type
    k_ty, ty = _ac_conclusion_type(x, y, z, phi.pred_type)
    fn_pool = term_pool(Arrow(k_ty, Prod(phi.pred_type, k_ty)), functions or ())
    tracker_pool = term_pool(Arrow(A, B), trackers or ())
    holds = {}
    for r in z.carrier:
        def test(k: Term, r=r) -> bool:
            parts = _split_pair(k)
            if parts is None:
                return False
            n, m = parts
            fc = _split_pair(n)
            if fc is None or fc[1] not in z.alpha(r):
                return False
            try:
                f = lift_morphism(fc[0], x, y)
            except ValueError:
                return False
            ts = [t for t in dict.fromkeys([fc[0], *tracker_pool]) if _tracks(t, f)]
            for p in x.carrier:
                for a in x.alpha(p):
                    for t in ts:
                        for c in z.alpha(r):
                            kk = _pair(a, _pair(t, c))
                            out = _split_pair(_apply(m, kk))
                            if out is None or out[1] != kk or out[0] not in phi.at((p, (f(p), r))):
                                return False
            return True

        cands = [_pair(_pair(t, c), m) for t in tracker_pool for c in z.alpha(r) for m in fn_pool]
        holds[r] = IntensionalRealizers(test, cands)
    return Predicate(z, ty, holds, _closed("fn k. snd (fst k)", Arrow(ty, C)), "ac-conclusion")


def _tracks(t: Term, f: AsmMorphism) -> bool:
    return all(_apply(t, a) in f.target.alpha(f(p)) for p in f.source.carrier for a in f.source.alpha(p))


def ac_witness(phi: Predicate, x: Assembly, y: Assembly, z: Optional[Assembly] = None) -> Term:
    """(n, m) |-> ((fn j. pi_Y (iota (m (j, n))), n), fn k. (m (pi_X k, n), k)),
    iota being phi's support witness."""
    if phi.support_witness is None:
        raise ValueError("phi needs a support witness")
    ty = phi.over.realizer_type
    if not (isinstance(ty, Prod) and isinstance(ty.right, Prod)):
        raise ValueError("phi must live on X x (Y x Z)")
    A, B, C = ty.left, ty.right.left, ty.right.right
    D = phi.pred_type
    k_ty = Prod(A, Prod(Arrow(A, B), C))
    src = Prod(C, Arrow(Prod(A, C), D))
    dst = Prod(Prod(Arrow(A, B), C), Arrow(k_ty, Prod(D, k_ty)))
    text = (f"fn p:{src}. pair (pair (fn j:{A}. fst (snd (iota (snd p (pair j (fst p)))))) (fst p)) "
            f"(fn k:{k_ty}. pair (snd p (pair (fst k) (fst p))) k)")
    return _closed(text, Arrow(src, dst), iota=phi.support_witness)


# ---------------------------------------------------------------------------
# fixture files


def load_assemblies(data: Mapping) -> tuple[dict[str, Assembly], dict[str, AsmMorphism], dict[str, Predicate]]:
    """Build named assemblies, morphisms and predicates from JSON-shaped data.

    assemblies: {name: {carrier: [points], type: "...", realizers: {point: [terms]}}}
    morphisms:  {name: {source, target, map: {point: point}, tracker: "..."}}
    predicates: {name: {over, type, realizers: {point: [terms]}, support_witness: "..."}}
    """
    assemblies: dict[str, Assembly] = {}
    for name, spec in data.get("assemblies", {}).items():
        ty = parse_type(spec["type"])
        real = {p: [parse_term(t) for t in ts] for p, ts in spec["realizers"].items()}
        assemblies[name] = Assembly(spec["carrier"], ty, real, name=name)
    morphisms: dict[str, AsmMorphism] = {}
    for name, spec in data.get("morphisms", {}).items():
        src, dst = assemblies[spec["source"]], assemblies[spec["target"]]
        morphisms[name] = AsmMorphism(src, dst, dict(spec["map"]), parse_term(spec["tracker"]))
    predicates: dict[str, Predicate] = {}
    for name, spec in data.get("predicates", {}).items():
        over = assemblies[spec["over"]]
        ty = parse_type(spec["type"])
        real = {p: [parse_term(t) for t in ts] for p, ts in spec.get("realizers", {}).items()}
        witness = spec.get("support_witness")
        if witness is None:
            if ty != over.realizer_type:
                raise ValueError(f"predicate {name!r} needs a support_witness")
            witness = f"fn a:{ty}. a"
        predicates[name] = Predicate(over, ty, real, parse_term(witness), name=name)
    return assemblies, morphisms, predicates


# ---------------------------------------------------------------------------
# hyperdoctrine laws with their explicit witnesses


def _verdict_name(v: Verdict) -> str:
    return type(v).__name__


def exists_adjunction(f: AsmMorphism, p: Predicate, q: Predicate,
                      g: Optional[Term] = None, h: Optional[Term] = None) -> Verdict:
    """exists_f p <= q  iff  p <= f* q, transported along the given witnesses.

    From g : C -> D build h = fn m. pair (g m) (e_C m); from h : C -> D x B
    build g = fn n. fst (h n).  The g-route must agree in both directions;
    the h-route must carry success from right to left.
    """
    if p.over is not f.source or q.over is not f.target:
        raise ValueError("p must live on the domain of f and q on its codomain")
    left_pred, right_pred = exists_along(f, p), reindex(f, q)
    C, D, B = p.pred_type, q.pred_type, f.source.realizer_type
    if g is not None:
        g = _nf(g, Arrow(C, D))
        hg = _closed("fn m. pair (g m) (e m)", Arrow(C, Prod(D, B)), g=g, e=p.support_witness)
        left, right = leq_check(left_pred, q, g), leq_check(p, right_pred, hg)
        if _verdict_name(left) != _verdict_name(right):
            return Fails((g, hg), f"exists side {left}, reindex side {right}")
    if h is not None:
        h = _nf(h, Arrow(C, Prod(D, B)))
        gh = _closed("fn n. fst (h n)", Arrow(C, D), h=h)
        right, left = leq_check(p, right_pred, h), leq_check(left_pred, q, gh)
        if right == HOLDS and left != HOLDS:
            return Fails((h, gh), f"reindex side holds, exists side {left}")
    return HOLDS


def forall_adjunction(f: AsmMorphism, c: Predicate, d: Predicate,
                      g: Optional[Term] = None, h: Optional[Term] = None,
                      functions: Optional[Iterable[Term]] = None) -> Verdict:
    """c <= forall_f d  iff  f* c <= d, transported along the given witnesses.

    From g : C -> A x (B -> D) build h = fn m. (snd (g (fst m))) (snd m);
    from h : C x B -> D build g = fn k. pair (e_C k) (fn l. h (pair k l)).
    """
    if c.over is not f.target or d.over is not f.source:
        raise ValueError("c must live on the codomain of f and d on its domain")
    all_pred, re_pred = forall_along(f, d, functions), reindex(f, c)
    A, B, C, D = f.target.realizer_type, f.source.realizer_type, c.pred_type, d.pred_type
    if g is not None:
        g = _nf(g, Arrow(C, Prod(A, Arrow(B, D))))
        hg = _closed("fn m. snd (g (fst m)) (snd m)", Arrow(Prod(C, B), D), g=g)
        left, right = leq_check(c, all_pred, g), leq_check(re_pred, d, hg)
        if left == HOLDS and right != HOLDS:
            return Fails((g, hg), f"forall side holds, reindex side {right}")
    if h is not None:
        h = _nf(h, Arrow(Prod(C, B), D))
        gh = _closed(f"fn k:{C}. pair (e k) (fn l:{B}. h (pair k l))", Arrow(C, Prod(A, Arrow(B, D))),
                     h=h, e=c.support_witness)
        right, left = leq_check(re_pred, d, h), leq_check(c, all_pred, gh)
        if right == HOLDS and left != HOLDS:
            return Fails((h, gh), f"reindex side holds, forall side {left}")
    return HOLDS


def beck_chevalley(k: AsmMorphism, h: AsmMorphism, c: Predicate) -> Verdict:
    """On the pullback of k : Z -> W and h : Y -> W (legs g to Z, f to Y),
    exists_f (g* c) and h* (exists_k c) are mutually below each other."""
    if c.over is not k.source:
        raise ValueError("predicate must live on the domain of k")
    _, g, f = pullback(k, h)
    lhs = exists_along(f, reindex(g, c))
    rhs = reindex(h, exists_along(k, c))
    forth = _closed("fn p. pair (fst p) (snd (snd p))", Arrow(lhs.pred_type, rhs.pred_type))
    back = _closed("fn p. pair (fst p) (pair (e (fst p)) (snd p))", Arrow(rhs.pred_type, lhs.pred_type),
                   e=c.support_witness)
    return equivalent(lhs, rhs, forth, back)


def subobject_round_trip(p: Predicate) -> Verdict:
    """predicate -> subobject -> predicate is the identity up to mutual <=."""
    _, mono = subobject_of(p)
    back = predicate_of(mono)
    ident = _closed(f"fn b:{p.pred_type}. b", Arrow(p.pred_type, p.pred_type))
    return equivalent(p, _rebase(back, p.over), ident, ident)


def _rebase(p: Predicate, over: Assembly) -> Predicate:
    return Predicate(over, p.pred_type, {x: p.at(x) for x in over.carrier}, p.support_witness, p.name)


def mono_round_trip(mono: AsmMorphism) -> bool:
    """subobject -> predicate -> subobject recovers the image, realizer for realizer."""
    sub, inclusion = subobject_of(predicate_of(mono))
    image = {mono(y) for y in mono.source.carrier}
    if set(sub.carrier) != image:
        return False
    return all(set(sub.alpha(x)) == {b for y in mono.preimage(x) for b in mono.source.alpha(y)} for x in image)


# ---------------------------------------------------------------------------
# random finite fixtures


def random_fixture(rng, max_points: int = 4) -> dict:
    """A JSON-shaped hyperdoctrine fixture: assemblies Y, X, W, a morphism
    f : Y -> X, a second leg k : W -> X, and predicates P on Y, Q on X, R on W.

    Realizers are numerals; morphisms are tracked by the identity or succ, with
    target realizer sets grown to contain the tracked images.
    """
    def names(prefix, n):
        return [f"{prefix}{i}" for i in range(n)]

    def assembly(points, pool_start):
        real = {}
        for p in points:
            k = rng.randint(1, 2)
            real[p] = [str(pool_start + rng.randrange(6)) for _ in range(k)]
        return real

    def morphism(src_pts, src_real, dst_pts, dst_real, tracker):
        step = 1 if tracker == "succ" else 0
        graph = {p: rng.choice(dst_pts) for p in src_pts}
        for p, q in graph.items():
            for r in src_real[p]:
                image = str(int(r) + step)
                if image not in dst_real[q]:
                    dst_real[q].append(image)
        return graph

    ys = names("y", rng.randint(1, max_points))
    xs = names("x", rng.randint(1, max_points))
    ws = names("w", rng.randint(1, max_points))
    y_real, x_real, w_real = assembly(ys, 0), assembly(xs, 0), assembly(ws, 0)
    tf, tk = rng.choice(["fn a:N. a", "succ"]), rng.choice(["fn a:N. a", "succ"])
    f_map = morphism(ys, y_real, xs, x_real, tf)
    k_map = morphism(ws, w_real, xs, x_real, tk)

    def predicate(points, real):
        out = {}
        for p in points:
            chosen = [r for r in real[p] if rng.random() < 0.6]
            if chosen:
                out[p] = chosen
        return out

    return {
        "assemblies": {
            "Y": {"carrier": ys, "type": "N", "realizers": y_real},
            "X": {"carrier": xs, "type": "N", "realizers": x_real},
            "W": {"carrier": ws, "type": "N", "realizers": w_real},
        },
        "morphisms": {
            "f": {"source": "Y", "target": "X", "map": f_map, "tracker": tf},
            "k": {"source": "W", "target": "X", "map": k_map, "tracker": tk},
        },
        "predicates": {
            "P": {"over": "Y", "type": "N", "realizers": predicate(ys, y_real)},
            "Q": {"over": "X", "type": "N", "realizers": predicate(xs, x_real)},
            "R": {"over": "W", "type": "N", "realizers": predicate(ws, w_real)},
        },
    }


_N_MAPS = ("fn a:N. a", "succ", "fn a:N. 0", "fn a:N. rec 0 (fn m:N. fn r:N. m) a")


def run_fixture_checks(data: Mapping) -> dict[str, Verdict]:
    """The hyperdoctrine laws on one fixture.

    Uses morphism "f" with predicates "P" (on its domain) and "Q" (on its
    codomain), and morphism "k" with predicate "R" for Beck-Chevalley along
    the pullback of k and f.  Witness candidates are small N -> N maps.
    """
    assemblies, morphisms, predicates = load_assemblies(data)
    f, p, q = morphisms["f"], predicates["P"], predicates["Q"]
    results: dict[str, Verdict] = {}
    maps = [parse_term(t) for t in _N_MAPS]
    B = f.source.realizer_type

    ex = [exists_adjunction(f, p, q, g=g) for g in maps]
    ex += [exists_adjunction(f, p, q, h=_closed("fn m:N. pair (g m) (e m)", Arrow(p.pred_type, Prod(q.pred_type, B)),
                                                g=g, e=p.support_witness)) for g in maps]
    results["exists_adjunction"] = _first_failure(ex)

    fa = []
    for g in maps:
        h = _closed("fn m. g (fst m)", Arrow(Prod(q.pred_type, B), p.pred_type), g=g)
        fa.append(forall_adjunction(f, q, p, h=h, functions=maps))
        gg = _closed(f"fn k:N. pair (e k) (fn l:{B}. g (pair k l))",
                     Arrow(q.pred_type, Prod(f.target.realizer_type, Arrow(B, p.pred_type))),
                     g=h, e=q.support_witness)
        fa.append(forall_adjunction(f, q, p, g=gg, functions=maps))
    results["forall_adjunction"] = _first_failure(fa)

    if "k" in morphisms and "R" in predicates:
        results["beck_chevalley"] = beck_chevalley(morphisms["k"], f, predicates["R"])
    results["subobject_round_trip"] = _first_failure([subobject_round_trip(pr) for pr in predicates.values()])
    return results


def _first_failure(verdicts: Iterable[Verdict]) -> Verdict:
    for v in verdicts:
        if isinstance(v, Fails):
            return v
    return HOLDS
