"""Witnesses for converse extensionality at types 0 and 1.

CE0: given Phi of type 2 with its apartness reflector and f, g of type 1,
return 0 when Phi f = Phi g, and otherwise the least x with f x != g x.  The
reflector supplies a point y where f and g differ, so the least x is found by
bounded search below y.  The algorithm is implemented natively on finite
fixtures and as a closed term of the object language over the translated
types; the two agree numeral for numeral.

CE1: Phi has type 3 and f, g type 2.  The reflector gives a type-1 point b
where f and g differ, and a modulus of continuity bounds how much of b they
read.  The answer is the first finite sequence s, in the order of a fixed
bijection h : N -> N^<N, whose zero-padding s* separates f and g.  The bound
only certifies that the search stops; the answer never depends on the
reflector.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Mapping, Optional, Sequence, Union

from .apartness import ApartnessStructure, Premorphism, build_apartness_structure, translate_type
from .kernel import Arrow, Const, N, Prod, Term, Verdict, app, as_numeral, elaborate, normalize, parse_term, parse_type
from .tca import bounded_min, build_d, compile_lambdas

__all__ = [
    "CEError",
    "InvalidReflector",
    "InvalidModulus",
    "Fn1Fixture",
    "Fn2Fixture",
    "Fn3Fixture",
    "CE0Fixture",
    "CE1Fixture",
    "CE1Result",
    "ce0_witness",
    "ce0_term",
    "ce0_reflector_term",
    "ce0_input",
    "ce0_premorphism",
    "ce0_member",
    "ce0_witnesses",
    "check_ce0_premorphism",
    "encode_fn1",
    "encode_fn2",
    "run_ce0_term",
    "h_decode",
    "h_encode",
    "pad_sequence",
    "ce1_search",
    "ce1_witness",
    "load_fixtures",
    "random_ce0_fixture",
    "random_ce1_fixture",
    "ce0_corpus",
    "ce1_corpus",
]


class CEError(ValueError):
    """A fixture breaks the contract the algorithm relies on."""


class InvalidReflector(CEError):
    pass


class InvalidModulus(CEError):
    pass


# ---------------------------------------------------------------------------
# fixtures


@dataclass(frozen=True)
class Fn1Fixture:
    """A total N -> N given by a finite table and a default beyond it.

    Entries equal to the default are dropped, so equal functions compare equal.
    """

    table: tuple[tuple[int, int], ...] = ()
    default: int = 0

    def __post_init__(self):
        items = dict(self.table)
        canon = tuple(sorted((int(k), int(v)) for k, v in items.items() if int(v) != int(self.default)))
        object.__setattr__(self, "table", canon)
        object.__setattr__(self, "default", int(self.default))

    @classmethod
    def of(cls, table: Mapping[int, int] | Sequence[int] = (), default: int = 0) -> "Fn1Fixture":
        items = table.items() if isinstance(table, Mapping) else enumerate(table)
        return cls(tuple((int(k), int(v)) for k, v in items), default)

    @classmethod
    def constant(cls, c: int = 0) -> "Fn1Fixture":
        return cls((), c)

    def __call__(self, n: int) -> int:
        return dict(self.table).get(n, self.default)

    def prefix(self, n: int) -> tuple[int, ...]:
        return tuple(self(i) for i in range(n))

    def to_json(self) -> dict:
        return {"table": {str(k): v for k, v in self.table}, "default": self.default}

    @classmethod
    def from_json(cls, data: Mapping | Sequence) -> "Fn1Fixture":
        if isinstance(data, Sequence) and not isinstance(data, str):
            return cls.of(list(data), 0)
        table = {int(k): int(v) for k, v in data.get("table", {}).items()}
        return cls.of(table, int(data.get("default", 0)))


Reflect = Union[str, int]


def _weighted(probes: Sequence, weights: Sequence[int]) -> tuple[int, ...]:
    if not weights:
        return (1,) * len(probes)
    if len(weights) != len(probes):
        raise ValueError("one weight per probe")
    return tuple(int(w) for w in weights)


@dataclass(frozen=True)
class Fn2Fixture:
    """A type-2 functional F(x) = offset + sum of weight_i * x(probe_i).

    `reflect` names its apartness reflector: "first" or "last" returns the
    first or last probe where the two arguments differ, an integer returns
    that point whatever the arguments.  `modulus` is the declared modulus of
    continuity (default: one past the largest probe).
    """

    probes: tuple[int, ...]
    weights: tuple[int, ...] = ()
    offset: int = 0
    reflect: Reflect = "first"
    modulus: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "probes", tuple(int(p) for p in self.probes))
        object.__setattr__(self, "weights", _weighted(self.probes, self.weights))
        if self.reflect not in ("first", "last") and not isinstance(self.reflect, int):
            raise ValueError(f"unknown reflector {self.reflect!r}")

    def __call__(self, x: Callable[[int], int]) -> int:
        return self.offset + sum(w * x(p) for p, w in zip(self.probes, self.weights))

    def reflect_point(self, f: Callable[[int], int], g: Callable[[int], int], witness: int = 0) -> int:
        if isinstance(self.reflect, int):
            return self.reflect
        order = self.probes if self.reflect == "first" else self.probes[::-1]
        return next((p for p in order if f(p) != g(p)), order[0] if order else 0)

    @property
    def declared_modulus(self) -> int:
        if self.modulus is not None:
            return self.modulus
        return max(self.probes) + 1 if self.probes else 0

    def with_reflect(self, reflect: Reflect) -> "Fn2Fixture":
        return Fn2Fixture(self.probes, self.weights, self.offset, reflect, self.modulus)

    def to_json(self) -> dict:
        out: dict[str, Any] = {"probes": list(self.probes), "weights": list(self.weights), "offset": self.offset,
                               "reflect": self.reflect}
        if self.modulus is not None:
            out["modulus"] = self.modulus
        return out

    @classmethod
    def from_json(cls, data: Mapping, reflect: Optional[Reflect] = None) -> "Fn2Fixture":
        probes = data["probes"] if "probes" in data else [data["probe"]]
        return cls(tuple(probes), tuple(data.get("weights", ())), int(data.get("offset", 0)),
                   reflect if reflect is not None else data.get("reflect", "first"), data.get("modulus"))


@dataclass(frozen=True)
class Fn3Fixture:
    """A type-3 functional Phi(F) = offset + sum of weight_j * F(delta_j).

    `reflect` is "first", "last" (the first or last delta_j where the two
    arguments differ) or a fixed type-1 point.
    """

    probes: tuple[Fn1Fixture, ...]
    weights: tuple[int, ...] = ()
    offset: int = 0
    reflect: Union[str, Fn1Fixture] = "first"

    def __post_init__(self):
        object.__setattr__(self, "probes", tuple(self.probes))
        object.__setattr__(self, "weights", _weighted(self.probes, self.weights))
        if self.reflect not in ("first", "last") and not isinstance(self.reflect, Fn1Fixture):
            raise ValueError(f"unknown reflector {self.reflect!r}")

    def __call__(self, F: Fn2Fixture) -> int:
        return self.offset + sum(w * F(d) for d, w in zip(self.probes, self.weights))

    def reflect_point(self, f: Fn2Fixture, g: Fn2Fixture, witness: int = 0) -> Fn1Fixture:
        if isinstance(self.reflect, Fn1Fixture):
            return self.reflect
        order = self.probes if self.reflect == "first" else self.probes[::-1]
        return next((d for d in order if f(d) != g(d)), order[0] if order else Fn1Fixture())

    def with_reflect(self, reflect: Union[str, Fn1Fixture]) -> "Fn3Fixture":
        return Fn3Fixture(self.probes, self.weights, self.offset, reflect)

    def to_json(self) -> dict:
        reflect = self.reflect.to_json() if isinstance(self.reflect, Fn1Fixture) else self.reflect
        return {"probe1": [d.to_json() for d in self.probes], "weights": list(self.weights),
                "offset": self.offset, "reflect": reflect}


@dataclass(frozen=True)
class CE0Fixture:
    phi: Fn2Fixture
    f: Fn1Fixture
    g: Fn1Fixture

    def to_json(self) -> dict:
        phi = self.phi.to_json()
        return {"phi": {k: phi[k] for k in ("probes", "weights", "offset")}, "reflect": phi["reflect"],
                "f": self.f.to_json(), "g": self.g.to_json()}


@dataclass(frozen=True)
class CE1Fixture:
    phi: Fn3Fixture
    f: Fn2Fixture
    g: Fn2Fixture

    def to_json(self) -> dict:
        phi = self.phi.to_json()
        return {"phi": {k: phi[k] for k in ("probe1", "weights", "offset")}, "reflect": phi["reflect"],
                "f": self.f.to_json(), "g": self.g.to_json(),
                "modulus_f": self.f.declared_modulus, "modulus_g": self.g.declared_modulus}


# ---------------------------------------------------------------------------
# CE0, natively


def ce0_witness(phi: Fn2Fixture, f: Fn1Fixture, g: Fn1Fixture) -> int:
    """0 if phi f = phi g, else the least x with f x != g x."""
    if phi(f) == phi(g):
        return 0
    y = phi.reflect_point(f, g, 0)
    if f(y) == g(y):
        raise InvalidReflector(f"reflector returned {y}, where f and g agree although phi separates them")
    return next(x for x in range(y + 1) if f(x) != g(x))


# ---------------------------------------------------------------------------
# CE0 in the object language

_TYPE1 = translate_type(parse_type("N -> N"))
_TYPE2 = translate_type(parse_type("(N -> N) -> N"))
INPUT_TYPE = Prod(_TYPE2.plus, Prod(_TYPE1.plus, _TYPE1.plus))

_NEQ = "fn a:N. fn b:N. d (d a b) 0"
_PLUS = "fn a:N. fn b:N. rec a (fn m:N. fn r:N. succ r) b"


def _closed(text: str, ty, **env: Term) -> Term:
    t, _ = elaborate(parse_term(text, {"d": build_d(), **env}), ty)
    return compile_lambdas(t)


def _lookup(var: str, table: Sequence[tuple[int, int]], default: int) -> str:
    """Nested d-guards: the value at `var` of a finite table with a default."""
    body = str(default)
    for k, v in reversed(table):
        body = f"rec ({body}) (fn _m:N. fn _r:N. {v}) (d {var} {k})"
    return body


def encode_fn1(f: Fn1Fixture) -> Term:
    """f as a member of the translated type 1: its graph and a reflector that
    ignores everything (apartness at N needs no evidence)."""
    graph = f"fn n:N. {_lookup('n', f.table, f.default)}"
    return _closed(f"pair ({graph}) (fn u:N. fn v:N. fn w:N. 0)", _TYPE1.plus)


def _first_difference(probes: Sequence[int], h: str, k: str, fallback: int) -> str:
    body = str(fallback)
    for p in reversed(probes):
        body = f"rec {p} (fn _m:N. fn _r:N. {body}) (d (fst {h} {p}) (fst {k} {p}))"
    return body


def encode_fn2(phi: Fn2Fixture) -> Term:
    """phi as a member of the translated type 2: its graph on encoded type-1
    arguments and its reflector, returning pair y 0 for the chosen point y."""
    total = str(phi.offset)
    for p, w in zip(phi.probes, phi.weights):
        for _ in range(w):
            total = f"plus ({total}) (fst h {p})"
    graph = f"fn h. {total}"
    if isinstance(phi.reflect, int):
        point = str(phi.reflect)
    else:
        order = list(phi.probes) if phi.reflect == "first" else list(phi.probes)[::-1]
        point = _first_difference(order, "h", "k", order[0] if order else 0)
    reflector = f"fn h. fn k. fn w:N. pair ({point}) 0"
    return _closed(f"pair ({graph}) ({reflector})", _TYPE2.plus, plus=parse_term(_PLUS))


def ce0_input(phi: Fn2Fixture, f: Fn1Fixture, g: Fn1Fixture) -> Term:
    return app(Const("pair"), encode_fn2(phi), app(Const("pair"), encode_fn1(f), encode_fn1(g)))


@lru_cache(maxsize=None)
def ce0_term() -> Term:
    """Closed term of type 2+ x (1+ x 1+) -> N computing ce0_witness."""
    text = (
        "fn t. (fn phi. fn f. fn g. "
        "rec (bmin (fn x:N. neq (fst f x) (fst g x)) (fst (snd phi f g 0))) (fn _m:N. fn _r:N. 0) "
        "(d (fst phi f) (fst phi g))) (fst t) (fst (snd t)) (snd (snd t))"
    )
    return normalize(_closed(text, Arrow(INPUT_TYPE, N), bmin=bounded_min(), neq=parse_term(_NEQ, {"d": build_d()})))


def run_ce0_term(phi: Fn2Fixture, f: Fn1Fixture, g: Fn1Fixture) -> int:
    out = as_numeral(normalize(app(ce0_term(), ce0_input(phi, f, g))))
    if out is None:
        raise CEError("the CE0 term did not reduce to a numeral")
    return out


@lru_cache(maxsize=None)
def ce0_reflector_term() -> Term:
    """Apartness reflector of the CE0 term.

    If X i0 != X i1, first look for a point below X i0 + X i1 where the f's
    or the g's differ.  If there is none, the two inputs must disagree on
    which branch they took, so one of Phi0 f1 / Phi1 f1, Phi0 g1 / Phi1 g1
    separates the Phi's, or Phi0 separates f0 from f1 or g0 from g1 and its
    own reflector names the point.
    """
    S = build_apartness_structure(parse_type("((N -> N) -> N) * ((N -> N) * (N -> N))"))
    text = (
        "fn i0. fn i1. fn w:N. (fn p0. fn f0. fn g0. fn p1. fn f1. fn g1. (fn m:N. "
        "  (fn pf:N. fn pg:N. "
        "    when (neq (fst f0 pf) (fst f1 pf)) (inr (inl (pair pf 0))) ("
        "    when (neq (fst g0 pg) (fst g1 pg)) (inr (inr (pair pg 0))) ("
        "    when (neq (fst p0 f1) (fst p1 f1)) (inl (pair f1 0)) ("
        "    when (neq (fst p0 g1) (fst p1 g1)) (inl (pair g1 0)) ("
        "    when (neq (fst p0 f0) (fst p0 f1)) (inr (inl (snd p0 f0 f1 0))) "
        "    (inr (inr (snd p0 g0 g1 0)))))))) "
        "  (bmin (fn x:N. neq (fst f0 x) (fst f1 x)) m) "
        "  (bmin (fn x:N. neq (fst g0 x) (fst g1 x)) m)) "
        "(plus (X i0) (X i1))) "
        "(fst i0) (fst (snd i0)) (snd (snd i0)) (fst i1) (fst (snd i1)) (snd (snd i1))"
    )
    cond = _closed(f"fn c:N. fn a:{S.witness_type}. fn b:{S.witness_type}. rec b (fn _m:N. fn _r. a) c",
                   Arrow(N, Arrow(S.witness_type, Arrow(S.witness_type, S.witness_type))))
    ty = Arrow(S.carrier_type, Arrow(S.carrier_type, Arrow(N, S.witness_type)))
    return normalize(_closed(text, ty, bmin=bounded_min(), neq=parse_term(_NEQ, {"d": build_d()}), plus=parse_term(_PLUS),
                             X=ce0_term(), when=cond))


def ce0_premorphism() -> Premorphism:
    """F(i) = (id, (i, X)) from triples (Phi, (f, g)) into
    (S' -> S') x S' with S' = (2 x (1 x 1)) x ((2 x (1 x 1)) -> N).

    Its reflector unpacks a witness between F i0 and F i1: apartness of the
    identity with itself or of X with itself cannot be witnessed, so the only
    live case is a witness between the triples, which is returned as is.
    """
    S, X = _ce0_structures()
    S2 = ApartnessStructure.product(S, X)
    T = ApartnessStructure.product(ApartnessStructure.exponential(S2, S2), S2)
    x_member = ce0_member()
    ident = _closed("pair (fn a. a) (fn a. fn b. fn w. w)", ApartnessStructure.exponential(S2, S2).carrier_type)
    forward = _closed("fn i. pair ident (pair i x)", Arrow(S.carrier_type, T.carrier_type), ident=ident, x=x_member)
    dflt = S.default_witness
    reflect = _closed("fn i0. fn i1. fn m. case (fn e. z) (fn n. case (fn s. s) (fn e. z) n) m",
                      Arrow(S.carrier_type, Arrow(S.carrier_type, Arrow(T.witness_type, S.witness_type))), z=dflt)
    return Premorphism(S, T, forward, reflect)


def _ce0_structures():
    S = build_apartness_structure(parse_type("((N -> N) -> N) * ((N -> N) * (N -> N))"))
    X = ApartnessStructure.exponential(S, ApartnessStructure.nno())
    return S, X


def ce0_member(reflector: Optional[Term] = None) -> Term:
    """The CE0 term paired with its reflector, as a member of (2 x (1 x 1)) -> N."""
    return normalize(app(Const("pair"), ce0_term(), reflector if reflector is not None else ce0_reflector_term()))


def ce0_witnesses(fixtures: Sequence[CE0Fixture], points: int = 11) -> list[Term]:
    """Apartness evidence between encoded inputs: the Phi's told apart at one
    of the sample functions, or the f's or g's at a point below `points`."""
    S, _ = _ce0_structures()
    out = []
    for c in fixtures:
        for h in (c.f, c.g):
            out.append(_closed("inl (pair h 0)", S.witness_type, h=encode_fn1(h)))
    for p in range(points):
        out.append(_closed(f"inr (inl (pair {p} 0))", S.witness_type))
        out.append(_closed(f"inr (inr (pair {p} 0))", S.witness_type))
    return [normalize(w) for w in out]


def check_ce0_premorphism(fixtures: Sequence[CE0Fixture], checker=None,
                          premorphism: Optional[Premorphism] = None) -> dict[str, Verdict]:
    """Sampled check that X is a member of (2 x (1 x 1)) -> N (its reflector
    is sound), and check that F reflects apartness between encoded fixtures,
    taking the fixtures and their images to be members."""
    from .apartness import Checker

    S, X = _ce0_structures()
    F = premorphism or ce0_premorphism()
    inputs = [normalize(ce0_input(c.phi, c.f, c.g)) for c in fixtures]
    c = checker or Checker(samples=inputs, cap=2, witness_cap=2)
    source_w = ce0_witnesses(fixtures)
    target_w = [_closed("inr (inl s)", F.target.witness_type, s=w) for w in source_w]
    target_w += [_closed("inr (inr (pair i 0))", F.target.witness_type, i=i) for i in inputs[:2]]
    member = c.dom(X, ce0_member())
    reflection = F.check_reflection(Checker(cap=2, witness_cap=2), inputs, [normalize(w) for w in target_w],
                                    assume_members=True)
    return {"member": member, "reflection": reflection}


# ---------------------------------------------------------------------------
# the sequence bijection


def _unpair(n: int) -> tuple[int, int]:
    w = (math.isqrt(8 * n + 1) - 1) // 2
    b = n - w * (w + 1) // 2
    return w - b, b


def _pair(a: int, b: int) -> int:
    return (a + b) * (a + b + 1) // 2 + b


def h_decode(n: int) -> tuple[int, ...]:
    """h(0) = <>, h(n+1) = a :: h(b) where (a, b) is the Cantor unpairing of n."""
    out = []
    while n > 0:
        a, n = _unpair(n - 1)
        out.append(a)
    return tuple(out)


def h_encode(s: Sequence[int]) -> int:
    n = 0
    for a in reversed(s):
        n = _pair(a, n) + 1
    return n


def pad_sequence(s: Sequence[int]) -> Fn1Fixture:
    """s* : s(n) below the length of s, 0 beyond."""
    return Fn1Fixture.of(list(s), 0)


# ---------------------------------------------------------------------------
# CE1


Modulus = Callable[[Fn2Fixture, Fn1Fixture], int]


def declared_modulus(F: Fn2Fixture, x: Fn1Fixture) -> int:
    return F.declared_modulus


@dataclass(frozen=True)
class CE1Result:
    witness: Fn1Fixture
    sequence: Optional[tuple[int, ...]] = None
    index: Optional[int] = None
    bound: Optional[int] = None
    certificate: Optional[int] = field(default=None, compare=False)


def ce1_search(phi: Fn3Fixture, f: Fn2Fixture, g: Fn2Fixture, modulus: Modulus = declared_modulus) -> CE1Result:
    """The CE1 witness with its search record.

    The search runs over all of N^<N in h-order; the prefix of length L of
    the reflector's point b is a hit, and its h-index bounds the search.
    """
    if phi(f) == phi(g):
        return CE1Result(Fn1Fixture.constant(0))
    b = phi.reflect_point(f, g, 0)
    if f(b) == g(b):
        raise InvalidReflector("reflector returned a point where f and g agree although phi separates them")
    mf, mg = modulus(f, b), modulus(g, b)
    L = max(mf, mg)
    for name, F, m in (("f", f, mf), ("g", g, mg)):
        for n in {m, L}:
            if F(pad_sequence(b.prefix(n))) != F(b):
                raise InvalidModulus(f"{name} reads past its declared modulus {m}")
    certificate = h_encode(b.prefix(L))
    for n in range(certificate + 1):
        s = h_decode(n)
        x = pad_sequence(s)
        if f(x) != g(x):
            return CE1Result(x, s, n, L, certificate)
    raise AssertionError("the certificate sequence separates f and g")


def ce1_witness(phi: Fn3Fixture, f: Fn2Fixture, g: Fn2Fixture, modulus: Modulus = declared_modulus) -> Fn1Fixture:
    return ce1_search(phi, f, g, modulus).witness


# ---------------------------------------------------------------------------
# fixture files and corpora


def _modulus_override(f: Fn2Fixture, m: Optional[int]) -> Fn2Fixture:
    if m is None:
        return f
    return Fn2Fixture(f.probes, f.weights, f.offset, f.reflect, int(m))


def _parse_one(data: Mapping) -> CE0Fixture | CE1Fixture:
    phi = data["phi"]
    reflect = data.get("reflect", phi.get("reflect", "first"))
    if "probe1" in phi:
        probes = [Fn1Fixture.from_json(d) for d in phi["probe1"]]
        r = Fn1Fixture.from_json(reflect) if not isinstance(reflect, str) else reflect
        p3 = Fn3Fixture(tuple(probes), tuple(phi.get("weights", ())), int(phi.get("offset", 0)), r)
        f = _modulus_override(Fn2Fixture.from_json(data["f"]), data.get("modulus_f"))
        g = _modulus_override(Fn2Fixture.from_json(data["g"]), data.get("modulus_g"))
        return CE1Fixture(p3, f, g)
    return CE0Fixture(Fn2Fixture.from_json(phi, reflect), Fn1Fixture.from_json(data["f"]),
                      Fn1Fixture.from_json(data["g"]))


def load_fixtures(data: Union[str, Mapping, Sequence]) -> list[CE0Fixture | CE1Fixture]:
    """Fixtures from JSON text or decoded JSON: one object, a list, or {"fixtures": [...]}."""
    if isinstance(data, str):
        data = json.loads(data)
    if isinstance(data, Mapping):
        data = data["fixtures"] if "fixtures" in data else [data]
    return [_parse_one(d) for d in data]


def random_fn1(rng: random.Random, size: int = 9, values: int = 9) -> Fn1Fixture:
    return Fn1Fixture.of([rng.randrange(values) for _ in range(size)], rng.randrange(values))


def random_ce0_fixture(rng: random.Random) -> CE0Fixture:
    """Tables over 0..8 with defaults; g is often a small perturbation of f."""
    f = random_fn1(rng)
    if rng.random() < 0.75:
        table = list(f.prefix(9))
        for _ in range(rng.randint(0, 3)):
            table[rng.randrange(9)] = rng.randrange(9)
        g = Fn1Fixture.of(table, f.default if rng.random() < 0.8 else rng.randrange(9))
    else:
        g = random_fn1(rng)
    probes = tuple(rng.sample(range(11), rng.randint(1, 4)))
    weights = tuple(rng.randint(0, 2) for _ in probes)
    phi = Fn2Fixture(probes, weights, rng.randrange(3), rng.choice(["first", "last"]))
    return CE0Fixture(phi, f, g)


def random_fn2(rng: random.Random, max_modulus: int = 4) -> Fn2Fixture:
    probes = tuple(sorted(rng.sample(range(max_modulus), rng.randint(1, min(3, max_modulus)))))
    weights = tuple(rng.randint(0, 2) for _ in probes)
    declared = rng.randint(max(probes) + 1, max_modulus)
    return Fn2Fixture(probes, weights, rng.randrange(2), "first", declared)


def random_ce1_fixture(rng: random.Random, max_modulus: int = 4) -> CE1Fixture:
    f = random_fn2(rng, max_modulus)
    g = random_fn2(rng, max_modulus) if rng.random() < 0.7 else Fn2Fixture(
        f.probes, tuple(w + (i == 0) for i, w in enumerate(f.weights)), f.offset, "first", f.modulus)
    deltas = tuple(random_fn1(rng, size=max_modulus, values=4) for _ in range(rng.randint(1, 3)))
    phi = Fn3Fixture(deltas, tuple(rng.randint(1, 2) for _ in deltas), 0, rng.choice(["first", "last"]))
    return CE1Fixture(phi, f, g)


def ce0_corpus(n: int, seed: int = 0) -> list[CE0Fixture]:
    rng = random.Random(seed)
    return [random_ce0_fixture(rng) for _ in range(n)]


def ce1_corpus(n: int, seed: int = 0, max_modulus: int = 4) -> list[CE1Fixture]:
    rng = random.Random(seed)
    return [random_ce1_fixture(rng, max_modulus) for _ in range(n)]
