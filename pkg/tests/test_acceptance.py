"""One test per acceptance criterion; each logs a PASS/FAIL line."""

import random
import time

from asm_fixtures import AC_FUNCTIONS, IP_FUNCTIONS, ac_fixture, ip_fixture
from oracles import oracle_ce0, oracle_ce1, oracle_translate_types, render, tuple_types
from tcalab.apartness import build_apartness_structure, check_axioms, translate_type
from tcalab.assemblies import (
    ac_conclusion,
    ac_premise,
    ac_witness,
    ip_conclusion,
    ip_premise,
    ip_witness,
    leq_check,
    load_assemblies,
    random_fixture,
    run_fixture_checks,
    subobject_round_trip,
)
from tcalab.ce import ce0_corpus, ce0_witness, ce1_corpus, ce1_search, pad_sequence, run_ce0_term
from tcalab.kernel import HOLDS, app, nat_value, numeral, parse_type, plausible
from tcalab.tca import LAWS, build_d, check_law

FIVE = [parse_type(t) for t in ("N", "N * N", "N + N", "N -> N", "(N -> N) -> N")]
NUMS = [numeral(i) for i in range(4)]


def _guard(fn):
    """Run a criterion body; an exception counts as a failure with its message."""
    try:
        return fn()
    except Exception as exc:  # logged as FAIL; the caller's assert then fails the test
        return [f"{type(exc).__name__}: {exc}"], ""


def test_combinator_laws(record):
    def body():
        rng = random.Random(1)
        start = time.perf_counter()
        bad, n = [], 0
        for law in sorted(LAWS):
            for _ in range(30):
                lhs, rhs, ok = check_law(law, rng)
                n += 1
                if not ok:
                    bad.append((law, lhs, rhs))
        elapsed = time.perf_counter() - start
        if elapsed >= 10:
            bad.append(f"runtime {elapsed:.1f}s")
        return bad, f"{len(LAWS)} equations, {n} tuples, {elapsed:.2f}s"
    bad, detail = _guard(body)
    assert record("combinator laws", not bad, detail), bad[:3]


def test_decidable_equality(record):
    def body():
        d = build_d()
        bad = [(a, b) for a in range(17) for b in range(17)
               if nat_value(app(d, numeral(a), numeral(b))) != (1 if a == b else 0)]
        return bad, "289 pairs a, b <= 16"
    bad, detail = _guard(body)
    assert record("decidable equality", not bad, detail), bad[:3]


def test_translation(record):
    def body():
        types = tuple_types(4)
        bad = []
        for t in types:
            got = translate_type(parse_type(render(t)))
            if (got.plus, got.minus) != oracle_translate_types(t):
                bad.append(render(t))
        for sigma in FIVE:
            results = check_axioms(build_apartness_structure(sigma))
            bad += [f"{sigma}: {name} {v}" for name, v in results.items() if not plausible(v)]
        return bad, f"{len(types)} types vs oracle, properties on {len(FIVE)} types"
    bad, detail = _guard(body)
    assert record("translation", not bad, detail), bad[:3]


def test_hyperdoctrine(record):
    def body():
        rng = random.Random(20)
        bad, n = [], 12
        for i in range(n):
            data = random_fixture(rng)
            for name, v in run_fixture_checks(data).items():
                if v != HOLDS:
                    bad.append(f"fixture {i} {name}: {v}")
            _, _, preds = load_assemblies(data)
            bad += [f"fixture {i} round trip {p.name}" for p in preds.values() if subobject_round_trip(p) != HOLDS]
        return bad, f"{n} fixtures, adjunctions, Beck-Chevalley, round trip"
    bad, detail = _guard(body)
    assert record("hyperdoctrine", not bad, detail), bad[:3]


def test_ip_and_ac(record):
    def body():
        rng = random.Random(8)
        bad, ip_n, ac_n = [], 0, 0
        for _ in range(10):
            x, y, notphi, psi = ip_fixture(rng)
            if not (y.is_modest() and y.is_exhaustive(NUMS)):
                continue
            ip_n += 1
            prem = ip_premise(notphi, psi, y, IP_FUNCTIONS)
            v = leq_check(prem, ip_conclusion(notphi, psi, y), ip_witness(notphi, psi, y))
            if v != HOLDS:
                bad.append(f"IP: {v}")
        for _ in range(10):
            x, y, z, phi = ac_fixture(rng)
            if not (x.is_basic(x.all_realizers) and y.is_basic(y.all_realizers)):
                continue
            ac_n += 1
            prem = ac_premise(phi, x, y, z, AC_FUNCTIONS)
            v = leq_check(prem, ac_conclusion(phi, x, y, z), ac_witness(phi, x, y, z))
            if v != HOLDS:
                bad.append(f"AC: {v}")
        if ip_n < 10 or ac_n < 10:
            bad.append(f"side conditions held on only {ip_n} IP and {ac_n} AC fixtures")
        return bad, f"{ip_n} IP and {ac_n} AC fixtures"
    bad, detail = _guard(body)
    assert record("IP and AC witnesses", not bad, detail), bad[:3]


def test_ce0(record):
    def body():
        start = time.perf_counter()
        corpus = ce0_corpus(500, seed=2024)
        bad = []
        for i, c in enumerate(corpus):
            if any(v > 8 for v in (*c.f.prefix(9), *c.g.prefix(9), c.f.default, c.g.default)):
                bad.append(f"{i}: table outside 0..8")
            w = ce0_witness(c.phi, c.f, c.g)
            apart = c.phi(c.f) != c.phi(c.g)
            if apart and c.f(w) == c.g(w):
                bad.append(f"{i}: unsound")
            if w != oracle_ce0(c.to_json()):
                bad.append(f"{i}: not minimal")
            if apart:
                valid = ["first", "last"] + [p for p in range(12) if c.f(p) != c.g(p)]
                if {ce0_witness(c.phi.with_reflect(r), c.f, c.g) for r in valid} != {w}:
                    bad.append(f"{i}: depends on the reflector")
            if run_ce0_term(c.phi, c.f, c.g) != w:
                bad.append(f"{i}: term and native disagree")
        elapsed = time.perf_counter() - start
        if elapsed >= 60:
            bad.append(f"runtime {elapsed:.1f}s")
        return bad, f"{len(corpus)} fixtures, {elapsed:.1f}s"
    bad, detail = _guard(body)
    assert record("CE0", not bad, detail), bad[:3]


def test_ce1(record):
    def body():
        start = time.perf_counter()
        corpus = ce1_corpus(100, seed=2024, max_modulus=4)
        bad, apart_n = [], 0
        for i, c in enumerate(corpus):
            if max(c.f.declared_modulus, c.g.declared_modulus) > 4:
                bad.append(f"{i}: modulus above 4")
            r = ce1_search(c.phi, c.f, c.g)
            if r.witness != pad_sequence(oracle_ce1(c.to_json())):
                bad.append(f"{i}: differs from h-order enumeration")
            if c.phi(c.f) == c.phi(c.g):
                continue
            apart_n += 1
            if c.f(r.witness) == c.g(r.witness):
                bad.append(f"{i}: unsound")
            valid = ["first", "last"] + [d for d in c.phi.probes if c.f(d) != c.g(d)]
            if {ce1_search(c.phi.with_reflect(v), c.f, c.g).witness for v in valid} != {r.witness}:
                bad.append(f"{i}: depends on the reflector")
        elapsed = time.perf_counter() - start
        if elapsed >= 60:
            bad.append(f"runtime {elapsed:.1f}s")
        return bad, f"{len(corpus)} fixtures ({apart_n} apart), {elapsed:.1f}s"
    bad, detail = _guard(body)
    assert record("CE1", not bad, detail), bad[:3]


def test_apartness_axioms(record):
    def body():
        types = [parse_type(render(t)) for t in tuple_types(3)]
        bad = []
        for sigma in types:
            results = check_axioms(build_apartness_structure(sigma))
            bad += [f"{sigma}: {name} {v}" for name, v in results.items() if not plausible(v)]
        return bad, f"{len(types)} types"
    bad, detail = _guard(body)
    assert record("apartness axioms", not bad, detail), bad[:3]
