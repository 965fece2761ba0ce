import json
import random

import pytest

from asm_fixtures import AC_FUNCTIONS, IP_FUNCTIONS, ac_fixture, ac_function, ip_fixture
from tcalab.assemblies import (
    Assembly,
    AsmMorphism,
    IntensionalRealizers,
    Predicate,
    ac_conclusion,
    ac_premise,
    ac_witness,
    beck_chevalley,
    bottom,
    embed_type,
    equivalent,
    exists_adjunction,
    exists_along,
    exponential_assembly,
    forall_along,
    heyting_op,
    ip_conclusion,
    ip_premise,
    ip_witness,
    leq_check,
    lift_morphism,
    load_assemblies,
    mono_round_trip,
    pred_neg,
    product_assembly,
    pullback,
    random_fixture,
    reindex,
    run_fixture_checks,
    subobject_round_trip,
    top,
)
from tcalab.tca import build_d
from tcalab.kernel import EMPTY, HOLDS, N, UNIT, Fails, app, as_numeral, normalize, numeral, parse_term, parse_type

NN = parse_type("N * N")
D = {"d": build_d()}


def t(text):
    return normalize(parse_term(text))


def nums(*ns):
    return [numeral(n) for n in ns]


def ident(ty):
    return parse_term(f"fn a:{ty}. a")


@pytest.fixture
def three():
    return embed_type(N, nums(0, 1, 2))


# --- assemblies and morphisms ---------------------------------------------


def test_embed_type_singletons(three):
    assert len(three.carrier) == 3
    for i, p in enumerate(three.carrier):
        assert three.alpha(p).elements() == (numeral(i),)
    assert three.is_basic(nums(0, 1, 2))
    assert not three.is_exhaustive(nums(0, 1, 2, 3))


def test_embed_type_terminal():
    one = embed_type(UNIT, [parse_term("unit")])
    assert len(one.carrier) == 1 and one.is_strongly_modest()


def test_embed_type_rejects_convertible_duplicates():
    with pytest.raises(ValueError):
        embed_type(N, [numeral(0), parse_term("(fn a:N. a) 0")])


def test_assembly_needs_inhabited_realizers():
    with pytest.raises(ValueError):
        Assembly(["a", "b"], N, {"a": nums(0)})


def test_morphism_tracking_is_validated(three):
    AsmMorphism(three, three, lambda p: p, ident("N"))
    with pytest.raises(ValueError):
        AsmMorphism(three, three, lambda p: p, parse_term("succ"))


def test_modesty_flags():
    shared = Assembly(["a", "b"], N, {"a": nums(0, 1), "b": nums(1)})
    split = Assembly(["a", "b"], N, {"a": nums(0, 1), "b": nums(2)})
    assert not shared.is_modest()
    assert split.is_modest() and not split.is_strongly_modest()


def test_lift_succ():
    x = embed_type(N, nums(*range(5)))
    y = embed_type(N, nums(*range(6)))
    f = lift_morphism(parse_term("succ"), x, y)
    assert [as_numeral(f(p)) for p in x.carrier] == [1, 2, 3, 4, 5]


def test_lift_identity(three):
    f = lift_morphism(ident("N"), three, three)
    assert all(f(p) == p for p in three.carrier)


def test_lift_outside_target_sample(three):
    with pytest.raises(ValueError):
        lift_morphism(parse_term("succ"), three, three)


def test_lift_rejects_weak_source(three):
    weak = Assembly(["a"], N, {"a": nums(0, 1)})
    with pytest.raises(ValueError):
        lift_morphism(ident("N"), weak, three)


def test_products_keep_modest_and_basic():
    rng = random.Random(3)
    for _ in range(10):
        x = embed_type(N, nums(*rng.sample(range(6), rng.randint(1, 3))))
        y = embed_type(N, nums(*rng.sample(range(6), rng.randint(1, 3))))
        xy = product_assembly(x, y)
        universe = [parse_term(f"pair {as_numeral(a)} {as_numeral(b)}") for a in x.carrier for b in y.carrier]
        assert xy.is_basic(universe)
        blocks = Assembly(["p", "q"], N, {"p": nums(0, 1), "q": nums(2)})
        assert product_assembly(blocks, x).is_modest()


def test_exponentials_keep_modest_and_basic():
    x = embed_type(N, nums(0, 1, 2))
    y = embed_type(N, nums(0, 1))
    trackers = [parse_term(s, D) for s in ("fn a:N. a", "succ", "fn a:N. 0", "fn a:N. 2", "fn a:N. rec 0 (fn m:N. fn r:N. succ m) a")]
    ex = exponential_assembly(x, y, trackers)
    # identity by recursion is a different normal form with the same behaviour
    assert len(ex.carrier) == 4
    assert ex.is_modest() and ex.is_basic(ex.all_realizers)
    blocks = Assembly(["p", "q"], N, {"p": nums(0, 1), "q": nums(2)})
    assert exponential_assembly(blocks, y, trackers).is_modest()


def test_pullback_carrier(three):
    one = embed_type(UNIT, [parse_term("unit")])
    to_one = AsmMorphism(three, one, lambda p: one.carrier[0], parse_term("fn a:N. unit"))
    pb, px, py = pullback(to_one, to_one)
    assert len(pb.carrier) == 9 and px(pb.carrier[5]) == three.carrier[1]


# --- predicate operations -----------------------------------------------


def pred(over, holds, ty=N, witness=None):
    return Predicate(over, ty, holds, witness or ident(ty))


def test_and_or_examples():
    x = Assembly(["x"], N, {"x": nums(1, 2)})
    p, q = pred(x, {"x": nums(1)}), pred(x, {"x": nums(2)})
    assert set(heyting_op("and", p, q).at("x")) == {t("pair 1 2")}
    assert set(heyting_op("or", p, q).at("x")) == {t("inl 1"), t("inr 2")}


def test_and_below_left(three):
    p = pred(three, {three.carrier[0]: nums(0), three.carrier[1]: nums(1)})
    q = top(three)
    assert leq_check(heyting_op("and", p, q), p, parse_term("fst")) == HOLDS


def test_implication_membership(three):
    p = pred(three, {c: [c] for c in three.carrier[:2]})
    q = pred(three, {c: [c] for c in three.carrier})
    imp = heyting_op("implies", p, q)
    assert isinstance(imp.at(three.carrier[0]), IntensionalRealizers)
    assert t("pair 0 (fn a:N. a)") in imp.at(three.carrier[0])
    assert t("pair 0 succ") not in imp.at(three.carrier[0])
    assert t("pair 1 (fn a:N. 0)") not in imp.at(three.carrier[1])
    # modus ponens on realizers: pair (pair a m) b goes to m b
    mp = parse_term("fn k:(N * (N -> N)) * N. snd (fst k) (snd k)")
    assert leq_check(heyting_op("and", imp, p), q, mp) == HOLDS


def test_negation_examples():
    x = Assembly(["x", "y"], N, {"x": nums(3), "y": nums(4)})
    p = pred(x, {"y": nums(4)})
    neg = pred_neg(p)
    assert neg.at("x").elements() == (numeral(3),)
    assert not neg.at("y")
    full = pred_neg(pred_neg(top(x)))
    assert full.support() == ["x", "y"]


def test_negation_against_implication_into_inhabited_bottom(three):
    p = pred(three, {three.carrier[1]: nums(1)})
    imp = heyting_op("implies", p, bottom(three, N))
    neg = pred_neg(p)
    assert equivalent(imp, neg, parse_term("fst"), parse_term("fn a:N. pair a (fn b:N. 0)")) == HOLDS


def test_negation_gap_with_empty_bottom(three):
    # no closed term of type N -> Empty: the implication is nowhere realized
    p = pred(three, {three.carrier[1]: nums(1)})
    imp = heyting_op("implies", p, bottom(three))
    assert bottom(three).pred_type == EMPTY
    assert all(not imp.at(c) for c in three.carrier)
    assert leq_check(imp, pred_neg(p), parse_term("fst")) == HOLDS
    assert pred_neg(p).support() == [three.carrier[0], three.carrier[2]]


def test_leq_into_bottom_fails(three):
    p = pred(three, {three.carrier[0]: nums(0)})
    v = leq_check(p, bottom(three, N), ident("N"))
    assert isinstance(v, Fails) and v.counterexample[0] == numeral(0)


def test_leq_type_mismatch(three):
    with pytest.raises(Exception):
        leq_check(top(three), top(three), parse_term("fn a:N. unit"))


def test_reindex_identity(three):
    p = pred(three, {three.carrier[0]: nums(0), three.carrier[2]: nums(2)})
    ident_m = AsmMorphism.identity(three)
    r = reindex(ident_m, p)
    assert set(r.at(three.carrier[0])) == {t("pair 0 0")}
    assert equivalent(p, r, parse_term("fn a:N. pair a a"), parse_term("fst")) == HOLDS


def test_reindex_collapsing_map():
    y = Assembly(["a", "b"], N, {"a": nums(0), "b": nums(1)})
    x = Assembly(["*"], N, {"*": nums(5)})
    f = AsmMorphism(y, x, lambda p: "*", parse_term("fn a:N. 5"))
    r = reindex(f, pred(x, {"*": nums(5)}))
    assert set(r.at("a")) == {t("pair 5 0")} and set(r.at("b")) == {t("pair 5 1")}
    empty = reindex(f, pred(x, {}))
    assert empty.support() == []


def test_exists_along_examples():
    y = Assembly(["y0", "y1"], N, {"y0": nums(0), "y1": nums(1)})
    x = Assembly(["*", "o"], N, {"*": nums(0, 1), "o": nums(7)})
    f = AsmMorphism(y, x, lambda p: "*", ident("N"))
    e = exists_along(f, pred(y, {"y0": nums(0), "y1": nums(1)}))
    assert set(e.at("*")) == set(nums(0, 1))
    assert not e.at("o")
    p = pred(y, {"y1": nums(1)})
    same = exists_along(AsmMorphism.identity(y), p)
    assert {c: set(same.at(c)) for c in y.carrier} == {c: set(p.at(c)) for c in y.carrier}


def test_forall_along_examples():
    y = Assembly(["y0", "y1"], N, {"y0": nums(0), "y1": nums(1)})
    x = Assembly(["*", "o"], N, {"*": nums(4), "o": nums(7)})
    f = AsmMorphism(y, x, lambda p: "*", parse_term("fn a:N. 4"))
    both = forall_along(f, pred(y, {"y0": nums(0), "y1": nums(1)}))
    assert t("pair 4 (fn a:N. a)") in both.at("*")
    assert t("pair 4 (fn a:N. 0)") not in both.at("*")
    assert t("pair 4 (fn a:N. a)") not in both.at("o")
    assert t("pair 7 succ") in both.at("o")
    half = forall_along(f, pred(y, {"y0": nums(0)}))
    assert not half.at("*")


def test_predicate_support_witness_is_validated(three):
    with pytest.raises(ValueError):
        pred(three, {three.carrier[0]: nums(1)})


def test_heyting_needs_one_base(three):
    other = embed_type(N, nums(0, 1, 2))
    with pytest.raises(ValueError):
        heyting_op("and", top(three), top(other))


# --- hyperdoctrine laws -----------------------------------------------------


def test_fixture_checks_hold_on_random_fixtures():
    rng = random.Random(20)
    for _ in range(12):
        results = run_fixture_checks(random_fixture(rng))
        assert set(results) == {"exists_adjunction", "forall_adjunction", "beck_chevalley", "subobject_round_trip"}
        assert all(v == HOLDS for v in results.values()), results


def test_fixtures_round_trip_through_json():
    data = random_fixture(random.Random(5))
    assemblies, morphisms, predicates = load_assemblies(json.loads(json.dumps(data)))
    assert set(assemblies) == {"Y", "X", "W"} and set(morphisms) == {"f", "k"}


def test_exists_adjunction_sides_agree(three):
    y = three
    x = Assembly(["*"], N, {"*": nums(0, 1, 2)})
    f = AsmMorphism(y, x, lambda p: "*", ident("N"))
    p = pred(y, {c: [c] for c in y.carrier})
    q = pred(x, {"*": nums(0, 1, 2)})
    assert exists_adjunction(f, p, q, g=ident("N")) == HOLDS
    bad = exists_adjunction(f, p, pred(x, {"*": nums(0, 1)}), g=ident("N"))
    assert bad == HOLDS  # both sides fail together
    assert leq_check(p, reindex(f, pred(x, {"*": nums(0, 1)})), parse_term("fn m:N. pair m m")) != HOLDS


def test_beck_chevalley_small_square():
    z = Assembly(["z0", "z1"], N, {"z0": nums(0), "z1": nums(1)})
    y = Assembly(["y0"], N, {"y0": nums(3)})
    w = Assembly(["w"], N, {"w": nums(0, 1, 3)})
    k = AsmMorphism(z, w, lambda p: "w", ident("N"))
    h = AsmMorphism(y, w, lambda p: "w", ident("N"))
    assert beck_chevalley(k, h, pred(z, {"z1": nums(1)})) == HOLDS


def test_subobject_translations(three):
    p = pred(three, {three.carrier[0]: nums(0), three.carrier[2]: nums(2)})
    assert subobject_round_trip(p) == HOLDS
    y = Assembly(["a", "b"], N, {"a": nums(5), "b": nums(6)})
    mono = AsmMorphism(y, three, {"a": three.carrier[0], "b": three.carrier[1]},
                       parse_term("fn n:N. rec n (fn m:N. fn r:N. rec 0 (fn a:N. fn b:N. a) r) 5"))
    assert mono_round_trip(mono)


# --- independence of premise --------------------------------------------


def _ip_holds(x, y, notphi, psi, functions=IP_FUNCTIONS):
    prem = ip_premise(notphi, psi, y, functions)
    concl = ip_conclusion(notphi, psi, y)
    return prem, leq_check(prem, concl, ip_witness(notphi, psi, y))


def test_ip_one_point_y():
    x = embed_type(N, nums(0, 1))
    y = Assembly(["y"], N, {"y": nums(0, 1, 2, 3)})
    phi = pred(x, {x.carrier[1]: nums(1)})
    xy = product_assembly(x, y)
    psi = pred(xy, {pt: xy.alpha(pt) for pt in xy.carrier}, NN, parse_term("fn p:N * N. p"))
    prem, v = _ip_holds(x, y, pred_neg(phi), psi)
    assert v == HOLDS and prem.at(x.carrier[0])


def test_ip_vacuous_premise():
    x = embed_type(N, nums(0, 1))
    y = embed_type(N, nums(0, 1, 2, 3))
    xy = product_assembly(x, y)
    psi = pred(xy, {}, NN, parse_term("fn p:N * N. p"))
    prem, v = _ip_holds(x, y, pred_neg(top(x)), psi)
    assert v == HOLDS


def test_ip_two_point_y():
    x = embed_type(N, nums(0, 1, 2, 3))
    y = Assembly(["lo", "hi"], N, {"lo": nums(0, 1), "hi": nums(2, 3)})
    xy = product_assembly(x, y)
    psi = pred(xy, {(p, "lo"): xy.alpha((p, "lo")) for p in x.carrier}, NN, parse_term("fn p:N * N. p"))
    notphi = pred_neg(pred(x, {}))
    prem, v = _ip_holds(x, y, notphi, psi)
    assert v == HOLDS
    assert t("pair (fn a:N. pair a 0) 2") in prem.at(x.carrier[2])


def test_ip_random_fixtures():
    rng = random.Random(8)
    for _ in range(10):
        x, y, notphi, psi = ip_fixture(rng)
        assert y.is_modest() and y.is_exhaustive(nums(0, 1, 2, 3))
        _, v = _ip_holds(x, y, notphi, psi)
        assert v == HOLDS


def test_ip_premise_matches_generic_implication():
    rng = random.Random(2)
    x, y, notphi, psi = ip_fixture(rng)
    prem = ip_premise(notphi, psi, y, IP_FUNCTIONS)
    pi = AsmMorphism(psi.over, x, lambda pt: pt[0], parse_term("fst"))
    generic = heyting_op("implies", notphi, exists_along(pi, psi), IP_FUNCTIONS)
    swap_in = parse_term("fn p:(N -> N * N) * N. pair (snd p) (fst p)")
    swap_out = parse_term("fn p:N * (N -> N * N). pair (snd p) (fst p)")
    assert equivalent(prem, generic, swap_in, swap_out) == HOLDS


def test_ip_wrong_witness_is_refuted():
    x = embed_type(N, nums(0, 1))
    y = Assembly(["lo", "hi"], N, {"lo": nums(0, 1), "hi": nums(2, 3)})
    xy = product_assembly(x, y)
    psi = pred(xy, {(p, "hi"): xy.alpha((p, "hi")) for p in x.carrier}, NN, parse_term("fn p:N * N. p"))
    notphi = pred_neg(pred(x, {}))
    prem = ip_premise(notphi, psi, y, IP_FUNCTIONS)
    concl = ip_conclusion(notphi, psi, y)
    wrong = parse_term("fn p:(N -> N * N) * N. pair (fn i:N * N. pair 0 0) (pair (snd p) 0)")
    assert isinstance(leq_check(prem, concl, wrong), Fails)


# --- choice ---------------------------------------------------------------


def _graph_phi(x, y, z, choice):
    xyz = product_assembly(x, product_assembly(y, z))
    holds = {pt: xyz.alpha(pt) for pt in xyz.carrier if choice(as_numeral(pt[0])) == as_numeral(pt[1][0])}
    return Predicate(xyz, parse_type("N * (N * N)"), holds, parse_term("fn p:N * (N * N). p"))


def _choice_of(phi, x, y, z, m):
    """The choice function the witness extracts from m, on each realizer of X."""
    w = ac_witness(phi, x, y, z)
    out = normalize(app(w, app(parse_term("fn n:N. fn m:N * N -> N * (N * N). pair n m"), z.all_realizers[0], m)))
    f = normalize(app(parse_term("fst"), app(parse_term("fst"), out)))
    return [as_numeral(normalize(app(f, a))) for a in x.all_realizers]


def test_ac_identity_choice():
    x = y = embed_type(N, nums(0, 1, 2))
    z = Assembly(["z"], N, {"z": nums(0)})
    phi = _graph_phi(x, y, z, lambda i: i)
    prem = ac_premise(phi, x, y, z, AC_FUNCTIONS)
    assert leq_check(prem, ac_conclusion(phi, x, y, z), ac_witness(phi, x, y, z)) == HOLDS
    assert _choice_of(phi, x, y, z, ac_function("x")) == [0, 1, 2]


def test_ac_constant_choice():
    x = y = embed_type(N, nums(0, 1, 2))
    z = Assembly(["z"], N, {"z": nums(3)})
    phi = _graph_phi(x, y, z, lambda i: 0)
    prem = ac_premise(phi, x, y, z, AC_FUNCTIONS)
    assert prem.at("z")
    assert leq_check(prem, ac_conclusion(phi, x, y, z), ac_witness(phi, x, y, z)) == HOLDS
    assert _choice_of(phi, x, y, z, ac_function("0")) == [0, 0, 0]


def test_ac_singletons():
    x = y = embed_type(N, nums(0))
    z = Assembly(["z"], N, {"z": nums(1)})
    phi = _graph_phi(x, y, z, lambda i: 0)
    prem = ac_premise(phi, x, y, z, AC_FUNCTIONS)
    assert leq_check(prem, ac_conclusion(phi, x, y, z), ac_witness(phi, x, y, z)) == HOLDS


def test_ac_random_fixtures():
    rng = random.Random(4)
    for _ in range(10):
        x, y, z, phi = ac_fixture(rng)
        assert x.is_basic(x.all_realizers) and y.is_basic(y.all_realizers)
        prem = ac_premise(phi, x, y, z, AC_FUNCTIONS)
        assert leq_check(prem, ac_conclusion(phi, x, y, z), ac_witness(phi, x, y, z)) == HOLDS
