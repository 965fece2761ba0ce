"""Generators for finite IP and AC fixtures (shared by unit and acceptance tests)."""

from __future__ import annotations

from tcalab.assemblies import Assembly, Predicate, embed_type, pred_neg, product_assembly
from tcalab.kernel import N, numeral, parse_term, parse_type

NN = parse_type("N * N")
ID_NN = "fn p:N * N. p"
ID_N3 = "fn p:N * (N * N). p"

# maps N -> N * N whose second component stays inside 0..3 on inputs 0..3
IP_FUNCTIONS = [parse_term(t) for t in (
    "fn a:N. pair a a",
    "fn a:N. pair a 0",
    "fn a:N. pair a 3",
    "fn a:N. pair a (rec 0 (fn m:N. fn r:N. m) a)",
    "fn a:N. pair 0 a",
    "fn a:N. pair 1 2",
)]

# candidate choice functions y = c(x), written on A x C -> D with D = N * (N * N)
AC_CHOICES = {
    "x": "fst k",
    "0": "0",
    "2": "2",
    "pred": "rec 0 (fn m:N. fn r:N. m) (fst k)",
}


def ac_function(choice: str):
    return parse_term(f"fn k:N * N. pair (fst k) (pair ({AC_CHOICES[choice]}) (snd k))")


AC_FUNCTIONS = [ac_function(c) for c in AC_CHOICES]


def _partition(rng, values, max_parts):
    values = list(values)
    rng.shuffle(values)
    parts = rng.randint(1, min(max_parts, len(values)))
    cuts = sorted(rng.sample(range(1, len(values)), parts - 1)) if parts > 1 else []
    out, prev = [], 0
    for c in cuts + [len(values)]:
        out.append(values[prev:c])
        prev = c
    return out


def ip_fixture(rng, max_points: int = 4):
    """Context X, modest exhaustive Y (a partition of 0..3), phi on X, psi on X x Y."""
    xs = [f"x{i}" for i in range(rng.randint(1, max_points))]
    x = Assembly(xs, N, {p: [numeral(rng.randrange(4)) for _ in range(rng.randint(1, 2))] for p in xs}, name="X")
    blocks = _partition(rng, range(4), max_points)
    ys = [f"y{i}" for i in range(len(blocks))]
    y = Assembly(ys, N, {p: [numeral(v) for v in b] for p, b in zip(ys, blocks)}, name="Y")
    phi = Predicate(x, N, {p: list(x.alpha(p)) for p in xs if rng.random() < 0.4}, parse_term("fn a:N. a"), "phi")
    xy = product_assembly(x, y)
    psi_real = {pt: [r for r in xy.alpha(pt) if rng.random() < 0.7] for pt in xy.carrier}
    psi = Predicate(xy, NN, psi_real, parse_term(ID_NN), "psi")
    return x, y, pred_neg(phi), psi


def ac_fixture(rng, max_points: int = 3):
    """Basic X, Y = E(N) on 0..k; arbitrary Z; phi on X x (Y x Z) given by
    a union of graphs of choice functions."""
    k = rng.randint(0, max_points - 1)
    x = embed_type(N, [numeral(i) for i in range(k + 1)])
    y = embed_type(N, [numeral(i) for i in range(3)])
    zs = [f"z{i}" for i in range(rng.randint(1, 2))]
    z = Assembly(zs, N, {p: [numeral(rng.randrange(4))] for p in zs}, name="Z")
    xyz = product_assembly(x, product_assembly(y, z))
    chosen = rng.sample(sorted(AC_CHOICES), rng.randint(1, 2))
    graph = set()
    for c in chosen:
        for i in range(k + 1):
            graph.add((i, {"x": min(i, 2), "0": 0, "2": 2, "pred": max(i - 1, 0)}[c]))
    holds = {}
    for pt in xyz.carrier:
        px, (py, pz) = pt
        if (_num(px), _num(py)) in graph and rng.random() < 0.9:
            holds[pt] = list(xyz.alpha(pt))
    phi = Predicate(xyz, parse_type("N * (N * N)"), holds, parse_term(ID_N3), "phi")
    return x, y, z, phi


def _num(t):
    from tcalab.kernel import as_numeral

    return as_numeral(t)
