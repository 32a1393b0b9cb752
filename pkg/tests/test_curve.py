import random
from fractions import Fraction

import pytest

from tropfix.curve import (
    INF,
    CurveError,
    CurveMorphism,
    Edge,
    MorphismError,
    TropicalCurve,
    Vertex,
    circle_trace,
    curve_from_doc,
    morphism_from_doc,
    stable_fixed_cycle,
    subdivide_flipped,
    trace_side,
    validate_morphism,
    weil_verify,
)
from tropfix.suite import (
    line_scaling,
    standard_line,
    theta_curve,
    theta_flip,
    theta_swap,
)


def test_curve_validation():
    with pytest.raises(CurveError, match="valence"):
        TropicalCurve([Vertex("a"), Vertex("b")], [Edge("e", "a", "b", Fraction(1))])
    with pytest.raises(CurveError, match="connected"):
        TropicalCurve(
            [Vertex("a"), Vertex("b"), Vertex("c"), Vertex("d")],
            [
                Edge("e1", "a", "b", Fraction(1)),
                Edge("e2", "b", "a", Fraction(1)),
                Edge("e3", "c", "d", Fraction(1)),
                Edge("e4", "d", "c", Fraction(1)),
            ],
        )
    with pytest.raises(CurveError, match="infinite"):
        TropicalCurve(
            [Vertex("a"), Vertex("s", ideal=True), Vertex("b")],
            [
                Edge("e", "a", "s", Fraction(1)),
                Edge("f", "a", "b", Fraction(1)),
                Edge("g", "b", "a", Fraction(1)),
            ],
        )
    with pytest.raises(CurveError, match="loop"):
        TropicalCurve([Vertex("a")], [Edge("e", "a", "a", Fraction(1))])


def test_identity_on_theta():
    curve = theta_curve((1, 2, 3))
    ids = ["e1", "e2", "e3"]
    identity = CurveMorphism(
        {"v1": "v1", "v2": "v2"}, {e: e for e in ids}, {e: 1 for e in ids}
    )
    report = validate_morphism(curve, identity)
    assert report.degree == 1
    verdict = weil_verify(curve, identity)
    # Euler characteristic of a genus-two graph
    assert verdict["lhs"] == verdict["rhs_bm"] == verdict["rhs_ordinary"] == -2


def test_theta_flip_example():
    verdict = weil_verify(theta_curve((1, 1, 1)), theta_flip())
    assert verdict == {
        "degree": 1,
        "lhs": 6,
        "rhs_bm": 6,
        "equal": True,
        "rhs_ordinary": 6,
    }
    points = stable_fixed_cycle(theta_curve((1, 1, 1)), theta_flip())
    assert sorted(points) == [("e1~mid", 2), ("e2~mid", 2), ("e3~mid", 2)]


def test_theta_swap_example():
    verdict = weil_verify(theta_curve((1, 1, 2)), theta_swap())
    assert verdict["lhs"] == verdict["rhs_bm"] == 2 and verdict["equal"]
    points = stable_fixed_cycle(theta_curve((1, 1, 2)), theta_swap())
    assert sorted(points) == [("v1", 1), ("v2", 1)]


def test_line_scalings():
    for d in range(1, 6):
        curve, psi = standard_line(), line_scaling(d)
        verdict = weil_verify(curve, psi)
        assert verdict["lhs"] == verdict["rhs_bm"] == d - 2
        assert trace_side(curve, psi, "ordinary") == 1 - 2 * d
        if d == 1:
            assert verdict["rhs_ordinary"] == -1 == verdict["lhs"]


def test_star_ray_rotation():
    # rotating the three rays while scaling by d leaves only the center fixed
    for d in (1, 2, 3):
        curve = standard_line()
        psi = CurveMorphism(
            {"c": "c"},
            {"r0": "r1", "r1": "r2", "r2": "r0"},
            {"r0": d, "r1": d, "r2": d},
        )
        verdict = weil_verify(curve, psi)
        assert verdict["lhs"] == verdict["rhs_bm"] == d + 1
        assert stable_fixed_cycle(curve, psi) == [("c", d + 1)]


def test_constant_map_on_compact_curve():
    curve = theta_curve((1, 1, 1))
    psi = CurveMorphism(constant_at="v1")
    assert validate_morphism(curve, psi).degree == 0
    assert stable_fixed_cycle(curve, psi) == [("v1", 1)]
    assert trace_side(curve, psi, "bm") == 1
    assert trace_side(curve, psi, "ordinary") == 1
    with pytest.raises(MorphismError, match="compact"):
        validate_morphism(standard_line(), psi_const := CurveMorphism(constant_at="c"))


def test_mismatched_stretches_rejected():
    curve = standard_line()
    psi = CurveMorphism(
        {"c": "c"},
        {f"r{i}": f"r{i}" for i in range(3)},
        {"r0": 2, "r1": 2, "r2": 3},
    )
    with pytest.raises(MorphismError, match="absolute value"):
        validate_morphism(curve, psi)


def test_non_bijective_edge_map_rejected():
    curve = standard_line()
    psi = CurveMorphism(
        {"c": "c"},
        {"r0": "r0", "r1": "r0", "r2": "r2"},
        {"r0": 1, "r1": 1, "r2": 1},
    )
    with pytest.raises(MorphismError, match="permute"):
        validate_morphism(curve, psi)


def test_excluded_half_line():
    curve = TropicalCurve(
        [Vertex("s", ideal=True)], [Edge("r", "s", None, INF)]
    )
    doubling = CurveMorphism({"s": "s"}, {"r": "r"}, {"r": 2})
    with pytest.raises(MorphismError) as err:
        validate_morphism(curve, doubling)
    assert err.value.excluded
    # degree one on the same curve is fine
    identity = CurveMorphism({"s": "s"}, {"r": "r"}, {"r": 1})
    assert weil_verify(curve, identity)["equal"]


def test_degree_two_needs_star_shape():
    curve = theta_curve((1, 1, 1))
    psi = CurveMorphism(
        {"v1": "v1", "v2": "v2"},
        {e: e for e in ("e1", "e2", "e3")},
        {e: 2 for e in ("e1", "e2", "e3")},
    )
    with pytest.raises(MorphismError):
        validate_morphism(curve, psi)


def test_flipped_doubly_ideal_edge_rejected():
    curve = TropicalCurve(
        [Vertex("s1", ideal=True), Vertex("s2", ideal=True)],
        [Edge("e", "s1", "s2", INF)],
    )
    flip = CurveMorphism({"s1": "s2", "s2": "s1"}, {"e": "e"}, {"e": -1})
    with pytest.raises(MorphismError, match="midpoint"):
        stable_fixed_cycle(curve, flip)
    identity = CurveMorphism({"s1": "s1", "s2": "s2"}, {"e": "e"}, {"e": 1})
    verdict = weil_verify(curve, identity)
    # the segment is a sphere-like curve: degree two
    assert verdict["lhs"] == verdict["rhs_bm"] == verdict["rhs_ordinary"] == 2


def test_capped_line_scaling():
    # segment with two ideal endpoints and a middle vertex, x -> d x
    for d in (1, 2, 3, 4, 5):
        curve = TropicalCurve(
            [Vertex("s1", ideal=True), Vertex("s2", ideal=True), Vertex("c")],
            [Edge("e1", "c", "s1", INF), Edge("e2", "c", "s2", INF)],
        )
        psi = CurveMorphism(
            {"s1": "s1", "s2": "s2", "c": "c"},
            {"e1": "e1", "e2": "e2"},
            {"e1": d, "e2": d},
        )
        verdict = weil_verify(curve, psi)
        assert verdict["lhs"] == verdict["rhs_bm"] == d + 1
        assert trace_side(curve, psi, "ordinary") == d + 1


def test_mixed_star_with_ideal_ends():
    # three rays, one capped by an ideal point; x -> d x fixes everything
    for d in range(1, 6):
        curve = TropicalCurve(
            [Vertex("c"), Vertex("s", ideal=True)],
            [
                Edge("r0", "c", "s", INF),
                Edge("r1", "c", None, INF),
                Edge("r2", "c", None, INF),
            ],
        )
        psi = CurveMorphism(
            {"c": "c", "s": "s"},
            {e: e for e in ("r0", "r1", "r2")},
            {e: d for e in ("r0", "r1", "r2")},
        )
        verdict = weil_verify(curve, psi)
        # center d + 1 - 3, ideal point 1
        assert verdict["lhs"] == d - 1 and verdict["equal"]


def test_subdivision_invariance():
    curve = theta_curve((1, 1, 2))
    psi = theta_swap()
    base = weil_verify(curve, psi)
    # subdivide the fixed edge e3 in a morphism-compatible way
    vertices = list(curve.vertices.values()) + [Vertex("m")]
    edges = [curve.edges["e1"], curve.edges["e2"]]
    edges += [Edge("e3a", "v1", "m", Fraction(1)), Edge("e3b", "m", "v2", Fraction(1))]
    refined = TropicalCurve(vertices, edges)
    psi2 = CurveMorphism(
        {"v1": "v1", "v2": "v2", "m": "m"},
        {"e1": "e2", "e2": "e1", "e3a": "e3a", "e3b": "e3b"},
        {"e1": 1, "e2": 1, "e3a": 1, "e3b": 1},
    )
    refined_verdict = weil_verify(refined, psi2)
    for key in ("lhs", "rhs_bm", "rhs_ordinary"):
        assert refined_verdict[key] == base[key]


def test_subdivide_flipped_structure():
    curve, psi = theta_curve((1, 1, 1)), theta_flip()
    refined, psi2 = subdivide_flipped(curve, psi)
    assert len(refined.vertices) == 5
    assert len(refined.edges) == 6
    assert all(s > 0 or em != e for (e, em), s in zip(psi2.edge_map.items(), psi2.stretch.values()))
    report = validate_morphism(refined, psi2)
    assert report.degree == 1


def test_circle_reflection_agrees_with_lattice_route():
    # reflection of a circle: two fixed points of multiplicity two
    vertices = [Vertex("a"), Vertex("b")]
    edges = [
        Edge("top", "a", "b", Fraction(1)),
        Edge("bot", "b", "a", Fraction(1)),
    ]
    curve = TropicalCurve(vertices, edges)
    reflection = CurveMorphism(
        {"a": "a", "b": "b"},
        {"top": "bot", "bot": "top"},
        {"top": -1, "bot": -1},
    )
    verdict = weil_verify(curve, reflection)
    assert verdict["lhs"] == verdict["rhs_bm"] == 4
    lattice_verdict = circle_trace(Fraction(2), -1, 0)
    assert lattice_verdict["lhs"] == 4 and lattice_verdict["all_equal"]


def test_circle_winding_through_morphism_type():
    vertices = [Vertex("a"), Vertex("b")]
    edges = [
        Edge("top", "a", "b", Fraction(3, 2)),
        Edge("bot", "b", "a", Fraction(1, 2)),
    ]
    curve = TropicalCurve(vertices, edges)
    for d in (-2, 2, 3, 5):
        psi = CurveMorphism(circle_stretch=d, circle_shift=Fraction(1, 7))
        verdict = weil_verify(curve, psi)
        assert verdict["lhs"] == verdict["rhs_bm"] == (1 - d) ** 2
        assert verdict["rhs_ordinary"] == (1 - d) ** 2
        points = stable_fixed_cycle(curve, psi)
        assert len(points) == abs(1 - d)
        assert all(mult == abs(1 - d) for _, mult in points)
    with pytest.raises(MorphismError, match="circle"):
        validate_morphism(standard_line(), CurveMorphism(circle_stretch=2))


def test_circle_rotation_is_degenerate():
    vertices = [Vertex("a"), Vertex("b")]
    edges = [
        Edge("top", "a", "b", Fraction(1)),
        Edge("bot", "b", "a", Fraction(1)),
    ]
    curve = TropicalCurve(vertices, edges)
    rotation = CurveMorphism(
        {"a": "b", "b": "a"},
        {"top": "bot", "bot": "top"},
        {"top": 1, "bot": 1},
    )
    verdict = weil_verify(curve, rotation)
    assert verdict["lhs"] == verdict["rhs_bm"] == 0
    assert circle_trace(Fraction(2), 1, 1)["lhs"] == 0


# ---------------------------------------------------------------------------
# randomized automorphism battery
# ---------------------------------------------------------------------------

def complete_graph_curve(n, rng):
    vertices = [Vertex(f"v{i}") for i in range(n)]
    edges = []
    lookup = {}
    for i in range(n):
        for j in range(i + 1, n):
            eid = f"e{i}_{j}"
            edges.append(Edge(eid, f"v{i}", f"v{j}", Fraction(1)))
            lookup[(i, j)] = eid
    return TropicalCurve(vertices, edges), lookup


def automorphism_from_permutation(n, perm, lookup):
    vm = {f"v{i}": f"v{perm[i]}" for i in range(n)}
    em = {}
    stretch = {}
    for (i, j), eid in lookup.items():
        a, b = perm[i], perm[j]
        target = lookup[(min(a, b), max(a, b))]
        em[eid] = target
        stretch[eid] = 1 if a < b else -1
    return CurveMorphism(vm, em, stretch)


def doubled_curve_with_involution(rng, base_size):
    # two copies of a random connected graph joined by a perfect matching;
    # the swap of the copies is an automorphism
    base_edges = set()
    for v in range(1, base_size):
        base_edges.add((rng.randrange(v), v))
    extra = rng.randint(0, 2)
    for _ in range(extra):
        a, b = rng.sample(range(base_size), 2)
        base_edges.add((min(a, b), max(a, b)))
    vertices = []
    edges = []
    vm, em, stretch = {}, {}, {}
    for copy in (0, 1):
        for v in range(base_size):
            vertices.append(Vertex(f"c{copy}v{v}"))
    lengths = {}
    for idx, (a, b) in enumerate(sorted(base_edges)):
        lengths[idx] = Fraction(rng.randint(1, 9), rng.randint(1, 4))
        for copy in (0, 1):
            edges.append(
                Edge(f"c{copy}e{idx}", f"c{copy}v{a}", f"c{copy}v{b}", lengths[idx])
            )
    for v in range(base_size):
        edges.append(
            Edge(f"m{v}", f"c0v{v}", f"c1v{v}", Fraction(rng.randint(1, 9), rng.randint(1, 4)))
        )
    for v in range(base_size):
        vm[f"c0v{v}"] = f"c1v{v}"
        vm[f"c1v{v}"] = f"c0v{v}"
        em[f"m{v}"] = f"m{v}"
        stretch[f"m{v}"] = -1
    for idx in range(len(base_edges)):
        em[f"c0e{idx}"] = f"c1e{idx}"
        em[f"c1e{idx}"] = f"c0e{idx}"
        stretch[f"c0e{idx}"] = 1
        stretch[f"c1e{idx}"] = 1
    return TropicalCurve(vertices, edges), CurveMorphism(vm, em, stretch)


def cycle_curve_with_dihedral(rng, n):
    vertices = [Vertex(f"v{i}") for i in range(n)]
    edges = [
        Edge(f"e{i}", f"v{i}", f"v{(i + 1) % n}", Fraction(1)) for i in range(n)
    ]
    curve = TropicalCurve(vertices, edges)
    if rng.random() < 0.5:
        shift = rng.randrange(n)
        vm = {f"v{i}": f"v{(i + shift) % n}" for i in range(n)}
        em = {f"e{i}": f"e{(i + shift) % n}" for i in range(n)}
        stretch = {f"e{i}": 1 for i in range(n)}
    else:
        vm = {f"v{i}": f"v{(-i) % n}" for i in range(n)}
        em = {f"e{i}": f"e{(-i - 1) % n}" for i in range(n)}
        stretch = {f"e{i}": -1 for i in range(n)}
    return curve, CurveMorphism(vm, em, stretch)


def random_automorphism_cases(count, seed):
    rng = random.Random(seed)
    cases = []
    while len(cases) < count:
        kind = rng.randrange(3)
        if kind == 0:
            n = rng.randint(4, 5)
            curve, lookup = complete_graph_curve(n, rng)
            perm = list(range(n))
            rng.shuffle(perm)
            cases.append((curve, automorphism_from_permutation(n, perm, lookup)))
        elif kind == 1:
            cases.append(doubled_curve_with_involution(rng, rng.randint(2, 4)))
        else:
            cases.append(cycle_curve_with_dihedral(rng, rng.randint(3, 8)))
    return cases


def test_random_automorphisms_all_verify():
    for curve, psi in random_automorphism_cases(30, seed=99):
        verdict = weil_verify(curve, psi)
        assert verdict["equal"], verdict
        assert verdict["rhs_ordinary"] == verdict["lhs"]


def test_curve_documents_roundtrip():
    doc = {
        "vertices": [
            {"id": "v1", "sedentarity": False},
            {"id": "v2", "sedentarity": False},
        ],
        "edges": [
            {"id": "e1", "ends": ["v1", "v2"], "length": 1},
            {"id": "e2", "ends": ["v1", "v2"], "length": 1},
            {"id": "e3", "ends": ["v1", "v2"], "length": "2"},
        ],
        "morphism": {
            "vertex_map": {"v1": "v1", "v2": "v2"},
            "edge_map": {"e1": "e2", "e2": "e1", "e3": "e3"},
            "stretch": {"e1": 1, "e2": 1, "e3": 1},
        },
    }
    curve = curve_from_doc(doc)
    psi = morphism_from_doc(doc["morphism"])
    assert weil_verify(curve, psi)["lhs"] == 2
