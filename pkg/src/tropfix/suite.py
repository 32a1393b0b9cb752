"""Built-in verification battery behind the `suite` CLI verb.

Runs the headline identities over a standard family of matroids plus curve
and torus spot checks.  Each check yields a record {name, ok, detail}; the
CLI exits 1 when any record fails.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .curve import (
    CurveMorphism,
    Edge,
    TropicalCurve,
    Vertex,
    circle_trace,
    weil_verify,
)
from .cycles import is_balanced, matroid_fan
from .diagonal import diagonal_cycle, self_intersection, xk, xk_predicted
from .euler import euler_char_fan
from .matroid import (
    beta,
    bases_matroid,
    diagonal_matroid,
    direct_sum,
    graphic_matroid,
    uniform_matroid,
)
from .torus import TorusEndo, lefschetz_verify

FANO_LINES = [
    (0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5),
]


def fano_matroid():
    from itertools import combinations

    lines = {frozenset(line) for line in FANO_LINES}
    bases = [b for b in combinations(range(7), 3) if frozenset(b) not in lines]
    return bases_matroid(7, bases)


def k4_matroid():
    return graphic_matroid(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def standard_matroids(quick=False):
    """The named suite: uniforms, the K4 cycle matroid, Fano, two direct sums."""
    bound = 4 if quick else 6
    named = []
    for n in range(1, bound + 1):
        for r in range(1, n + 1):
            named.append((f"uniform({r},{n})", uniform_matroid(r, n)))
    named.append(("graphic(K4)", k4_matroid()))
    named.append(("fano", fano_matroid()))
    named.append(
        ("U11+U11", direct_sum(uniform_matroid(1, 1), uniform_matroid(1, 1)))
    )
    named.append(
        ("U12+U23", direct_sum(uniform_matroid(1, 2), uniform_matroid(2, 3)))
    )
    return named


def theta_curve(lengths=(1, 1, 2)):
    vertices = [Vertex("v1"), Vertex("v2")]
    edges = [
        Edge(f"e{i}", "v1", "v2", Fraction(l)) for i, l in enumerate(lengths, 1)
    ]
    return TropicalCurve(vertices, edges)


def theta_flip():
    ids = ["e1", "e2", "e3"]
    return CurveMorphism(
        {"v1": "v2", "v2": "v1"},
        {e: e for e in ids},
        {e: -1 for e in ids},
    )


def theta_swap():
    return CurveMorphism(
        {"v1": "v1", "v2": "v2"},
        {"e1": "e2", "e2": "e1", "e3": "e3"},
        {"e1": 1, "e2": 1, "e3": 1},
    )


def standard_line():
    vertices = [Vertex("c")]
    edges = [Edge(f"r{i}", "c", None) for i in range(3)]
    return TropicalCurve(vertices, edges)


def line_scaling(d):
    return CurveMorphism(
        {"c": "c"},
        {f"r{i}": f"r{i}" for i in range(3)},
        {f"r{i}": d for i in range(3)},
    )


def run_suite(quick=False):
    results = []

    def record(name, ok, detail):
        results.append({"name": name, "ok": bool(ok), "detail": detail})

    for name, m in standard_matroids(quick):
        n = m.full_rank - 1
        b = beta(m)
        computed = self_intersection(m)
        record(
            f"selfint {name}",
            computed == (-1) ** n * b,
            f"pipeline {computed}, signed beta {(-1) ** n * b}",
        )
        for k in range(n + 1):
            x = xk(m, k)
            ok = x == xk_predicted(m, k) and is_balanced(x).ok
            record(f"xk {name} k={k}", ok, f"{len(x.weights)} cones")
        chi = euler_char_fan(m)
        record(
            f"euler {name}",
            chi == computed,
            f"framing {chi}, intersection {computed}",
        )

    for r, n in ((2, 3), (2, 4), (3, 4)):
        m = uniform_matroid(r, n)
        x = diagonal_cycle(m, verify=False)
        expected = matroid_fan(diagonal_matroid(m))
        record(f"diagonal uniform({r},{n})", x == expected, f"{len(x.weights)} cones")

    for name, curve, psi, expected in (
        ("theta flip", theta_curve((1, 1, 1)), theta_flip(), 6),
        ("theta swap", theta_curve((1, 1, 2)), theta_swap(), 2),
    ):
        verdict = weil_verify(curve, psi)
        record(
            f"curve {name}",
            verdict["equal"] and verdict["lhs"] == expected,
            f"lhs {verdict['lhs']}, rhs {verdict['rhs_bm']}",
        )
    for d in range(1, 6):
        verdict = weil_verify(standard_line(), line_scaling(d))
        record(
            f"curve line d={d}",
            verdict["equal"] and verdict["lhs"] == d - 2,
            f"lhs {verdict['lhs']}",
        )

    rng = random.Random(7)
    trials = 20 if quick else 60
    bad = 0
    for _ in range(trials):
        n = rng.randint(1, 3)
        a = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        endo = TorusEndo.build(n, [[int(i == j) for j in range(n)] for i in range(n)], a)
        if not lefschetz_verify(endo)["all_equal"]:
            bad += 1
    record("torus random", bad == 0, f"{trials} trials, {bad} failures")

    for d in (-2, 2, 3):
        verdict = circle_trace(Fraction(3, 2), d, Fraction(1, 3))
        record(
            f"circle d={d}",
            verdict["all_equal"] and verdict["lhs"] == (1 - d) ** 2,
            f"lhs {verdict['lhs']}",
        )
    return results
