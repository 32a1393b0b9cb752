"""Piecewise-linear functions on the braid fan and the divisor construction.

A PLFunction is linear on every braid cone, hence determined by its integer
values on indicator vectors.  Values are stored in the basepoint gauge, so
the empty and the full set are pinned to 0; a function defined by a rank
condition in the homogeneous gauge is transported by adding 1 on subsets
containing the basepoint.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cycles import TropicalCycle, chain_is_unimodular, chain_vectors, codim1_stars, is_balanced
from .linalg import solve_columns
from .matroid import Matroid, MatroidError, flats, join_pair, subsets_of


class SpanError(ValueError):
    """Target vector does not lie in the span of a face; input is unbalanced."""


@dataclass(frozen=True)
class PLFunction:
    """Integer values on all subsets of the ground set, gauge-normalized."""

    n_elements: int
    values: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.n_elements > 20:
            raise ValueError("PLFunction tables are limited to 20 elements")
        table = {frozenset(k): int(v) for k, v in self.values.items()}
        ground = frozenset(range(self.n_elements))
        for s in (frozenset(), ground):
            if table.setdefault(s, 0) != 0:
                raise ValueError("values at the empty and the full set must be 0")
        object.__setattr__(self, "values", table)

    @classmethod
    def from_rule(cls, n_elements, rule):
        return cls(
            n_elements, {s: rule(s) for s in subsets_of(n_elements)}
        )

    def value(self, subset):
        return self.values[frozenset(subset)]

    def __add__(self, other):
        if self.n_elements != other.n_elements:
            raise ValueError("functions live on different ground sets")
        return PLFunction(
            self.n_elements,
            {s: v + other.values[s] for s, v in self.values.items()},
        )

    def to_doc(self):
        items = [
            (",".join(map(str, sorted(s))), v)
            for s, v in self.values.items()
            if v
        ]
        return dict(sorted(items))


def evaluate_on_face(f, chain, vector):
    """Linear extension of f on the span of a chain, evaluated at vector.

    Writes vector as a rational combination of the chain's generators and
    sums the generator values; raises SpanError when the solve is infeasible.
    """
    gens = chain_vectors(chain, f.n_elements)
    coeffs, residual = solve_columns(gens, vector)
    if coeffs is None:
        raise SpanError(
            f"vector {vector} is not in the span of face {[sorted(x) for x in chain]}"
            f" (residual {tuple(residual)})"
        )
    if any(c.denominator != 1 for c in coeffs) and chain_is_unimodular(
        chain, f.n_elements
    ):
        raise AssertionError("non-integer coefficients on a unimodular face")
    return sum(
        (c * f.value(s) for c, s in zip(coeffs, chain)), start=Fraction(0)
    )


def divisor(f, x):
    """Divisor of a PL function on a cycle.

    The weight of a codimension-one face is the weighted sum of f over the
    added generators of its star, corrected by the linear extension of f on
    the face evaluated at the same weighted generator sum.  Zero weights are
    dropped and the output is re-checked for balancing.
    """
    if x.dim < 1:
        raise ValueError("divisor needs a cycle of dimension at least 1")
    if f.n_elements != x.n_elements:
        raise ValueError("function and cycle live on different ground sets")
    dim_amb = x.n_elements - 1
    weights = {}
    for tau, facets in codim1_stars(x).items():
        total = 0
        vec_sum = [0] * dim_amb
        for facet, added, vec in facets:
            w = x.weights[facet]
            total += w * f.value(added)
            vec_sum = [a + w * b for a, b in zip(vec_sum, vec)]
        weight = total - evaluate_on_face(f, tau, vec_sum)
        if weight.denominator != 1:
            raise AssertionError(f"non-integer divisor weight at {tau}")
        if weight:
            weights[tau] = int(weight)
    result = TropicalCycle(x.n_elements, x.dim - 1, weights)
    report = is_balanced(result)
    if not report.ok:
        raise AssertionError(
            f"divisor output unbalanced at {report.face} (residual {report.residual})"
        )
    return result


# ---------------------------------------------------------------------------
# canonical function chains between nested matroid fans
# ---------------------------------------------------------------------------

def is_quotient(n, m):
    """Every flat of n is a flat of m (same ground set)."""
    if n.n_elements != m.n_elements:
        return False
    return all(m.is_flat(f) for f in flats(n).flats)


def quotient_chain_matroids(n, m):
    """Intermediate matroids interpolating rank by rank between n and m."""
    if not is_quotient(n, m):
        raise MatroidError("first matroid must be a quotient of the second")
    s = m.full_rank - n.full_rank
    return [
        Matroid(
            m.n_elements,
            lambda subset, i=i: min(n.rank(subset) + i, m.rank(subset)),
            provenance=f"interp({n.provenance},{m.provenance},{i})",
        )
        for i in range(s + 1)
    ]


def quotient_chain_functions(n, m):
    """Gauge-normalized function chain cutting the smaller fan out of the larger.

    Function i takes -1 (before the gauge shift) exactly on the subsets whose
    two ranks differ by at least s + 1 - i; applying the functions in order
    to the larger fan peels off one rank per step.
    """
    if not is_quotient(n, m):
        raise MatroidError("first matroid must be a quotient of the second")
    s = m.full_rank - n.full_rank

    def rule(subset, i):
        hom = -1 if m.rank(subset) >= n.rank(subset) + s + 1 - i else 0
        return hom + (1 if 0 in subset else 0)

    return [
        PLFunction.from_rule(m.n_elements, lambda sub, i=i: rule(sub, i))
        for i in range(1, s + 1)
    ]


def pullback_diagonal(g):
    """Restrict a function on the doubled ground set along x -> (x, x)."""
    if g.n_elements % 2 == 0:
        raise ValueError("doubled ground set must have odd size")
    n_elements = (g.n_elements + 1) // 2
    return PLFunction.from_rule(
        n_elements, lambda s: g.value(join_pair(s, s, n_elements))
    )
