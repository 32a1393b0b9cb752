"""Self-intersection of the diagonal of a matroid fan.

The diagonal of Sigma_M x Sigma_M is cut out by n piecewise-linear
functions on the doubled ground set; restricting them along x -> (x, x)
gives functions f_1, ..., f_n on E whose iterated divisors on Sigma_M
compute the self-intersection degree.  The intermediate cycles have an
explicit prediction in terms of rank gap sequences and beta invariants of
contractions, which this module can generate and compare against.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cycles import TropicalCycle, chain_vectors, codim1_stars, degree0, matroid_fan
from .divisor import PLFunction, divisor, pullback_diagonal
from .linalg import solve_columns
from .matroid import (
    beta,
    contract,
    diagonal_matroid,
    flats,
    parallel_connection_self,
    split_pair,
)


class FeasibilityError(ValueError):
    """Ground set too large for the doubled-fan computation; pass force=True."""


def g_function(m, i):
    """Diagonal-cutting function i on the doubled ground set.

    On a pair (F, G) the value is -1 when the basepoint is absent and the
    rank sum rk(F) + rk(G) exceeds rk(F u G) by at least n + 1 - i, and +1
    when the basepoint is present and the rank sum is at most that bound.
    Ranks of arbitrary subsets are taken directly from the rank oracle.
    """
    n = m.full_rank - 1
    if not 1 <= i <= n:
        raise ValueError(f"need 1 <= i <= {n}")

    def rule(s):
        f, g = split_pair(s, m.n_elements)
        bound = m.rank(f | g) + n + 1 - i
        rank_sum = m.rank(f) + m.rank(g)
        if 0 not in f:
            return -1 if rank_sum >= bound else 0
        return 1 if rank_sum <= bound else 0

    return PLFunction.from_rule(2 * m.n_elements - 1, rule)


def f_function(m, i):
    """Restriction of g_function(m, i) along the diagonal embedding.

    Computed directly from the rank condition on single subsets; equality
    with the actual pullback is asserted, not assumed.
    """
    n = m.full_rank - 1
    if not 1 <= i <= n:
        raise ValueError(f"need 1 <= i <= {n}")
    cached = m._cache.get(("f_function", i))
    if cached is not None:
        return cached

    def rule(s):
        if 0 not in s:
            return -1 if m.rank(s) >= n + 1 - i else 0
        return 1 if m.rank(s) <= n + 1 - i else 0

    f = PLFunction.from_rule(m.n_elements, rule)
    if f != pullback_diagonal(g_function(m, i)):
        raise AssertionError("restriction rule disagrees with the actual pullback")
    m._cache[("f_function", i)] = f
    return f


# ---------------------------------------------------------------------------
# gap sequences and chain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GapType:
    """Rank gap sequence of a chain with its classification.

    kind is "rs" (gaps concentrated in the top two entries, basepoint only
    in the full set), "k" (gap concentrated in the top entry, basepoint in
    the first member), or "other".  params holds (r, s) or (k,).
    """

    gap: tuple
    kind: str
    params: tuple
    basepoint_in_first: bool


def classify_chain(m, chain):
    """Gap sequence and type of a chain of flats of m."""
    full_rank = m.full_rank
    ranks = [full_rank] + [m.rank(f) for f in chain] + [0]
    gap = tuple(ranks[i] - ranks[i + 1] - 1 for i in range(len(ranks) - 1))
    has_zero = bool(chain) and 0 in chain[0]
    if not chain:
        return GapType(gap, "rs", (0, gap[0]), False)
    if all(g == 0 for g in gap[1:]):
        if has_zero:
            return GapType(gap, "k", (gap[0],), True)
        return GapType(gap, "rs", (gap[0], 0), False)
    if all(g == 0 for g in gap[2:]) and not has_zero:
        return GapType(gap, "rs", (gap[0], gap[1]), False)
    return GapType(gap, "other", (), has_zero)


def _star_case(m, k, tau):
    """Which of the four star shapes a codimension-one face of X_k has.

    The face is classified by the flats (G, H) at the last nonzero gap
    entry: (A) G stays low even with the basepoint added, (B) G is high and
    misses the basepoint, (C)/(D) G is the full set with H containing or
    missing the basepoint.  Exactly one case must apply.
    """
    n = m.full_rank - 1
    ground = m.ground
    ranks = [m.full_rank] + [m.rank(f) for f in tau] + [0]
    gap = [ranks[i] - ranks[i + 1] - 1 for i in range(len(ranks) - 1)]
    last = max(i for i, g in enumerate(gap) if g > 0)
    upper = ground if last == 0 else tau[last - 1]
    lower = frozenset() if last == len(tau) else tau[last]
    cases = []
    if m.rank(upper | {0}) <= n - k:
        cases.append("A")
    if 0 not in upper and m.rank(upper) >= n - k:
        cases.append("B")
    if upper == ground and 0 in lower:
        cases.append("C")
    if upper == ground and 0 not in lower:
        cases.append("D")
    if len(cases) != 1:
        raise AssertionError(
            f"face {[sorted(f) for f in tau]} matched cases {cases} at step {k}"
        )
    return cases[0], upper, lower


def xk(m, k, check_faces=True, debug_coefficients=False):
    """Iterated divisor cycle: k restriction functions applied to the fan.

    With check_faces every codimension-one face of each intermediate cycle
    is classified into the four star shapes and faces of the low shape are
    verified to receive weight zero.  debug_coefficients additionally checks
    the balancing coefficients at full-set faces missing the basepoint.
    """
    n = m.full_rank - 1
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= {n}")
    x = matroid_fan(m)
    for i in range(1, k + 1):
        cases = {}
        if check_faces:
            for tau, facets in codim1_stars(x).items():
                case, _, lower = _star_case(m, i - 1, tau)
                cases[tau] = case
                if debug_coefficients and case == "D":
                    # the star relation at such a face involves only the
                    # full-set direction (invisible in this gauge) and the
                    # face's first member; deeper generators must drop out
                    vec_sum = [0] * (m.n_elements - 1)
                    for facet, _, vec in facets:
                        w = x.weights[facet]
                        vec_sum = [a + w * b for a, b in zip(vec_sum, vec)]
                    coeffs, _ = solve_columns(
                        chain_vectors(tau, m.n_elements), vec_sum
                    )
                    if coeffs is None:
                        raise AssertionError(f"star at {tau} is not balanced")
                    if any(
                        c != 0 for c, f in zip(coeffs, tau) if f != lower
                    ):
                        raise AssertionError(
                            f"star relation at {tau} involves deeper generators"
                        )
                    if f_function(m, i).value(lower) != 0:
                        raise AssertionError(
                            f"first member of {tau} has nonzero function value"
                        )
        x = divisor(f_function(m, i), x)
        if check_faces:
            for tau, case in cases.items():
                if case == "A" and tau in x.weights:
                    raise AssertionError(
                        f"low-shape face {[sorted(f) for f in tau]} kept weight"
                    )
    return x


def self_intersection(m):
    """Degree of the iterated divisor pipeline; never consults beta."""
    n = m.full_rank - 1
    return degree0(xk(m, n, check_faces=False))


def xk_predicted(m, k):
    """Predicted intermediate cycle from chain types and beta invariants.

    Cones with gaps (r, s, 0, ...) and basepoint only in the full set carry
    weight +-beta of the contraction by their first member; cones with gaps
    (k, 0, ...) and basepoint in the first member carry weight 1.
    """
    n = m.full_rank - 1
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= {n}")
    lat = flats(m)
    length = n - k
    weights = {}
    beta_memo = {}

    def contraction_weight(first):
        w = beta_memo.get(first)
        if w is None:
            quotient = contract(m, first)
            w = (-1) ** (quotient.full_rank - 1) * beta(quotient)
            beta_memo[first] = w
        return w

    if length == 0:
        w = (-1) ** n * beta(m)
        if w:
            weights[()] = w
        return TropicalCycle(m.n_elements, 0, weights)

    # basepoint chains: first member of rank n - k through the basepoint
    for f1 in lat.flats_of_rank(n - k):
        if 0 in f1:
            for tail in lat.saturated_chains_below(f1):
                weights[(f1, *tail)] = 1

    # gap-split chains: first member of rank n - r avoiding the basepoint
    for r in range(k + 1):
        rank_f1 = n - r
        if rank_f1 < 1:
            continue
        for f1 in lat.flats_of_rank(rank_f1):
            if 0 in f1:
                continue
            w = contraction_weight(f1)
            if w == 0:
                continue
            if length == 1:
                weights[(f1,)] = w
                continue
            for f2 in lat.flats_of_rank(n - k - 1):
                if f2 < f1:
                    for tail in lat.saturated_chains_below(f2):
                        weights[(f1, f2, *tail)] = w
    return TropicalCycle(m.n_elements, length, weights)


def diagonal_cycle(m, verify=True, force=False):
    """Diagonal of the doubled fan as an iterated divisor.

    Applies the n diagonal-cutting functions to the fan of the glued matroid.
    With verify the result is compared against the fan of the diagonal
    matroid with unit weights.  Guarded by ground-set size; the doubled fan
    grows quickly.
    """
    if m.n_elements > 5 and not force:
        raise FeasibilityError(
            f"{m.n_elements} elements double to a large fan; pass force=True"
        )
    n = m.full_rank - 1
    glued = parallel_connection_self(m)
    x = matroid_fan(glued)
    for i in range(1, n + 1):
        x = divisor(g_function(m, i), x)
    if verify:
        expected = matroid_fan(diagonal_matroid(m))
        if x != expected:
            raise AssertionError("diagonal pipeline disagrees with the diagonal fan")
    return x
