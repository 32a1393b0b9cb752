"""Weighted fans supported on the braid arrangement fan.

Cones are recorded combinatorially as strictly decreasing chains of proper
nonempty subsets of the ground set; the cone of a chain is spanned by the
indicator vectors of its members.  Coordinates are projective with the
basepoint gauge x_0 = 0, so vectors live in Z^N for a ground set of N + 1
elements.
"""

from __future__ import annotations

from collections import namedtuple
from dataclasses import dataclass, field

from .linalg import smith_normal_form, solve_columns
from .matroid import flats


def indicator_vector(subset, n_elements):
    """Projective indicator vector of a subset, normalized to the gauge x_0 = 0.

    Entries are indexed by elements 1..N.  A set avoiding the basepoint gets
    -1 on its members; a set containing it gets +1 on its complement.  Both
    the empty set and the full set map to 0.
    """
    s = frozenset(subset)
    if 0 in s:
        return tuple(0 if e in s else 1 for e in range(1, n_elements))
    return tuple(-1 if e in s else 0 for e in range(1, n_elements))


def chain_vectors(chain, n_elements):
    return [indicator_vector(f, n_elements) for f in chain]


def _validate_chain(chain, ground):
    prev = None
    for f in chain:
        if not isinstance(f, frozenset):
            raise ValueError("chain members must be frozensets")
        if not f or not f < ground:
            raise ValueError(f"chain member {sorted(f)} must be proper and nonempty")
        if prev is not None and not f < prev:
            raise ValueError("chain must be strictly decreasing")
        prev = f


def sort_key(chain):
    return tuple(sorted(f) for f in chain)


@dataclass(frozen=True)
class TropicalCycle:
    """Pure-dimensional weighted fan; weights indexed by canonical chains."""

    n_elements: int
    dim: int
    weights: dict = field(default_factory=dict)

    def __post_init__(self):
        ground = frozenset(range(self.n_elements))
        cleaned = {}
        for chain, w in self.weights.items():
            chain = tuple(frozenset(f) for f in chain)
            if len(chain) != self.dim:
                raise ValueError(
                    f"chain {sort_key(chain)} has length {len(chain)}, expected {self.dim}"
                )
            _validate_chain(chain, ground)
            if w:
                cleaned[chain] = int(w)
        object.__setattr__(self, "weights", cleaned)

    def __add__(self, other):
        if (self.n_elements, self.dim) != (other.n_elements, other.dim):
            raise ValueError("cycles live on different carriers")
        merged = dict(self.weights)
        for chain, w in other.weights.items():
            merged[chain] = merged.get(chain, 0) + w
        return TropicalCycle(self.n_elements, self.dim, merged)

    def support(self):
        return frozenset(self.weights)

    def to_doc(self):
        return [
            {"chain": [sorted(f) for f in chain], "weight": self.weights[chain]}
            for chain in sorted(self.weights, key=sort_key)
        ]


def matroid_fan(m):
    """Fine fan of a loopless matroid: one unit-weight cone per maximal chain."""
    if m.full_rank == 0:
        raise ValueError("fan needs a matroid of positive rank")
    lat = flats(m)
    chains = lat.maximal_chains()
    return TropicalCycle(
        m.n_elements, m.full_rank - 1, {chain: 1 for chain in chains}
    )


StarFacet = namedtuple("StarFacet", "facet added vector")


def codim1_stars(x):
    """Codimension-one faces of x with their incident facets.

    Each face arises by deleting one member from a facet chain; the record
    keeps the deleted subset and its indicator vector (the generator the
    facet adds over the face).
    """
    if x.dim < 1:
        raise ValueError("cycle has no codimension-one faces")
    stars = {}
    for chain in x.weights:
        for j in range(len(chain)):
            tau = chain[:j] + chain[j + 1:]
            stars.setdefault(tau, []).append(
                StarFacet(chain, chain[j], indicator_vector(chain[j], x.n_elements))
            )
    return stars


BalanceReport = namedtuple("BalanceReport", "ok face residual")


def is_balanced(x):
    """Check the balancing condition at every codimension-one face.

    The weighted sum of the added generators around a face must lie in the
    rational span of the face's own generators; the check is an exact solve.
    Returns the first offending face and residual on failure.
    """
    if x.dim == 0 or not x.weights:
        return BalanceReport(True, None, None)
    dim_amb = x.n_elements - 1
    for tau, facets in codim1_stars(x).items():
        total = [0] * dim_amb
        for facet, _, vec in facets:
            w = x.weights[facet]
            total = [a + w * b for a, b in zip(total, vec)]
        coeffs, residual = solve_columns(chain_vectors(tau, x.n_elements), total)
        if coeffs is None:
            return BalanceReport(False, tau, tuple(residual))
    return BalanceReport(True, None, None)


def degree0(x):
    """Degree of a zero-dimensional cycle: the weight at the origin."""
    if x.dim != 0:
        raise ValueError("degree is defined for zero-dimensional cycles only")
    return x.weights.get((), 0)


def chain_is_unimodular(chain, n_elements):
    """Generators extend to a lattice basis: all Smith invariant factors are 1."""
    if not chain:
        return True
    rows = chain_vectors(chain, n_elements)
    d, _, _ = smith_normal_form(rows)
    k = len(chain)
    factors = [d[i][i] for i in range(min(k, len(d[0])))]
    return len(factors) == k and all(f == 1 for f in factors)


def braid_chain_of_point(values):
    """Chain of the braid cone containing a point (gauge coordinates).

    values are the coordinates at elements 1..N; the basepoint coordinate is
    0.  The chain consists of the proper sublevel sets, largest first.
    """
    full = [0] + list(values)
    levels = sorted(set(full), reverse=True)
    chain = []
    for level in levels[1:]:
        chain.append(frozenset(e for e, v in enumerate(full) if v <= level))
    return tuple(chain)
