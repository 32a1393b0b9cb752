"""Exact matroid core: rank oracles, flats, Mobius values, beta invariants.

A matroid lives on the ground set E = {0, ..., N} and is handed around as a
memoized rank oracle.  Element 0 is the distinguished basepoint for every
asymmetric construction in this package; use relabel() to move it.  All
constructors reject matroids with loops, and all arithmetic is exact.
"""

from __future__ import annotations

import re
from itertools import combinations


class MatroidError(ValueError):
    pass


def subsets_of(n):
    """All subsets of {0, ..., n-1} as frozensets, in mask order."""
    universe = list(range(n))
    for mask in range(1 << n):
        yield frozenset(e for e in universe if mask >> e & 1)


class Matroid:
    """A matroid given by a rank oracle on {0, ..., n_elements - 1}."""

    def __init__(self, n_elements, rank_fn, provenance="oracle"):
        if n_elements < 0:
            raise MatroidError("ground set size must be nonnegative")
        self.n_elements = n_elements
        self.ground = frozenset(range(n_elements))
        self.provenance = provenance
        self._rank_fn = rank_fn
        self._memo = {}
        self._cache = {}
        if self.rank(frozenset()) != 0:
            raise MatroidError("rank of the empty set must be 0")
        for e in range(n_elements):
            if self.rank(frozenset([e])) != 1:
                raise MatroidError(f"loop: element {e} has rank 0")

    def rank(self, subset):
        s = frozenset(subset)
        if not s <= self.ground:
            raise MatroidError(f"subset {sorted(s)} not within the ground set")
        r = self._memo.get(s)
        if r is None:
            r = self._memo[s] = int(self._rank_fn(s))
        return r

    @property
    def full_rank(self):
        return self.rank(self.ground)

    def closure(self, subset):
        s = frozenset(subset)
        r = self.rank(s)
        return s | frozenset(
            e for e in self.ground - s if self.rank(s | {e}) == r
        )

    def is_flat(self, subset):
        return self.closure(subset) == frozenset(subset)

    def __repr__(self):
        return f"Matroid({self.n_elements} elements, rank {self.full_rank}, {self.provenance})"


def check_rank_axioms(m):
    """Exhaustively verify the rank axioms; intended for small ground sets."""
    n = m.n_elements
    if n > 16:
        raise MatroidError("axiom check limited to at most 16 elements")
    for s in subsets_of(n):
        rs = m.rank(s)
        if not 0 <= rs <= len(s):
            raise MatroidError(f"rank {rs} of {sorted(s)} out of range")
        rest = sorted(m.ground - s)
        for e in rest:
            d = m.rank(s | {e}) - rs
            if d not in (0, 1):
                raise MatroidError(f"unit increment fails at {sorted(s)} + {e}")
        for e, f in combinations(rest, 2):
            if m.rank(s | {e}) + m.rank(s | {f}) < m.rank(s | {e, f}) + rs:
                raise MatroidError(
                    f"submodularity fails at {sorted(s)} with {e}, {f}"
                )


def uniform_matroid(r, n):
    if not 1 <= r <= n:
        raise MatroidError("uniform matroid needs 1 <= rank <= elements")
    return Matroid(n, lambda s: min(len(s), r), provenance=f"uniform({r},{n})")


def bases_matroid(n, bases):
    """Matroid from an explicit list of bases (exchange axiom is checked)."""
    basis_sets = [frozenset(b) for b in bases]
    if not basis_sets:
        raise MatroidError("at least one basis is required")
    size = len(basis_sets[0])
    for b in basis_sets:
        if not b <= frozenset(range(n)):
            raise MatroidError(f"basis {sorted(b)} not within the ground set")
        if len(b) != size:
            raise MatroidError("bases must all have the same size")
    unique = set(basis_sets)
    for b1 in unique:
        for b2 in unique:
            for e in b1 - b2:
                if not any((b1 - {e}) | {f} in unique for f in b2 - b1):
                    raise MatroidError(
                        f"basis exchange fails for {sorted(b1)}, {sorted(b2)} at {e}"
                    )
    covered = frozenset().union(*unique)
    for e in range(n):
        if e not in covered:
            raise MatroidError(f"loop: element {e} lies in no basis")
    basis_list = sorted(unique, key=sorted)

    def rank(s):
        return max(len(s & b) for b in basis_list)

    return Matroid(n, rank, provenance=f"bases({n};{len(basis_list)})")


def graphic_matroid(n_vertices, edges):
    """Cycle matroid of a multigraph; elements are edge indices in list order."""
    edge_list = [tuple(e) for e in edges]
    for u, w in edge_list:
        if not (0 <= u < n_vertices and 0 <= w < n_vertices):
            raise MatroidError(f"edge ({u},{w}) leaves the vertex range")

    def rank(s):
        parent = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        r = 0
        for i in sorted(s):
            u, w = edge_list[i]
            parent.setdefault(u, u)
            parent.setdefault(w, w)
            ru, rw = find(u), find(w)
            if ru != rw:
                parent[ru] = rw
                r += 1
        return r

    return Matroid(
        len(edge_list), rank, provenance=f"graphic({n_vertices};{len(edge_list)})"
    )


def rank_table_matroid(n, table):
    """Matroid from an explicit subset -> rank map; axioms fully validated."""
    ranks = {frozenset(k): int(v) for k, v in table.items()}
    for s in subsets_of(n):
        if s not in ranks:
            raise MatroidError(f"rank table misses subset {sorted(s)}")
    m = Matroid(n, lambda s: ranks[s], provenance=f"rank_table({n})")
    check_rank_axioms(m)
    return m


def relabel(m, perm):
    """Relabel elements: element e becomes perm[e] (perm is a bijection)."""
    perm = list(perm)
    if sorted(perm) != list(range(m.n_elements)):
        raise MatroidError("relabeling must be a permutation of the ground set")
    inv = [0] * m.n_elements
    for old, new in enumerate(perm):
        inv[new] = old
    return Matroid(
        m.n_elements,
        lambda s: m.rank(frozenset(inv[e] for e in s)),
        provenance=f"relabel({m.provenance})",
    )


def direct_sum(m1, m2):
    n1 = m1.n_elements

    def rank(s):
        return m1.rank(frozenset(e for e in s if e < n1)) + m2.rank(
            frozenset(e - n1 for e in s if e >= n1)
        )

    return Matroid(
        n1 + m2.n_elements,
        rank,
        provenance=f"{m1.provenance}+{m2.provenance}",
    )


def contract(m, flat):
    """Contract by a flat; the remaining elements are relabeled in order."""
    f = frozenset(flat)
    if m.closure(f) != f:
        raise MatroidError(f"{sorted(f)} is not a flat")
    rest = sorted(m.ground - f)
    rf = m.rank(f)

    def rank(s):
        return m.rank(f | frozenset(rest[e] for e in s)) - rf

    return Matroid(len(rest), rank, provenance=f"{m.provenance}/{sorted(f)}")


# ---------------------------------------------------------------------------
# doubled ground set: two copies of E glued along the basepoint 0
# ---------------------------------------------------------------------------

def split_pair(s, n_elements):
    """Split a subset of the doubled ground set into its two E-parts.

    The doubled set {0, ..., 2N} consists of the shared basepoint 0, the
    first copy 1..N and the second copy N+1..2N (holding element i of E as
    N+i).  Returns (F, G) with F, G subsets of E.
    """
    n_side = n_elements - 1
    f = set()
    g = set()
    for e in s:
        if e == 0:
            f.add(0)
            g.add(0)
        elif e <= n_side:
            f.add(e)
        else:
            g.add(e - n_side)
    return frozenset(f), frozenset(g)


def join_pair(f, g, n_elements):
    """Inverse of split_pair; (F, G) must agree about the basepoint."""
    f = frozenset(f)
    g = frozenset(g)
    if (0 in f) != (0 in g):
        raise MatroidError("pair must contain the basepoint on both sides or neither")
    n_side = n_elements - 1
    return frozenset(f) | frozenset(e + n_side for e in g if e != 0)


def parallel_connection_self(m):
    """Glue two copies of the matroid along the basepoint 0.

    The result lives on 2N + 1 elements and has rank 2n + 1.  On a subset
    with parts (F, G) the rank is rk(F) + rk(G) minus 1 exactly when both
    parts span the basepoint (which covers the case 0 in F and G).
    """
    if 0 not in m.ground:
        raise MatroidError("basepoint 0 must be a ground set element")
    n_el = 2 * m.n_elements - 1

    def rank(s):
        f, g = split_pair(s, m.n_elements)
        glued = 0 in m.closure(f) and 0 in m.closure(g)
        return m.rank(f) + m.rank(g) - (1 if glued else 0)

    return Matroid(n_el, rank, provenance=f"selfglue({m.provenance})")


def diagonal_matroid(m):
    """Matroid on the doubled ground set whose rank of (F, G) is rk(F u G)."""
    n_el = 2 * m.n_elements - 1

    def rank(s):
        f, g = split_pair(s, m.n_elements)
        return m.rank(f | g)

    return Matroid(n_el, rank, provenance=f"diag({m.provenance})")


# ---------------------------------------------------------------------------
# lattice of flats
# ---------------------------------------------------------------------------

class FlatsLattice:
    """All flats of a matroid with ranks and Mobius values from the bottom."""

    def __init__(self, matroid):
        if matroid.n_elements > 16:
            raise MatroidError("flats enumeration limited to 16 elements")
        self.matroid = matroid
        seen = {matroid.closure(s) for s in subsets_of(matroid.n_elements)}
        self.flats = tuple(sorted(seen, key=lambda f: (len(f), sorted(f))))
        self.rank_of = {f: matroid.rank(f) for f in self.flats}
        by_rank = {}
        for f in self.flats:
            by_rank.setdefault(self.rank_of[f], []).append(f)
        self._by_rank = by_rank
        mob = {}
        for f in self.flats:
            mob[f] = 1 if self.rank_of[f] == 0 else -sum(
                mob[g] for g in self.flats if g < f
            )
        self.mobius = mob
        self._mobius_pair = {}
        if matroid.full_rank >= 1 and sum(mob.values()) != 0:
            raise MatroidError("Mobius values over the lattice do not sum to 0")

    def flats_of_rank(self, r):
        return tuple(self._by_rank.get(r, ()))

    def lower_covers(self, f):
        r = self.rank_of[f]
        return [g for g in self.flats_of_rank(r - 1) if g < f]

    def mobius_pair(self, f, g):
        """Mobius value of the interval [f, g] in the lattice."""
        key = (f, g)
        val = self._mobius_pair.get(key)
        if val is not None:
            return val
        if not f <= g:
            val = 0
        elif f == g:
            val = 1
        else:
            val = -sum(
                self.mobius_pair(f, h) for h in self.flats if f <= h < g
            )
        self._mobius_pair[key] = val
        return val

    def maximal_chains(self):
        """Maximal chains of proper nonempty flats, top rank first."""
        cached = self.matroid._cache.get("maximal_chains")
        if cached is not None:
            return cached
        top_rank = self.matroid.full_rank
        chains = []

        def descend(prefix, current_rank):
            if current_rank == 1:
                chains.append(tuple(prefix))
                return
            candidates = (
                self.flats_of_rank(current_rank - 1)
                if not prefix
                else [g for g in self.flats_of_rank(current_rank - 1) if g < prefix[-1]]
            )
            for g in candidates:
                prefix.append(g)
                descend(prefix, current_rank - 1)
                prefix.pop()

        descend([], top_rank)
        self.matroid._cache["maximal_chains"] = chains
        return chains

    def saturated_chains_below(self, f):
        """Maximal chains of the interval [empty, f], excluding both ends."""
        r = self.rank_of[f]
        chains = []

        def descend(prefix, current, current_rank):
            if current_rank == 1:
                chains.append(tuple(prefix))
                return
            for g in self.flats_of_rank(current_rank - 1):
                if g < current:
                    prefix.append(g)
                    descend(prefix, g, current_rank - 1)
                    prefix.pop()

        if r == 0:
            return [()]
        descend([], f, r)
        return chains


def flats(m):
    """Lattice of flats of m (cached on the matroid instance)."""
    lat = m._cache.get("lattice")
    if lat is None:
        lat = m._cache["lattice"] = FlatsLattice(m)
    return lat


# ---------------------------------------------------------------------------
# beta invariant and connectivity
# ---------------------------------------------------------------------------

def beta_via_basepoint(m, e):
    """Signed Mobius sum over the flats avoiding e; independent of e."""
    lat = flats(m)
    total = sum(lat.mobius[f] for f in lat.flats if e not in f)
    n = m.full_rank - 1
    return (-1) ** n * total


def beta(m):
    """Beta invariant from the Mobius function of the lattice of flats.

    Computes the symmetric rank-weighted sum and cross-checks it against the
    basepoint form; a mismatch means the Mobius values are corrupt.
    """
    if m.n_elements == 0:
        raise MatroidError("beta needs a nonempty ground set")
    cached = m._cache.get("beta")
    if cached is not None:
        return cached
    lat = flats(m)
    rank = m.full_rank
    symmetric = (-1) ** rank * sum(
        lat.mobius[f] * lat.rank_of[f] for f in lat.flats
    )
    asymmetric = beta_via_basepoint(m, 0)
    if symmetric != asymmetric:
        raise MatroidError(
            f"beta mismatch: {symmetric} (rank-weighted) vs {asymmetric} (basepoint)"
        )
    m._cache["beta"] = symmetric
    return symmetric


def is_connected(m):
    """No partition E = A | B with rk(A) + rk(B) = rk(E) and A, B nonempty."""
    n = m.n_elements
    if n <= 1:
        return True
    total = m.full_rank
    rest = sorted(m.ground - {0})
    for mask in range(1 << len(rest)):
        a = frozenset([0]) | frozenset(
            rest[i] for i in range(len(rest)) if mask >> i & 1
        )
        b = m.ground - a
        if b and m.rank(a) + m.rank(b) == total:
            return False
    return True


# ---------------------------------------------------------------------------
# input documents
# ---------------------------------------------------------------------------

def parse_subset_key(key):
    key = key.strip()
    if not key:
        return frozenset()
    return frozenset(int(part) for part in key.split(","))


_UNIFORM_SHORTHAND = re.compile(r"^uniform\((\d+),\s*(\d+)\)$")


def make_matroid(doc):
    """Build a matroid from an input document (see the CLI schema)."""
    if isinstance(doc, str):
        match = _UNIFORM_SHORTHAND.match(doc.strip())
        if not match:
            raise MatroidError(f"unrecognized matroid shorthand: {doc!r}")
        return uniform_matroid(int(match.group(1)), int(match.group(2)))
    kind = doc.get("type")
    if kind == "uniform":
        return uniform_matroid(int(doc["rank"]), int(doc["elements"]))
    if kind == "bases":
        return bases_matroid(int(doc["elements"]), doc["bases"])
    if kind == "graphic":
        return graphic_matroid(int(doc["vertices"]), doc["edges"])
    if kind == "rank_table":
        table = {parse_subset_key(k): v for k, v in doc["ranks"].items()}
        return rank_table_matroid(int(doc["elements"]), table)
    raise MatroidError(f"unknown matroid type: {kind!r}")
