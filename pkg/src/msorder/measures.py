"""Exact structural measures: separator counts, sparseness, minors, twin pairs."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .graph import BudgetExceeded, Graph, bits, component_masks, count_components, mask_of
from .mso.structure import Structure

# Sep enumerates every S with |S| <= k.  The budget caps the number of
# candidate sets; the default equals sum(C(16, i) for i <= 6).
SEP_MAX_SUBSETS = sum(math.comb(16, i) for i in range(7))
SPARSE_MAX_N = 20
MINOR_MAX_N = 12


@dataclass(frozen=True)
class SepWitness:
    k: int
    separator: tuple[int, ...]
    components: tuple[frozenset[int], ...]

    @property
    def value(self) -> int:
        return len(self.components)


def _sep_candidates(n: int, k: int) -> int:
    return sum(math.comb(n, i) for i in range(min(k, n) + 1))


def sep_witness(g: Graph, k: int, max_subsets: int = SEP_MAX_SUBSETS) -> SepWitness:
    """Maximise the number of components of ``g - S`` over ``|S| <= k``.

    Ties go to the lexicographically smallest sorted tuple ``S``.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    total = _sep_candidates(g.n, k)
    if total > max_subsets:
        raise BudgetExceeded(f"sep would enumerate {total} sets (budget {max_subsets})")
    adj, full = g.adj, g.full_mask
    best = -1
    best_s: tuple[int, ...] = ()
    for size in range(min(k, g.n) + 1):
        for s in itertools.combinations(range(g.n), size):
            c = count_components(adj, full & ~mask_of(s))
            if c > best or (c == best and s < best_s):
                best, best_s = c, s
    comps = component_masks(adj, full & ~mask_of(best_s))
    return SepWitness(k, best_s, tuple(frozenset(bits(c)) for c in comps))


def sep(g: Graph, k: int, max_subsets: int = SEP_MAX_SUBSETS) -> int:
    return sep_witness(g, k, max_subsets).value


def sep_closed_form(sizes: Sequence[int], k: int) -> int:
    """Separator count of a complete multipartite graph from its part sizes."""
    m = sorted(sizes, reverse=True)
    if not m:
        return 0
    return 1 if k < sum(m[1:]) else m[0]


@lru_cache(maxsize=256)
def max_density(g: Graph, max_n: int = SPARSE_MAX_N) -> tuple[Fraction, frozenset[int]]:
    """Largest ``|E(X)| / |X|`` over nonempty vertex sets, with a maximiser.

    Among maximisers the one with the smallest bitmask is returned.
    """
    if g.n > max_n:
        raise BudgetExceeded(f"sparseness check enumerates 2^{g.n} sets (cap n <= {max_n})")
    if g.n == 0:
        return Fraction(0), frozenset()
    adj = g.adj
    # inside[X] = number of edges with both ends in X, built from X minus its top vertex.
    inside = [0] * (1 << g.n)
    best, best_mask = Fraction(0), 1
    for mask in range(1, 1 << g.n):
        top = mask.bit_length() - 1
        rest = mask ^ (1 << top)
        e = inside[rest] + (adj[top] & rest).bit_count()
        inside[mask] = e
        # Compare e/|X| > best without building fractions for every set.
        size = mask.bit_count()
        if e * best.denominator > best.numerator * size:
            best, best_mask = Fraction(e, size), mask
    return best, frozenset(bits(best_mask))


def is_r_sparse(g: Graph, r, max_n: int = SPARSE_MAX_N) -> tuple[bool, frozenset[int] | None]:
    """Check ``|E(X)| <= r |X|`` for all nonempty ``X``; on failure return a densest ``X``."""
    r = Fraction(r)
    density, witness = max_density(g, max_n)
    if density <= r:
        return True, None
    return False, witness


# --- minors ---------------------------------------------------------------


def _peel(adj: list[int], alive: int, min_deg: int) -> int:
    """Repeatedly drop vertices of degree below ``min_deg``."""
    changed = True
    while changed:
        changed = False
        for v in bits(alive):
            if (adj[v] & alive).bit_count() < min_deg:
                alive &= ~(1 << v)
                changed = True
    return alive


def _suppress_degree_two(adj: list[int], alive: int) -> int:
    """Contract one edge at each degree-2 vertex (valid when the pattern has min degree 3)."""
    changed = True
    while changed:
        changed = False
        for v in bits(alive):
            nb = adj[v] & alive
            if nb.bit_count() == 2:
                a, b = bits(nb)
                adj[a] = (adj[a] | (1 << b)) & ~(1 << v)
                adj[b] = (adj[b] | (1 << a)) & ~(1 << v)
                alive &= ~(1 << v)
                changed = True
                break
    return alive


def _cyclomatic(adj: Sequence[int], alive: int) -> int:
    m = sum((adj[v] & alive).bit_count() for v in bits(alive)) // 2
    return m - alive.bit_count() + len(component_masks(adj, alive))


MINOR_MAX_PARTITIONS = 2_000_000


def _connected_sets(adj: Sequence[int], v: int, allowed: int):
    """Every connected subset of ``allowed`` containing ``v``, each exactly once."""

    def rec(cur: int, frontier: int, excluded: int):
        yield cur
        cand = frontier & ~excluded
        while cand:
            low = cand & -cand
            cand ^= low
            u = low.bit_length() - 1
            grown = cur | low
            yield from rec(grown, (frontier | adj[u]) & allowed & ~grown, excluded)
            excluded |= low

    yield from rec(1 << v, adj[v] & allowed & ~(1 << v), 0)


def _connected_partitions(adj: Sequence[int], rest: int, blocks: int):
    """Partitions of ``rest`` into exactly ``blocks`` connected blocks."""
    if rest.bit_count() < blocks or len(component_masks(adj, rest)) > blocks:
        return
    if blocks == 1:
        yield [rest]
        return
    v = (rest & -rest).bit_length() - 1
    for block in _connected_sets(adj, v, rest):
        if block == rest:
            continue
        for tail in _connected_partitions(adj, rest & ~block, blocks - 1):
            yield [block] + tail


def _spanning_subgraph(h: Graph, q: Sequence[int]) -> bool:
    """Is there a bijection V(h) -> V(q) mapping edges to edges?"""
    order = sorted(range(h.n), key=lambda x: -h.degree(x))
    qdeg = [row.bit_count() for row in q]
    image = [-1] * h.n
    taken = 0

    def place(i: int) -> bool:
        nonlocal taken
        if i == h.n:
            return True
        x = order[i]
        need = h.degree(x)
        for t in range(len(q)):
            if taken >> t & 1 or qdeg[t] < need:
                continue
            if all(q[t] >> image[y] & 1 for y in bits(h.adj[x]) if image[y] != -1):
                image[x] = t
                taken |= 1 << t
                if place(i + 1):
                    return True
                taken &= ~(1 << t)
                image[x] = -1
        return False

    return place(0)


def _partition_search(adj: Sequence[int], alive: int, h: Graph, budget: int) -> bool:
    """Look for a model of ``h`` whose branch sets cover the host components they touch.

    A vertex outside every branch set but next to one can be absorbed into
    it, so some model covers each host component it meets.  The search is
    therefore over partitions into exactly ``h.n`` connected blocks.
    """
    comps = component_masks(adj, alive)
    if count_components(h.adj, h.full_mask) == 1:
        regions = [c for c in comps if c.bit_count() >= h.n]
    else:
        regions = []
        for r in range(1, min(len(comps), h.n) + 1):
            for combo in itertools.combinations(comps, r):
                m = 0
                for c in combo:
                    m |= c
                if m.bit_count() >= h.n:
                    regions.append(m)
    hdeg = sorted((h.degree(x) for x in range(h.n)), reverse=True)
    seen = 0
    for region in regions:
        for part in _connected_partitions(adj, region, h.n):
            seen += 1
            if seen > budget:
                raise BudgetExceeded(f"minor search examined more than {budget} partitions")
            owner = {}
            for i, block in enumerate(part):
                for v in bits(block):
                    owner[v] = i
            q = [0] * h.n
            for i, block in enumerate(part):
                nb = 0
                for v in bits(block):
                    nb |= adj[v]
                for v in bits(nb & region & ~block):
                    q[i] |= 1 << owner[v]
            qdeg = sorted((row.bit_count() for row in q), reverse=True)
            if any(a < b for a, b in zip(qdeg, hdeg)):
                continue
            if _spanning_subgraph(h, q):
                return True
    return False


def has_minor(g: Graph, h: Graph, max_n: int = MINOR_MAX_N) -> bool:
    """Exact minor test by branch-set search.

    Before searching, vertices that cannot take part in a model are removed:
    low-degree vertices when every pattern vertex has degree at least two,
    degree-2 vertices are suppressed when the pattern has minimum degree
    three.  A cyclomatic-number comparison prunes the rest.
    """
    if g.n > max_n:
        raise BudgetExceeded(f"minor search capped at n <= {max_n} (got {g.n})")
    if h.n == 0:
        return True
    if h.n > g.n or h.m > g.m:
        return False
    adj = list(g.adj)
    alive = g.full_mask
    min_deg_h = min(h.degree(v) for v in range(h.n))
    if min_deg_h >= 2:
        alive = _peel(adj, alive, 2)
    if min_deg_h >= 3:
        alive = _suppress_degree_two(adj, alive)
        alive = _peel(adj, alive, 3)
    adj = [row & alive for row in adj]
    if alive.bit_count() < h.n:
        return False
    if _cyclomatic(adj, alive) < _cyclomatic(h.adj, h.full_mask):
        return False
    return _partition_search(adj, alive, h, MINOR_MAX_PARTITIONS)


# --- twin pairs -------------------------------------------------------------


def _swap_permutation(s: Structure, a: int, b: int) -> list[int] | None:
    perm = list(range(s.size))
    perm[a], perm[b] = b, a
    if s.kind == "ceil" and s.graph is not None:
        g = s.graph
        if not (s.is_vertex(a) and s.is_vertex(b)):
            return None
        for j, (u, v) in enumerate(g.edge_list):
            mapped = tuple(sorted(perm[w] for w in (u, v)))
            target = g.edge_index.get(mapped)
            if target is None:
                return None
            perm[g.n + j] = g.n + target
    return perm


def _is_automorphism(s: Structure, perm: Sequence[int], params: Sequence[frozenset[int]]) -> bool:
    for pairs in s.relations.values():
        for x, y in pairs:
            if (perm[x], perm[y]) not in pairs:
                return False
    for members in list(s.unary.values()) + list(params):
        for x in members:
            if perm[x] not in members:
                return False
    return True


def twin_pair_under_params(
    s: Structure, params: Iterable[Iterable[int | str]] = ()
) -> tuple[int, int] | None:
    """Find two elements whose swap is an automorphism fixing every parameter set.

    Only neighbourhood twins are tried.  In a ``ceil`` structure a vertex swap
    carries the incident edge elements along.  ``None`` does not prove
    rigidity.
    """
    sets = [s.elements(p) for p in params]
    g = s.graph
    if s.kind in ("floor", "ceil") and g is not None:
        candidates = [
            (a, b)
            for a in range(g.n)
            for b in range(a + 1, g.n)
            if g.adj[a] & ~(1 << b) == g.adj[b] & ~(1 << a)
        ]
    else:
        candidates = list(itertools.combinations(range(s.size), 2))
    for a, b in candidates:
        perm = _swap_permutation(s, a, b)
        if perm is not None and _is_automorphism(s, perm, sets):
            return a, b
    return None


def swap_is_automorphism(s: Structure, pair: tuple[int, int], params: Iterable[Iterable[int | str]] = ()) -> bool:
    """Directly re-check a reported twin pair."""
    perm = _swap_permutation(s, *pair)
    return perm is not None and _is_automorphism(s, perm, [s.elements(p) for p in params])
