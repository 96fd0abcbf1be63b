"""Subgraph containment for uniform hypergraphs by backtracking search.

The search maps pattern vertices in descending pattern-degree order (ties
by id), trying host candidates in ascending id order with degree pruning,
so the first witness found is deterministic ("lexicographically first"
under this fixed order).
"""

from __future__ import annotations

from itertools import combinations, permutations
from typing import Optional

from .errors import UniformityMismatch
from .hypergraph import Hypergraph

Embedding = tuple[int, ...]  # phi[pattern vertex] = host vertex


def _search(
    host: Hypergraph,
    pattern: Hypergraph,
    host_edges: set[tuple[int, ...]],
    required_edge: Optional[tuple[int, ...]] = None,
) -> Optional[Embedding]:
    """Injective edge-preserving map of pattern into host, or None.

    With ``required_edge`` set, only embeddings whose image uses that host
    edge are considered (the incremental check used by saturation).
    """
    hn, pn = host.n, pattern.n
    if pn > hn or pattern.m > host.m:
        return None
    pdeg = pattern.degrees()
    hdeg = host.degrees()
    order = sorted(range(pn), key=lambda v: (-pdeg[v], v))
    pos = {v: i for i, v in enumerate(order)}
    # pattern edges become checkable once their last vertex (in `order`) is placed
    edges_at: list[list[tuple[int, ...]]] = [[] for _ in range(pn)]
    for e in pattern.edges:
        last = max(e, key=lambda v: pos[v])
        edges_at[pos[last]].append(e)

    phi = [-1] * pn
    used = [False] * hn

    def feasible(depth: int) -> bool:
        for e in edges_at[depth]:
            if tuple(sorted(phi[v] for v in e)) not in host_edges:
                return False
        return True

    def covers_required(depth: int) -> bool:
        if required_edge is None:
            return True
        # prune: once all required-edge vertices could still be hit
        placed = {phi[order[i]] for i in range(depth + 1)}
        missing = [v for v in required_edge if v not in placed]
        return len(missing) <= pn - (depth + 1)

    def extend(depth: int) -> bool:
        if depth == pn:
            if required_edge is not None:
                image_edges = {tuple(sorted(phi[v] for v in e)) for e in pattern.edges}
                return required_edge in image_edges
            return True
        v = order[depth]
        for w in range(hn):
            if used[w] or hdeg[w] < pdeg[v]:
                continue
            phi[v] = w
            used[w] = True
            if feasible(depth) and covers_required(depth) and extend(depth + 1):
                return True
            used[w] = False
            phi[v] = -1
        return False

    if extend(0):
        return tuple(phi)
    return None


def contains_subgraph(
    host: Hypergraph, pattern: Hypergraph
) -> tuple[bool, Optional[Embedding]]:
    """(found, witness): injective map sending every pattern edge to a host edge."""
    if host.r != pattern.r:
        raise UniformityMismatch(f"r={host.r} vs r={pattern.r}")
    phi = _search(host, pattern, set(host.edges))
    return (phi is not None, phi)


def creates_copy(host: Hypergraph, new_edge: tuple[int, ...], pattern: Hypergraph) -> bool:
    """Would adding ``new_edge`` to host create a pattern copy through it?

    Assumes host itself is pattern-free, so any copy in host+e must use e.
    """
    if host.r != pattern.r:
        raise UniformityMismatch(f"r={host.r} vs r={pattern.r}")
    key = tuple(sorted(new_edge))
    augmented = host.add_edge(key)
    host_edges = set(augmented.edges)
    return _search(augmented, pattern, host_edges, required_edge=key) is not None


def contains_induced_subgraph(
    host: Hypergraph, pattern: Hypergraph
) -> tuple[bool, Optional[Embedding]]:
    """Induced containment: the image's induced edge set equals the mapped pattern edges."""
    if host.r != pattern.r:
        raise UniformityMismatch(f"r={host.r} vs r={pattern.r}")
    if pattern.n > host.n:
        return (False, None)
    host_edges = set(host.edges)
    pattern_edges = set(pattern.edges)
    # backtracking over ordered injections with incremental induced checks
    order = sorted(range(pattern.n), key=lambda v: (-pattern.degree(v), v))
    phi = [-1] * pattern.n
    used = [False] * host.n

    def ok(depth: int) -> bool:
        vnew = order[depth]
        placed = [order[i] for i in range(depth + 1)]
        if len(placed) < pattern.r:
            return True
        others = sorted(v for v in placed if v != vnew)
        for rest in combinations(others, pattern.r - 1):
            sub = tuple(sorted(rest + (vnew,)))
            image = tuple(sorted(phi[v] for v in sub))
            if (sub in pattern_edges) != (image in host_edges):
                return False
        return True

    def extend(depth: int) -> bool:
        if depth == pattern.n:
            return True
        v = order[depth]
        for w in range(host.n):
            if used[w]:
                continue
            phi[v] = w
            used[w] = True
            if ok(depth) and extend(depth + 1):
                return True
            used[w] = False
            phi[v] = -1
        return False

    if extend(0):
        return (True, tuple(phi))
    return (False, None)


def labeled_copy_edge_sets(
    pattern: Hypergraph, n: int
) -> list[frozenset[tuple[int, ...]]]:
    """All distinct edge-set images of pattern under injections into [0, n).

    Used to precompile forbidden families for the enumeration sweep.  An
    injection must place every pattern vertex (isolated ones included), so
    patterns larger than n yield no copies.
    """
    if pattern.n > n:
        return []
    out: set[frozenset[tuple[int, ...]]] = set()
    for image in permutations(range(n), pattern.n):
        out.add(
            frozenset(tuple(sorted(image[v] for v in e)) for e in pattern.edges)
        )
    return sorted(out, key=lambda s: sorted(s))
