"""Decision procedures with certificates: k-tightness, k-bridges, lambda-plateaus.

All searches are exhaustive over vertex subsets in a fixed order
(increasing size, then lexicographic), so the first witness found is the
smallest and certificates are reproducible.  These procedures are
exponential by nature; a warning (not an error) fires past n = 24.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .errors import (
    BadK,
    EmptyGraph,
    NoSuchEdge,
    TargetMismatch,
    TrivialPartition,
)
from .hypergraph import Hypergraph

DESK_SCALE_N = 24

Partition = tuple[int, ...]


# --- integer partitions -------------------------------------------------------


def validate_partition(parts, r: Optional[int] = None) -> Partition:
    """Normalize-check a partition: positive nonincreasing parts (of r if given)."""
    p = tuple(int(x) for x in parts)
    if not p or any(x < 1 for x in p):
        raise TargetMismatch(f"{p} has non-positive parts")
    if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
        raise TargetMismatch(f"{p} is not nonincreasing")
    if r is not None and sum(p) != r:
        raise TargetMismatch(f"{p} sums to {sum(p)}, expected {r}")
    return p


def partitions_of(r: int, min_largest: int = 1, max_largest: Optional[int] = None) -> list[Partition]:
    """All partitions of r with largest part in [min_largest, max_largest],
    in descending lexicographic order."""
    if max_largest is None:
        max_largest = r
    out: list[Partition] = []

    def rec(remaining: int, cap: int, prefix: tuple[int, ...]):
        if remaining == 0:
            out.append(prefix)
            return
        for part in range(min(cap, remaining), 0, -1):
            rec(remaining - part, part, prefix + (part,))

    for first in range(min(r, max_largest), max(min_largest, 1) - 1, -1):
        rec(r - first, first, (first,))
    return out


def refines(mu, lam) -> bool:
    """True iff the parts of lam can be subdivided into the parts of mu."""
    mu = validate_partition(mu)
    lam = validate_partition(lam)
    if sum(mu) != sum(lam):
        raise TargetMismatch(f"{mu} and {lam} partition different integers")
    return _fill_bins(sorted(mu, reverse=True), list(lam))


def _fill_bins(items: list[int], capacities: list[int]) -> bool:
    """Backtracking: place every item so each bin is filled exactly."""
    if not items:
        return all(c == 0 for c in capacities)
    head, rest = items[0], items[1:]
    tried = set()
    for i, cap in enumerate(capacities):
        if cap >= head and cap not in tried:
            tried.add(cap)  # bins with equal remaining capacity are symmetric
            capacities[i] -= head
            if _fill_bins(rest, capacities):
                capacities[i] += head
                return True
            capacities[i] += head
    return False


# --- certificates ---------------------------------------------------------------


@dataclass(frozen=True)
class TightnessCertificate:
    """result=True means k-tight; otherwise `witness` is a violating vertex set."""

    result: bool
    k: int
    witness: Optional[tuple[int, ...]] = None

    def to_json_dict(self) -> dict:
        return {
            "property": "k-tight",
            "k": self.k,
            "result": self.result,
            "witness": list(self.witness) if self.witness is not None else None,
        }


@dataclass(frozen=True)
class BridgeCertificate:
    """result=True means the edge is a k-bridge; witness is the bipartition (A, B)."""

    result: bool
    k: int
    edge: tuple[int, ...]
    witness_a: Optional[tuple[int, ...]] = None
    witness_b: Optional[tuple[int, ...]] = None

    def to_json_dict(self) -> dict:
        return {
            "property": "k-bridge",
            "k": self.k,
            "edge": list(self.edge),
            "result": self.result,
            "A": list(self.witness_a) if self.witness_a is not None else None,
            "B": list(self.witness_b) if self.witness_b is not None else None,
        }


def _check_k(g: Hypergraph, k: int) -> None:
    if not 1 <= k <= g.r - 1:
        raise BadK(f"k={k} outside [1, {g.r - 1}]")


def _warn_scale(g: Hypergraph) -> None:
    if g.n > DESK_SCALE_N:
        warnings.warn(f"exhaustive subset search on n={g.n} > {DESK_SCALE_N} vertices")


def _edge_masks(g: Hypergraph) -> list[int]:
    return [sum(1 << v for v in e) for e in g.edges]


def tightness_violation_holds(g: Hypergraph, k: int, subset) -> bool:
    """Raw-definition recheck: does this proper edge-containing subset witness
    failure of k-tightness (no edge meets it in k..r-1 vertices)?"""
    u = set(int(v) for v in subset)
    if not u or len(u) >= g.n:
        return False
    umask = sum(1 << v for v in u)
    masks = _edge_masks(g)
    if not any(em & umask == em for em in masks):
        return False  # does not induce an edge
    for em in masks:
        inter = bin(em & umask).count("1")
        if k <= inter <= g.r - 1:
            return False
    return True


def is_k_tight(g: Hypergraph, k: int) -> TightnessCertificate:
    """Exhaustive k-tightness decision.

    The graph is k-tight iff every proper vertex subset that contains an
    edge is met by some edge in between k and r-1 vertices.  The first
    failing subset (by size, then lexicographic order) is the witness.
    """
    if g.m == 0:
        raise EmptyGraph("k-tightness is defined for graphs with an edge")
    _check_k(g, k)
    _warn_scale(g)
    masks = _edge_masks(g)
    for size in range(g.r, g.n):
        for combo in combinations(range(g.n), size):
            umask = sum(1 << v for v in combo)
            if not any(em & umask == em for em in masks):
                continue
            hit = False
            for em in masks:
                inter = bin(em & umask).count("1")
                if k <= inter <= g.r - 1:
                    hit = True
                    break
            if not hit:
                return TightnessCertificate(False, k, combo)
    return TightnessCertificate(True, k)


def is_k_bridge(g: Hypergraph, e, k: int) -> BridgeCertificate:
    """Is e the unique edge with >= k vertices in A and >= 1 in B, for some
    bipartition (A, B)?  Exhaustive over bipartitions; the first valid (A, B)
    in subset order is the witness."""
    key = tuple(sorted(int(v) for v in e))
    if key not in set(g.edges):
        raise NoSuchEdge(f"{key} not an edge")
    _check_k(g, k)
    _warn_scale(g)
    masks = _edge_masks(g)
    ekey_mask = sum(1 << v for v in key)
    full = (1 << g.n) - 1
    for size in range(1, g.n):
        for combo in combinations(range(g.n), size):
            amask = sum(1 << v for v in combo)
            bmask = full & ~amask
            if bin(ekey_mask & amask).count("1") < k or ekey_mask & bmask == 0:
                continue
            unique = True
            for em in masks:
                if em == ekey_mask:
                    continue
                if bin(em & amask).count("1") >= k and em & bmask:
                    unique = False
                    break
            if unique:
                b = tuple(v for v in range(g.n) if bmask >> v & 1)
                return BridgeCertificate(True, k, key, combo, b)
    return BridgeCertificate(False, k, key)


def find_k_bridges(g: Hypergraph, k: int) -> list[BridgeCertificate]:
    """Certificates for every edge that is a k-bridge."""
    out = []
    for e in g.edges:
        cert = is_k_bridge(g, e, k)
        if cert.result:
            out.append(cert)
    return out


# --- plateaus -------------------------------------------------------------------


def is_lambda_plateau(
    h: Hypergraph, e, lam
) -> tuple[bool, Optional[list[tuple[tuple[int, ...], ...]]]]:
    """Is e a lambda-plateau: can the components of H - e (vertices kept) be
    grouped so the groups meet e in exactly the parts of lam?

    Returns (result, grouping) where grouping lists, per part of lam, the
    component vertex sets assigned to it.  Components disjoint from e may
    join any group.
    """
    lam = validate_partition(lam, r=h.r)
    if len(lam) < 2:
        raise TrivialPartition("a plateau requires a nontrivial partition")
    key = tuple(sorted(int(v) for v in e))
    if key not in set(h.edges):
        raise NoSuchEdge(f"{key} not an edge")
    comps = h.remove_edge(key).components()
    eset = set(key)
    weights = [len(eset.intersection(c)) for c in comps]
    positive = [(w, c) for w, c in zip(weights, comps) if w > 0]
    zero = [c for w, c in zip(weights, comps) if w == 0]

    bins = list(lam)
    assignment: list[list[tuple[int, ...]]] = [[] for _ in lam]

    def place(i: int) -> bool:
        if i == len(positive):
            return all(b == 0 for b in bins)
        w, comp = positive[i]
        tried = set()
        for j in range(len(bins)):
            if bins[j] >= w and bins[j] not in tried:
                tried.add(bins[j])
                bins[j] -= w
                assignment[j].append(comp)
                if place(i + 1):
                    bins[j] += w
                    return True
                assignment[j].pop()
                bins[j] += w
        return False

    if not place(0):
        return (False, None)
    if zero:
        assignment[0].extend(zero)
    return (True, [tuple(group) for group in assignment])


def find_plateaus(h: Hypergraph, lam) -> list[tuple[int, ...]]:
    """Edges of h that are lambda-plateaus, in stored edge order."""
    return [e for e in h.edges if is_lambda_plateau(h, e, lam)[0]]


def is_k_plateaued(h: Hypergraph, k: int) -> tuple[bool, list[Partition]]:
    """h is k-plateaued iff every partition of r with largest part in
    [k, r-1] has a plateau edge; returns the missing partitions otherwise."""
    _check_k(h, k)
    missing = [
        lam
        for lam in partitions_of(h.r, k, h.r - 1)
        if not find_plateaus(h, lam)
    ]
    return (not missing, missing)
