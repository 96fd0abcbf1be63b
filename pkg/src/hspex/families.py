"""Forbidden-subgraph families: membership, saturation, and exact extremal sweeps.

Membership is non-induced by default (a family member contains no forbidden
graph as a subgraph); an induced mode exists for counterexample fixtures.
Extremal computations enumerate labeled graphs on exactly n vertices by a
DFS over edge subsets with incremental forbidden-copy pruning, then
deduplicate up to isomorphism.  Everything is deterministic.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterator, Optional, Union

from .canonical import canonical_key, refinement_signature
from .embedding import (
    contains_induced_subgraph,
    contains_subgraph,
    creates_copy,
    labeled_copy_edge_sets,
    _search,
)
from .errors import NotMember, TooLarge, UniformityMismatch
from .hypergraph import Hypergraph
from .spectral import SolverConfig, SpectralSolution, solve_rho_p

ENUM_GUARD_BITS = 28       # candidate-edge cap for the extremal sweeps
STREAM_GUARD_BITS = 24     # stricter cap for streaming every member
FULL_MODE_GUARD_BITS = 20  # cap when materializing all members (--full audits)
VALUE_COLLAPSE = 1e-9      # spectral argmax graphs within this of the best


@dataclass(frozen=True)
class ForbiddenFamily:
    """F(H): graphs containing no forbidden graph (induced copies optional)."""

    forbidden: tuple[Hypergraph, ...]
    induced: bool = False

    def __post_init__(self):
        if not self.forbidden:
            raise ValueError("need at least one forbidden graph")
        rs = {h.r for h in self.forbidden}
        if len(rs) != 1:
            raise UniformityMismatch(f"mixed uniformities {sorted(rs)}")

    @property
    def r(self) -> int:
        return self.forbidden[0].r


@dataclass(frozen=True)
class PredicateFamily:
    """Membership by arbitrary predicate; used for closure-style fixtures."""

    r: int
    predicate: Callable[[Hypergraph], bool]
    name: str = "predicate"


Family = Union[ForbiddenFamily, PredicateFamily]


def is_member(fam: Family, g: Hypergraph) -> bool:
    """True iff g belongs to the family (uniformities must match)."""
    if g.r != fam.r:
        raise UniformityMismatch(f"graph r={g.r}, family r={fam.r}")
    if isinstance(fam, PredicateFamily):
        return bool(fam.predicate(g))
    check = contains_induced_subgraph if fam.induced else contains_subgraph
    return not any(check(g, h)[0] for h in fam.forbidden)


def _require_member(fam: Family, g: Hypergraph) -> None:
    if not is_member(fam, g):
        raise NotMember("graph is not in the family")


def _addition_violates(fam: Family, g: Hypergraph, e: tuple[int, ...]) -> bool:
    """Would g + e leave the family?  Incremental for plain forbidden families."""
    if isinstance(fam, ForbiddenFamily) and not fam.induced:
        return any(creates_copy(g, e, h) for h in fam.forbidden)
    return not is_member(fam, g.add_edge(e))


def is_edge_maximal(fam: Family, g: Hypergraph) -> tuple[bool, Optional[tuple[int, ...]]]:
    """(maximal?, first augmenting non-edge in lex order if not)."""
    _require_member(fam, g)
    present = set(g.edges)
    for e in combinations(range(g.n), g.r):
        if e in present:
            continue
        if not _addition_violates(fam, g, e):
            return (False, e)
    return (True, None)


def saturate(
    fam: Family, g0: Hypergraph, order: str = "lex", seed: Optional[int] = None
) -> Hypergraph:
    """Greedily add candidate edges that keep membership; result is edge-maximal.

    order="lex" walks candidates lexicographically; order="random" walks a
    seeded shuffle of the same list.  Membership is monotone under edge
    addition for plain forbidden families, so one pass suffices.
    """
    _require_member(fam, g0)
    candidates = [e for e in combinations(range(g0.n), g0.r) if e not in set(g0.edges)]
    if order == "random":
        random.Random(seed).shuffle(candidates)
    elif order != "lex":
        raise ValueError(f"unknown order {order!r}")
    monotone = isinstance(fam, ForbiddenFamily) and not fam.induced
    g = g0
    while True:
        added = False
        present = set(g.edges)
        for e in candidates:
            if e not in present and not _addition_violates(fam, g, e):
                g = g.add_edge(e)
                added = True
        if monotone or not added:
            return g


def check_clonal_on(
    fam: Family, g: Hypergraph
) -> tuple[bool, Optional[tuple[int, int]]]:
    """Is every cloning of g still a member?  Returns the first violating (u, v)."""
    _require_member(fam, g)
    for u in range(g.n):
        for v in range(g.n):
            if u == v:
                continue
            if not is_member(fam, g.clone_vertex(u, v)):
                return (False, (u, v))
    return (True, None)


def check_hereditary_witness(fam: Family, g: Hypergraph, subset) -> bool:
    """Membership of the induced subgraph on `subset` (g must be a member)."""
    _require_member(fam, g)
    return is_member(fam, g.induced_subgraph(subset))


def check_multiplicative_witness(fam: Family, g: Hypergraph, t) -> bool:
    """Membership of the blow-up g(t) (g must be a member)."""
    _require_member(fam, g)
    return is_member(fam, g.blow_up(t))


# --- labeled enumeration sweep --------------------------------------------------


@dataclass
class _SweepData:
    count: int
    max_edges: int
    pi_argmax_masks: tuple[int, ...]
    maximal_masks: tuple[int, ...]


_sweep_cache: dict[tuple, _SweepData] = {}


def _family_signature(fam: ForbiddenFamily) -> tuple:
    return tuple(sorted(canonical_key(h) for h in fam.forbidden)) + (fam.induced,)


def _check_sweepable(fam: Family) -> ForbiddenFamily:
    if not isinstance(fam, ForbiddenFamily) or fam.induced:
        raise ValueError(
            "enumeration requires a plain (non-induced) forbidden-subgraph family"
        )
    return fam


def _candidate_edges(n: int, r: int) -> list[tuple[int, ...]]:
    return list(combinations(range(n), r))


def _copy_masks(fam: ForbiddenFamily, n: int, eindex: dict) -> list[int]:
    masks: set[int] = set()
    for h in fam.forbidden:
        for eset in labeled_copy_edge_sets(h, n):
            masks.add(sum(1 << eindex[e] for e in eset))
    return sorted(masks)


def _sweep(fam: ForbiddenFamily, n: int) -> _SweepData:
    """DFS over member edge-subsets with incremental copy blocking.

    Tracks, in one pass: member count, maximum edge count with all argmax
    masks, and every edge-maximal member (addable set empty).
    """
    key = _family_signature(fam) + (n,)
    hit = _sweep_cache.get(key)
    if hit is not None:
        return hit
    cand = _candidate_edges(n, fam.r)
    m_all = len(cand)
    eindex = {e: i for i, e in enumerate(cand)}
    copies = _copy_masks(fam, n, eindex)
    if any(c == 0 for c in copies):
        data = _SweepData(0, 0, (), ())  # an edgeless forbidden graph fits everywhere
        _sweep_cache[key] = data
        return data
    completions: list[list[int]] = [[] for _ in range(m_all)]
    for c in copies:
        bits = c
        while bits:
            low = bits & -bits
            bits ^= low
            completions[low.bit_length() - 1].append(c & ~low)
    root_addable = 0
    for j in range(m_all):
        if all(comp != 0 for comp in completions[j]):
            root_addable |= 1 << j

    count = 0
    best = 0
    argmax: list[int] = []
    maximal: list[int] = []

    def dfs(mask: int, addable: int, start: int, popcnt: int) -> None:
        nonlocal count, best
        count += 1
        if popcnt > best:
            best = popcnt
            argmax.clear()
        if popcnt == best:
            argmax.append(mask)
        if addable == 0:
            maximal.append(mask)
        rest = addable >> start << start
        while rest:
            low = rest & -rest
            rest ^= low
            j = low.bit_length() - 1
            new_mask = mask | low
            child = addable & ~low
            for comp in completions[j]:
                gap = comp & ~new_mask
                if gap and gap & (gap - 1) == 0:
                    child &= ~gap
            dfs(new_mask, child, j + 1, popcnt + 1)

    dfs(0, root_addable, 0, 0)
    data = _SweepData(count, best, tuple(argmax), tuple(maximal))
    _sweep_cache[key] = data
    return data


def _mask_to_graph(mask: int, cand: list[tuple[int, ...]], n: int, r: int) -> Hypergraph:
    edges = [cand[i] for i in range(len(cand)) if mask >> i & 1]
    return Hypergraph(n, r, tuple(edges))


def isomorphic(g: Hypergraph, h: Hypergraph) -> bool:
    """Exact isomorphism test: invariants first, then backtracking embedding."""
    if (g.n, g.r, g.m) != (h.n, h.r, h.m):
        return False
    if sorted(g.degrees()) != sorted(h.degrees()):
        return False
    if refinement_signature(g) != refinement_signature(h):
        return False
    return _search(h, g, set(h.edges)) is not None


def _dedup_isomorphs(graphs: list[Hypergraph]) -> list[Hypergraph]:
    """One representative per isomorphism class, preserving first-seen order.

    Graphs are bucketed by refinement signature (an isomorphism invariant);
    within a bucket an exact backtracking embedding settles equality.
    """
    buckets: dict[tuple, list[Hypergraph]] = {}
    out: list[Hypergraph] = []
    for g in graphs:
        sig = refinement_signature(g)
        reps = buckets.setdefault(sig, [])
        g_edges = set(g.edges)
        hit = False
        for rep in reps:
            if _search(g, rep, g_edges) is not None:
                hit = True
                break
        if not hit:
            reps.append(g)
            out.append(g)
    return out


def _guard(n: int, r: int, limit: int) -> None:
    from math import comb

    if comb(n, r) > limit:
        raise TooLarge(
            f"C({n},{r}) = {comb(n, r)} candidate edges exceeds the guard ({limit}); "
            "reduce n or r"
        )


def _iter_member_masks(fam: ForbiddenFamily, n: int) -> Iterator[int]:
    """Lazily walk every member edge-mask (lex-increasing DFS)."""
    cand = _candidate_edges(n, fam.r)
    eindex = {e: i for i, e in enumerate(cand)}
    copies = _copy_masks(fam, n, eindex)
    if any(c == 0 for c in copies):
        return

    def gen(mask: int, start: int) -> Iterator[int]:
        yield mask
        for j in range(start, len(cand)):
            bit = 1 << j
            new = mask | bit
            if any(c & ~new == 0 for c in copies if c & bit):
                continue
            yield from gen(new, j + 1)

    yield from gen(0, 0)


def enumerate_family(fam: Family, n: int) -> Iterator[Hypergraph]:
    """Stream one representative per isomorphism class of members on n vertices.

    Representatives are deduplicated by canonical key and yielded in the
    order the sweep first reaches them.
    """
    ffam = _check_sweepable(fam)
    _guard(n, ffam.r, STREAM_GUARD_BITS)
    cand = _candidate_edges(n, ffam.r)
    seen: set[bytes] = set()
    for mask in _iter_member_masks(ffam, n):
        g = _mask_to_graph(mask, cand, n, ffam.r)
        key = canonical_key(g)
        if key not in seen:
            seen.add(key)
            yield g


@dataclass
class ExtremalResult:
    """Extremal value over members on exactly n labeled vertices, with argmaxes."""

    n: int
    value: float
    argmax: tuple[Hypergraph, ...]
    count_members: int
    p: Optional[float] = None
    solutions: tuple[SpectralSolution, ...] = ()
    non_converged: int = 0
    classes_solved: int = 0
    elapsed_ms: float = 0.0

    def to_json_dict(self, timings: bool = False) -> dict:
        from .hypergraph import serialize

        out: dict = {"n": self.n}
        if self.p is not None:
            out["p"] = self.p
        out["value"] = self.value
        out["argmax"] = [serialize(g) for g in self.argmax]
        out["count_members"] = self.count_members
        out["elapsed_ms"] = self.elapsed_ms if timings else 0.0
        return out


def extremal_pi(fam: Family, n: int) -> ExtremalResult:
    """Maximum edge count over members on exactly n labeled vertices."""
    ffam = _check_sweepable(fam)
    _guard(n, ffam.r, ENUM_GUARD_BITS)
    t0 = time.perf_counter()
    cand = _candidate_edges(n, ffam.r)
    data = _sweep(ffam, n)
    if data.count == 0:
        raise TooLarge("family has no members at this n (edgeless forbidden graph)")
    graphs = [_mask_to_graph(m, cand, n, ffam.r) for m in data.pi_argmax_masks]
    reps = _dedup_isomorphs(graphs)
    return ExtremalResult(
        n=n,
        value=float(data.max_edges),
        argmax=tuple(reps),
        count_members=data.count,
        elapsed_ms=(time.perf_counter() - t0) * 1000.0,
    )


def extremal_lambda_p(
    fam: Family,
    n: int,
    p: float,
    config: Optional[SolverConfig] = None,
    full: bool = False,
) -> ExtremalResult:
    """Maximum p-spectral radius over members on exactly n labeled vertices.

    By default only edge-maximal members are solved (a spectral-extremal
    member must be edge-maximal); ``full=True`` audits every member instead.
    One representative per isomorphism class is solved.
    """
    ffam = _check_sweepable(fam)
    _guard(n, ffam.r, FULL_MODE_GUARD_BITS if full else ENUM_GUARD_BITS)
    t0 = time.perf_counter()
    cand = _candidate_edges(n, ffam.r)
    data = _sweep(ffam, n)
    if data.count == 0:
        raise TooLarge("family has no members at this n (edgeless forbidden graph)")
    if full:
        graphs = [
            _mask_to_graph(m, cand, n, ffam.r) for m in _iter_member_masks(ffam, n)
        ]
        reps = _dedup_isomorphs(graphs)
    else:
        reps = _maximal_representatives(ffam, n, data, cand)

    cfg = config or SolverConfig()
    solved: list[tuple[float, Hypergraph, SpectralSolution]] = []
    non_converged = 0
    for g in reps:
        sol = solve_rho_p(g, p, cfg)
        if not sol.converged:
            non_converged += 1
        solved.append((sol.rho, g, sol))
    best = max(s[0] for s in solved)
    winners = [(g, sol) for rho, g, sol in solved if rho >= best - VALUE_COLLAPSE]
    return ExtremalResult(
        n=n,
        value=best,
        argmax=tuple(g for g, _ in winners),
        count_members=data.count,
        p=p,
        solutions=tuple(sol for _, sol in winners),
        non_converged=non_converged,
        classes_solved=len(reps),
        elapsed_ms=(time.perf_counter() - t0) * 1000.0,
    )


_maximal_reps_cache: dict[tuple, tuple[Hypergraph, ...]] = {}


def _maximal_representatives(
    fam: ForbiddenFamily, n: int, data: _SweepData, cand: list[tuple[int, ...]]
) -> list[Hypergraph]:
    key = _family_signature(fam) + (n,)
    hit = _maximal_reps_cache.get(key)
    if hit is None:
        graphs = [_mask_to_graph(m, cand, n, fam.r) for m in data.maximal_masks]
        hit = tuple(_dedup_isomorphs(graphs))
        _maximal_reps_cache[key] = hit
    return list(hit)
