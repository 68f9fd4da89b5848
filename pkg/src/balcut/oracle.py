"""Brute-force reference solvers.

These are the ground truth the real solvers are tested against.  They favour
obviousness over speed: plain subset enumeration with bitmask vertex sets,
hard size guards that raise instead of running forever, and fixed
lexicographic tie-breaks so results are reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Union

from .graph import Bipartition, DPartition, Graph, Separation, connected_components, cut_size


@dataclass(frozen=True)
class OracleResult:
    """Outcome of a brute-force run.

    optimum is None when no candidate satisfies the constraints (infeasible);
    explored counts the candidates examined before returning.
    """

    optimum: Optional[int]
    witness: Optional[Union[Bipartition, Separation, DPartition]]
    explored: int

    @property
    def feasible(self) -> bool:
        return self.optimum is not None


class OracleSizeError(ValueError):
    """Instance exceeds the enumeration guard of a brute-force solver."""


def _adj_masks(g: Graph):
    # bit i-1 set <=> vertex i; index 0 unused
    masks = [0] * (g.n + 1)
    for u, v in g.edges():
        masks[u] |= 1 << (v - 1)
        masks[v] |= 1 << (u - 1)
    return masks


def brute_bisection(g: Graph, edge_weighted: bool = False) -> OracleResult:
    """Minimum cut over all bipartitions with both sides of size <= ceil(n/2).

    Enumerates every A of size floor(n/2); for even n only sets containing
    vertex 1 are tried, which picks a canonical representative of each
    unordered bipartition.  Ties go to the first A in lexicographic order.
    """
    n = g.n
    if n > 24:
        raise OracleSizeError(f"brute_bisection handles n <= 24, got {n}")
    if n == 0:
        return OracleResult(0, Bipartition((), ()), 1)

    half = n // 2
    verts = list(g.vertices)
    adj = _adj_masks(g)
    unit = g.is_unit_edge_weighted() or not edge_weighted
    edges = g.edges()

    best = None
    best_a = None
    explored = 0
    for combo in combinations(verts, half):
        if n % 2 == 0 and half > 0 and combo[0] != 1:
            continue
        explored += 1
        if unit:
            amask = 0
            for v in combo:
                amask |= 1 << (v - 1)
            cut = 0
            for v in combo:
                cut += (adj[v] & ~amask).bit_count()
        else:
            aset = set(combo)
            cut = sum(g.edge_weight(u, v) for u, v in edges if (u in aset) != (v in aset))
        if best is None or cut < best:
            best = cut
            best_a = combo
    a = set(best_a)
    return OracleResult(best, Bipartition(a, set(verts) - a), explored)


def brute_vertex_bisection(g: Graph, k: int, c: Optional[int] = None) -> OracleResult:
    """Smallest balanced separator of size <= k, or infeasible.

    A candidate is a separation (S, A, B) with ||A| - |B|| <= 1 where A and B
    are unions of connected components of G - S.  With c given, G - S must
    have exactly c components.  S candidates are tried by increasing size,
    lexicographically within a size, so the witness S is the lexicographically
    least among the smallest; the component-to-side assignment is the first
    feasible one in increasing bitmask order over components.
    """
    if g.n > 18:
        raise OracleSizeError(f"brute_vertex_bisection handles n <= 18, got {g.n}")
    if k > 4:
        raise OracleSizeError(f"brute_vertex_bisection handles k <= 4, got {k}")
    if k < 0:
        raise ValueError("k must be non-negative")

    verts = list(g.vertices)
    explored = 0
    for size in range(0, min(k, g.n) + 1):
        for s_combo in combinations(verts, size):
            explored += 1
            s = frozenset(s_combo)
            comps = connected_components(g, within=(v for v in verts if v not in s))
            if c is not None and len(comps) != c:
                continue
            rest = g.n - size
            sizes = [len(comp) for comp in comps]
            # first component subset (by bitmask value) whose total lands a
            # balanced split of the remaining vertices
            for mask in range(1 << len(comps)):
                total = sum(sizes[i] for i in range(len(comps)) if mask >> i & 1)
                if abs(total - (rest - total)) <= 1:
                    a: set = set()
                    for i in range(len(comps)):
                        if mask >> i & 1:
                            a |= comps[i]
                    b = set(verts) - s - a
                    return OracleResult(size, Separation(s, a, b), explored)
    return OracleResult(None, None, explored)


def _restricted_growth_strings(n: int, max_groups: int, cap: int):
    """Yield assignments of n items to at most max_groups groups, each group
    holding at most cap items, in restricted-growth-string order."""
    assign = [0] * n
    counts = [0] * max_groups

    def rec(i: int, used: int):
        if i == n:
            yield tuple(assign)
            return
        top = min(used + 1, max_groups)
        for grp in range(top):
            if counts[grp] == cap:
                continue
            assign[i] = grp
            counts[grp] += 1
            yield from rec(i + 1, max(used, grp + 1))
            counts[grp] -= 1

    yield from rec(0, 0)


def brute_balanced_partition(g: Graph, d: int) -> OracleResult:
    """Minimum cut over all partitions into d parts of size <= ceil(n/d)."""
    if g.n > 12:
        raise OracleSizeError(f"brute_balanced_partition handles n <= 12, got {g.n}")
    if d < 1:
        raise ValueError("d must be at least 1")
    n = g.n
    if n == 0:
        return OracleResult(0, DPartition([frozenset()] * d), 1)
    cap = -(-n // d)
    verts = list(g.vertices)

    best = None
    best_assign = None
    explored = 0
    for assign in _restricted_growth_strings(n, d, cap):
        explored += 1
        cut = 0
        for u, v in g.edges():
            if assign[u - 1] != assign[v - 1]:
                cut += g.edge_weight(u, v)
        if best is None or cut < best:
            best = cut
            best_assign = assign
    parts = [set() for _ in range(d)]
    for v, grp in zip(verts, best_assign):
        parts[grp].add(v)
    return OracleResult(best, DPartition(parts), explored)


def brute_maxcut(g: Graph) -> OracleResult:
    """Maximum cut value over all bipartitions (vertex 1 pinned to side A).

    Cut values are filled in over subsets of {2..n} by a one-bit-at-a-time
    recurrence, so each of the 2^(n-1) candidates costs O(1) bit operations
    on unit-weight graphs.
    """
    n = g.n
    if n > 20:
        raise OracleSizeError(f"brute_maxcut handles n <= 20, got {n}")
    if n == 0:
        return OracleResult(0, Bipartition((), ()), 1)

    adj = _adj_masks(g)
    unit = g.is_unit_edge_weighted()
    wadj = None
    if not unit:
        wadj = [[] for _ in range(n + 1)]
        for u, v in g.edges():
            w = g.edge_weight(u, v)
            wadj[u].append((v, w))
            wadj[v].append((u, w))

    # mask over vertices 2..n (bit i <=> vertex i+2 joins side A with vertex 1)
    total = 1 << (n - 1)
    cut = [0] * total
    deg_w = [0] + [
        sum(w for _, w in wadj[v]) if not unit else adj[v].bit_count()
        for v in range(1, n + 1)
    ]
    cut[0] = deg_w[1]  # A = {1}
    for mask in range(1, total):
        low = mask & -mask
        prev = mask ^ low
        v = low.bit_length() + 1  # vertex index of the newly-added bit
        amask_prev = 1 | (prev << 1)
        if unit:
            to_a = (adj[v] & amask_prev).bit_count()
        else:
            to_a = sum(
                w for u, w in wadj[v] if u == 1 or (u >= 2 and prev >> (u - 2) & 1)
            )
        cut[mask] = cut[prev] + deg_w[v] - 2 * to_a

    best_mask = max(range(total), key=lambda mk: (cut[mk], -mk))
    a = {1} | {i + 2 for i in range(n - 1) if best_mask >> i & 1}
    b = set(g.vertices) - a
    return OracleResult(cut[best_mask], Bipartition(a, b), total)
