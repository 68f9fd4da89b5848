"""Minimum-weight c-component separators over nice tree decompositions.

The central object is a table indexed by decomposition node, the separator
slice inside the bag, partitions recording how the A- and B-sides meet the
bag, a counter of finished components, and the target weight of side A.
Tables are filled bottom-up; each entry carries a concrete witness (the
separator and the A-side realizing the minimum), which makes retracing a
lookup and tie-breaking reproducible: minimum weight first, then the
lexicographically smallest separator, then the smallest A-side.

On top of the table sit the two solvers: ``min_weight_separator`` answers a
single (c, s) query, and ``solve_vertex_bisection`` guesses terminal sets,
contracts the graph around the small separators between them, runs the
table on the contracted graph with pre-image sizes as weights, and
rebalances the pulled-back result.
"""

from collections import defaultdict, deque
from dataclasses import dataclass
from itertools import chain, combinations
from typing import Dict, FrozenSet, List, NamedTuple, Optional, Tuple

from .graph import (
    Graph,
    Separation,
    connected_components,
    count_components_after_removal,
)
from .td import LEAF, JOIN, NiceTreeDecomposition, exact_treewidth_small, make_nice
from .torso import build_trimmer

Partition = Tuple[FrozenSet[int], ...]


def _canon(parts) -> Partition:
    """Canonical form of a partition: parts ordered by smallest element."""
    return tuple(sorted((frozenset(p) for p in parts), key=min))


@dataclass(frozen=True)
class SepKey:
    node: int
    s_t: FrozenSet[int]
    p_a: Partition
    p_b: Partition
    c: int
    ell: int


class SepEntry(NamedTuple):
    value: int
    s_set: FrozenSet[int]
    a_set: FrozenSet[int]


def _rank(entry: SepEntry):
    return entry.value, tuple(sorted(entry.s_set)), tuple(sorted(entry.a_set))


def _put(table, key, entry) -> None:
    old = table.get(key)
    if old is None or _rank(entry) < _rank(old):
        table[key] = entry


def _fcc(p1: Partition, p2: Partition) -> Partition:
    """Finest common coarsening of two partitions of the same ground set."""
    parent: Dict[int, int] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for part in chain(p1, p2):
        it = iter(sorted(part))
        first = next(it)
        parent.setdefault(first, first)
        for v in it:
            parent.setdefault(v, v)
            ra, rb = find(first), find(v)
            if ra != rb:
                parent[rb] = ra
    groups: Dict[int, set] = defaultdict(set)
    for v in parent:
        groups[find(v)].add(v)
    return _canon(groups.values())


@dataclass
class SepTable:
    """Filled separator table plus the query point above the root.

    ``entries`` maps every materialized key to its minimum weight and
    witness; keys that would be infeasible are simply absent.  The nodes
    ``final_node`` and below it (ids past the decomposition's own) are
    synthesized forget steps that empty the root bag, so global questions
    "is there a separator with c components and A-weight ell" are plain
    lookups via :meth:`query`.
    """

    graph: Graph
    ntd: NiceTreeDecomposition
    c_max: int
    entries: Dict[SepKey, SepEntry]
    final_node: int

    def query(self, c: int, ell: int) -> Optional[SepEntry]:
        return self.entries.get(SepKey(self.final_node, frozenset(), (), (), c, ell))

    def node_items(self, node: int):
        return [(k, e) for k, e in self.entries.items() if k.node == node]


def _leaf_table(g: Graph, bag: FrozenSet[int]):
    table = {}
    vs = sorted(bag)
    for s_bits in range(1 << len(vs)):
        s_t = frozenset(v for i, v in enumerate(vs) if s_bits >> i & 1)
        rest = [v for v in vs if v not in s_t]
        for a_bits in range(1 << len(rest)):
            wa = frozenset(v for i, v in enumerate(rest) if a_bits >> i & 1)
            wb = frozenset(rest) - wa
            if any(g.neighbors(u) & wb for u in wa):
                continue  # not a separator of the bag graph
            p_a = _canon(connected_components(g, within=wa))
            p_b = _canon(connected_components(g, within=wb))
            key = (s_t, p_a, p_b, 0, g.weight_of(wa))
            _put(table, key, SepEntry(g.weight_of(s_t), s_t, wa))
    return table


def _introduce_table(g: Graph, child, v: int):
    table = {}
    nv = g.neighbors(v)
    lam_v = g.vertex_weight(v)
    for (s_t, p_a, p_b, c, ell), e in child.items():
        # v joins the separator
        _put(
            table,
            (s_t | {v}, p_a, p_b, c, ell),
            SepEntry(e.value + lam_v, e.s_set | {v}, e.a_set),
        )
        # v joins side A: glue the parts it touches; forbidden if it sees B
        if not any(part & nv for part in p_b):
            touched = [part for part in p_a if part & nv]
            rest = [part for part in p_a if not part & nv]
            merged = frozenset({v}).union(*touched) if touched else frozenset({v})
            _put(
                table,
                (s_t, _canon(rest + [merged]), p_b, c, ell + lam_v),
                SepEntry(e.value, e.s_set, e.a_set | {v}),
            )
        # v joins side B, symmetrically (ell tracks A only)
        if not any(part & nv for part in p_a):
            touched = [part for part in p_b if part & nv]
            rest = [part for part in p_b if not part & nv]
            merged = frozenset({v}).union(*touched) if touched else frozenset({v})
            _put(
                table,
                (s_t, p_a, _canon(rest + [merged]), c, ell),
                SepEntry(e.value, e.s_set, e.a_set),
            )
    return table


def _forget_table(child, v: int, c_max: int):
    table = {}
    for (s_t, p_a, p_b, c, ell), e in child.items():
        if v in s_t:
            key = (s_t - {v}, p_a, p_b, c, ell)
        elif any(v in part for part in p_a):
            kept = [part for part in p_a if v not in part]
            shrunk = next(part for part in p_a if v in part) - {v}
            if shrunk:
                key = (s_t, _canon(kept + [shrunk]), p_b, c, ell)
            else:
                if c + 1 > c_max:
                    continue  # the counter only ever grows upwards
                key = (s_t, _canon(kept), p_b, c + 1, ell)
        else:
            kept = [part for part in p_b if v not in part]
            shrunk = next(part for part in p_b if v in part) - {v}
            if shrunk:
                key = (s_t, p_a, _canon(kept + [shrunk]), c, ell)
            else:
                if c + 1 > c_max:
                    continue
                key = (s_t, p_a, _canon(kept), c + 1, ell)
        _put(table, key, e)
    return table


def _join_tables(g: Graph, t1, t2, c_max: int):
    def grouped(table):
        groups = defaultdict(list)
        for key, e in table.items():
            s_t, p_a, p_b, c, ell = key
            wa = frozenset().union(*p_a) if p_a else frozenset()
            groups[(s_t, wa)].append((key, e))
        return groups

    g1, g2 = grouped(t1), grouped(t2)
    table = {}
    for sig, items1 in g1.items():
        items2 = g2.get(sig)
        if not items2:
            continue
        s_t, wa = sig
        lam_wa = g.weight_of(wa)
        lam_st = g.weight_of(s_t)
        for (k1, e1) in items1:
            for (k2, e2) in items2:
                c = k1[3] + k2[3]
                if c > c_max:
                    continue
                ell = k1[4] + k2[4] - lam_wa
                key = (s_t, _fcc(k1[1], k2[1]), _fcc(k1[2], k2[2]), c, ell)
                entry = SepEntry(
                    e1.value + e2.value - lam_st,
                    e1.s_set | e2.s_set,
                    e1.a_set | e2.a_set,
                )
                _put(table, key, entry)
    return table


def sep_dp(g: Graph, ntd: NiceTreeDecomposition, c_max: int) -> SepTable:
    """Fill the separator table bottom-up over the whole decomposition.

    Entries exist for every reachable key with component counter at most
    ``c_max``; an absent key means no separator realizes it.  After the
    root, synthesized forget steps empty the bag so that the table ends at
    a single node whose keys are just (c, ell) pairs.
    """
    if c_max < 0:
        raise ValueError("component counter bound must be non-negative")
    if not ntd.validate(g):
        raise ValueError("decomposition does not fit the graph")

    tables: Dict[int, dict] = {}
    for x in ntd.postorder():
        kind = ntd.kind[x]
        if kind == LEAF:
            tables[x] = _leaf_table(g, ntd.bags[x])
        elif kind == JOIN:
            c1, c2 = ntd.children[x]
            tables[x] = _join_tables(g, tables[c1], tables[c2], c_max)
        elif kind[0] == "introduce":
            tables[x] = _introduce_table(g, tables[ntd.children[x][0]], kind[1])
        else:
            tables[x] = _forget_table(tables[ntd.children[x][0]], kind[1], c_max)

    final = tables[ntd.root]
    virtual: Dict[int, dict] = {}
    next_id = max(ntd.bags) + 1
    for v in sorted(ntd.bags[ntd.root]):
        final = _forget_table(final, v, c_max)
        virtual[next_id] = final
        next_id += 1
    final_node = next_id - 1 if virtual else ntd.root

    entries: Dict[SepKey, SepEntry] = {}
    for node, tab in chain(tables.items(), virtual.items()):
        for (s_t, p_a, p_b, c, ell), e in tab.items():
            entries[SepKey(node, s_t, p_a, p_b, c, ell)] = e
    return SepTable(graph=g, ntd=ntd, c_max=c_max, entries=entries, final_node=final_node)


def min_weight_separator(g: Graph, c: int, s: int) -> Optional[Separation]:
    """Minimum-weight separator leaving exactly c components, A-weight s.

    ``c`` may be 1 (a separator whose removal leaves a single component,
    with A one union of components); the balanced-separator driver only
    ever asks for c >= 2.  Desk scale: the decomposition comes from the
    exact treewidth search.
    """
    if c < 1:
        raise ValueError("component count must be at least 1")
    if not 1 <= s <= g.total_vertex_weight:
        raise ValueError("target weight outside 1..total weight")
    _, td = exact_treewidth_small(g)
    table = sep_dp(g, make_nice(td), c)
    entry = table.query(c, s)
    if entry is None:
        return None
    b = frozenset(g.vertices) - entry.s_set - entry.a_set
    return Separation(entry.s_set, entry.a_set, b)


def _bfs_last(g: Graph, comp: FrozenSet[int]) -> int:
    """Last vertex discovered by BFS from the smallest vertex of comp.

    Removing it keeps the component connected (it is a leaf of the BFS
    tree), which is what the rebalancing moves rely on.
    """
    root = min(comp)
    seen = {root}
    order = [root]
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in sorted(g.neighbors(u) & comp):
            if w not in seen:
                seen.add(w)
                order.append(w)
                queue.append(w)
    return order[-1]


def rebalance_move(g: Graph, sep: Separation, k: int) -> Separation:
    """Move exactly k - |S| vertices into S, keeping balance achievable.

    Each move takes a BFS-tree leaf from a component of the currently
    heavier side (either side on a tie) so the component count of G - S
    never changes.  Raises when the move budget is negative, when the
    sides are too uneven for the budget, or when every component on the
    side that must shrink is a singleton.
    """
    if not sep.is_valid(g):
        raise ValueError("not a valid separation of the graph")
    moves = k - len(sep.s)
    if moves < 0:
        raise ValueError("separator already exceeds the size budget")
    if abs(len(sep.a) - len(sep.b)) > moves + 1:
        raise ValueError("sides too uneven to balance within the budget")
    s, a, b = set(sep.s), set(sep.a), set(sep.b)
    for _ in range(moves):
        if len(a) > len(b):
            sides = [a]
        elif len(b) > len(a):
            sides = [b]
        else:
            sides = [a, b]
        chosen = None
        for side in sides:
            movable = [
                comp
                for comp in connected_components(g, within=side)
                if len(comp) >= 2
            ]
            if movable:
                chosen = (side, min(movable, key=min))
                break
        if chosen is None:
            raise ValueError(
                "every component on the side that must shrink is a singleton;"
                " the move is infeasible"
            )
        side, comp = chosen
        leaf = _bfs_last(g, comp)
        side.discard(leaf)
        s.add(leaf)
    return Separation(s, a, b)


def _drive_balance(g: Graph, sep: Separation, k: int) -> Separation:
    """Shrink the heavier side until the sides differ by at most one.

    Prefers the budgeted move into S (a BFS leaf of a component with at
    least two vertices); when the heavier side consists of singleton
    components only, a whole singleton hops across instead, which keeps S
    and the component count unchanged and still shrinks the imbalance.
    """
    s, a, b = set(sep.s), set(sep.a), set(sep.b)
    while abs(len(a) - len(b)) > 1:
        big, small = (a, b) if len(a) > len(b) else (b, a)
        comps = connected_components(g, within=big)
        movable = [comp for comp in comps if len(comp) >= 2]
        if movable:
            leaf = _bfs_last(g, min(movable, key=min))
            big.discard(leaf)
            s.add(leaf)
        else:
            v = min(big)
            big.discard(v)
            small.add(v)
    return Separation(s, a, b)


def solve_vertex_bisection(g: Graph, k: int, c: int) -> Optional[Separation]:
    """A c-component balanced separator of size at most k, or None.

    Tries every terminal set T of size c: contracts the graph around the
    small separators between the terminals, weights each contracted vertex
    by its pre-image size, fills the separator table once, scans the
    window of A-weights around half the graph, and pulls accepted
    candidates back for rebalancing.  Among all candidates the smallest
    separator wins (ties by vertex order, then by A-side).
    """
    if k < 0:
        raise ValueError("separator budget must be non-negative")
    if c < 2:
        raise ValueError("need at least two components")
    if not g.is_unit_vertex_weighted():
        raise ValueError("vertex bisection is defined on unit-weight graphs")
    n = g.n
    best: Optional[Tuple[tuple, Separation]] = None
    s_lo = max(0, (n - 1 - 2 * k) // 2)  # integer ceil of n/2 - 1 - k
    s_hi = min(n, (n + 2 * k) // 2)
    for terminals in combinations(range(1, n + 1), c):
        tr = build_trimmer(g, k, terminals)
        weights = {v: len(tr.phi_inv[v]) for v in tr.g_star.vertices}
        gw = Graph(tr.g_star.n, tr.g_star.edges(), vertex_weights=weights)
        _, td = exact_treewidth_small(gw)
        table = sep_dp(gw, make_nice(td), c)
        for s in range(s_lo, s_hi + 1):
            entry = table.query(c, s)
            if entry is None or entry.value > k:
                continue
            lam_b = n - s - entry.value
            if abs(s - lam_b) > k - entry.value + 1:
                continue
            s_set = tr.pull_back(entry.s_set)
            a_set = tr.pull_back(entry.a_set)
            b_set = frozenset(g.vertices) - s_set - a_set
            cand = _drive_balance(g, Separation(s_set, a_set, b_set), k)
            if (
                not cand.is_valid(g)
                or len(cand.s) > k
                or abs(len(cand.a) - len(cand.b)) > 1
                or count_components_after_removal(g, cand.s) != c
            ):
                raise RuntimeError("internal error: candidate failed validation")
            rank = (len(cand.s), tuple(sorted(cand.s)), tuple(sorted(cand.a)))
            if best is None or rank < best[0]:
                best = (rank, cand)
    return best[1] if best else None
