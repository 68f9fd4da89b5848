"""Minimum bisection by dynamic programming over labeled-graph expressions.

The table for a subexpression maps per-label vertex counts on side A (side B
is implied, since the counts must add up to the label class sizes) to the
cheapest cut achieving them.  Full joins add their crossing pairs
arithmetically, renames fold label counts together, unions combine the two
child tables.  Deleted vertices are handled outside the expression: the
driver fixes a split (A0, B0) of the deletion set, charges edges inside the
deletion set once up front, and the leaf case charges each expression vertex
for its edges into the opposite deleted side.  Every entry carries the
realized A-side vertex set, so retracing a witness is a lookup and ties
break to the lexicographically smallest side.
"""

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, NamedTuple, Optional, Tuple

from .graph import Bipartition, Graph, validate_bisection
from .qexpr import (
    Create,
    Join,
    QExpression,
    Rename,
    Union,
    eval_qexpr,
    joins_are_full,
    normalize_qexpr,
)

Vector = Tuple[int, ...]


@dataclass(frozen=True)
class DeletionSplit:
    """A two-sided split of the deletion set with its internal cut cost."""

    d_set: FrozenSet[int]
    a0: FrozenSet[int]
    b0: FrozenSet[int]
    internal_cut: int

    def __post_init__(self):
        if self.a0 & self.b0:
            raise ValueError("the two sides of the split overlap")
        if self.a0 | self.b0 != self.d_set:
            raise ValueError("split sides must cover the deletion set")
        if self.internal_cut < 0:
            raise ValueError("internal cut cannot be negative")

    @classmethod
    def from_sides(cls, g: Graph, a0: Iterable[int], b0: Iterable[int]):
        """Build a split, counting the crossing edges inside the deletion set."""
        a0, b0 = frozenset(a0), frozenset(b0)
        cut = sum(1 for u, v in g.edges() if (u in a0 and v in b0) or (u in b0 and v in a0))
        return cls(a0 | b0, a0, b0, cut)


class CutEntry(NamedTuple):
    value: int
    a_side: FrozenSet[int]  # expression vertices (evaluation order) on side A


def _rank(entry: CutEntry):
    return entry.value, tuple(sorted(entry.a_side))


def _put(table, key, entry) -> None:
    old = table.get(key)
    if old is None or _rank(entry) < _rank(old):
        table[key] = entry


@dataclass
class CutTable:
    """Per-subexpression cut tables, addressed by tree path from the root.

    A path is a tuple of child indices (() is the whole expression, (0,) the
    first child, and so on).  ``tables[path]`` holds the label-count vector
    of that subexpression and its map from A-side count vectors to entries.
    ``value``/``a_vertices`` answer root queries in the two-vector form,
    checking that the vectors add up to the label class sizes.
    """

    phi: QExpression
    q: int
    split: DeletionSplit
    correspondence: Dict[int, int]  # expression vertex -> graph vertex
    tables: Dict[tuple, Tuple[Vector, Dict[Vector, CutEntry]]]

    @property
    def label_counts(self) -> Vector:
        return self.tables[()][0]

    def _root_entry(self, a: Vector, b: Vector) -> Optional[CutEntry]:
        counts = self.label_counts
        a, b = tuple(a), tuple(b)
        if len(a) != self.q or len(b) != self.q:
            raise ValueError(f"vectors must have length {self.q}")
        if any(x < 0 for x in a + b):
            raise ValueError("vector entries cannot be negative")
        if tuple(x + y for x, y in zip(a, b)) != counts:
            raise ValueError(f"vectors must add up to the label counts {counts}")
        return self.tables[()][1].get(a)

    def value(self, a: Vector, b: Vector) -> int:
        entry = self._root_entry(a, b)
        assert entry is not None  # every admissible vector pair is realizable
        return entry.value

    def a_vertices(self, a: Vector, b: Vector) -> FrozenSet[int]:
        """Graph vertices (of G minus the deletion set) on side A."""
        entry = self._root_entry(a, b)
        return frozenset(self.correspondence[v] for v in entry.a_side)


def _induced_adjacency(g: Graph, keep: FrozenSet[int]) -> Dict[int, FrozenSet[int]]:
    return {v: g.neighbors(v) & keep for v in keep}


def _correspondence_by_names(lg, rest: FrozenSet[int], adj) -> Optional[Dict[int, int]]:
    names = lg.names
    values = [names[v] for v in lg.graph.vertices]
    if any(x is None for x in values) or len(set(values)) != len(values):
        return None
    if set(values) != rest:
        return None
    mapping = {v: names[v] for v in lg.graph.vertices}
    for u in lg.graph.vertices:
        if {mapping[w] for w in lg.graph.neighbors(u)} != adj[mapping[u]]:
            raise ValueError(
                "expression names the right vertices but produces different edges"
            )
    return mapping


def _correspondence_by_search(lg, rest: FrozenSet[int], adj) -> Dict[int, int]:
    h = lg.graph
    if h.n > 10:
        raise ValueError(
            "expression leaves are unnamed; isomorphism search handles at most"
            " 10 vertices, name the Create leaves instead"
        )
    order = sorted(h.vertices, key=lambda v: (-len(h.neighbors(v)), v))
    assigned: Dict[int, int] = {}
    used = set()

    def extend(idx: int) -> bool:
        if idx == len(order):
            return True
        u = order[idx]
        for t in sorted(rest - used):
            if len(adj[t]) != len(h.neighbors(u)):
                continue
            # adjacency to every already-placed vertex must match exactly
            ok = all(
                (tw in adj[t]) == (w in h.neighbors(u)) for w, tw in assigned.items()
            )
            if not ok:
                continue
            assigned[u] = t
            used.add(t)
            if extend(idx + 1):
                return True
            del assigned[u]
            used.discard(t)
        return False

    if not extend(0):
        raise ValueError("expression does not evaluate to the graph minus the deletion set")
    return dict(assigned)


def _match_expression(
    g: Graph,
    d_set: FrozenSet[int],
    lg,
    explicit: Optional[Dict[int, int]] = None,
) -> Dict[int, int]:
    """Map expression vertices onto G - D, erroring on any mismatch."""
    rest = frozenset(g.vertices) - d_set
    if lg.graph.n != len(rest):
        raise ValueError(
            f"expression has {lg.graph.n} vertices but the graph minus the"
            f" deletion set has {len(rest)}"
        )
    adj = _induced_adjacency(g, rest)
    if explicit is not None:
        if sorted(explicit) != sorted(lg.graph.vertices) or set(explicit.values()) != rest:
            raise ValueError("correspondence is not a bijection onto the kept vertices")
        for u in lg.graph.vertices:
            if {explicit[w] for w in lg.graph.neighbors(u)} != adj[explicit[u]]:
                raise ValueError("correspondence does not preserve the edges")
        return dict(explicit)
    by_name = _correspondence_by_names(lg, rest, adj)
    if by_name is not None:
        return by_name
    return _correspondence_by_search(lg, rest, adj)


def cut_dp(
    g: Graph,
    d_set: Iterable[int],
    split: DeletionSplit,
    phi: QExpression,
    correspondence: Optional[Dict[int, int]] = None,
) -> CutTable:
    """Fill every subexpression's table bottom-up.

    Requires every join of ``phi`` to be full (run ``normalize_qexpr``
    otherwise) and ``phi`` to evaluate to G minus the deletion set, matched
    by Create names, an explicit correspondence, or isomorphism search.
    Edges inside the deletion set are NOT counted here (the split carries
    them); edges leaving the deletion set are charged at the leaves.
    """
    d_set = frozenset(d_set)
    if not d_set <= frozenset(g.vertices):
        raise ValueError("deletion set contains unknown vertices")
    if split.d_set != d_set:
        raise ValueError("split belongs to a different deletion set")
    if not joins_are_full(phi):
        raise ValueError(
            "expression has a non-full join; run normalize_qexpr on it first"
        )
    lg = eval_qexpr(phi)
    corr = _match_expression(g, d_set, lg, correspondence)

    q = phi.q
    zero = (0,) * q
    tables: Dict[tuple, Tuple[Vector, Dict[Vector, CutEntry]]] = {}
    counter = [0]

    def rec(node: QExpression, path: tuple) -> Tuple[Vector, Dict[Vector, CutEntry]]:
        if isinstance(node, Create):
            counter[0] += 1
            vid = counter[0]
            gv = corr[vid]
            counts = list(zero)
            counts[node.label - 1] = 1
            into_a = len(g.neighbors(gv) & split.b0)
            into_b = len(g.neighbors(gv) & split.a0)
            table = {
                tuple(counts): CutEntry(into_a, frozenset({vid})),
                zero: CutEntry(into_b, frozenset()),
            }
            result = (tuple(counts), table)
        elif isinstance(node, Union):
            c1, t1 = rec(node.left, path + (0,))
            c2, t2 = rec(node.right, path + (1,))
            counts = tuple(x + y for x, y in zip(c1, c2))
            table: Dict[Vector, CutEntry] = {}
            for a1, e1 in t1.items():
                for a2, e2 in t2.items():
                    key = tuple(x + y for x, y in zip(a1, a2))
                    _put(table, key, CutEntry(e1.value + e2.value, e1.a_side | e2.a_side))
            result = (counts, table)
        elif isinstance(node, Join):
            counts, child = rec(node.child, path + (0,))
            i, j = node.i - 1, node.j - 1
            table = {}
            for a, e in child.items():
                b = tuple(n - x for n, x in zip(counts, a))
                crossing = a[i] * b[j] + a[j] * b[i]
                table[a] = CutEntry(e.value + crossing, e.a_side)
            result = (counts, table)
        else:  # Rename
            counts, child = rec(node.child, path + (0,))
            i, j = node.i - 1, node.j - 1
            new_counts = list(counts)
            new_counts[j] += new_counts[i]
            new_counts[i] = 0
            table = {}
            for a, e in child.items():
                new_a = list(a)
                new_a[j] += new_a[i]
                new_a[i] = 0
                _put(table, tuple(new_a), e)
            result = (tuple(new_counts), table)
        tables[path] = result
        return result

    rec(phi, ())
    return CutTable(phi=phi, q=q, split=split, correspondence=corr, tables=tables)


def solve_bisection_cwd(
    g: Graph, d_set: Iterable[int], phi: QExpression
) -> Tuple[Bipartition, int]:
    """Optimal bisection of G using an expression for G minus the deletion set.

    Tries every split of the deletion set, reads the root table at the two
    admissible A-side totals (they coincide for even n), and keeps the
    minimum cut, breaking ties toward the lexicographically smallest A.
    """
    d_set = frozenset(d_set)
    if not d_set <= frozenset(g.vertices):
        raise ValueError("deletion set contains unknown vertices")
    phi = normalize_qexpr(phi)
    corr = _match_expression(g, d_set, eval_qexpr(phi))

    n = g.n
    totals = sorted({n // 2, (n + 1) // 2})
    d_sorted = sorted(d_set)
    best: Optional[Tuple[tuple, Bipartition, int]] = None
    for bits in range(1 << len(d_sorted)):
        a0 = frozenset(v for i, v in enumerate(d_sorted) if bits >> i & 1)
        split = DeletionSplit.from_sides(g, a0, d_set - a0)
        table = cut_dp(g, d_set, split, phi, correspondence=corr)
        counts, root = table.tables[()]
        for a_vec, entry in root.items():
            size_a = len(split.a0) + sum(a_vec)
            if size_a not in totals:
                continue
            cut = split.internal_cut + entry.value
            a = split.a0 | frozenset(corr[v] for v in entry.a_side)
            rank = (cut, tuple(sorted(a)))
            if best is None or rank < best[0]:
                best = (rank, Bipartition(a, frozenset(g.vertices) - a), cut)
    assert best is not None  # some split always exists, even the empty one
    _, bip, cut = best
    if not validate_bisection(g, bip, cut):
        raise RuntimeError("internal error: bisection failed validation")
    return bip, cut
