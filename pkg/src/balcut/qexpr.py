"""Labeled-graph expressions over the four cliquewidth operators.

An expression is an AST built from Create (a single labeled vertex), Union
(disjoint union), Rename (merge one label into another) and Join (add all
edges between two label classes).  Evaluation numbers vertices 1..n in
left-to-right order of the Create leaves, so a given expression always
produces the same labeled graph.

Normalization keeps the value while making every surviving Join *full*: at
the moment it is applied, no edge between its two label classes exists yet.
The rewrite only ever drops operators, never adds them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .graph import Graph


class QExpression:
    """Base class; concrete nodes below.  q = number of labels in scope."""

    q: int

    def size(self) -> int:
        raise NotImplementedError

    def children(self) -> Tuple["QExpression", ...]:
        raise NotImplementedError


@dataclass(frozen=True)
class Create(QExpression):
    """A single fresh vertex with the given label (the •_i operator)."""

    label: int
    name: object = field(default=None, compare=False)

    def __post_init__(self):
        if self.label < 1:
            raise ValueError(f"label must be positive, got {self.label}")

    @property
    def q(self) -> int:
        return self.label

    def size(self) -> int:
        return 1

    def children(self):
        return ()

    def __repr__(self):
        return f"v({self.label})"


@dataclass(frozen=True)
class Union(QExpression):
    """Disjoint union of two expressions."""

    left: QExpression
    right: QExpression

    @property
    def q(self) -> int:
        return max(self.left.q, self.right.q)

    def size(self) -> int:
        return 1 + self.left.size() + self.right.size()

    def children(self):
        return (self.left, self.right)

    def __repr__(self):
        return f"union({self.left!r},{self.right!r})"


def _check_label_pair(i: int, j: int):
    if i < 1 or j < 1:
        raise ValueError(f"labels must be positive, got ({i},{j})")
    if i == j:
        raise ValueError(f"the two labels must differ, got ({i},{j})")


@dataclass(frozen=True)
class Join(QExpression):
    """Add every edge between label-i and label-j vertices."""

    i: int
    j: int
    child: QExpression

    def __post_init__(self):
        _check_label_pair(self.i, self.j)

    @property
    def q(self) -> int:
        return max(self.i, self.j, self.child.q)

    def size(self) -> int:
        return 1 + self.child.size()

    def children(self):
        return (self.child,)

    def __repr__(self):
        return f"join({self.i},{self.j},{self.child!r})"


@dataclass(frozen=True)
class Rename(QExpression):
    """Give every label-i vertex label j instead."""

    i: int
    j: int
    child: QExpression

    def __post_init__(self):
        _check_label_pair(self.i, self.j)

    @property
    def q(self) -> int:
        return max(self.i, self.j, self.child.q)

    def size(self) -> int:
        return 1 + self.child.size()

    def children(self):
        return (self.child,)

    def __repr__(self):
        return f"ren({self.i}->{self.j},{self.child!r})"


@dataclass(frozen=True)
class LabeledGraph:
    """Evaluation result: a graph, a label per vertex, and the optional
    Create-leaf names of the vertices (None where the leaf had none)."""

    graph: Graph
    labels: Dict[int, int]
    names: Dict[int, object]

    def label_class(self, i: int) -> frozenset:
        return frozenset(v for v, lab in self.labels.items() if lab == i)


def eval_qexpr(expr: QExpression, q: Optional[int] = None) -> LabeledGraph:
    """Evaluate to the labeled graph; with q given, reject labels above q."""
    if q is not None and expr.q > q:
        raise ValueError(f"expression uses label {expr.q} but q={q}")

    labels: Dict[int, int] = {}
    names: Dict[int, object] = {}
    edges: set = set()
    counter = [0]

    def rec(node: QExpression) -> List[int]:
        if isinstance(node, Create):
            counter[0] += 1
            v = counter[0]
            labels[v] = node.label
            names[v] = node.name
            return [v]
        if isinstance(node, Union):
            return rec(node.left) + rec(node.right)
        if isinstance(node, (Join, Rename)):
            verts = rec(node.child)
            if isinstance(node, Join):
                left = [v for v in verts if labels[v] == node.i]
                right = [v for v in verts if labels[v] == node.j]
                for u in left:
                    for w in right:
                        edges.add((u, w) if u < w else (w, u))
            else:
                for v in verts:
                    if labels[v] == node.i:
                        labels[v] = node.j
            return verts
        raise TypeError(f"not an expression node: {node!r}")

    verts = rec(expr)
    g = Graph(len(verts), sorted(edges))
    return LabeledGraph(g, labels, names)


def normalize_qexpr(expr: QExpression) -> QExpression:
    """Equivalent expression, never longer, in which every Join is full.

    Replay the expression once to learn, for each Join occurrence, exactly
    which vertex pairs its two classes span, and for each Rename whether its
    source class is empty.  Label classes only ever coarsen, so two Join
    pair-sets that meet are nested; walking top-down and keeping a Join only
    when it contributes a pair no kept ancestor covers therefore removes all
    redundancy, and what remains is exactly full.  Empty-source Renames are
    dropped as no-ops.
    """
    pair_sets: Dict[tuple, frozenset] = {}
    empty_rename: Dict[tuple, bool] = {}
    labels: Dict[int, int] = {}
    counter = [0]

    def replay(node: QExpression, path: tuple) -> List[int]:
        if isinstance(node, Create):
            counter[0] += 1
            labels[counter[0]] = node.label
            return [counter[0]]
        if isinstance(node, Union):
            return replay(node.left, path + (0,)) + replay(node.right, path + (1,))
        verts = replay(node.child, path + (0,))
        if isinstance(node, Join):
            left = [v for v in verts if labels[v] == node.i]
            right = [v for v in verts if labels[v] == node.j]
            pair_sets[path] = frozenset(
                (u, w) if u < w else (w, u) for u in left for w in right
            )
        elif isinstance(node, Rename):
            src = [v for v in verts if labels[v] == node.i]
            empty_rename[path] = not src
            for v in src:
                labels[v] = node.j
        return verts

    replay(expr, ())

    def rebuild(node: QExpression, path: tuple, covered: frozenset) -> QExpression:
        if isinstance(node, Create):
            return node
        if isinstance(node, Union):
            return Union(
                rebuild(node.left, path + (0,), covered),
                rebuild(node.right, path + (1,), covered),
            )
        if isinstance(node, Join):
            pairs = pair_sets[path]
            if pairs <= covered:
                return rebuild(node.child, path + (0,), covered)
            return Join(node.i, node.j, rebuild(node.child, path + (0,), covered | pairs))
        if isinstance(node, Rename):
            if empty_rename[path]:
                return rebuild(node.child, path + (0,), covered)
            return Rename(node.i, node.j, rebuild(node.child, path + (0,), covered))
        raise TypeError(f"not an expression node: {node!r}")

    return rebuild(expr, (), frozenset())


def joins_are_full(expr: QExpression) -> bool:
    """Replay check: does every Join apply to classes with no edge between
    them yet?  Used by tests and the bisection DP precondition."""
    ok = [True]
    labels: Dict[int, int] = {}
    edges: set = set()
    counter = [0]

    def rec(node: QExpression) -> List[int]:
        if isinstance(node, Create):
            counter[0] += 1
            labels[counter[0]] = node.label
            return [counter[0]]
        if isinstance(node, Union):
            return rec(node.left) + rec(node.right)
        verts = rec(node.child)
        if isinstance(node, Join):
            left = [v for v in verts if labels[v] == node.i]
            right = [v for v in verts if labels[v] == node.j]
            for u in left:
                for w in right:
                    e = (u, w) if u < w else (w, u)
                    if e in edges:
                        ok[0] = False
                    edges.add(e)
        else:
            for v in verts:
                if labels[v] == node.i:
                    labels[v] = node.j
        return verts

    rec(expr)
    return ok[0]


# -- builders for families of known cliquewidth ----------------------------


def _clique_expr(n: int) -> QExpression:
    if n < 1:
        raise ValueError("clique size must be >= 1")
    e: QExpression = Create(1, name=1)
    for k in range(2, n + 1):
        if k > 2:
            e = Rename(2, 1, e)
        e = Join(1, 2, Union(e, Create(2, name=k)))
    return e


def _path_expr(n: int) -> QExpression:
    if n < 1:
        raise ValueError("path length must be >= 1")
    # invariant: newest endpoint carries label 2, interior vertices label 1
    e: QExpression = Create(2, name=1)
    for k in range(2, n + 1):
        e = Rename(3, 2, Rename(2, 1, Join(2, 3, Union(e, Create(3, name=k)))))
    return e


def _tree_expr(tree: Graph, root: Optional[int] = None) -> QExpression:
    from .graph import connected_components

    if tree.n < 1:
        raise ValueError("tree must have at least one vertex")
    if tree.m != tree.n - 1 or len(connected_components(tree)) != 1:
        raise ValueError("not a tree (need connected with n-1 edges)")
    root = min(tree.vertices) if root is None else root

    # invariant: subtree root carries label 2, every other vertex label 1
    def build(v: int, parent: Optional[int]) -> QExpression:
        e: QExpression = Create(2, name=v)
        for c in sorted(tree.neighbors(v)):
            if c == parent:
                continue
            e = Rename(3, 1, Join(2, 3, Union(e, Rename(2, 3, build(c, v)))))
        return e

    return build(root, None)


def family_qexpr(kind: str, spec) -> QExpression:
    """Ready-made expressions: 'clique' and 'path' take n, 'tree' takes a
    tree Graph (optionally (Graph, root)).  Create leaves are named with the
    intended vertex so callers can match expression vertices to graph ones."""
    if kind == "clique":
        return _clique_expr(int(spec))
    if kind == "path":
        return _path_expr(int(spec))
    if kind == "tree":
        if isinstance(spec, tuple):
            return _tree_expr(spec[0], spec[1])
        return _tree_expr(spec)
    raise ValueError(f"unknown family {kind!r} (want clique, path or tree)")
