"""Tree decompositions: validation, nice form, and an exact-width search.

The nice form follows the usual leaf / introduce / forget / join vocabulary:
leaves carry one-vertex bags, join children carry identical bags, and
introduce/forget steps change the bag by exactly one vertex.  Conversion
keeps the width and stays within 4n nodes.
"""

from __future__ import annotations

from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .graph import Graph


class TreeDecomposition:
    """Bags on an undirected tree of nodes, with a designated root.

    Node ids are arbitrary integers.  Structural tree-ness is enforced here;
    the graph-dependent axioms live in validate_td.
    """

    def __init__(
        self,
        bags: Dict[int, Iterable[int]],
        tree_edges: Iterable[Tuple[int, int]],
        root: Optional[int] = None,
    ):
        if not bags:
            raise ValueError("a tree decomposition needs at least one node")
        self.bags: Dict[int, FrozenSet[int]] = {x: frozenset(b) for x, b in bags.items()}
        nodes = set(self.bags)
        adj: Dict[int, set] = {x: set() for x in nodes}
        edge_count = 0
        for x, y in tree_edges:
            if x not in nodes or y not in nodes:
                raise ValueError(f"tree edge ({x},{y}) references an unknown node")
            if x == y or y in adj[x]:
                raise ValueError(f"bad tree edge ({x},{y})")
            adj[x].add(y)
            adj[y].add(x)
            edge_count += 1
        if edge_count != len(nodes) - 1 or not self._connected(adj):
            raise ValueError("decomposition nodes do not form a tree")
        self.tree: Dict[int, FrozenSet[int]] = {x: frozenset(s) for x, s in adj.items()}
        self.root = min(nodes) if root is None else root
        if self.root not in nodes:
            raise ValueError(f"root {self.root} is not a node")

    @staticmethod
    def _connected(adj: Dict[int, set]) -> bool:
        start = next(iter(adj))
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == len(adj)

    @property
    def nodes(self) -> List[int]:
        return sorted(self.bags)

    @property
    def width(self) -> int:
        return max(len(b) for b in self.bags.values()) - 1

    def covered_vertices(self) -> FrozenSet[int]:
        out: set = set()
        for b in self.bags.values():
            out |= b
        return frozenset(out)

    def vertex_nodes_connected(self) -> bool:
        """Do the nodes holding each vertex induce a connected subtree?"""
        for v in self.covered_vertices():
            holding = {x for x, b in self.bags.items() if v in b}
            start = next(iter(holding))
            seen = {start}
            stack = [start]
            while stack:
                x = stack.pop()
                for y in self.tree[x]:
                    if y in holding and y not in seen:
                        seen.add(y)
                        stack.append(y)
            if seen != holding:
                return False
        return True


def validate_td(g: Graph, td: TreeDecomposition) -> bool:
    """Both decomposition axioms: edges covered, vertex subtrees connected
    and non-empty.  Raises if a bag mentions a vertex outside the graph."""
    covered = td.covered_vertices()
    for v in covered:
        if not 1 <= v <= g.n:
            raise ValueError(f"bag references unknown vertex {v}")
    if covered != frozenset(g.vertices):
        return False
    for u, v in g.edges():
        if not any(u in b and v in b for b in td.bags.values()):
            return False
    return td.vertex_nodes_connected()


LEAF = ("leaf",)
JOIN = ("join",)


class NiceTreeDecomposition(TreeDecomposition):
    """Rooted, binary, with a kind per node.

    kind[x] is ("leaf",), ("introduce", v), ("forget", v) or ("join",).
    Built via make_nice; the constructor checks the kind-local invariants.
    """

    def __init__(self, bags, parent: Dict[int, Optional[int]], kind: Dict[int, tuple], root: int):
        edges = [(x, p) for x, p in parent.items() if p is not None]
        super().__init__(bags, edges, root)
        self.parent = dict(parent)
        self.kind = dict(kind)
        kids: Dict[int, List[int]] = {x: [] for x in self.bags}
        for x, p in parent.items():
            if p is not None:
                kids[p].append(x)
        self.children: Dict[int, Tuple[int, ...]] = {x: tuple(sorted(c)) for x, c in kids.items()}
        self._check_kinds()

    def _check_kinds(self) -> None:
        for x in self.bags:
            k = self.kind[x]
            kids = self.children[x]
            bag = self.bags[x]
            if k == LEAF:
                if kids or len(bag) > 1:
                    raise ValueError(f"leaf node {x} must be childless with at most one vertex")
            elif k == JOIN:
                if len(kids) != 2:
                    raise ValueError(f"join node {x} needs exactly two children")
                if any(self.bags[c] != bag for c in kids):
                    raise ValueError(f"join node {x} has children with differing bags")
            elif k[0] == "introduce":
                if len(kids) != 1 or self.bags[kids[0]] | {k[1]} != bag or k[1] in self.bags[kids[0]]:
                    raise ValueError(f"introduce node {x} does not add exactly {k[1]}")
            elif k[0] == "forget":
                if len(kids) != 1 or bag | {k[1]} != self.bags[kids[0]] or k[1] in bag:
                    raise ValueError(f"forget node {x} does not drop exactly {k[1]}")
            else:
                raise ValueError(f"unknown node kind {k!r}")

    def postorder(self) -> List[int]:
        """Children before parents; deterministic."""
        out: List[int] = []
        stack: List[Tuple[int, bool]] = [(self.root, False)]
        while stack:
            x, done = stack.pop()
            if done:
                out.append(x)
                continue
            stack.append((x, True))
            for c in reversed(self.children[x]):
                stack.append((c, False))
        return out

    def validate(self, g: Graph) -> bool:
        return validate_td(g, self) and len(self.bags) <= 4 * max(g.n, 1)


def _simplified_copy(td: TreeDecomposition):
    """Merge adjacent bags where one contains the other until none remain.
    Returns (bags, adjacency) with at most one node per private vertex."""
    bags = {x: set(b) for x, b in td.bags.items()}
    adj = {x: set(td.tree[x]) for x in td.bags}
    changed = True
    while changed and len(bags) > 1:
        changed = False
        for x in sorted(bags):
            absorber = None
            for y in sorted(adj[x]):
                if bags[x] <= bags[y]:
                    absorber = y
                    break
                if bags[y] <= bags[x]:
                    # pull y into x instead
                    absorber = None
                    for z in adj[y]:
                        if z != x:
                            adj[z].discard(y)
                            adj[z].add(x)
                            adj[x].add(z)
                    adj[x].discard(y)
                    del bags[y]
                    del adj[y]
                    changed = True
                    break
            else:
                continue
            if absorber is not None:
                for z in adj[x]:
                    if z != absorber:
                        adj[z].discard(x)
                        adj[z].add(absorber)
                        adj[absorber].add(z)
                adj[absorber].discard(x)
                del bags[x]
                del adj[x]
                changed = True
            break
    return bags, adj


def _reduce_branching(bags, parent, children) -> None:
    """Re-hang children of branching nodes under childless descendants of
    their siblings whenever every bag on the walk covers the moved child's
    interface with its old parent.  This keeps the decomposition valid and
    turns star-shaped bag trees (which elimination orders love to produce)
    into paths, avoiding join blow-up in the nice form."""
    changed = True
    while changed:
        changed = False
        for x in sorted(children):
            kids = children[x]
            if len(kids) < 2:
                continue
            for ci in sorted(kids):
                interface = bags[ci] & bags[x]
                target = None
                for cj in sorted(kids):
                    if cj == ci:
                        continue
                    stack = [cj]
                    while stack:
                        y = stack.pop()
                        if not interface <= bags[y]:
                            continue  # path through y would break a subtree
                        if not children[y]:
                            target = y
                            break
                        for z in sorted(children[y], reverse=True):
                            stack.append(z)
                    if target is not None:
                        break
                if target is not None:
                    kids.remove(ci)
                    children[target].append(ci)
                    parent[ci] = target
                    changed = True
                    break
            if changed:
                break


def make_nice(td: TreeDecomposition) -> NiceTreeDecomposition:
    """Convert a valid decomposition to nice form (same width, <= 4n nodes).

    The bag tree is first simplified by contracting subset-adjacent bags and
    re-hanging avoidable branches, then rebuilt bottom-up: one-vertex leaves
    grown by introduce chains, forget-then-introduce ladders along tree
    edges, and binary join combs where branching remains.  All orders are
    deterministic.
    """
    if not td.vertex_nodes_connected():
        raise ValueError("input decomposition is invalid (vertex subtrees disconnected)")
    bags, adj = _simplified_copy(td)

    # root at the smallest surviving node and orient
    root_choice = min(bags)
    parent: Dict[int, Optional[int]] = {root_choice: None}
    children: Dict[int, List[int]] = {x: [] for x in bags}
    stack = [root_choice]
    seen = {root_choice}
    while stack:
        x = stack.pop()
        for y in sorted(adj[x]):
            if y not in seen:
                seen.add(y)
                parent[y] = x
                children[x].append(y)
                stack.append(y)
    _reduce_branching(bags, parent, children)

    out_bags: Dict[int, FrozenSet[int]] = {}
    out_parent: Dict[int, Optional[int]] = {}
    out_kind: Dict[int, tuple] = {}
    counter = [0]

    def fresh(bag: Iterable[int], kind: tuple, kids: List[int]) -> int:
        counter[0] += 1
        x = counter[0]
        out_bags[x] = frozenset(bag)
        out_kind[x] = kind
        out_parent[x] = None
        for c in kids:
            out_parent[c] = x
        return x

    def grow_chain(target: List[int]) -> int:
        """Leaf plus introduces building the sorted vertex list `target`."""
        if not target:
            return fresh((), LEAF, [])
        node = fresh(target[:1], LEAF, [])
        for i in range(1, len(target)):
            node = fresh(target[: i + 1], ("introduce", target[i]), [node])
        return node

    def lift(node: int, have: frozenset, want: frozenset) -> int:
        """Forget-then-introduce ladder turning bag `have` into bag `want`."""
        cur = set(have)
        for v in sorted(have - want):
            cur.discard(v)
            node = fresh(cur, ("forget", v), [node])
        for v in sorted(want - have):
            cur.add(v)
            node = fresh(cur, ("introduce", v), [node])
        return node

    def build(x: int) -> int:
        bag = frozenset(bags[x])
        kids = sorted(children[x])
        if not kids:
            return grow_chain(sorted(bag))
        tops = [lift(build(y), frozenset(bags[y]), bag) for y in kids]
        node = tops[0]
        for other in tops[1:]:
            node = fresh(bag, JOIN, [node, other])
        return node

    root = build(root_choice)
    return NiceTreeDecomposition(out_bags, out_parent, out_kind, root)


def exact_treewidth_small(g: Graph) -> Tuple[int, TreeDecomposition]:
    """Exact treewidth by dynamic programming over elimination-order prefixes.

    A test-scale oracle: subsets of vertices are bitmasks, and the table
    entry for S is the best possible largest elimination degree over all
    orderings that eliminate exactly S first.  Guarded at n <= 15.
    """
    n = g.n
    if n > 15:
        raise ValueError(
            f"exact treewidth search handles n <= 15 (got {n}); "
            "supply a precomputed tree decomposition (.td file) instead"
        )
    if n == 0:
        return -1, TreeDecomposition({1: ()}, [])

    adj = [0] * (n + 1)
    for u, v in g.edges():
        adj[u] |= 1 << (v - 1)
        adj[v] |= 1 << (u - 1)

    def reach_outside(sp: int, v: int) -> int:
        """Vertices outside sp reachable from v via paths inside sp."""
        vbit = 1 << (v - 1)
        seen = vbit
        frontier = adj[v]
        out = 0
        while True:
            new = frontier & ~seen
            if not new:
                break
            seen |= new
            out |= new & ~sp
            walk = new & sp
            frontier = 0
            while walk:
                low = walk & -walk
                walk ^= low
                frontier |= adj[low.bit_length()]
        return out & ~vbit

    full = (1 << n) - 1
    best = [0] * (full + 1)
    best[0] = -1
    for s in range(1, full + 1):
        val = n  # upper bound; any real choice is <= n-1
        rest = s
        while rest:
            low = rest & -rest
            rest ^= low
            v = low.bit_length()
            prev = s ^ low
            deg = reach_outside(prev, v).bit_count()
            cand = best[prev] if best[prev] > deg else deg
            if cand < val:
                val = cand
        best[s] = val

    width = best[full]

    # walk the table back to a concrete elimination order (smallest vertex
    # that attains the optimum at each step, for determinism)
    rev: List[int] = []
    s = full
    while s:
        rest = s
        while rest:
            low = rest & -rest
            rest ^= low
            v = low.bit_length()
            prev = s ^ low
            deg = reach_outside(prev, v).bit_count()
            if max(best[prev], deg) == best[s]:
                rev.append(v)
                s = prev
                break
    order = rev[::-1]

    # build the decomposition by simulating the elimination
    cur = {v: set(g.neighbors(v)) for v in g.vertices}
    bag_of: Dict[int, set] = {}
    for v in order:
        nb = cur[v]
        bag_of[v] = {v} | nb
        for a in nb:
            cur[a].discard(v)
            cur[a] |= nb - {a}
        del cur[v]
    pos = {v: i for i, v in enumerate(order)}
    node_of = {v: i + 1 for i, v in enumerate(order)}
    bags = {node_of[v]: bag_of[v] for v in order}
    edges = []
    for i, v in enumerate(order):
        others = bag_of[v] - {v}
        if others:
            u = min(others, key=pos.get)
            edges.append((node_of[v], node_of[u]))
        elif i + 1 < n:
            edges.append((node_of[v], node_of[order[i + 1]]))
    td = TreeDecomposition(bags, edges, root=node_of[order[-1]])
    return width, td
