"""Simple undirected graphs on dense vertex indices, plus the elementary
structures everything else consumes: components, blocks, BFS layerings,
DFS trees, vertical paths, contraction and distance metrics.

Vertices are always ``0 .. n-1``.  Vertex subsets are frozensets at the API
surface; internally most algorithms work on integer bitmasks (bit ``v`` set
iff vertex ``v`` is in the set).
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Iterator, Mapping, Sequence


class GraphError(ValueError):
    """Raised on malformed graphs, structures, or violated preconditions."""


def _norm_edge(u: int, v: int) -> tuple[int, int]:
    if u == v:
        raise GraphError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int) -> Iterator[int]:
    """Iterate set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Immutable simple undirected graph.

    ``edges`` is a frozenset of sorted pairs.  ``adj[v]`` is the neighbour
    bitmask of ``v``; it is the workhorse representation for every search
    in this package.
    """

    __slots__ = ("n", "edges", "labels", "adj", "_full_mask")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (),
                 labels: Sequence[str] | None = None):
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        self.n = n
        normed = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) has an endpoint outside 0..{n - 1}")
            normed.add(_norm_edge(u, v))
        self.edges: frozenset[tuple[int, int]] = frozenset(normed)
        if labels is not None and len(labels) != n:
            raise GraphError("labels must have one entry per vertex")
        self.labels = tuple(labels) if labels is not None else None
        adj = [0] * n
        for u, v in normed:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.adj = tuple(adj)
        self._full_mask = (1 << n) - 1

    # -- basic queries ---------------------------------------------------

    @property
    def full_mask(self) -> int:
        return self._full_mask

    def vertices(self) -> range:
        return range(self.n)

    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(bits(self.adj[v]))

    def neighborhood(self, xs: Iterable[int]) -> frozenset[int]:
        """N_G(X): neighbours of the set X, excluding X itself."""
        xm = mask_of(xs)
        return frozenset(bits(self.neighborhood_mask(xm)))

    def neighborhood_mask(self, xmask: int) -> int:
        out = 0
        for v in bits(xmask):
            out |= self.adj[v]
        return out & ~xmask

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Graph) and self.n == other.n
                and self.edges == other.edges)

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self.edges)})"

    # -- derived graphs --------------------------------------------------

    def induced(self, vs: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph on ``vs``, reindexed densely.

        Returns the new graph and the list mapping new index -> old index
        (ascending, so relative order is kept).
        """
        old = sorted(set(vs))
        pos = {v: i for i, v in enumerate(old)}
        for v in old:
            if not 0 <= v < self.n:
                raise GraphError(f"vertex {v} not in graph")
        es = [(pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos]
        return Graph(len(old), es), old

    def component_mask(self, start: int, within: int | None = None) -> int:
        """Bitmask of the connected component of ``start`` inside ``within``."""
        universe = self._full_mask if within is None else within
        if not universe >> start & 1:
            raise GraphError(f"vertex {start} not inside the allowed set")
        seen = 1 << start
        frontier = seen
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= self.adj[v]
            frontier = nxt & universe & ~seen
            seen |= frontier
        return seen

    def components_masks(self, within: int | None = None) -> list[int]:
        universe = self._full_mask if within is None else within
        out = []
        rest = universe
        while rest:
            v = (rest & -rest).bit_length() - 1
            c = self.component_mask(v, universe)
            out.append(c)
            rest &= ~c
        return out

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return self.component_mask(0) == self._full_mask


def components(g: Graph) -> list[frozenset[int]]:
    """Connected components, each sorted, ordered by minimum element."""
    return [frozenset(bits(m)) for m in g.components_masks()]


def distances_from(g: Graph, v: int) -> list[int]:
    """BFS distances from ``v``; unreachable vertices get -1."""
    dist = [-1] * g.n
    dist[v] = 0
    q = deque([v])
    while q:
        u = q.popleft()
        for w in bits(g.adj[u]):
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist


def radius_diameter(g: Graph) -> tuple[int, int]:
    """Exact radius and diameter by all-pairs BFS; errors if disconnected."""
    if g.n == 0:
        raise GraphError("radius/diameter of the empty graph is undefined")
    ecc = []
    for v in g.vertices():
        dist = distances_from(g, v)
        if min(dist) < 0:
            raise GraphError("graph is disconnected")
        ecc.append(max(dist))
    return min(ecc), max(ecc)


def blocks(g: Graph) -> list[tuple[frozenset[int], frozenset[tuple[int, int]]]]:
    """Block decomposition by the classical lowpoint DFS.

    Every maximal 2-connected subgraph yields one block; bridges yield K_2
    blocks and isolated vertices yield K_1 blocks.  Blocks are sorted by
    their minimum vertex.
    """
    disc = [-1] * g.n
    low = [0] * g.n
    out: list[tuple[frozenset[int], frozenset[tuple[int, int]]]] = []
    counter = 0
    for root in g.vertices():
        if disc[root] != -1:
            continue
        if g.adj[root] == 0:
            out.append((frozenset([root]), frozenset()))
            continue
        edge_stack: list[tuple[int, int]] = []
        # iterative Tarjan: stack of (vertex, parent, neighbour iterator)
        stack = [(root, -1, iter(g.neighbors(root)))]
        disc[root] = low[root] = counter
        counter += 1
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    edge_stack.append(_norm_edge(v, w))
                    disc[w] = low[w] = counter
                    counter += 1
                    stack.append((w, v, iter(g.neighbors(w))))
                    advanced = True
                    break
                elif w != parent and disc[w] < disc[v]:
                    edge_stack.append(_norm_edge(v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                pv = stack[-1][0]
                low[pv] = min(low[pv], low[v])
                if low[v] >= disc[pv]:
                    # pv is a cut vertex (or the root): pop one block
                    blk: list[tuple[int, int]] = []
                    top = _norm_edge(pv, v)
                    while True:
                        e = edge_stack.pop()
                        blk.append(e)
                        if e == top:
                            break
                    vs = frozenset(x for e in blk for x in e)
                    out.append((vs, frozenset(blk)))
    out.sort(key=lambda b: min(b[0]))
    return out


class RootedForest:
    """Rooted forest given by a parent map over an explicit vertex set.

    Roots are exactly the vertices without a parent.  The structure is
    checked on construction (acyclic, parents inside the forest).
    """

    __slots__ = ("vertices", "parent", "roots", "_depth")

    def __init__(self, vertices: Iterable[int], parent: Mapping[int, int]):
        self.vertices: frozenset[int] = frozenset(vertices)
        self.parent: dict[int, int] = dict(parent)
        for x, p in self.parent.items():
            if x not in self.vertices or p not in self.vertices:
                raise GraphError(f"parent edge {x}->{p} leaves the forest")
            if x == p:
                raise GraphError(f"vertex {x} is its own parent")
        self.roots: tuple[int, ...] = tuple(
            sorted(v for v in self.vertices if v not in self.parent))
        depth: dict[int, int] = {}
        limit = len(self.vertices)
        for v in self.vertices:
            trail = []
            x = v
            while x not in depth and x in self.parent:
                trail.append(x)
                x = self.parent[x]
                if len(trail) > limit:
                    raise GraphError("parent relation has a cycle")
            if x not in depth:
                depth[x] = 1
            for y in reversed(trail):
                depth[y] = depth[self.parent[y]] + 1
        self._depth = depth

    def depth(self, x: int) -> int:
        """Number of vertices on the vertical path of ``x`` (root has 1)."""
        return self._depth[x]

    def vertical_path(self, x: int) -> tuple[int, ...]:
        """The unique path from the root of x's tree down to ``x``."""
        if x not in self.vertices:
            raise GraphError(f"vertex {x} not in forest")
        path = [x]
        while x in self.parent:
            x = self.parent[x]
            path.append(x)
        return tuple(reversed(path))

    def root_of(self, x: int) -> int:
        while x in self.parent:
            x = self.parent[x]
        return x

    def is_ancestor(self, a: int, x: int) -> bool:
        """True iff ``a`` lies on the vertical path of ``x`` (reflexive)."""
        da = self._depth.get(a)
        if da is None or x not in self._depth:
            return False
        while x in self.parent and self._depth[x] > da:
            x = self.parent[x]
        return x == a

    def children(self) -> dict[int, list[int]]:
        ch: dict[int, list[int]] = {v: [] for v in self.vertices}
        for x, p in self.parent.items():
            ch[p].append(x)
        for lst in ch.values():
            lst.sort()
        return ch

    def leaves(self) -> list[int]:
        with_child = set(self.parent.values())
        return sorted(v for v in self.vertices if v not in with_child)

    def vertex_height(self) -> int:
        return max(self._depth.values(), default=0)

    def subtree(self, x: int) -> frozenset[int]:
        """Vertex set of T_x: x together with all its descendants."""
        ch = self.children()
        out = []
        stack = [x]
        while stack:
            v = stack.pop()
            out.append(v)
            stack.extend(ch[v])
        return frozenset(out)

    def __repr__(self) -> str:
        return f"RootedForest(|V|={len(self.vertices)}, roots={self.roots})"


class DfsTree(RootedForest):
    """Spanning DFS tree of a connected (sub)graph: one root, and every
    host edge leaving a subtree T_x lands on the vertical path of x."""

    __slots__ = ()

    def __init__(self, vertices: Iterable[int], parent: Mapping[int, int]):
        super().__init__(vertices, parent)
        if len(self.roots) != 1:
            raise GraphError("a DFS tree has exactly one root")

    @property
    def root(self) -> int:
        return self.roots[0]


def dfs_tree(g: Graph, r: int, within: Iterable[int] | None = None) -> DfsTree:
    """Deterministic DFS tree rooted at ``r`` (children explored in
    ascending vertex index).

    With ``within`` the tree spans the induced subgraph on that set, which
    must be connected and contain ``r``; otherwise the whole graph must be
    connected.
    """
    if not 0 <= r < g.n:
        raise GraphError(f"root {r} not a vertex")
    allowed = g.full_mask if within is None else mask_of(within)
    if not allowed >> r & 1:
        raise GraphError(f"root {r} outside the allowed set")
    parent: dict[int, int] = {}
    seen = 1 << r
    stack: list[tuple[int, Iterator[int]]] = [(r, iter(bits(g.adj[r] & allowed)))]
    while stack:
        v, it = stack[-1]
        for w in it:
            if not seen >> w & 1:
                seen |= 1 << w
                parent[w] = v
                stack.append((w, iter(bits(g.adj[w] & allowed))))
                break
        else:
            stack.pop()
    if seen != allowed:
        raise GraphError("graph (or the allowed set) is not connected")
    return DfsTree(bits(seen), parent)


def validate_dfs_tree(g: Graph, t: DfsTree) -> bool:
    """Exhaustive check of the DFS property: every host edge inside the
    spanned set joins an ancestor-descendant pair."""
    span = t.vertices
    for x in t.parent:
        if not g.has_edge(x, t.parent[x]):
            return False
    for u, v in g.edges:
        if u in span and v in span:
            if not (t.is_ancestor(u, v) or t.is_ancestor(v, u)):
                return False
    return True


class Layering:
    """Total assignment vertex -> non-negative layer index with every edge
    inside one layer or between consecutive layers."""

    __slots__ = ("layer",)

    def __init__(self, layer: Sequence[int]):
        self.layer: tuple[int, ...] = tuple(layer)
        for l in self.layer:
            if l < 0:
                raise GraphError("layers must be non-negative")

    def __len__(self) -> int:
        return len(self.layer)

    def of(self, v: int) -> int:
        return self.layer[v]

    def num_layers(self) -> int:
        return max(self.layer) + 1 if self.layer else 0

    def layer_sets(self) -> list[frozenset[int]]:
        out: list[set[int]] = [set() for _ in range(self.num_layers())]
        for v, l in enumerate(self.layer):
            out[l].add(v)
        return [frozenset(s) for s in out]

    def layer_masks(self) -> list[int]:
        out = [0] * self.num_layers()
        for v, l in enumerate(self.layer):
            out[l] |= 1 << v
        return out

    def validates_for(self, g: Graph) -> bool:
        if len(self.layer) != g.n:
            return False
        return all(abs(self.layer[u] - self.layer[v]) <= 1 for u, v in g.edges)


def bfs_layering(g: Graph, v: int) -> Layering:
    """Layering by BFS distance from ``v``; L_0 = {v}."""
    dist = distances_from(g, v)
    if any(d < 0 for d in dist):
        raise GraphError("graph is disconnected")
    return Layering(dist)


def lca(t: RootedForest, s: Iterable[int]) -> int:
    """Lowest common ancestor: the deepest vertex whose subtree contains
    all of ``s`` (all of ``s`` must live in one tree)."""
    vs = sorted(set(s))
    if not vs:
        raise GraphError("lca of the empty set is undefined")
    paths = [t.vertical_path(x) for x in vs]
    if len({p[0] for p in paths}) != 1:
        raise GraphError("vertices span more than one tree")
    k = 0
    shortest = min(len(p) for p in paths)
    while k < shortest and len({p[k] for p in paths}) == 1:
        k += 1
    return paths[0][k - 1]


def vertical_path(t: RootedForest, x: int) -> tuple[int, ...]:
    return t.vertical_path(x)


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycles need at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(leaves: int) -> Graph:
    """Centre 0 with the given number of leaves."""
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def fan_graph(ell: int) -> Graph:
    """The fan F_ell: an ell-vertex path 0..ell-1 plus the dominant vertex
    ell adjacent to every path vertex."""
    if ell < 1:
        raise GraphError("fans need a non-empty path part")
    edges = [(i, i + 1) for i in range(ell - 1)]
    edges += [(i, ell) for i in range(ell)]
    return Graph(ell + 1, edges)


def contract(g: Graph, u_set: Iterable[int]) -> tuple[Graph, int]:
    """Contract a connected non-empty set to a single vertex.

    Surviving vertices keep their relative order and occupy 0..n'-2; the
    new vertex is n'-1.  Labels are dropped.
    """
    um = mask_of(u_set)
    if um == 0:
        raise GraphError("cannot contract the empty set")
    if um & ~g.full_mask:
        raise GraphError("contraction set leaves the graph")
    first = (um & -um).bit_length() - 1
    if g.component_mask(first, um) != um:
        raise GraphError("contraction set is not connected")
    survivors = [v for v in g.vertices() if not um >> v & 1]
    pos = {v: i for i, v in enumerate(survivors)}
    new = len(survivors)
    es = set()
    for u, v in g.edges:
        iu, iv = um >> u & 1, um >> v & 1
        if iu and iv:
            continue
        a = new if iu else pos[u]
        b = new if iv else pos[v]
        es.add(_norm_edge(a, b))
    return Graph(new + 1, es), new
