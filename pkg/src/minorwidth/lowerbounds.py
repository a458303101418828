"""Lower-bound families and structural witnesses: the recursive clique
family G_{t,r}, complete d-ary trees, induced elimination forests, and
the single-layer ternary-tree / clique-in-layer witnesses that certify
layered-width lower bounds."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .certificates import EliminationForest
from .graphs import (Graph, GraphError, Layering, RootedForest,
                     distances_from, radius_diameter)
from .oracles import pw_exact, td_exact

GTR_CAP = 400


@dataclass(frozen=True)
class LeveledGraph:
    """G_{t,r} together with its level map and per-block roots.

    ``block_roots`` lists (root, member tuple) for every block added by the
    construction, the base clique first.
    """
    graph: Graph
    t: int
    r: int
    level: tuple[int, ...]
    block_roots: tuple[tuple[int, tuple[int, ...]], ...]


def gen_Gtr(t: int, r: int, cap: int = GTR_CAP) -> LeveledGraph:
    """The recursive family: a t-clique, then for every vertex of the
    previous stage three fresh (t-1)-cliques fully joined to it.

    Vertex numbering is deterministic: by level, then by the parent
    vertex, then by copy index.
    """
    if t < 2 or r < 1:
        raise GraphError("gen_Gtr needs t >= 2 and r >= 1")
    size = t * (1 + 3 * (t - 1)) ** (r - 1)
    if size > cap:
        raise GraphError(f"G_{{{t},{r}}} has {size} vertices > cap {cap}")
    edges: list[tuple[int, int]] = [(i, j) for i in range(t)
                                    for j in range(i + 1, t)]
    level = [1] * t
    blocks: list[tuple[int, tuple[int, ...]]] = [(0, tuple(range(t)))]
    n = t
    for lvl in range(2, r + 1):
        # every vertex of the previous stage spawns three fresh cliques
        parents = list(range(n))
        for v in parents:
            for _copy in range(3):
                members = list(range(n, n + t - 1))
                n += t - 1
                for i, a in enumerate(members):
                    for b in members[i + 1:]:
                        edges.append((a, b))
                    edges.append((v, a))
                level.extend([lvl] * (t - 1))
                blocks.append((v, tuple(members)))
    assert n == size
    return LeveledGraph(Graph(n, edges), t, r, tuple(level), tuple(blocks))


def gen_Thd(h: int, d: int) -> Graph:
    """Complete d-ary tree whose root has eccentricity h-1."""
    if h < 1 or d < 1:
        raise GraphError("gen_Thd needs h >= 1 and d >= 1")
    edges = []
    frontier = [0]
    n = 1
    for _ in range(h - 1):
        nxt = []
        for v in frontier:
            for _c in range(d):
                edges.append((v, n))
                nxt.append(n)
                n += 1
        frontier = nxt
    return Graph(n, edges)


def induced_elim_forest(g: Graph, f: EliminationForest,
                        j) -> EliminationForest:
    """The elimination forest of G[j] induced by f: vertices outside j are
    removed one by one, splicing children onto parents (children of a
    removed root become roots)."""
    from .certificates import validate_elim_forest
    ver = validate_elim_forest(g, f)
    if not ver:
        raise GraphError(f"invalid elimination forest: {ver.clause}")
    keep = frozenset(j)
    parent = dict(f.forest.parent)
    vertices = set(f.forest.vertices)
    for u in sorted(vertices - keep):
        pu = parent.pop(u, None)
        for x in list(parent):
            if parent[x] == u:
                if pu is None:
                    del parent[x]
                else:
                    parent[x] = pu
        vertices.remove(u)
    return EliminationForest(RootedForest(vertices, parent), focused=False)


def layer_ternary_witness(lg: LeveledGraph, layering: Layering
                          ) -> tuple[frozenset[int], tuple[int, tuple[int, ...]] | None]:
    """The single-layer induced complete ternary tree of the family.

    Requires every block to have a second vertex in its root's layer
    (hypothesis (a)); when some block violates it, returns the violating
    block instead (its non-root vertices form a same-layer clique, the
    other witness of the dichotomy).

    Returns (witness set, None) on success or (frozenset(), block) on
    hypothesis failure.
    """
    g = lg.graph
    if not layering.validates_for(g):
        raise GraphError("invalid layering")
    for root, members in lg.block_roots:
        cell = layering.of(root)
        others = [u for u in members if u != root and layering.of(u) == cell]
        if root in members:
            same = [u for u in members if layering.of(u) == cell]
        else:
            same = [root] + others
        if len(same) < 2:
            return frozenset(), (root, members)
    base_root = lg.block_roots[0][0]
    x: list[int] = [base_root]
    leaves = [base_root]
    cell = layering.of(base_root)
    by_root: dict[tuple[int, int], list[tuple[int, ...]]] = {}
    for root, members in lg.block_roots[1:]:
        by_root.setdefault((root, lg.level[members[0]]), []).append(members)
    for lvl in range(2, lg.r + 1):
        nxt: list[int] = []
        for v in leaves:
            for members in by_root.get((v, lvl), []):
                cand = [u for u in members if layering.of(u) == cell]
                w = min(cand)
                x.append(w)
                nxt.append(w)
        leaves = nxt
    return frozenset(x), None


def _is_complete_ternary(g: Graph, x: frozenset[int], r: int) -> bool:
    sub, _ = g.induced(x)
    want = gen_Thd(r, 3)
    if sub.n != want.n or len(sub.edges) != len(want.edges):
        return False
    # a tree with the right degree profile at every distance from the root
    degs = sorted(sub.degree(v) for v in sub.vertices())
    wdegs = sorted(want.degree(v) for v in want.vertices())
    if degs != wdegs:
        return False
    from .oracles import is_forest
    if not is_forest(sub) or not sub.is_connected():
        return False
    # root = unique degree-3 vertex at the top (r>=2) or the single vertex
    if want.n == 1:
        return True
    roots = [v for v in sub.vertices()
             if sub.degree(v) == 3] if r >= 2 else list(sub.vertices())
    for root in roots:
        dist = distances_from(sub, v=root)
        per = {}
        for v in sub.vertices():
            per.setdefault(dist[v], []).append(v)
        ok = (max(per) == r - 1
              and all(len(per[d]) == 3 ** d for d in per)
              and all(sub.degree(v) == (3 if d == 0 else
                                        (1 if d == r - 1 else 4))
                      for d, vs in per.items() for v in vs))
        if ok:
            return True
    return False


@dataclass(frozen=True)
class LpwWitness:
    """Certified layered-pathwidth lower bound for one layering."""
    kind: str  # "clique" or "ternary-tree"
    vertices: frozenset[int]
    layer: int
    bound: int
    detail: object = None


def lpw_lower_witness(lg: LeveledGraph, layering: Layering) -> LpwWitness:
    """Dichotomy witness on G_{t-1,t-1}: either a block whose non-root
    vertices share one layer (a clique of size t-2 in a layer) or the
    single-layer ternary tree, whose pathwidth is certified exactly.

    Either way the witness certifies lpw >= t-2 for the generated family
    parameter t = lg.t + 1.
    """
    t = lg.t + 1
    if t < 4:
        raise GraphError("the corollary needs t >= 4")
    if lg.r != lg.t:
        raise GraphError("expected the square family G_{t-1,t-1}")
    g = lg.graph
    x, bad_block = layer_ternary_witness(lg, layering)
    if bad_block is not None:
        root, members = bad_block
        cell = layering.of(root)
        non_root = [u for u in members if u != root]
        layers = {layering.of(u) for u in non_root}
        # a clique spans at most two consecutive layers; with none in the
        # root's layer all other members share one layer
        assert len(layers) == 1
        lay = layers.pop()
        assert len(non_root) == lg.t - 1 == t - 2
        return LpwWitness("clique", frozenset(non_root), lay, t - 2,
                          detail=bad_block)
    if not _is_complete_ternary(g, x, lg.r):
        raise GraphError("ternary witness malformed")
    cell = layering.of(next(iter(x)))
    assert all(layering.of(u) == cell for u in x)
    if len(x) <= 18:
        # the witness is verified isomorphic to the abstract ternary tree,
        # whose exact pathwidth the oracle computes once per radius
        pw = _pw_ternary(lg.r)
        bound = pw + 1
    else:
        pw = None
        bound = t - 2  # reported symbolically via the published value
    return LpwWitness("ternary-tree", x, cell, bound, detail=pw)


@lru_cache(maxsize=None)
def _pw_ternary(r: int) -> int:
    return pw_exact(gen_Thd(r, 3)).value


@dataclass(frozen=True)
class LbReport:
    t: int
    r: int
    blocks_ok: bool
    block_count: int
    radius: int
    td: int
    td_bound: int
    induced_drop_ok: bool


def verify_lb(t: int, r: int) -> LbReport:
    """Check the three family properties exactly: every block is a
    t-clique, the radius is at most r, and the treedepth is at least
    1 + r(t-1); the treedepth bound is double-checked by replaying the
    induced-forest argument on the optimal forest."""
    lg = gen_Gtr(t, r)
    g = lg.graph
    from .graphs import blocks as block_decomp
    blks = block_decomp(g)
    blocks_ok = all(
        len(vs) == t and len(es) == t * (t - 1) // 2 for vs, es in blks)
    radius = radius_diameter(g)[0]
    pv = td_exact(g)
    td_bound = 1 + r * (t - 1)
    # splice out the deepest level: the optimal forest must lose >= t-1
    if r >= 2:
        keep = [v for v in g.vertices() if lg.level[v] < r]
        induced = induced_elim_forest(g, pv.certificate, keep)
        drop_ok = (pv.certificate.vertex_height()
                   >= induced.vertex_height() + (t - 1))
    else:
        drop_ok = pv.value == t
    if radius > r:
        raise GraphError(f"radius {radius} exceeds {r}")
    if pv.value < td_bound:
        raise GraphError(f"treedepth {pv.value} below the bound {td_bound}")
    return LbReport(t, r, blocks_ok, len(blks), radius, pv.value, td_bound,
                    drop_ok)
