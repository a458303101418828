"""Exact brute-force parameter oracles and minor search.

These are the ground truth the constructive modules are tested against:
treedepth and pathwidth (plain and focused), layered treedepth and layered
pathwidth, and minor / rooted-minor containment.  Everything is exhaustive
within documented size bounds and returns an optimal certificate.

Vertex subsets are bitmasks throughout; memo tables live on per-call
oracle objects, so independent calls never share mutable state.
"""

from __future__ import annotations

from dataclasses import dataclass

from .certificates import (EliminationForest, MinorModel, PathDecomposition)
from .graphs import Graph, GraphError, Layering, RootedForest, bits, mask_of

TD_BOUND = 22
PW_BOUND = 18
PWF_BOUND = 12
LAYERED_BOUND = 8
MINOR_BOUND = 10


@dataclass(frozen=True)
class ParameterValue:
    name: str
    value: int
    certificate: object = None


def _components_of(adj: tuple[int, ...] | list[int], mask: int) -> list[int]:
    comps = []
    rest = mask
    while rest:
        seen = rest & -rest
        frontier = seen
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= adj[v]
            frontier = nxt & mask & ~seen
            seen |= frontier
        comps.append(seen)
        rest &= ~seen
    return comps


class GraphOracle:
    """Memoised exact computations over one fixed graph.

    The focused-treedepth recursion is branch-and-bound with a cutoff:
    ``td_focused_bounded(u, s, c)`` returns the exact value when it is
    below ``c`` and ``c`` itself otherwise.  Cache entries remember the
    cutoff they were computed under and are recomputed when a later query
    needs more precision.
    """

    def __init__(self, g: Graph):
        self.g = g
        self.adj = g.adj
        self._td: dict[tuple[int, int], tuple[int, int]] = {}
        self._conn_masks: list[int] | None = None
        self._nbr_of_mask: dict[int, int] = {}

    # -- focused treedepth -------------------------------------------

    def td_focused_bounded(self, umask: int, smask: int, cutoff: int) -> int:
        smask &= umask
        if smask == 0:
            return 0
        if cutoff <= 0:
            return 0
        key = (umask, smask)
        hit = self._td.get(key)
        if hit is not None:
            val, cut = hit
            if val < cut or val >= cutoff:
                return min(val, cutoff)
        comps = _components_of(self.adj, umask)
        if len(comps) > 1:
            val = 0
            for c in comps:
                if smask & c:
                    val = max(val, self.td_focused_bounded(c, smask & c, cutoff))
                    if val >= cutoff:
                        break
        elif self._is_clique(umask):
            # on a clique the important vertices must be eliminated one by
            # one along a single chain
            val = min(smask.bit_count(), cutoff)
        else:
            best = min(cutoff, umask.bit_count())
            # high-degree vertices first: good roots are found early,
            # which tightens the branch-and-bound window
            cand = sorted(bits(umask),
                          key=lambda v: (-(self.adj[v] & umask).bit_count(), v))
            for v in cand:
                if best == 1:
                    break
                bit = 1 << v
                sub = self.td_focused_bounded(umask ^ bit, smask & ~bit, best - 1)
                if sub + 1 < best:
                    best = sub + 1
            val = best
        self._td[key] = (val, cutoff)
        return val

    def _is_clique(self, mask: int) -> bool:
        for v in bits(mask):
            if self.adj[v] & mask != mask & ~(1 << v):
                return False
        return True

    def td_focused(self, umask: int, smask: int) -> int:
        return self.td_focused_bounded(umask, smask, umask.bit_count() + 1)

    def td_forest(self, umask: int, smask: int, budget: int | None = None,
                  prefer=None) -> RootedForest:
        """Focused elimination forest of (G[umask], S) of vertex-height at
        most ``budget`` (default: exactly the focused treedepth), built by
        re-querying the memoised recursion.

        Among the budget-feasible elimination roots the smallest vertex is
        taken, or the minimum under ``prefer`` when given (the layered
        builders prefer shallow-layer roots so vertical paths do not pile
        up inside one layer).
        """
        if budget is None:
            budget = self.td_focused(umask, smask)
        key = prefer if prefer is not None else (lambda v: v)
        vertices: list[int] = []
        parent: dict[int, int] = {}

        def build(um: int, sm: int, b: int, above: int | None) -> None:
            sm &= um
            if sm == 0:
                return
            comps = _components_of(self.adj, um)
            if len(comps) > 1:
                for c in comps:
                    build(c, sm & c, b, above)
                return
            for v in sorted(bits(um), key=key):
                bit = 1 << v
                if self.td_focused_bounded(um ^ bit, sm & ~bit, b) <= b - 1:
                    vertices.append(v)
                    if above is not None:
                        parent[v] = above
                    build(um ^ bit, sm & ~bit, b - 1, v)
                    return
            raise AssertionError("elimination budget is infeasible")

        build(umask, smask, budget, None)
        return RootedForest(vertices, parent)

    # -- connected submask machinery ----------------------------------

    def connected_masks(self) -> list[int]:
        if self._conn_masks is None:
            if self.g.n > MINOR_BOUND:
                raise GraphError(
                    f"minor search limited to {MINOR_BOUND} vertices, got {self.g.n}")
            self._conn_masks = [m for m in range(1, 1 << self.g.n)
                                if len(_components_of(self.adj, m)) == 1]
        return self._conn_masks

    def nbr_mask(self, m: int) -> int:
        hit = self._nbr_of_mask.get(m)
        if hit is None:
            hit = 0
            for v in bits(m):
                hit |= self.adj[v]
            hit &= ~m
            self._nbr_of_mask[m] = hit
        return hit


# -- treedepth ------------------------------------------------------------


def td_exact(g: Graph, bound: int = TD_BOUND) -> ParameterValue:
    """Exact treedepth with an optimal plain elimination forest."""
    if g.n > bound:
        raise GraphError(f"td_exact bound {bound} exceeded (n={g.n})")
    oracle = GraphOracle(g)
    value = oracle.td_focused(g.full_mask, g.full_mask)
    forest = oracle.td_forest(g.full_mask, g.full_mask)
    return ParameterValue("td", value, EliminationForest(forest, focused=False))


def td_focused_exact(g: Graph, s, bound: int = TD_BOUND) -> ParameterValue:
    """Exact S-focused treedepth with an optimal focused elimination forest."""
    if g.n > bound:
        raise GraphError(f"td_focused_exact bound {bound} exceeded (n={g.n})")
    smask = mask_of(s)
    if smask & ~g.full_mask:
        raise GraphError("S contains vertices outside the graph")
    oracle = GraphOracle(g)
    value = oracle.td_focused(g.full_mask, smask)
    forest = oracle.td_forest(g.full_mask, smask)
    return ParameterValue("td_focused", value,
                          EliminationForest(forest, focused=True))


# -- pathwidth (vertex separation DP) ---------------------------------------


def _local_view(adj, universe: int) -> tuple[list[int], list[int]]:
    verts = list(bits(universe))
    pos = {v: i for i, v in enumerate(verts)}
    ladj = [0] * len(verts)
    for i, v in enumerate(verts):
        for w in bits(adj[v] & universe):
            ladj[i] |= 1 << pos[w]
    return verts, ladj


def _vsn_order(ladj: list[int], first_block: int = 0,
               layer_of: list[int] | None = None,
               nlayers: int = 1,
               layer_offsets: list[int] | None = None) -> tuple[int, list[int]]:
    """Min over vertex orderings (beginning with the ``first_block``
    vertices) of the max bag cost, where the bag after a prefix P with new
    vertex v is boundary(P) + v.

    Plain cost is the bag size (pathwidth + 1); with ``layer_of`` it is the
    max per-layer bag count (layered pathwidth), optionally shifted by
    fixed per-layer ``layer_offsets`` (context vertices that will be added
    to every bag).  Returns the optimum and a realising vertex order.
    """
    k = len(ladj)
    full = (1 << k) - 1
    INF = k + 2 + (max(layer_offsets) if layer_offsets else 0)

    def cost(bag: int) -> int:
        if layer_of is None:
            return bag.bit_count()
        cnt = list(layer_offsets) if layer_offsets else [0] * nlayers
        best = max(cnt, default=0)
        for i in bits(bag):
            l = layer_of[i]
            cnt[l] += 1
            if cnt[l] > best:
                best = cnt[l]
        return best

    if k == 0:
        return 0, []
    start = first_block
    f = [INF] * (full + 1)
    f[start] = cost(start) if start else 0
    for u in range(start, full + 1):
        if f[u] >= INF or u & start != start:
            continue
        rest = full & ~u
        bnd = 0
        for i in bits(u):
            if ladj[i] & rest:
                bnd |= 1 << i
        for i in bits(rest):
            nu = u | 1 << i
            c = max(f[u], cost(bnd | 1 << i))
            if c < f[nu]:
                f[nu] = c
    opt = f[full]
    order: list[int] = []
    u = full
    while u != start:
        for i in bits(u & ~start):
            pu = u ^ 1 << i
            if f[pu] > opt:
                continue
            rest = full & ~pu
            bnd = 0
            for t in bits(pu):
                if ladj[t] & rest:
                    bnd |= 1 << t
            if cost(bnd | 1 << i) <= opt:
                order.append(i)
                u = pu
                break
        else:
            raise AssertionError("vsn reconstruction failed")
    order.reverse()
    return opt, list(bits(start)) + order


def _bags_from_order(ladj: list[int], order: list[int],
                     first_block: int = 0) -> list[int]:
    """Bag sequence (local masks) realising a vsn ordering."""
    bags = []
    if first_block:
        bags.append(first_block)
    placed = first_block
    idx0 = first_block.bit_count()
    for idx in range(idx0, len(order)):
        i = order[idx]
        rest_after = 0
        for j in order[idx:]:
            rest_after |= 1 << j
        bnd = 0
        for t in bits(placed):
            if ladj[t] & rest_after:
                bnd |= 1 << t
        bags.append(bnd | 1 << i)
        placed |= 1 << i
    return bags


def pw_exact(g: Graph, bound: int = PW_BOUND) -> ParameterValue:
    """Exact pathwidth via the vertex-separation subset DP (pathwidth
    equals the vertex separation number; classical equivalence)."""
    if g.n > bound:
        raise GraphError(f"pw_exact bound {bound} exceeded (n={g.n})")
    if g.n == 0:
        return ParameterValue("pw", 0, PathDecomposition(()))
    width = 0
    all_bags: list[frozenset[int]] = []
    for cm in g.components_masks():
        verts, ladj = _local_view(g.adj, cm)
        best, order = _vsn_order(ladj)
        width = max(width, best - 1)
        for bag in _bags_from_order(ladj, order):
            all_bags.append(frozenset(verts[i] for i in bits(bag)))
    return ParameterValue("pw", width, PathDecomposition(tuple(all_bags)))


def _focused_adj(adj, universe: int, jmask: int) -> list[int]:
    """Adjacency of G[J] plus a clique on N(D) for every component D of
    universe - J.  A path decomposition of this auxiliary graph is exactly
    a bag sequence of G[J] with every component neighbourhood inside some
    bag (cliques always share a bag in a path decomposition)."""
    out = [adj[v] & jmask if jmask >> v & 1 else 0 for v in range(len(adj))]
    rest = universe & ~jmask
    for dm in _components_of(adj, rest) if rest else []:
        nb = 0
        for v in bits(dm):
            nb |= adj[v]
        nb &= jmask
        for v in bits(nb):
            out[v] |= nb & ~(1 << v)
    return out


def _pw_focused_search(adj, universe: int, smask: int, t0mask: int = 0,
                       width_cap: int | None = None
                       ) -> tuple[int, int, list[frozenset[int]]] | None:
    """Best focused path decomposition of (G[universe], S) over all induced
    parts J, optionally requiring the last bag to contain ``t0mask``.

    Returns (width, jmask, bags) minimising (width, |J|, J) or None when
    ``width_cap`` is unreachable.
    """
    forced = (smask | t0mask) & universe
    free = universe & ~forced
    best: tuple[int, int, list[frozenset[int]]] | None = None
    sub = free
    while True:
        jmask = forced | sub
        fadj = _focused_adj(adj, universe, jmask)
        verts, ladj = _local_view(fadj, jmask)
        pos = {v: i for i, v in enumerate(verts)}
        block = 0
        for v in bits(t0mask):
            block |= 1 << pos[v]
        val, order = _vsn_order(ladj, first_block=block)
        wid = max(val - 1, 0)
        if best is None or (wid, jmask.bit_count(), jmask) < \
                (best[0], best[1].bit_count(), best[1]):
            bags = [frozenset(verts[i] for i in bits(b))
                    for b in _bags_from_order(ladj, order, block)]
            bags.reverse()  # the T0 block becomes the *last* bag
            best = (wid, jmask, bags)
        if sub == 0:
            break
        sub = (sub - 1) & free
    if best is not None and width_cap is not None and best[0] > width_cap:
        return None
    return best


def pw_focused_exact(g: Graph, s, bound: int = PWF_BOUND) -> ParameterValue:
    """Exact S-focused pathwidth, minimising over every induced J >= S.

    With S empty the minimum is 0, witnessed by the empty J; this is a
    documented library convention for the degenerate case.
    """
    if g.n > bound:
        raise GraphError(f"pw_focused_exact bound {bound} exceeded (n={g.n})")
    smask = mask_of(s)
    if smask & ~g.full_mask:
        raise GraphError("S contains vertices outside the graph")
    width = 0
    jset: set[int] = set()
    all_bags: list[frozenset[int]] = []
    for cm in g.components_masks():
        if not cm & smask:
            continue
        res = _pw_focused_search(g.adj, cm, smask & cm)
        assert res is not None
        w, jmask, bags = res
        width = max(width, w)
        jset.update(bits(jmask))
        all_bags.extend(bags)
    cert = PathDecomposition(tuple(all_bags), frozenset(jset))
    return ParameterValue("pw_focused", width, cert)


# -- layered treedepth and layered pathwidth --------------------------------


def _layerings(g: Graph) -> list[tuple[int, ...]]:
    """All layerings of a connected graph, normalised to layers 0..k and
    deduplicated modulo reversal."""
    if g.n == 0:
        return [()]
    order = [0]
    seen = 1
    frontier = [0]
    while frontier:
        new = 0
        for v in frontier:
            new |= g.adj[v]
        new &= ~seen
        frontier = sorted(bits(new))
        order.extend(frontier)
        seen |= new
    prefix_masks = []
    acc = 0
    for v in order:
        prefix_masks.append(acc)
        acc |= 1 << v
    assign = [0] * g.n
    out: set[tuple[int, ...]] = set()

    def rec(i: int) -> None:
        if i == len(order):
            lo = min(assign)
            norm = tuple(l - lo for l in assign)
            hi = max(norm)
            rev = tuple(hi - l for l in norm)
            out.add(min(norm, rev))
            return
        v = order[i]
        # the start vertex is pinned to 0: shifting recovers every class
        lo, hi = (0, 0) if i == 0 else (-g.n, g.n)
        for w in bits(g.adj[v] & prefix_masks[i]):
            lo = max(lo, assign[w] - 1)
            hi = min(hi, assign[w] + 1)
        for val in range(lo, hi + 1):
            assign[v] = val
            rec(i + 1)

    rec(0)
    return sorted(out)


def _ltd_inner(adj, universe: int, layer_of: list[int], cutoff: int) -> int:
    """Min over elimination forests of G[universe] of the max count of
    same-layer vertices on a vertical path; capped at ``cutoff``."""

    def rec(umask: int, counts: tuple[int, ...], cap: int) -> int:
        if umask == 0 or cap <= 0:
            return 0
        comps = _components_of(adj, umask)
        if len(comps) > 1:
            worst = 0
            for c in comps:
                worst = max(worst, rec(c, counts, cap))
                if worst >= cap:
                    return cap
            return worst
        best = cap
        for v in bits(umask):
            l = layer_of[v]
            t = counts[l] + 1
            if t >= best:
                continue
            c2 = counts[:l] + (t,) + counts[l + 1:]
            val = t
            for c in _components_of(adj, umask ^ 1 << v):
                val = max(val, rec(c, c2, best))
                if val >= best:
                    break
            if val < best:
                best = val
                if best == 1:
                    break
        return best

    nl = max(layer_of) + 1 if layer_of else 1
    return rec(universe, (0,) * nl, cutoff)


def _ltd_forest(adj, universe: int, layer_of: list[int],
                target: int) -> RootedForest:
    """An elimination forest realising layered width <= target, by
    backtracking with memoised failures."""
    vertices: list[int] = []
    parent: dict[int, int] = {}
    dead: set[tuple[int, tuple[int, ...]]] = set()

    def build(umask: int, counts: tuple[int, ...], above: int | None) -> bool:
        if umask == 0:
            return True
        comps = _components_of(adj, umask)
        if len(comps) > 1:
            # components are independent: a failure in one is final
            for c in comps:
                if not build(c, counts, above):
                    return False
            return True
        key = (umask, counts)
        if key in dead:
            return False
        for v in bits(umask):
            l = layer_of[v]
            t = counts[l] + 1
            if t > target:
                continue
            c2 = counts[:l] + (t,) + counts[l + 1:]
            marker = len(vertices)
            vertices.append(v)
            if above is not None:
                parent[v] = above
            ok = True
            for c in _components_of(adj, umask ^ 1 << v):
                if not build(c, c2, v):
                    ok = False
                    break
            if ok:
                return True
            for w in vertices[marker:]:
                parent.pop(w, None)
            del vertices[marker:]
        dead.add(key)
        return False

    nl = max(layer_of) + 1 if layer_of else 1
    if not build(universe, (0,) * nl, None):
        raise AssertionError("layered forest reconstruction failed")
    return RootedForest(vertices, parent)


def _merge_component_certs(g: Graph, pieces) -> tuple[RootedForest, Layering]:
    """Translate per-component (forest, layering) certificates back to the
    host graph's vertex ids and merge them."""
    vertices: list[int] = []
    parent: dict[int, int] = {}
    layer = [0] * g.n
    for old, forest, lay in pieces:
        for v in forest.vertices:
            vertices.append(old[v])
        for x, p in forest.parent.items():
            parent[old[x]] = old[p]
        for i, l in enumerate(lay.layer):
            layer[old[i]] = l
    return RootedForest(vertices, parent), Layering(layer)


def ltd_exact(g: Graph, bound: int = LAYERED_BOUND) -> ParameterValue:
    """Exact layered treedepth by exhaustive layering enumeration with an
    exhaustive inner forest search.

    Disconnected graphs are layered per component independently (layers of
    distinct components never interact through edges)."""
    if g.n > bound:
        raise GraphError(f"ltd_exact bound {bound} exceeded (n={g.n})")
    if g.n == 0:
        return ParameterValue("ltd", 0,
                              (EliminationForest(RootedForest((), {})), Layering(())))
    value = 0
    pieces = []
    for cm in g.components_masks():
        sub, old = g.induced(bits(cm))
        best = sub.n + 1
        best_layering: tuple[int, ...] | None = None
        for lay in _layerings(sub):
            val = _ltd_inner(sub.adj, sub.full_mask, list(lay), best)
            if val < best:
                best, best_layering = val, lay
        assert best_layering is not None
        forest = _ltd_forest(sub.adj, sub.full_mask, list(best_layering), best)
        pieces.append((old, forest, Layering(best_layering)))
        value = max(value, best)
    forest, layering = _merge_component_certs(g, pieces)
    return ParameterValue("ltd", value,
                          (EliminationForest(forest, focused=False), layering))


def lpw_exact(g: Graph, bound: int = LAYERED_BOUND) -> ParameterValue:
    """Exact layered pathwidth: layering enumeration with the layer-aware
    vertex-separation DP inside."""
    if g.n > bound:
        raise GraphError(f"lpw_exact bound {bound} exceeded (n={g.n})")
    if g.n == 0:
        return ParameterValue("lpw", 0, (PathDecomposition(()), Layering(())))
    value = 0
    all_bags: list[frozenset[int]] = []
    layer = [0] * g.n
    for cm in g.components_masks():
        sub, old = g.induced(bits(cm))
        verts, ladj = _local_view(sub.adj, sub.full_mask)
        best = sub.n + 1
        best_pair = None
        for lay in _layerings(sub):
            layer_local = [lay[verts[i]] for i in range(len(verts))]
            val, order = _vsn_order(ladj, layer_of=layer_local,
                                    nlayers=max(lay) + 1)
            if val < best:
                best = val
                best_pair = (lay, order)
        assert best_pair is not None
        lay, order = best_pair
        for b in _bags_from_order(ladj, order):
            all_bags.append(frozenset(old[verts[i]] for i in bits(b)))
        for i, l in enumerate(lay):
            layer[old[i]] = l
        value = max(value, best)
    return ParameterValue("lpw", value,
                          (PathDecomposition(tuple(all_bags)), Layering(layer)))


# -- minors -----------------------------------------------------------------


def _minor_search(g: Graph, h: Graph, smask: int | None,
                  oracle: GraphOracle | None = None) -> MinorModel | None:
    if h.n == 0:
        return MinorModel(h, {},
                          frozenset(bits(smask)) if smask is not None else None)
    if h.n > g.n:
        return None
    if oracle is None:
        oracle = GraphOracle(g)
    masks = oracle.connected_masks()
    # most-constrained-first placement: prefer vertices adjacent to already
    # placed ones, then high degree; deterministic
    order: list[int] = []
    placed_set: set[int] = set()
    while len(order) < h.n:
        cand = sorted(
            (v for v in h.vertices() if v not in placed_set),
            key=lambda v: (-sum(1 for w in h.neighbors(v) if w in placed_set),
                           -h.degree(v), v))
        order.append(cand[0])
        placed_set.add(cand[0])
    branch: dict[int, int] = {}

    def place(i: int, used: int) -> bool:
        if i == h.n:
            return True
        x = order[i]
        need_adj = [branch[y] for y in h.neighbors(x) if y in branch]
        remaining = h.n - i
        for m in masks:
            if m & used:
                continue
            if smask is not None and not m & smask:
                continue
            nb = oracle.nbr_mask(m)
            bad = False
            for bm in need_adj:
                if not nb & bm:
                    bad = True
                    break
            if bad:
                continue
            if (g.full_mask & ~(used | m)).bit_count() < remaining - 1:
                continue
            branch[x] = m
            if place(i + 1, used | m):
                return True
            del branch[x]
        return False

    if not place(0, 0):
        return None
    model = {x: frozenset(bits(m)) for x, m in branch.items()}
    s = frozenset(bits(smask)) if smask is not None else None
    return MinorModel(h, model, s)


def has_minor(g: Graph, h: Graph, bound: int = MINOR_BOUND,
              oracle: GraphOracle | None = None) -> MinorModel | None:
    """A model of h in g found by exhaustive branch-set backtracking, or
    None when no model exists.  Branch sets are tried in ascending bitmask
    order, so the first model found is reproducible."""
    if g.n > bound or h.n > 8:
        raise GraphError("has_minor bound exceeded")
    return _minor_search(g, h, None, oracle)


def has_rooted_minor(g: Graph, s, h: Graph, bound: int = MINOR_BOUND,
                     oracle: GraphOracle | None = None) -> MinorModel | None:
    """Like ``has_minor`` but every branch set must intersect S."""
    if g.n > bound or h.n > 8:
        raise GraphError("has_rooted_minor bound exceeded")
    return _minor_search(g, h, mask_of(s), oracle)


def max_rooted_path_order(g: Graph, s, bound: int = MINOR_BOUND,
                          oracle: GraphOracle | None = None) -> int:
    """Largest m such that g has an S-rooted model of the m-vertex path
    (0 when S is empty)."""
    if g.n > bound:
        raise GraphError("max_rooted_path_order bound exceeded")
    smask = mask_of(s)
    if smask == 0:
        return 0
    if oracle is None:
        oracle = GraphOracle(g)
    masks = [m for m in oracle.connected_masks() if m & smask]
    nbrs = [oracle.nbr_mask(m) for m in masks]
    memo: dict[tuple[int, int], int] = {}

    def extend(used: int, last: int) -> int:
        key = (used, last)
        hit = memo.get(key)
        if hit is not None:
            return hit
        best = 0
        nb = nbrs[last]
        for j, m in enumerate(masks):
            if m & used or not nb & m:
                continue
            val = 1 + extend(used | m, j)
            if val > best:
                best = val
        memo[key] = best
        return best

    return max(1 + extend(m, i) for i, m in enumerate(masks))


# -- apex recognisers --------------------------------------------------------


def is_forest(g: Graph) -> bool:
    return all(cm.bit_count() - 1 ==
               sum(1 for u, v in g.edges if cm >> u & 1 and cm >> v & 1)
               for cm in g.components_masks())


def is_linear_forest(g: Graph) -> bool:
    return is_forest(g) and all(g.degree(v) <= 2 for v in g.vertices())


def _minus_vertex(g: Graph, v: int) -> Graph:
    sub, _ = g.induced(u for u in g.vertices() if u != v)
    return sub


def is_apex_forest(h: Graph) -> bool:
    """Can h be made acyclic by deleting at most one vertex?"""
    return is_forest(h) or any(is_forest(_minus_vertex(h, v))
                               for v in h.vertices())


def is_apex_linear_forest(h: Graph) -> bool:
    """Can h be made a disjoint union of paths by deleting at most one
    vertex?"""
    return is_linear_forest(h) or any(is_linear_forest(_minus_vertex(h, v))
                                      for v in h.vertices())
