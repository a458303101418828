"""Separations, Menger machinery and (w,S)-goodness.

A separation (A,B) covers the graph with no edge between the private
sides.  The canonical edge split assigns every edge inside the separator
to side A; side A is then exactly the induced subgraph on V(A), which is
what the goodness check needs to decompose.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator

from .certificates import MinorModel, PathDecomposition, Verdict
from .graphs import Graph, GraphError, bits, mask_of
from .oracles import (GraphOracle, _pw_focused_search, pw_focused_exact)

GOOD_BOUND = 12


@dataclass(frozen=True)
class Separation:
    va: frozenset[int]
    vb: frozenset[int]
    ea: frozenset[tuple[int, int]]
    eb: frozenset[tuple[int, int]]

    @property
    def separator(self) -> frozenset[int]:
        return self.va & self.vb

    @property
    def order(self) -> int:
        return len(self.va & self.vb)

    def key(self) -> tuple:
        return (tuple(sorted(self.va)), tuple(sorted(self.vb)))


def make_separation(g: Graph, va: Iterable[int], vb: Iterable[int]) -> Separation:
    """Canonical separation on the vertex split: all edges inside va go to
    side A, the rest to side B."""
    va_f, vb_f = frozenset(va), frozenset(vb)
    ea = frozenset(e for e in g.edges if e[0] in va_f and e[1] in va_f)
    eb = frozenset(e for e in g.edges
                   if e[0] in vb_f and e[1] in vb_f) - ea
    sep = Separation(va_f, vb_f, ea, eb)
    ver = validate_separation(g, sep)
    if not ver:
        raise GraphError(f"not a separation: {ver.clause} {ver.witness}")
    return sep


def validate_separation(g: Graph, sep: Separation) -> Verdict:
    allv = frozenset(g.vertices())
    if sep.va | sep.vb != allv:
        return Verdict.bad("vertex-cover", sorted(allv - (sep.va | sep.vb)))
    if sep.ea | sep.eb != g.edges:
        return Verdict.bad("edge-cover", sorted(g.edges - (sep.ea | sep.eb)))
    if sep.ea & sep.eb:
        return Verdict.bad("edge-overlap", sorted(sep.ea & sep.eb))
    mid = sep.va & sep.vb
    for u, v in sep.ea:
        if u not in sep.va or v not in sep.va:
            return Verdict.bad("ea-outside-va", (u, v))
    for u, v in sep.eb:
        if u not in sep.vb or v not in sep.vb:
            return Verdict.bad("eb-outside-vb", (u, v))
        if u in mid and v in mid:
            return Verdict.bad("separator-edge-on-b-side", (u, v))
    for u, v in g.edges:
        if (u in sep.va - sep.vb and v in sep.vb - sep.va) or \
           (v in sep.va - sep.vb and u in sep.vb - sep.va):
            return Verdict.bad("crossing-edge", (u, v))
    return Verdict.good()


def separation_leq(s1: Separation, s2: Separation) -> bool:
    """(A,B) <= (A',B'): A is a subgraph of A' and B a supergraph of B'."""
    return (s1.va <= s2.va and s1.ea <= s2.ea
            and s2.vb <= s1.vb and s2.eb <= s1.eb)


def separation_extends(s1: Separation, s2: Separation) -> bool:
    """s2 extends s1: s1 <= s2 with order(s2) <= order(s1)."""
    return separation_leq(s1, s2) and s2.order <= s1.order


def enumerate_separations(g: Graph) -> Iterator[Separation]:
    """All separations of g in canonical form, ordered by (va, separator)."""
    full = g.full_mask
    for vam in range(full + 1):
        outside = full & ~vam
        forced = g.neighborhood_mask(outside) & vam
        free = vam & ~forced
        sub = 0
        while True:
            ssep = forced | sub
            vbm = outside | ssep
            yield make_separation(g, bits(vam), bits(vbm))
            if sub == free:
                break
            sub = (sub | ~free) + 1 & free


# -- Menger: disjoint paths and separators ----------------------------------


def disjoint_paths(g: Graph, a: Iterable[int], b: Iterable[int],
                   within: Iterable[int] | None = None
                   ) -> tuple[list[tuple[int, ...]], frozenset[int]]:
    """Maximum family of pairwise vertex-disjoint A-B paths plus a
    vertex separator of equal size (Menger duality), by unit-capacity
    max flow with vertex splitting.

    The separator is the canonical source-side minimum cut, so results
    are deterministic.  Single-vertex paths (a vertex of A intersect B)
    are permitted.
    """
    am, bm = mask_of(a), mask_of(b)
    if am == 0 or bm == 0:
        raise GraphError("disjoint_paths needs non-empty endpoint sets")
    allowed = g.full_mask if within is None else mask_of(within)
    am &= allowed
    bm &= allowed
    n = g.n
    SRC, SNK = 2 * n, 2 * n + 1
    INF = n + 2  # only the split arcs are finite, so cuts are vertex sets
    cap: dict[int, dict[int, int]] = {SRC: {}, SNK: {}}

    def arc(u: int, v: int, c: int) -> None:
        cap.setdefault(u, {})[v] = c
        cap.setdefault(v, {}).setdefault(u, 0)

    for v in bits(allowed):
        arc(2 * v, 2 * v + 1, 1)
    for u, v in g.edges:
        if allowed >> u & 1 and allowed >> v & 1:
            arc(2 * u + 1, 2 * v, INF)
            arc(2 * v + 1, 2 * u, INF)
    for v in bits(am):
        arc(SRC, 2 * v, INF)
    for v in bits(bm):
        arc(2 * v + 1, SNK, INF)

    flow: dict[int, dict[int, int]] = {u: {v: 0 for v in nb}
                                       for u, nb in cap.items()}
    while True:
        prev = {SRC: SRC}
        q = deque([SRC])
        while q and SNK not in prev:
            u = q.popleft()
            for v in sorted(cap[u]):
                if v not in prev and cap[u][v] - flow[u][v] > 0:
                    prev[v] = u
                    q.append(v)
        if SNK not in prev:
            break
        v = SNK
        while v != SRC:
            u = prev[v]
            flow[u][v] += 1
            flow[v][u] -= 1
            v = u

    # canonical min cut first (the decomposition below consumes the flow):
    # split arcs crossing the residual reachable set
    reach = {SRC}
    q = deque([SRC])
    while q:
        u = q.popleft()
        for v in sorted(cap[u]):
            if v not in reach and cap[u][v] - flow[u][v] > 0:
                reach.add(v)
                q.append(v)
    separator = frozenset(v for v in bits(allowed)
                          if 2 * v in reach and 2 * v + 1 not in reach)

    paths: list[tuple[int, ...]] = []
    for sv in sorted(bits(am)):
        if flow[SRC][2 * sv] <= 0:
            continue
        path = [sv]
        node = 2 * sv + 1
        while True:
            nxt = None
            for w in sorted(cap[node]):
                if flow[node][w] > 0:
                    nxt = w
                    break
            assert nxt is not None
            if nxt == SNK:
                break
            path.append(nxt // 2)
            flow[node][nxt] -= 1  # consume, so later walks cannot reuse
            flow[nxt][node] += 1
            node = nxt + 1
        # trim to a proper A-B path: start at the last A-vertex, end at
        # the first B-vertex from there
        last_a = max(i for i, x in enumerate(path) if am >> x & 1)
        path = path[last_a:]
        first_b = min(i for i, x in enumerate(path) if bm >> x & 1)
        paths.append(tuple(path[:first_b + 1]))

    assert len(separator) == len(paths)
    return paths, separator


def menger_refine(g: Graph, sep: Separation, sep1: Separation
                  ) -> tuple[Separation, list[tuple[int, ...]]]:
    """Given (A,B) <= (A1,B1), a separation (P,Q) nested between them with
    order(P,Q) pairwise disjoint V(A)-V(B1) paths.

    Realised by a minimum vertex cut between the two separators inside the
    middle region V(B) intersect V(A1).
    """
    if not separation_leq(sep, sep1):
        raise GraphError("menger_refine needs nested separations")
    t = sep.separator
    t1 = sep1.separator
    mid = sep.vb & sep1.va
    if not t:
        # order-0 lower separation refines to itself with zero paths
        return sep, []
    if not t1:
        return sep1, []
    paths, y = disjoint_paths(g, t, t1, within=mid)
    mid_a = _reach(g, t - y, mid - y)
    vp = sep.va | mid_a | y
    vq = (frozenset(g.vertices()) - vp) | y
    out = make_separation(g, vp, vq)
    if out.order != len(paths):
        raise AssertionError("refined separation order mismatch")
    if not (separation_leq(sep, out) and separation_leq(out, sep1)):
        raise AssertionError("refined separation is not nested")
    return out, paths


def _reach(g: Graph, seeds: Iterable[int], allowed: frozenset[int]) -> set[int]:
    seen = set(x for x in seeds if x in allowed)
    q = deque(seen)
    while q:
        u = q.popleft()
        for w in bits(g.adj[u]):
            if w in allowed and w not in seen:
                seen.add(w)
                q.append(w)
    return seen


# -- (w,S)-goodness -----------------------------------------------------------


def is_wS_good(g: Graph, s: Iterable[int], w: int, sep: Separation
               ) -> tuple[Verdict, PathDecomposition | None]:
    """Decide (w,S)-goodness: order <= w and (A, S on A) has a focused path
    decomposition of width <= w-1 whose last bag contains the separator."""
    if w < 1:
        raise GraphError("w must be positive")
    if g.n > GOOD_BOUND:
        raise GraphError(f"goodness check limited to {GOOD_BOUND} vertices")
    ver = validate_separation(g, sep)
    if not ver:
        raise GraphError(f"invalid separation: {ver.clause}")
    if sep.order > w:
        return Verdict.bad("order", sep.order), None
    smask = mask_of(s)
    vam = mask_of(sep.va)
    t0 = mask_of(sep.separator)
    res = _pw_focused_search(g.adj, vam, smask & vam, t0mask=t0,
                             width_cap=w - 1)
    if res is None:
        return Verdict.bad("no-narrow-decomposition"), None
    wid, jmask, bags = res
    return Verdict.good(), PathDecomposition(tuple(bags),
                                             frozenset(bits(jmask)))


class GoodnessContext:
    """Cached (w,S)-goodness decisions for one (g, s, w)."""

    def __init__(self, g: Graph, s: Iterable[int], w: int):
        self.g = g
        self.smask = mask_of(s)
        self.w = w
        self._cache: dict[tuple[int, int], tuple[bool, tuple | None]] = {}

    def check(self, vam: int, t0: int) -> tuple[bool, tuple | None]:
        key = (vam, t0)
        hit = self._cache.get(key)
        if hit is None:
            if t0.bit_count() > self.w:
                hit = (False, None)
            else:
                res = _pw_focused_search(self.g.adj, vam, self.smask & vam,
                                         t0mask=t0, width_cap=self.w - 1)
                hit = (res is not None,
                       (res[1], tuple(res[2])) if res is not None else None)
            self._cache[key] = hit
        return hit

    def good(self, sep: Separation) -> bool:
        return self.check(mask_of(sep.va), mask_of(sep.separator))[0]


def _rooted_model_in_side(g: Graph, va: frozenset[int], roots: frozenset[int],
                          f: Graph, pin_y: int | None = None,
                          pin_v: int | None = None) -> MinorModel | None:
    """A roots-rooted model of ``f`` inside the induced side A, optionally
    forcing ``pin_v`` into the branch set of ``pin_y``."""
    sub, old = g.induced(va)
    pos = {v: i for i, v in enumerate(old)}
    if pin_v is not None and pin_v not in pos:
        return None
    rmask = mask_of(pos[v] for v in roots)
    if f.n == 0:
        return MinorModel(f, {}, roots)
    oracle = GraphOracle(sub)
    masks = [m for m in oracle.connected_masks() if m & rmask]
    order = sorted(f.vertices(), key=lambda x: (-f.degree(x), x))
    if pin_y is not None:
        order.remove(pin_y)
        order.insert(0, pin_y)
    pin_bit = 1 << pos[pin_v] if pin_v is not None else 0
    branch: dict[int, int] = {}

    def place(i: int, used: int) -> bool:
        if i == f.n:
            return True
        x = order[i]
        need = [branch[y] for y in f.neighbors(x) if y in branch]
        for m in masks:
            if m & used:
                continue
            if x == pin_y and not m & pin_bit:
                continue
            nb = oracle.nbr_mask(m)
            if any(not nb & bm for bm in need):
                continue
            branch[x] = m
            if place(i + 1, used | m):
                return True
            del branch[x]
        return False

    if not place(0, 0):
        return None
    model = {x: frozenset(old[i] for i in bits(m)) for x, m in branch.items()}
    return MinorModel(f, model, roots)


def maximal_good_separation(g: Graph, s: Iterable[int], w: int,
                            require: tuple[Graph, int, int] | None = None,
                            need_s_outside: bool = False,
                            extending: Separation | None = None,
                            ctx: GoodnessContext | None = None
                            ) -> tuple[Separation, MinorModel | None]:
    """A separation maximal with the property of being (w,S)-good (and,
    optionally, leaving part of S outside A), found by exhaustive search
    over all separations ordered by extension.

    ``require=(F, y, v)`` additionally demands a separator-rooted model of
    the forest F in side A with v in the branch set of y; the underlying
    lemma guarantees one of the maximal separations admits it whenever
    pw(G,S) >= w.
    """
    smask = mask_of(s)
    if require is not None:
        if pw_focused_exact(g, s).value < w:
            raise GraphError("hypothesis pw(G,S) >= w fails")
    if ctx is None:
        ctx = GoodnessContext(g, s, w)
    good: list[Separation] = []
    for sep in enumerate_separations(g):
        if need_s_outside and not (smask & ~mask_of(sep.va)):
            continue
        if ctx.good(sep):
            good.append(sep)
    if extending is not None:
        good = [sep for sep in good
                if sep == extending or separation_extends(extending, sep)]
    if not good:
        raise GraphError("no (w,S)-good separation under the constraints")
    maximal = [sep for sep in good
               if not any(other != sep and separation_extends(sep, other)
                          for other in good)]
    maximal.sort(key=Separation.key)
    if require is None:
        return maximal[0], None
    f, y, v = require
    for sep in maximal:
        model = _rooted_model_in_side(g, sep.va, sep.separator, f,
                                      pin_y=y, pin_v=v)
        if model is not None:
            return sep, model
    raise GraphError(
        "no maximal (w,S)-good separation admits the pinned rooted model")


def check_maximal_good_properties(g: Graph, s: Iterable[int],
                                  sep: Separation) -> Verdict:
    """Clause-by-clause check of the structural consequences of maximality:
    (i) every component outside A meets S, (ii) every separator vertex sees
    the B-private side, (iii) every separator vertex reaches S outside A
    through B-private vertices."""
    ver = validate_separation(g, sep)
    if not ver:
        return ver
    smask = mask_of(s)
    vam = mask_of(sep.va)
    outside = g.full_mask & ~vam
    for cm in g.components_masks(outside) if outside else []:
        if not cm & smask:
            return Verdict.bad("i-component-misses-s", sorted(bits(cm)))
    bprivate = mask_of(sep.vb) & ~vam
    for z in sorted(sep.separator):
        if not g.adj[z] & bprivate:
            return Verdict.bad("ii-separator-vertex-sees-no-b-private", z)
    for z in sorted(sep.separator):
        if _path_through_bside(g, sep, z, smask & ~vam) is None:
            return Verdict.bad("iii-no-path-to-outside-s", z)
    return Verdict.good()


def _path_through_bside(g: Graph, sep: Separation, z: int,
                        targets_mask: int) -> tuple[int, ...] | None:
    """Shortest path from z to any target, all internal vertices B-private."""
    if targets_mask == 0:
        return None
    if targets_mask >> z & 1:
        return (z,)
    bprivate = mask_of(sep.vb) & ~mask_of(sep.va)
    prev = {z: z}
    q = deque([z])
    while q:
        u = q.popleft()
        for wv in bits(g.adj[u]):
            if wv in prev:
                continue
            if targets_mask >> wv & 1:
                prev[wv] = u
                path = [wv]
                while path[-1] != z:
                    path.append(prev[path[-1]])
                return tuple(reversed(path))
            if bprivate >> wv & 1:
                prev[wv] = u
                q.append(wv)
    return None


def lift_goodness(g: Graph, s: Iterable[int], w: int, sep_big: Separation,
                  sep_small: Separation,
                  paths: list[tuple[int, ...]]) -> bool:
    """Test oracle for goodness transfer down a Menger refinement: with
    sep_small <= sep_big, sep_big (w,S)-good and order(sep_small) disjoint
    V(P)-V(B') paths, sep_small must be (w,S)-good too.

    Verifies the preconditions, then asserts the conclusion through the
    goodness checker.  A failure is a defect, not an expected error.
    """
    if not separation_leq(sep_small, sep_big):
        raise GraphError("sep_small must be <= sep_big")
    ver, _ = is_wS_good(g, s, w, sep_big)
    if not ver:
        raise GraphError("sep_big is not (w,S)-good")
    if len(paths) != sep_small.order:
        raise GraphError("path family has the wrong cardinality")
    used: set[int] = set()
    vp = sep_small.va
    vb1 = sep_big.vb
    for p in paths:
        if set(p) & used:
            raise GraphError("paths are not vertex-disjoint")
        used.update(p)
        if not (p[0] in vp and all(x not in vp for x in p[1:])):
            raise GraphError("not a V(P)-anchored path")
        if not (p[-1] in vb1 and all(x not in vb1 for x in p[:-1])):
            raise GraphError("not a V(B')-terminated path")
        for x, y2 in zip(p, p[1:]):
            if not g.has_edge(x, y2):
                raise GraphError("path uses a non-edge")
    ver, _ = is_wS_good(g, s, w, sep_small)
    if not ver:
        raise AssertionError(
            "goodness transfer failed; this contradicts the separation lemma")
    return True
