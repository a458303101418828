"""Exhaustive small-graph corpora and isomorphism utilities.

Connected graphs are generated up to isomorphism by vertex augmentation
with canonical-form deduplication (colour-refinement classes, then brute
force inside the classes); the counts are pinned against the known
sequence 1, 1, 2, 6, 21, 112, 853 in the tests.
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import combinations, permutations, product

from .graphs import Graph, GraphError, Layering, bfs_layering, bits


def _refine_colors(g: Graph) -> tuple[int, ...]:
    colors = tuple(g.degree(v) for v in g.vertices())
    while True:
        sigs = []
        for v in g.vertices():
            sigs.append((colors[v],
                         tuple(sorted(colors[w] for w in g.neighbors(v)))))
        remap = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = tuple(remap[s] for s in sigs)
        if new == colors:
            return colors
        colors = new


def canonical_key(g: Graph) -> tuple:
    """Canonical form: the lexicographically smallest edge bitstring over
    all vertex orderings compatible with the stable colouring."""
    if g.n > 9:
        raise GraphError("canonical_key is for small graphs only")
    colors = _refine_colors(g)
    classes: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        classes.setdefault(c, []).append(v)
    ordered_classes = [classes[c] for c in sorted(classes)]
    class_sizes = tuple(len(c) for c in ordered_classes)
    best: tuple[int, ...] | None = None
    for perm_parts in product(*(permutations(c) for c in ordered_classes)):
        order = [v for part in perm_parts for v in part]
        pos = {v: i for i, v in enumerate(order)}
        bitsrow = []
        for j in range(1, g.n):
            for i in range(j):
                bitsrow.append(1 if g.has_edge(order[i], order[j]) else 0)
        key = tuple(bitsrow)
        if best is None or key < best:
            best = key
    return (g.n, class_sizes, best)


def are_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or len(g.edges) != len(h.edges):
        return False
    return canonical_key(g) == canonical_key(h)


@lru_cache(maxsize=None)
def connected_graphs(n: int) -> tuple[Graph, ...]:
    """All connected graphs on exactly n vertices, up to isomorphism,
    in a deterministic order."""
    if n < 1:
        return ()
    if n == 1:
        return (Graph(1),)
    out: dict[tuple, Graph] = {}
    for base in connected_graphs(n - 1):
        for nb_mask in range(1, 1 << (n - 1)):
            edges = list(base.edges) + [(w, n - 1) for w in bits(nb_mask)]
            g = Graph(n, edges)
            key = canonical_key(g)
            if key not in out:
                out[key] = g
    return tuple(out[k] for k in sorted(out))


@lru_cache(maxsize=None)
def all_graphs(n: int) -> tuple[Graph, ...]:
    """All graphs on exactly n vertices up to isomorphism (connected
    pieces drawn from the connected corpus)."""
    if n == 0:
        return (Graph(0),)
    out: dict[tuple, Graph] = {}
    for k in range(1, n + 1):
        for conn in connected_graphs(k):
            if k == n:
                key = canonical_key(conn)
                out.setdefault(key, conn)
                continue
            for rest in all_graphs(n - k):
                edges = list(conn.edges)
                edges += [(u + k, v + k) for u, v in rest.edges]
                g = Graph(n, edges)
                key = canonical_key(g)
                out.setdefault(key, g)
    return tuple(out[k] for k in sorted(out))


def connected_graphs_upto(n: int) -> list[Graph]:
    out: list[Graph] = []
    for k in range(1, n + 1):
        out.extend(connected_graphs(k))
    return out


def random_connected_graph(n: int, p: float, rng: random.Random) -> Graph:
    """One connected Erdos-Renyi-ish sample: edges kept with probability p,
    then a random spanning tree patched in to force connectivity."""
    edges = {e for e in combinations(range(n), 2) if rng.random() < p}
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        a = order[i]
        b = order[rng.randrange(i)]
        edges.add((min(a, b), max(a, b)))
    return Graph(n, edges)


def random_layering(g: Graph, rng: random.Random, moves: int = 200) -> Layering:
    """A valid layering sampled by local moves; every intermediate
    assignment keeps the adjacent-layer constraint.

    Walks start either from a BFS layering (fine layers) or from the
    all-in-one-layer assignment (coarse layers), so both regimes of
    downstream case analyses get exercised.
    """
    if g.n == 0:
        return Layering(())
    if rng.random() < 0.5:
        layer = list(bfs_layering(g, rng.randrange(g.n)).layer)
    else:
        layer = [0] * g.n
    for _ in range(rng.randrange(moves + 1)):
        v = rng.randrange(g.n)
        lo, hi = 0, g.n
        for w in bits(g.adj[v]):
            lo = max(lo, layer[w] - 1)
            hi = min(hi, layer[w] + 1)
        if lo > hi:
            continue
        layer[v] = rng.randint(lo, hi)
    shift = min(layer)
    return Layering([l - shift for l in layer])
