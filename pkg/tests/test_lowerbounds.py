import random

import pytest

from minorwidth.certificates import EliminationForest, validate_elim_forest
from minorwidth.corpus import random_layering
from minorwidth.graphs import (Graph, GraphError, Layering, RootedForest,
                               bfs_layering, blocks, fan_graph, path_graph,
                               radius_diameter)
from minorwidth.lowerbounds import (gen_Gtr, gen_Thd, induced_elim_forest,
                                    layer_ternary_witness, lpw_lower_witness,
                                    verify_lb)
from minorwidth.oracles import has_minor, td_exact


def test_gen_gtr_shapes():
    lg = gen_Gtr(2, 1)
    assert lg.graph.n == 2 and len(lg.graph.edges) == 1
    lg = gen_Gtr(2, 2)
    assert lg.graph.n == 8
    assert len(blocks(lg.graph)) == 7
    assert all(len(vs) == 2 for vs, _ in blocks(lg.graph))
    lg = gen_Gtr(3, 2)
    assert lg.graph.n == 21
    lg = gen_Gtr(3, 3)
    assert lg.graph.n == 147
    assert all(len(vs) == 3 for vs, _ in blocks(lg.graph))
    with pytest.raises(GraphError):
        gen_Gtr(4, 4)  # over the size cap
    with pytest.raises(GraphError):
        gen_Gtr(1, 1)


def test_gtr_minor_freeness():
    # the (t+1)-vertex fan is 2-connected and larger than any block
    for t, r in ((2, 2), (3, 2), (4, 1)):
        lg = gen_Gtr(t, r)
        if lg.graph.n <= 10:
            assert has_minor(lg.graph, fan_graph(t)) is None


def test_gen_thd():
    assert gen_Thd(1, 3).n == 1
    g = gen_Thd(2, 3)
    assert g.n == 4 and g.degree(0) == 3
    g = gen_Thd(3, 3)
    assert g.n == 13
    assert radius_diameter(g)[0] == 2  # root eccentricity h-1


def test_induced_elim_forest():
    g = path_graph(3)
    chain = EliminationForest(RootedForest([0, 1, 2], {1: 0, 2: 1}))
    f = induced_elim_forest(g, chain, [0, 1, 2])
    assert f.forest.parent == chain.forest.parent
    f = induced_elim_forest(g, chain, [0, 2])
    assert f.forest.parent == {2: 0}
    # removing a root with two children makes the children roots
    star = EliminationForest(RootedForest([0, 1, 2], {1: 0, 2: 0}))
    g2 = Graph(3, [(0, 1), (0, 2)])
    f = induced_elim_forest(g2, star, [1, 2])
    assert f.forest.roots == (1, 2)
    # always a valid elimination forest of the induced graph
    rng = random.Random(5)
    for _ in range(20):
        n = rng.randint(1, 7)
        edges = [(i, j) for i in range(n) for j in range(i + 1, n)
                 if rng.random() < 0.5]
        g = Graph(n, edges)
        pv = td_exact(g)
        keep = [v for v in range(n) if rng.random() < 0.6]
        f = induced_elim_forest(g, pv.certificate, keep)
        sub, old = g.induced(keep)
        remap = {o: i for i, o in enumerate(old)}
        translated = EliminationForest(RootedForest(
            [remap[v] for v in f.forest.vertices],
            {remap[a]: remap[b] for a, b in f.forest.parent.items()}))
        assert validate_elim_forest(sub, translated)


def test_layer_witness_base_and_step():
    lg = gen_Gtr(3, 1)
    lay = Layering([0, 0, 0])
    x, bad = layer_ternary_witness(lg, lay)
    assert bad is None and x == frozenset({0})
    # all-in-one-layer layering of G_{3,2} satisfies (a); X_2 induces K_{1,3}
    lg = gen_Gtr(3, 2)
    lay = Layering([0] * 21)
    x, bad = layer_ternary_witness(lg, lay)
    assert bad is None and len(x) == 4
    sub, _ = lg.graph.induced(x)
    degs = sorted(sub.degree(v) for v in sub.vertices())
    assert degs == [1, 1, 1, 3]
    # BFS layering from a level-1 vertex violates (a) at a level-2 block
    lay = bfs_layering(lg.graph, 0)
    x, bad = layer_ternary_witness(lg, lay)
    assert bad is not None


def test_lpw_lower_witness_g33():
    lg = gen_Gtr(3, 3)
    # BFS layering: hypothesis (a) fails somewhere, clique branch fires
    lay = bfs_layering(lg.graph, 0)
    wit = lpw_lower_witness(lg, lay)
    assert wit.kind == "clique" and wit.bound >= 2
    assert len(wit.vertices) == 2
    la = list(lay.layer)
    assert all(la[u] == wit.layer for u in wit.vertices)
    # one-layer layering: ternary branch with exact pathwidth 2
    lay = Layering([0] * 147)
    wit = lpw_lower_witness(lg, lay)
    assert wit.kind == "ternary-tree"
    assert len(wit.vertices) == 13
    assert wit.detail == 2  # pw(T_{3,3}), not the published t-3 = 1
    assert wit.bound == 3 >= 2
    with pytest.raises(GraphError):
        lpw_lower_witness(gen_Gtr(2, 2), Layering([0] * 8))


def test_verify_lb_cases():
    rep = verify_lb(2, 1)
    assert rep.td == 2 and rep.blocks_ok
    rep = verify_lb(2, 2)
    assert rep.td == 3 and rep.radius <= 2 and rep.induced_drop_ok
    rep = verify_lb(3, 1)
    assert rep.td == 3
