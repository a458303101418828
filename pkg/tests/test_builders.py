import random

import pytest

from minorwidth.builders import (BuilderDiagnostic, build_layered_elim_forest,
                                 build_layered_path_decomposition,
                                 pw_radius_certificate, td_radius_certificate)
from minorwidth.certificates import (layered_width_elim, layered_width_pd,
                                     validate_elim_forest,
                                     validate_path_decomposition)
from minorwidth.corpus import connected_graphs_upto
from minorwidth.graphs import (Graph, GraphError, complete_graph, cycle_graph,
                               fan_graph, path_graph, radius_diameter,
                               star_graph)
from minorwidth.lowerbounds import gen_Gtr
from minorwidth.oracles import has_minor, td_exact


def test_tree_elim_builder():
    g = Graph(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (5, 6)])
    forest, layering, rep = build_layered_elim_forest(g, 0, 2)
    assert rep.value <= 1
    assert layering.layer_sets()[0] == frozenset({0})
    assert validate_elim_forest(g, forest)
    assert layered_width_elim(g, forest, layering).value == rep.value


def test_k1_elim_builder():
    forest, layering, rep = build_layered_elim_forest(Graph(1), 0, 2)
    assert rep.value == 1


def test_gtr_elim_builder():
    lg = gen_Gtr(3, 2)
    v = 0  # a level-1 vertex
    forest, layering, rep = build_layered_elim_forest(lg.graph, v, 3,
                                                      mode="certified")
    assert rep.value <= 2
    assert rep.certificate["strategy"] == "A"
    assert validate_elim_forest(lg.graph, forest)
    assert layering.layer_sets()[0] == frozenset({v})


def test_hypothesis_gate():
    # K_4 has td(G-U, N(U)) = 3 for U a single vertex, so ell=3 fails
    with pytest.raises(GraphError):
        build_layered_elim_forest(complete_graph(4), 0, 3)


def test_pd_builder_examples():
    g = Graph(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (5, 6)])
    pd, layering, rep = build_layered_path_decomposition(g, 0, 1)
    assert rep.value <= 1 and validate_path_decomposition(g, pd)
    pd, layering, rep = build_layered_path_decomposition(cycle_graph(6), 0, 2)
    assert rep.value <= 2
    assert layered_width_pd(cycle_graph(6), pd, layering).value == rep.value
    pd, layering, rep = build_layered_path_decomposition(Graph(1), 0, 1)
    assert rep.value == 1


def test_gtr_pd_builder():
    lg = gen_Gtr(3, 2)
    pd, layering, rep = build_layered_path_decomposition(lg.graph, 0, 2,
                                                         mode="certified")
    assert rep.value <= 2 and rep.certificate["strategy"] == "A"
    assert validate_path_decomposition(lg.graph, pd)


def test_td_radius_certificate():
    g = path_graph(9)
    forest, bound = td_radius_certificate(g, fan_graph(2))
    assert bound == 1 * 4 + 1 == 5
    assert forest.vertex_height() <= bound
    assert td_exact(g).value <= bound
    with pytest.raises(GraphError):
        td_radius_certificate(complete_graph(3), fan_graph(2))  # has minor
    # tightness on the clique family
    lg = gen_Gtr(3, 2)
    forest, bound = td_radius_certificate(lg.graph, fan_graph(3))
    assert bound == (4 - 2) * 2 + 1 == 5
    assert forest.vertex_height() <= 5
    assert td_exact(lg.graph).value == 5


def test_pw_radius_certificate():
    g = Graph(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (5, 6)])
    pd, bound = pw_radius_certificate(g, complete_graph(3))
    assert pd.width() <= bound == radius_diameter(g)[0]
    pdc, bound = pw_radius_certificate(cycle_graph(8), star_graph(3))
    assert pdc.width() <= bound == 2 * 4
    with pytest.raises(GraphError):
        pw_radius_certificate(complete_graph(4), complete_graph(3))


def test_flattening_arithmetic():
    """Vertex height <= 1 + per-layer width * radius, recomputed."""
    for g, h in [(path_graph(9), fan_graph(2)), (gen_Gtr(3, 2).graph,
                                                 fan_graph(3))]:
        forest, bound = td_radius_certificate(g, h)
        radius = radius_diameter(g)[0]
        # recompute the per-layer width of the final pair independently
        from minorwidth.builders import _center_vertex
        from minorwidth.graphs import bfs_layering
        v = _center_vertex(g)
        lay = bfs_layering(g, v)
        width = layered_width_elim(g, forest, lay).value
        assert forest.vertex_height() <= 1 + width * radius


def test_builders_on_larger_family_instances():
    """Stress the layer-peeling scheme beyond the exhaustive range: the
    32-vertex tree-of-edges family and the 40-vertex 4-clique family."""
    lg = gen_Gtr(2, 3)
    assert lg.graph.n == 32
    forest, layering, rep = build_layered_elim_forest(lg.graph, 0, 2,
                                                      mode="certified")
    assert rep.value <= 1 and rep.certificate["strategy"] == "A"
    assert validate_elim_forest(lg.graph, forest)
    pd, layering, rep = build_layered_path_decomposition(lg.graph, 0, 1,
                                                         mode="certified")
    assert rep.value <= 1 and validate_path_decomposition(lg.graph, pd)

    lg = gen_Gtr(4, 2)
    assert lg.graph.n == 40
    forest, layering, rep = build_layered_elim_forest(lg.graph, 0, 4,
                                                      mode="certified")
    assert rep.value <= 3 and rep.certificate["strategy"] == "A"
    assert validate_elim_forest(lg.graph, forest)
    pd, layering, rep = build_layered_path_decomposition(lg.graph, 0, 3,
                                                         mode="certified")
    assert rep.value <= 3 and validate_path_decomposition(lg.graph, pd)
    assert layered_width_pd(lg.graph, pd, layering).value == rep.value


def test_builders_from_every_start_vertex():
    """The start-vertex pin holds wherever the build begins."""
    lg = gen_Gtr(3, 2)
    for v in (0, 3, 20):
        forest, layering, rep = build_layered_elim_forest(
            lg.graph, v, 3, mode="certified")
        assert layering.layer_sets()[0] == frozenset({v})
        assert rep.value <= 2
        pd, layering, rep = build_layered_path_decomposition(
            lg.graph, v, 2, mode="certified")
        assert layering.layer_sets()[0] == frozenset({v})
        assert rep.value <= 2


def test_builders_every_start_on_theorem_corpus():
    """Strategy A meets its gate from every start vertex across the whole
    excluded-minor corpus (a deep-layer elimination root once broke this;
    roots now prefer shallow layers)."""
    from minorwidth.corpus import all_graphs, connected_graphs
    from minorwidth.oracles import (GraphOracle, is_apex_forest,
                                    is_apex_linear_forest)
    lin = [h for size in (3, 4) for h in all_graphs(size)
           if is_apex_linear_forest(h)]
    fo = [h for size in (3, 4) for h in all_graphs(size)
          if is_apex_forest(h)]
    for n in range(1, 7):
        for g in connected_graphs(n):
            oracle = GraphOracle(g)
            ells = sorted({h.n - 1 for h in lin
                           if has_minor(g, h, oracle=oracle) is None})
            ws = sorted({h.n - 2 for h in fo
                         if has_minor(g, h, oracle=oracle) is None})
            for ell in ells:
                for v in g.vertices():
                    f2, lay, rep = build_layered_elim_forest(g, v, ell)
                    assert validate_elim_forest(g, f2)
                    assert rep.value <= ell - 1
                    assert rep.certificate["strategy"] == "A", \
                        (sorted(g.edges), v, ell)
            for w in ws:
                for v in g.vertices():
                    pd, lay, rep = build_layered_path_decomposition(g, v, w)
                    assert validate_path_decomposition(g, pd)
                    assert rep.value <= w
                    assert rep.certificate["strategy"] == "A", \
                        (sorted(g.edges), v, w)


def test_radius_certificates_over_corpus():
    """Every excluded pattern on 3 or 4 vertices, every minor-free graph
    with up to 6 vertices: the flattened certificates meet their bounds
    and the exact parameters confirm them."""
    from minorwidth.corpus import all_graphs, connected_graphs
    from minorwidth.oracles import (GraphOracle, is_apex_forest,
                                    is_apex_linear_forest, pw_exact)
    lin = [h for size in (3, 4) for h in all_graphs(size)
           if is_apex_linear_forest(h)]
    fo = [h for size in (3, 4) for h in all_graphs(size)
          if is_apex_forest(h)]
    for n in range(1, 7):
        for g in connected_graphs(n):
            oracle = GraphOracle(g)
            radius = radius_diameter(g)[0]
            for h in lin:
                if has_minor(g, h, oracle=oracle) is not None:
                    continue
                f, bound = td_radius_certificate(g, h)
                assert bound == (h.n - 2) * radius + 1
                assert validate_elim_forest(g, f)
                assert f.vertex_height() <= bound
                assert td_exact(g).value <= bound
            for h in fo:
                if has_minor(g, h, oracle=oracle) is not None:
                    continue
                pd, bound = pw_radius_certificate(g, h)
                assert bound == (h.n - 2) * radius
                assert validate_path_decomposition(g, pd)
                assert pd.width() <= bound
                assert pw_exact(g).value <= bound


def test_builder_gate_on_small_corpus():
    """Strategy A never silently accepts an over-wide output: on every
    connected n <= 5 graph, if the hypotheses admit a build at ell=2 or 3,
    the result passes the validator and the width gate."""
    for g in connected_graphs_upto(5):
        for ell in (2, 3):
            try:
                forest, layering, rep = build_layered_elim_forest(g, 0, ell)
            except GraphError:
                continue
            assert validate_elim_forest(g, forest)
            assert rep.value <= ell - 1
        for w in (1, 2):
            try:
                pd, layering, rep = build_layered_path_decomposition(g, 0, w)
            except GraphError:
                continue
            assert validate_path_decomposition(g, pd)
            assert rep.value <= w
