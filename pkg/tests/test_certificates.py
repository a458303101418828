import random

import pytest

from minorwidth.certificates import (EliminationForest, GstPath, MinorModel,
                                     PathDecomposition, WeakGstPath,
                                     certificate_from_text,
                                     certificate_to_text,
                                     check_certificate_doc, layered_width_elim,
                                     layered_width_pd, validate_elim_forest,
                                     validate_gst_path, validate_minor_model,
                                     validate_path_decomposition,
                                     validate_weak_gst_path, vertex_height)
from minorwidth.graphs import (Graph, GraphError, Layering, RootedForest,
                               complete_graph, cycle_graph, dfs_tree,
                               path_graph, star_graph)
from minorwidth.separations import make_separation


def chain_forest(k):
    return RootedForest(range(k), {i: i - 1 for i in range(1, k)})


def test_vertex_height():
    assert vertex_height(RootedForest([0], {})) == 1
    assert vertex_height(chain_forest(4)) == 4
    two = RootedForest([0, 1, 2, 3, 4],
                       {1: 0, 3: 2, 4: 3})
    assert vertex_height(two) == 3


def test_validate_elim_forest_plain():
    g = complete_graph(2)
    ok = validate_elim_forest(g, EliminationForest(chain_forest(2)))
    assert ok
    bad = validate_elim_forest(
        g, EliminationForest(RootedForest([0, 1], {})))
    assert not bad and bad.clause == "edge-not-ancestral"


def test_validate_elim_forest_focused():
    g = path_graph(3)
    f = EliminationForest(RootedForest([0, 1, 2], {0: 1, 2: 1}), focused=True)
    ver = validate_elim_forest(g, f, {0, 2})
    assert ver and f.vertex_height() == 2
    # dropped component with a non-chain neighbourhood is rejected
    g = star_graph(3)
    f = EliminationForest(RootedForest([1, 2], {}), focused=True)
    ver = validate_elim_forest(g, f, {1, 2})
    assert not ver


def test_validate_pd():
    g = path_graph(3)
    pd = PathDecomposition((frozenset({0, 1}), frozenset({1, 2})))
    assert validate_path_decomposition(g, pd) and pd.width() == 1
    bad = PathDecomposition((frozenset({0, 1}), frozenset({2})))
    ver = validate_path_decomposition(g, bad)
    assert not ver and ver.clause == "edge-uncovered"
    # interval violation
    bad = PathDecomposition((frozenset({0, 1}), frozenset({1, 2}),
                             frozenset({0, 1})))
    assert validate_path_decomposition(g, bad).clause == "interval"
    # focused: star with only the centre decomposed
    g = star_graph(3)
    pd = PathDecomposition((frozenset({0}),), j=frozenset({0}))
    assert validate_path_decomposition(g, pd, {0})


def test_layered_widths():
    g = Graph(1)
    f = EliminationForest(RootedForest([0], {}))
    lay = Layering([0])
    assert layered_width_elim(g, f, lay).value == 1
    g = path_graph(4)
    f = EliminationForest(chain_forest(4))
    assert layered_width_elim(g, f, Layering([0, 0, 0, 0])).value == 4
    assert layered_width_elim(g, f, Layering([0, 1, 2, 3])).value == 1
    # layered pd widths
    g = complete_graph(4)
    pd = PathDecomposition((frozenset(range(4)),))
    assert layered_width_pd(g, pd, Layering([0, 0, 1, 1])).value == 2
    g = path_graph(5)
    pd = PathDecomposition(tuple(frozenset({i, i + 1}) for i in range(4)))
    assert layered_width_pd(g, pd, Layering([0, 1, 2, 3, 4])).value == 1
    with pytest.raises(GraphError):
        layered_width_pd(g, PathDecomposition((frozenset({0}),)),
                         Layering([0] * 5))
    # all-in-one-layer layered width equals the vertex height
    f = EliminationForest(chain_forest(5))
    assert layered_width_elim(path_graph(5), f,
                              Layering([0] * 5)).value == vertex_height(f)


def test_validate_minor_model():
    g = cycle_graph(4)
    m = MinorModel(Graph(1), {0: frozenset({0, 1})})
    assert validate_minor_model(g, m.h, m)
    # touching branch sets without the h-edge realised
    h = complete_graph(2)
    m = MinorModel(h, {0: frozenset({0}), 1: frozenset({2})})
    ver = validate_minor_model(g, h, m)
    assert not ver and ver.clause == "h-edge-unrealized"
    # P3 model in C4, rooted everywhere
    h = path_graph(3)
    m = MinorModel(h, {0: frozenset({0}), 1: frozenset({1}),
                       2: frozenset({2})}, frozenset(range(4)))
    assert validate_minor_model(g, h, m, range(4))
    # overlap / disconnection
    m = MinorModel(h, {0: frozenset({0}), 1: frozenset({0}),
                       2: frozenset({2})})
    assert validate_minor_model(g, h, m).clause == "branch-overlap"
    m = MinorModel(Graph(1), {0: frozenset({0, 2})})
    assert validate_minor_model(g, m.h, m).clause == "branch-disconnected"


def test_validate_gst_path():
    g = path_graph(3)
    t = dfs_tree(g, 0)
    j = GstPath((0, 1, 2), ((2,),))
    assert validate_gst_path(g, {2}, t, j)
    # rib meeting the spine beyond its attachment
    g = path_graph(3)
    t = dfs_tree(g, 0)
    j = GstPath((0, 1, 2), ((2,), (0, 1)))
    ver = validate_gst_path(g, {1, 2}, t, j)
    assert not ver and ver.clause == "J2-spine-intersection"
    # coccyx must be an attachment
    g = path_graph(3)
    t = dfs_tree(g, 0)
    j = GstPath((0, 1), ((0,),))
    assert validate_gst_path(g, {0}, t, j).clause.startswith("J3")


def test_validate_weak_gst_path():
    g = star_graph(3)
    t = dfs_tree(g, 1)
    j = WeakGstPath(t.vertical_path(2), (0, 2))
    assert validate_weak_gst_path(g, {2, 3}, t, j)
    j = WeakGstPath(t.vertical_path(0), (3,))
    ver = validate_weak_gst_path(g, {3}, t, j)
    assert not ver and ver.clause == "W2-attachment-off-spine"


def test_roundtrip_serialization():
    g = path_graph(4)
    t = dfs_tree(g, 0)
    cases = [
        (EliminationForest(chain_forest(4)), None, None),
        (EliminationForest(RootedForest([0, 2], {2: 0}), focused=True),
         frozenset({0, 2}), None),
        (PathDecomposition(tuple(frozenset({i, i + 1}) for i in range(3))),
         None, None),
        (Layering([0, 1, 1, 2]), None, None),
        (GstPath((0, 1, 2, 3), ((3,),)), frozenset({3}), t),
        (WeakGstPath((0, 1, 2), (1, 2)), frozenset({2, 3}), t),
        (MinorModel(path_graph(2), {0: frozenset({0, 1}), 1: frozenset({2})},
                    frozenset({0, 2})), None, None),
        (make_separation(g, {0, 1}, {1, 2, 3}), None, None),
    ]
    for cert, s, tree in cases:
        text = certificate_to_text(cert, g, s, tree)
        doc = certificate_from_text(text)
        before = check_certificate_doc(g, doc)
        text2 = certificate_to_text(doc.certificate, g, doc.s, doc.tree)
        assert text == text2, f"round-trip not lossless for {doc.kind}"
        after = check_certificate_doc(g, certificate_from_text(text2))
        assert before.ok == after.ok and before.clause == after.clause


def test_hash_binding_and_tamper():
    g = path_graph(3)
    pd = PathDecomposition((frozenset({0, 1}), frozenset({1, 2})))
    text = certificate_to_text(pd, g)
    doc = certificate_from_text(text)
    other = complete_graph(3)
    assert check_certificate_doc(other, doc).clause == "graph-hash-mismatch"
    import json
    raw = json.loads(text)
    raw["payload"]["bags"][1] = [2]
    doc = certificate_from_text(json.dumps(raw))
    ver = check_certificate_doc(g, doc)
    assert not ver and ver.clause == "edge-uncovered"
