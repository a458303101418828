"""Acceptance suite: one test per criterion, each printing a PASS/FAIL
line (run with ``pytest tests/test_acceptance.py -s`` to see them all).

Every bound is pinned exactly as stated; sweeps are exhaustive at the
stated sizes.
"""

import random

import pytest

from minorwidth.builders import (build_layered_elim_forest,
                                 build_layered_path_decomposition,
                                 td_radius_certificate)
from minorwidth.certificates import (certificate_from_text,
                                     certificate_to_text,
                                     check_certificate_doc,
                                     validate_elim_forest, validate_gst_path,
                                     validate_minor_model,
                                     validate_path_decomposition,
                                     validate_weak_gst_path)
from minorwidth.cli import _rows_menger
from minorwidth.corpus import (all_graphs, connected_graphs, random_layering)
from minorwidth.extraction import (ExtractionInput, extract_gst_path,
                                   fan_minor_driver, finding_F_plus,
                                   gst_to_rooted_path_model)
from minorwidth.graphs import (Graph, GraphError, bfs_layering, bits,
                               complete_graph, dfs_tree, fan_graph, mask_of,
                               path_graph)
from minorwidth.lowerbounds import gen_Gtr, gen_Thd, lpw_lower_witness, \
    verify_lb
from minorwidth.oracles import (GraphOracle, has_minor, is_apex_forest,
                                is_apex_linear_forest, lpw_exact, ltd_exact,
                                max_rooted_path_order, pw_exact,
                                pw_focused_exact)


import time as _time

_t0 = _time.monotonic()


def _line(num: int, name: str, ok: bool, detail: str = "") -> None:
    global _t0
    dt = _time.monotonic() - _t0
    _t0 = _time.monotonic()
    print(f"\nACCEPTANCE {num:2d} [{name}]: {'PASS' if ok else 'FAIL'} "
          f"{detail} [{dt:.1f}s]")
    assert ok, f"criterion {num} ({name}) failed: {detail}"


@pytest.fixture(scope="module")
def corpus56():
    small = [g for n in range(1, 6) for g in connected_graphs(n)]
    assert len(small) == 31
    six = list(connected_graphs(6))
    assert len(six) == 112
    return small + six


@pytest.fixture(scope="module")
def main_sweep(corpus56):
    """Shared sweep for criteria 1 and 2: every graph, every S."""
    ineq_violations = []
    extraction_failures = []
    instances = 0
    for g in corpus56:
        oracle = GraphOracle(g)
        t = dfs_tree(g, 0)
        for smask in range(1 << g.n):
            s = frozenset(bits(smask))
            td = oracle.td_focused(g.full_mask, smask)
            bound = 2 * max_rooted_path_order(g, s, oracle=oracle)
            instances += 1
            if td > bound:
                ineq_violations.append((g, sorted(s), td, bound))
            ell = (td + 1) // 2
            if ell < 1:
                continue
            try:
                j = extract_gst_path(ExtractionInput(g, s, t, frozenset(),
                                                     ell), oracle=oracle)
                if not validate_gst_path(g, s, t, j) or j.order != ell:
                    raise AssertionError("invalid certificate")
                model = gst_to_rooted_path_model(g, s, j)
                if not validate_minor_model(g, model.h, model, s):
                    raise AssertionError("invalid model")
            except Exception as exc:  # noqa: BLE001 - collected for report
                extraction_failures.append((g, sorted(s), repr(exc)))
    return instances, ineq_violations, extraction_failures


def test_criterion_1_thm_main(main_sweep):
    instances, violations, _ = main_sweep
    _line(1, "thm:main td(G,S) <= 2*max rooted path order",
          not violations, f"({instances} instances, "
          f"{len(violations)} violations)")


def test_criterion_2_extraction_totality(main_sweep):
    instances, _, failures = main_sweep
    _line(2, "lem:main extraction totality + validation",
          not failures,
          f"({instances} instances, {len(failures)} failures)"
          + (f" first: {failures[0]}" if failures else ""))


def test_criterion_3_fan_extraction():
    failures = []
    count = 0
    for n in range(1, 8):
        for g in connected_graphs(n):
            oracle = GraphOracle(g)
            for u in g.vertices():
                ell, model = fan_minor_driver(g, u, oracle=oracle)
                if ell < 1:
                    continue
                count += 1
                ok = bool(validate_minor_model(g, fan_graph(ell), model))
                ok = ok and has_minor(g, fan_graph(ell),
                                      oracle=oracle) is not None
                if not ok:
                    failures.append((g.edges, u, ell))
    _line(3, "cor:ltd fan extraction + independent minor check",
          not failures, f"({count} extractions, {len(failures)} failures)")


@pytest.fixture(scope="module")
def minor_free_tables():
    """For every connected g with n <= 6: the apex-linear forests and
    apex-forests on 3 or 4 vertices that g excludes."""
    linear_patterns = [h for size in (3, 4) for h in all_graphs(size)
                       if is_apex_linear_forest(h)]
    forest_patterns = [h for size in (3, 4) for h in all_graphs(size)
                       if is_apex_forest(h)]
    table = []
    for n in range(1, 7):
        for g in connected_graphs(n):
            oracle = GraphOracle(g)
            lin = [h for h in linear_patterns
                   if has_minor(g, h, oracle=oracle) is None]
            for_ = [h for h in forest_patterns
                    if has_minor(g, h, oracle=oracle) is None]
            table.append((g, lin, for_))
    return table


def test_criterion_4_layered_bounds(minor_free_tables):
    violations = []
    checked = 0
    for g, lin, for_ in minor_free_tables:
        if lin:
            ltd = ltd_exact(g).value
            for h in lin:
                checked += 1
                if ltd > h.n - 2:
                    violations.append(("ltd", g.edges, h.edges, ltd))
        if for_:
            lpw = lpw_exact(g).value
            for h in for_:
                checked += 1
                if lpw > h.n - 2:
                    violations.append(("lpw", g.edges, h.edges, lpw))
    _line(4, "thm:ltd / thm:lpw at |V(H)| in {3,4}",
          not violations, f"({checked} graph/pattern pairs, "
          f"{len(violations)} violations)")


def _check_fplus_outcome(g, s, w, f, x, y, v, out) -> str | None:
    ss = frozenset(s)
    va = out.sep.va
    sepset = out.sep.separator
    bpriv = out.sep.vb - va
    if out.kind == 1:
        if not validate_minor_model(g, f, out.model, sepset):
            return "1.1 model invalid"
        if va == frozenset(g.vertices()):
            return "1.2 A covers everything"
        rest = g.full_mask & ~mask_of(va)
        for cm in g.components_masks(rest) if rest else []:
            if not cm & mask_of(ss):
                return "1.2 component misses S"
        for z in sepset:
            if not g.adj[z] & mask_of(bpriv):
                return "1.3 separator vertex sees no B-private vertex"
        return None
    # kind 2
    f_minus, fx_old = f.induced(z for z in f.vertices() if z != x)
    if list(out.pattern_old) != fx_old:
        return "2.1 pattern mapping mismatch"
    if not validate_minor_model(g, f_minus, out.model, sepset):
        return "2.1 model invalid"
    y_new = fx_old.index(y)
    if v not in out.model.branch[y_new]:
        return "2.1 pin vertex missing from the y-branch"
    if out.s_star is None or out.s_star not in ss - va:
        return "2.2 anchor not in S outside A"
    for z in sepset:
        p = out.paths.get(z)
        if p is None or p[0] != out.s_star or p[-1] != z:
            return "2.2 missing or misdirected path"
        if any(not g.has_edge(a, b) for a, b in zip(p, p[1:])):
            return "2.2 path uses a non-edge"
        if len(set(p)) != len(p):
            return "2.2 path repeats a vertex"
        if any(q not in bpriv for q in p[1:-1]):
            return "2.2 internal vertex outside B-private"
    return None


def test_criterion_5_fplus_dichotomy():
    from minorwidth.oracles import is_forest
    three_vertex_forests = [h for h in all_graphs(3) if is_forest(h)]
    rng = random.Random(0)
    failures = []
    count = 0
    for n in range(1, 7):
        for g in connected_graphs(n):
            if pw_exact(g).value < 2:
                continue
            s_choices = [frozenset(g.vertices())]
            for _ in range(2):
                smask = rng.randrange(1, 1 << g.n)
                s = frozenset(bits(smask))
                if pw_focused_exact(g, s).value >= 2:
                    s_choices.append(s)
            for s in s_choices:
                for f in three_vertex_forests:
                    x = min(z for z in f.vertices() if f.degree(z) <= 1)
                    if f.degree(x) == 1:
                        y = f.neighbors(x)[0]
                    else:
                        y = min(z for z in f.vertices() if z != x)
                    v = min(s)
                    count += 1
                    try:
                        out = finding_F_plus(g, v, s, 2, f, x, y)
                        err = _check_fplus_outcome(g, s, 2, f, x, y, v, out)
                        if err is not None:
                            failures.append((g.edges, sorted(s),
                                             sorted(f.edges), err))
                    except Exception as exc:  # noqa: BLE001
                        failures.append((g.edges, sorted(s), sorted(f.edges),
                                         repr(exc)))
    _line(5, "lem:finding_F+ dichotomy with validated clauses",
          not failures, f"({count} instances, {len(failures)} failures)"
          + (f" first: {failures[0]}" if failures else ""))


def test_criterion_6_lower_bound_family():
    ok = True
    detail = []
    for (t, r) in ((2, 1), (2, 2), (3, 1), (3, 2)):
        rep = verify_lb(t, r)
        good = (rep.blocks_ok and rep.radius <= r
                and rep.td >= rep.td_bound and rep.induced_drop_ok)
        ok = ok and good
        detail.append(f"G({t},{r}): td={rep.td}>={rep.td_bound}")
    lg = gen_Gtr(3, 2)
    ok = ok and verify_lb(3, 2).td == 5
    forest, bound = td_radius_certificate(lg.graph, fan_graph(3))
    ok = ok and bound == 5 and forest.vertex_height() <= 5
    detail.append(f"tight: td(G(3,2))=5 == (|V(H_3)|-2)*radius+1={bound}")
    _line(6, "lem:lb family properties, tight at G(3,2)", ok,
          "; ".join(detail))


def test_criterion_7_menger_duality():
    rows = _rows_menger(seed=0, count=200)
    bad = [r for r in rows if r["verdict"] != "ok"]
    _line(7, "Menger duality on 200 seeded instances", not bad,
          f"({len(rows)} instances, {len(bad)} violations)")


def test_criterion_8_g33_witnesses():
    lg = gen_Gtr(3, 3)
    g = lg.graph
    t = 4
    failures = []
    kinds = {"clique": 0, "ternary-tree": 0}
    layerings = [bfs_layering(g, v) for v in g.vertices()]
    rng = random.Random(0)
    layerings += [random_layering(g, rng) for _ in range(100)]
    for lay in layerings:
        try:
            wit = lpw_lower_witness(lg, lay)
        except GraphError as exc:
            failures.append(repr(exc))
            continue
        kinds[wit.kind] += 1
        if wit.bound < t - 2:
            failures.append(f"bound {wit.bound} < {t - 2}")
            continue
        la = list(lay.layer)
        if any(la[u] != wit.layer for u in wit.vertices):
            failures.append("witness not in one layer")
        if wit.kind == "clique":
            if len(wit.vertices) < t - 2:
                failures.append("clique too small")
            vs = sorted(wit.vertices)
            if any(not g.has_edge(a, b) for i, a in enumerate(vs)
                   for b in vs[i + 1:]):
                failures.append("clique witness not a clique")
        else:
            if len(wit.vertices) != 13 or wit.detail != 2:
                failures.append(
                    f"tree witness wrong: size {len(wit.vertices)}, "
                    f"pw {wit.detail}")
            sub, _ = g.induced(wit.vertices)
            want = gen_Thd(3, 3)
            from minorwidth.corpus import canonical_key
            if sub.n != 13 or len(sub.edges) != 12:
                failures.append("tree witness malformed")
    _line(8, "lem:lb_layer witnesses on G(3,3), 247 layerings",
          not failures,
          f"(clique: {kinds['clique']}, ternary: {kinds['ternary-tree']}, "
          f"{len(failures)} failures)")


def test_criterion_9_builder_gates(minor_free_tables):
    failures = []
    built = 0
    done_elim = set()
    done_pd = set()
    for g, lin, for_ in minor_free_tables:
        for h in lin:
            key = (id(g), h.n - 1)
            if key in done_elim:
                continue
            done_elim.add(key)
            built += 1
            try:
                forest, layering, rep = build_layered_elim_forest(
                    g, 0, h.n - 1, mode="exhaustive")
                ok = (bool(validate_elim_forest(g, forest))
                      and rep.value <= h.n - 2
                      and rep.certificate["strategy"] == "A"
                      and layering.layer_sets()[0] == frozenset({0}))
                if not ok:
                    failures.append((g.edges, "elim", h.n, rep))
            except GraphError as exc:
                failures.append((g.edges, "elim", h.n, repr(exc)))
        for h in for_:
            key = (id(g), h.n - 2)
            if key in done_pd:
                continue
            done_pd.add(key)
            built += 1
            try:
                pd, layering, rep = build_layered_path_decomposition(
                    g, 0, h.n - 2, mode="exhaustive")
                ok = (bool(validate_path_decomposition(g, pd))
                      and rep.value <= h.n - 2
                      and rep.certificate["strategy"] == "A")
                if not ok:
                    failures.append((g.edges, "pd", h.n, rep))
            except GraphError as exc:
                failures.append((g.edges, "pd", h.n, repr(exc)))
    # the 21-vertex family instance, certified mode
    lg = gen_Gtr(3, 2)
    for builder, arg, cap in ((build_layered_elim_forest, 3, 2),
                              (build_layered_path_decomposition, 2, 2)):
        built += 1
        try:
            cert, layering, rep = builder(lg.graph, 0, arg, mode="certified")
            if rep.value > cap or rep.certificate["strategy"] != "A":
                failures.append(("G(3,2)", builder.__name__, rep.value))
        except GraphError as exc:
            failures.append(("G(3,2)", builder.__name__, repr(exc)))
    _line(9, "builder gates on the theorem corpus and G(3,2)",
          not failures, f"({built} builds, {len(failures)} failures)"
          + (f" first: {failures[0]}" if failures else ""))


def test_criterion_10_roundtrip_and_determinism(tmp_path):
    from minorwidth.cli import main as cli_main
    from minorwidth.io import graph_to_graph6
    ok = True
    detail = []
    # certificate round-trips across every kind
    g = path_graph(4)
    t = dfs_tree(g, 0)
    from minorwidth.certificates import (EliminationForest, GstPath,
                                         Layering, MinorModel,
                                         PathDecomposition, WeakGstPath)
    from minorwidth.graphs import RootedForest
    from minorwidth.separations import make_separation
    cases = [
        (EliminationForest(RootedForest([0, 1, 2, 3],
                                        {1: 0, 2: 1, 3: 2})), None, None),
        (EliminationForest(RootedForest([0, 2], {2: 0}), focused=True),
         frozenset({0, 2}), None),
        (PathDecomposition(tuple(frozenset({i, i + 1}) for i in range(3))),
         None, None),
        (PathDecomposition((frozenset({0}),), j=frozenset({0})),
         frozenset({0}), None),
        (Layering([0, 1, 2, 3]), None, None),
        (GstPath((0, 1, 2, 3), ((3,),)), frozenset({3}), t),
        (WeakGstPath((0, 1, 2), (2,)), frozenset({2}), t),
        (MinorModel(path_graph(2), {0: frozenset({0}), 1: frozenset({1})},
                    frozenset({0, 1})), None, None),
        (make_separation(g, {0, 1}, {1, 2, 3}), None, None),
    ]
    for cert, s, tree in cases:
        text = certificate_to_text(cert, g, s, tree)
        doc = certificate_from_text(text)
        v1 = check_certificate_doc(g, doc)
        text2 = certificate_to_text(doc.certificate, g, doc.s, doc.tree)
        v2 = check_certificate_doc(g, certificate_from_text(text2))
        if text != text2 or v1.ok != v2.ok:
            ok = False
            detail.append(f"round-trip broke for {doc.kind}")
    # seeded reports are byte-identical
    r1, r2 = str(tmp_path / "a.csv"), str(tmp_path / "b.csv")
    corpus = tmp_path / "c.g6"
    corpus.write_text("".join(graph_to_graph6(g) + "\n"
                              for g in connected_graphs(4)))
    for r in (r1, r2):
        code = cli_main(["verify", "--check", "thm-main", "--corpus",
                         str(corpus), "--seed", "7", "--report", r])
        ok = ok and code == 0
    same = open(r1).read() == open(r2).read()
    for r in (r1, r2):
        code = cli_main(["verify", "--check", "menger", "--seed", "7",
                         "--count", "40", "--report", r])
        ok = ok and code == 0
    same = same and open(r1).read() == open(r2).read()
    if not same:
        ok = False
        detail.append("reports differ between same-seed runs")
    _line(10, "round-trip serialization + deterministic reports", ok,
          "; ".join(detail) or "(9 kinds, 2 report pairs)")
