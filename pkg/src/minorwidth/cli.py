"""Command-line front end.

Subcommands: compute (parameter oracles), extract (certificate-producing
drivers), verify (theorem sweeps over corpora, CSV reports), generate
(lower-bound families), check (certificate files against graphs).

Exit codes: 0 all checks passed, 1 a property or bound was violated,
2 input error.  MW_THREADS caps sweep parallelism (default 1).
"""

from __future__ import annotations

import argparse
import csv
import os
import random
import sys
from itertools import combinations

from . import certificates as cert_mod
from . import oracles
from .corpus import all_graphs
from .extraction import (apex_forest_minor_driver, fan_minor_driver,
                         srooted_path_driver)
from .graphs import Graph, GraphError, bits, mask_of
from .io import (graph_from_graph6, graph_to_edgelist, graph_to_graph6,
                 read_graph6_file, read_graph_file)
from .lowerbounds import gen_Gtr, gen_Thd, verify_lb
from .separations import disjoint_paths

CSV_COLUMNS = ["index", "graph6", "check", "params", "bound", "achieved",
               "verdict", "certificate"]

CHECKS = ("thm-main", "cor-ltd", "thm-ltd", "thm-lpw", "lemma-lb", "menger")


def _parse_s(text: str | None, g: Graph) -> frozenset[int]:
    if text is None:
        return frozenset(g.vertices())
    if text.strip() == "":
        return frozenset()
    try:
        vals = [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise GraphError(f"cannot parse vertex list {text!r}") from None
    for v in vals:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} outside the graph")
    return frozenset(vals)


def cmd_compute(args: argparse.Namespace) -> int:
    g = read_graph_file(args.graph, args.format)
    s = _parse_s(args.s, g)
    param = args.param
    if param == "td":
        pv = oracles.td_exact(g)
        context = None
    elif param == "pw":
        pv = oracles.pw_exact(g)
        context = None
    elif param == "td-focused":
        pv = oracles.td_focused_exact(g, s)
        context = s
    elif param == "pw-focused":
        pv = oracles.pw_focused_exact(g, s)
        context = s
    elif param == "ltd":
        pv = oracles.ltd_exact(g)
        context = None
    else:
        pv = oracles.lpw_exact(g)
        context = None
    print(f"{param} = {pv.value}")
    if args.cert:
        payload = pv.certificate
        if param in ("ltd", "lpw") and payload is not None:
            main_cert, layering = payload
            with open(args.cert, "w") as fh:
                fh.write(cert_mod.certificate_to_text(main_cert, g, context))
            with open(args.cert + ".layering", "w") as fh:
                fh.write(cert_mod.certificate_to_text(layering, g))
        elif payload is not None:
            with open(args.cert, "w") as fh:
                fh.write(cert_mod.certificate_to_text(payload, g, context))
        print(f"certificate written to {args.cert}")
    return 0


def cmd_extract(args: argparse.Namespace) -> int:
    g = read_graph_file(args.graph, args.format)
    if args.what == "srooted-path":
        s = _parse_s(args.s, g)
        order, model, ok = srooted_path_driver(g, s)
        print(f"order {order}, bound {'holds' if ok else 'VIOLATED'}")
        if model is not None and args.out:
            with open(args.out, "w") as fh:
                fh.write(cert_mod.certificate_to_text(model, g))
            print(f"model written to {args.out}")
        return 0 if ok else 1
    if args.what == "fan":
        if args.u is None:
            raise GraphError("--u is required for fan extraction")
        ell, model = fan_minor_driver(g, args.u)
        print(f"fan order {ell}")
        if model is not None and args.out:
            with open(args.out, "w") as fh:
                fh.write(cert_mod.certificate_to_text(model, g))
            print(f"model written to {args.out}")
        return 0
    if args.u is None or args.h is None:
        raise GraphError("apex-forest extraction needs --u and --h")
    h = read_graph_file(args.h, args.format)
    model = apex_forest_minor_driver(g, args.u, h)
    print(f"model of h on {h.n} vertices found")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(cert_mod.certificate_to_text(model, g))
        print(f"model written to {args.out}")
    return 0


def cmd_generate(args: argparse.Namespace) -> int:
    if args.family == "gtr":
        lg = gen_Gtr(args.t, args.r)
        g = lg.graph
    else:
        g = gen_Thd(args.t, args.r)
    with open(args.out, "w") as fh:
        if args.format == "edgelist":
            fh.write(graph_to_edgelist(g))
        else:
            fh.write(graph_to_graph6(g) + "\n")
    print(f"wrote {g.n} vertices, {len(g.edges)} edges to {args.out}")
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    g = read_graph_file(args.graph, args.format)
    with open(args.cert) as fh:
        doc = cert_mod.certificate_from_text(fh.read())
    ver = cert_mod.check_certificate_doc(g, doc)
    if ver:
        print(f"ok: {doc.kind} certificate valid")
        return 0
    if ver.clause == "graph-hash-mismatch":
        print(f"error: certificate bound to a different graph", file=sys.stderr)
        return 2
    print(f"violated: {ver.clause} witness={ver.witness}")
    return 1


# -- verify sweeps -----------------------------------------------------------


def _rows_thm_main(idx: int, g6: str, nmax: int, scap: int) -> list[dict]:
    g = graph_from_graph6(g6)
    rows = []
    if g.n > nmax:
        return [dict(graph6=g6, check="thm-main", params="", bound="",
                     achieved="", verdict="skipped", certificate="")]
    if g.n > scap:
        return [dict(graph6=g6, check="thm-main", params="all-S cap", bound="",
                     achieved="", verdict="skipped", certificate="")]
    for smask in range(1 << g.n):
        s = frozenset(bits(smask))
        td = oracles.td_focused_exact(g, s).value
        bound = 2 * oracles.max_rooted_path_order(g, s)
        ok = td <= bound
        rows.append(dict(graph6=g6, check="thm-main", params=f"S={sorted(s)}",
                         bound=bound, achieved=td,
                         verdict="ok" if ok else "VIOLATED", certificate=""))
    return rows


def _rows_cor_ltd(idx: int, g6: str, nmax: int) -> list[dict]:
    g = graph_from_graph6(g6)
    if g.n > nmax:
        return [dict(graph6=g6, check="cor-ltd", params="", bound="",
                     achieved="", verdict="skipped", certificate="")]
    from .certificates import validate_minor_model
    from .graphs import fan_graph
    rows = []
    for u in g.vertices():
        ell, model = fan_minor_driver(g, u)
        if ell == 0:
            rows.append(dict(graph6=g6, check="cor-ltd", params=f"u={u}",
                             bound=0, achieved=0, verdict="ok",
                             certificate=""))
            continue
        ok = bool(validate_minor_model(g, fan_graph(ell), model))
        ok = ok and oracles.has_minor(g, fan_graph(ell)) is not None
        rows.append(dict(graph6=g6, check="cor-ltd", params=f"u={u}",
                         bound=ell, achieved=ell,
                         verdict="ok" if ok else "VIOLATED", certificate=""))
    return rows


def _apex_patterns(linear: bool) -> list[Graph]:
    out = []
    for size in (3, 4):
        for h in all_graphs(size):
            if linear and oracles.is_apex_linear_forest(h):
                out.append(h)
            elif not linear and oracles.is_apex_forest(h):
                out.append(h)
    return out


def _rows_thm_layered(idx: int, g6: str, nmax: int, linear: bool) -> list[dict]:
    check = "thm-ltd" if linear else "thm-lpw"
    g = graph_from_graph6(g6)
    if g.n > min(nmax, oracles.LAYERED_BOUND):
        return [dict(graph6=g6, check=check, params="", bound="",
                     achieved="", verdict="skipped", certificate="")]
    value = (oracles.ltd_exact(g) if linear else oracles.lpw_exact(g)).value
    rows = []
    for h in _apex_patterns(linear):
        if oracles.has_minor(g, h) is not None:
            continue
        bound = h.n - 2
        ok = value <= bound
        rows.append(dict(graph6=g6, check=check,
                         params=f"H=<{graph_to_graph6(h)}>",
                         bound=bound, achieved=value,
                         verdict="ok" if ok else "VIOLATED", certificate=""))
    return rows


def _rows_menger(seed: int, count: int) -> list[dict]:
    rng = random.Random(seed)
    rows = []
    for i in range(count):
        n = rng.randint(2, 8)
        edges = [e for e in combinations(range(n), 2) if rng.random() < 0.4]
        g = Graph(n, edges)
        a = frozenset(rng.sample(range(n), rng.randint(1, n)))
        b = frozenset(rng.sample(range(n), rng.randint(1, n)))
        paths, sep = disjoint_paths(g, a, b)
        best = None
        for k in range(n + 1):
            for csub in combinations(range(n), k):
                rem = g.full_mask & ~mask_of(csub)
                am = mask_of(a - set(csub))
                bm = mask_of(b - set(csub))
                bad = bool(am & bm)
                if not bad:
                    for cm in (g.components_masks(rem) if rem else []):
                        if cm & am and cm & bm:
                            bad = True
                            break
                if not bad:
                    best = k
                    break
            if best is not None:
                break
        ok = best == len(paths) == len(sep)
        rows.append(dict(graph6=graph_to_graph6(g), check="menger",
                         params=f"a={sorted(a)};b={sorted(b)}",
                         bound=best, achieved=len(paths),
                         verdict="ok" if ok else "VIOLATED", certificate=""))
    return rows


def _rows_lemma_lb(seed: int, witness_count: int = 100) -> list[dict]:
    rows = []
    for (t, r) in ((2, 1), (2, 2), (3, 1), (3, 2)):
        try:
            rep = verify_lb(t, r)
            ok = rep.blocks_ok and rep.radius <= r and rep.td >= rep.td_bound \
                and rep.induced_drop_ok
            rows.append(dict(graph6="", check="lemma-lb",
                             params=f"t={t};r={r}", bound=rep.td_bound,
                             achieved=rep.td,
                             verdict="ok" if ok else "VIOLATED",
                             certificate=""))
        except GraphError as exc:
            rows.append(dict(graph6="", check="lemma-lb",
                             params=f"t={t};r={r}", bound="", achieved="",
                             verdict=f"VIOLATED: {exc}", certificate=""))
    # layered-width witness sampling on the square family (t=4): BFS
    # layerings from every vertex plus seeded random valid layerings
    from .corpus import random_layering
    from .graphs import bfs_layering
    from .lowerbounds import lpw_lower_witness
    lg = gen_Gtr(3, 3)
    rng = random.Random(seed)
    layerings = [("bfs-" + str(v), bfs_layering(lg.graph, v))
                 for v in lg.graph.vertices()]
    layerings += [("rnd-" + str(i), random_layering(lg.graph, rng))
                  for i in range(witness_count)]
    for name, lay in layerings:
        try:
            wit = lpw_lower_witness(lg, lay)
            ok = wit.bound >= 2
            rows.append(dict(graph6="", check="lemma-lb",
                             params=f"lpw-witness;{name};{wit.kind}",
                             bound=2, achieved=wit.bound,
                             verdict="ok" if ok else "VIOLATED",
                             certificate=""))
        except GraphError as exc:
            rows.append(dict(graph6="", check="lemma-lb",
                             params=f"lpw-witness;{name}", bound=2,
                             achieved="", verdict=f"VIOLATED: {exc}",
                             certificate=""))
    return rows


def cmd_verify(args: argparse.Namespace) -> int:
    if args.check not in CHECKS:
        raise GraphError(f"unknown check {args.check!r}; pick from {CHECKS}")
    scap = args.nmax if args.allow_big else min(args.nmax, 6)
    instances: list[list[dict]] = []
    if args.check == "menger":
        instances.append(_rows_menger(args.seed, args.count))
    elif args.check == "lemma-lb":
        instances.append(_rows_lemma_lb(args.seed, args.count))
    else:
        if args.corpus is None:
            raise GraphError(f"check {args.check} needs --corpus")
        graphs = read_graph6_file(args.corpus)
        tasks = [(i, graph_to_graph6(g)) for i, g in enumerate(graphs)]
        workers = int(os.environ.get("MW_THREADS", "1"))
        if args.check == "thm-main":
            fn = lambda t: _rows_thm_main(t[0], t[1], args.nmax, scap)
        elif args.check == "cor-ltd":
            fn = lambda t: _rows_cor_ltd(t[0], t[1], args.nmax)
        elif args.check == "thm-ltd":
            fn = lambda t: _rows_thm_layered(t[0], t[1], args.nmax, True)
        else:
            fn = lambda t: _rows_thm_layered(t[0], t[1], args.nmax, False)
        if workers > 1:
            from concurrent.futures import ProcessPoolExecutor
            payload = [(args.check, t[0], t[1], args.nmax, scap)
                       for t in tasks]
            with ProcessPoolExecutor(max_workers=workers) as pool:
                instances = list(pool.map(_worker, payload))
        else:
            instances = [fn(t) for t in tasks]

    violations = 0
    with open(args.report, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        index = 0
        for block in instances:
            for row in block:
                row["index"] = index
                if row["verdict"].startswith("VIOLATED"):
                    violations += 1
                    vio_path = f"{args.report}.violation{index}.txt"
                    with open(vio_path, "w") as vf:
                        vf.write(repr(row) + "\n")
                    row["certificate"] = vio_path
                writer.writerow(row)
                index += 1
    print(f"{index} rows, {violations} violations -> {args.report}")
    return 1 if violations else 0


def _worker(payload: tuple) -> list[dict]:
    check, idx, g6, nmax, scap = payload
    if check == "thm-main":
        return _rows_thm_main(idx, g6, nmax, scap)
    if check == "cor-ltd":
        return _rows_cor_ltd(idx, g6, nmax)
    if check == "thm-ltd":
        return _rows_thm_layered(idx, g6, nmax, True)
    return _rows_thm_layered(idx, g6, nmax, False)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="minorwidth",
        description="exact layered-width oracles, extraction and sweeps")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="exact parameter computation")
    p.add_argument("--param", required=True,
                   choices=["td", "pw", "td-focused", "pw-focused", "ltd", "lpw"])
    p.add_argument("--graph", required=True)
    p.add_argument("--format", default="auto")
    p.add_argument("--s", default=None, help="comma-separated vertex list")
    p.add_argument("--cert", default=None, help="certificate output path")
    p.set_defaults(fn=cmd_compute)

    p = sub.add_parser("extract", help="certificate-producing drivers")
    p.add_argument("--what", required=True,
                   choices=["srooted-path", "fan", "apex-forest"])
    p.add_argument("--graph", required=True)
    p.add_argument("--format", default="auto")
    p.add_argument("--u", type=int, default=None)
    p.add_argument("--h", default=None, help="pattern graph file")
    p.add_argument("--s", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_extract)

    p = sub.add_parser("verify", help="theorem sweeps over corpora")
    p.add_argument("--check", required=True)
    p.add_argument("--corpus", default=None)
    p.add_argument("--nmax", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--allow-big", action="store_true",
                   help="lift the n <= 6 cap for all-S sweeps")
    p.add_argument("--report", required=True)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("generate", help="lower-bound family generation")
    p.add_argument("--family", required=True, choices=["gtr", "tree"])
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--format", default="graph6", choices=["graph6", "edgelist"])
    p.set_defaults(fn=cmd_generate)

    p = sub.add_parser("check", help="validate a certificate file")
    p.add_argument("--graph", required=True)
    p.add_argument("--format", default="auto")
    p.add_argument("--cert", required=True)
    p.set_defaults(fn=cmd_check)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except GraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
