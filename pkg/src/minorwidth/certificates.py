"""Validatable certificate types.

Every constructive operation in the package returns one of these, and a
result is accepted only if its validator passes.  Verdicts carry the
violated clause id plus a concrete witness so sweep reports can localise
failures.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping

from .graphs import (DfsTree, Graph, GraphError, Layering, RootedForest,
                     bits, mask_of)
from .io import graph_hash


@dataclass(frozen=True)
class Verdict:
    ok: bool
    clause: str = ""
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok

    @staticmethod
    def good() -> "Verdict":
        return Verdict(True)

    @staticmethod
    def bad(clause: str, witness: object = None) -> "Verdict":
        return Verdict(False, clause, witness)


OK = Verdict.good()


@dataclass(frozen=True)
class EliminationForest:
    """Rooted forest certifying treedepth of G (plain) or of (G, S)."""
    forest: RootedForest
    focused: bool = False

    def vertex_height(self) -> int:
        return self.forest.vertex_height()


@dataclass(frozen=True)
class PathDecomposition:
    """Bag sequence; the focused variant also records the induced part J."""
    bags: tuple[frozenset[int], ...]
    j: frozenset[int] | None = None

    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1


@dataclass(frozen=True)
class GstPath:
    """Vertical spine in a DFS tree plus disjoint spine-to-S ribs."""
    spine: tuple[int, ...]
    ribs: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.ribs)

    @property
    def coccyx(self) -> int:
        return self.spine[-1]

    @property
    def attachments(self) -> tuple[int, ...]:
        return tuple(q[0] for q in self.ribs)


@dataclass(frozen=True)
class WeakGstPath:
    """Vertical spine plus attachment vertices only."""
    spine: tuple[int, ...]
    attachments: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.attachments)


@dataclass(frozen=True)
class MinorModel:
    """Branch sets indexed by the vertices of the pattern graph ``h``."""
    h: Graph
    branch: Mapping[int, frozenset[int]]
    s: frozenset[int] | None = None

    def total_vertices(self) -> frozenset[int]:
        out: set[int] = set()
        for b in self.branch.values():
            out |= b
        return frozenset(out)


@dataclass(frozen=True)
class WidthReport:
    parameter: str
    value: int
    certificate: object = None


def vertex_height(f: EliminationForest | RootedForest) -> int:
    forest = f.forest if isinstance(f, EliminationForest) else f
    return forest.vertex_height()


# -- elimination forests ------------------------------------------------


def _chain_covering_path(forest: RootedForest, need: frozenset[int]) -> bool:
    """True iff some root-to-leaf path of ``forest`` covers ``need``."""
    if not need:
        # a component with no neighbours constrains nothing
        return True
    ordered = sorted(need, key=forest.depth)
    for a, b in zip(ordered, ordered[1:]):
        if not forest.is_ancestor(a, b):
            return False
    return True


def validate_elim_forest(g: Graph, f: EliminationForest,
                         s: Iterable[int] | None = None) -> Verdict:
    forest = f.forest
    for v in forest.vertices:
        if not 0 <= v < g.n:
            return Verdict.bad("vertices", v)
    if not f.focused:
        if forest.vertices != frozenset(g.vertices()):
            return Verdict.bad("spanning",
                               sorted(frozenset(g.vertices()) - forest.vertices))
        for u, v in g.edges:
            if not (forest.is_ancestor(u, v) or forest.is_ancestor(v, u)):
                return Verdict.bad("edge-not-ancestral", (u, v))
        return OK
    ss = frozenset(s) if s is not None else frozenset()
    if not ss <= forest.vertices:
        return Verdict.bad("s-not-covered", sorted(ss - forest.vertices))
    vf = forest.vertices
    for u, v in g.edges:
        if u in vf and v in vf:
            if not (forest.is_ancestor(u, v) or forest.is_ancestor(v, u)):
                return Verdict.bad("edge-not-ancestral", (u, v))
    rest = g.full_mask & ~mask_of(vf)
    for cmask in g.components_masks(rest) if rest else []:
        need = frozenset(bits(g.neighborhood_mask(cmask))) & vf
        if frozenset(bits(g.neighborhood_mask(cmask))) - vf:
            return Verdict.bad("component-neighbour-outside-forest",
                               sorted(bits(cmask)))
        if not _chain_covering_path(forest, need):
            return Verdict.bad("component-neighbourhood-not-on-path",
                               (sorted(bits(cmask)), sorted(need)))
    return OK


# -- path decompositions ------------------------------------------------


def _check_bags(graph_vertices: frozenset[int],
                edges: Iterable[tuple[int, int]],
                bags: tuple[frozenset[int], ...]) -> Verdict:
    positions: dict[int, list[int]] = {}
    for i, bag in enumerate(bags):
        for v in bag:
            positions.setdefault(v, []).append(i)
    for v in graph_vertices:
        occ = positions.get(v)
        if not occ:
            return Verdict.bad("vertex-missing", v)
        if occ[-1] - occ[0] + 1 != len(occ):
            return Verdict.bad("interval", v)
    for v in positions:
        if v not in graph_vertices:
            return Verdict.bad("bag-vertex-outside", v)
    for u, v in edges:
        if not any(u in bag and v in bag for bag in bags):
            return Verdict.bad("edge-uncovered", (u, v))
    return OK


def validate_path_decomposition(g: Graph, pd: PathDecomposition,
                                s: Iterable[int] | None = None) -> Verdict:
    if pd.j is None:
        return _check_bags(frozenset(g.vertices()), g.edges, pd.bags)
    j = pd.j
    ss = frozenset(s) if s is not None else frozenset()
    if not ss <= j:
        return Verdict.bad("s-not-in-j", sorted(ss - j))
    if not j <= frozenset(g.vertices()):
        return Verdict.bad("j-outside-graph", sorted(j - frozenset(g.vertices())))
    inner_edges = [(u, v) for u, v in g.edges if u in j and v in j]
    ver = _check_bags(j, inner_edges, pd.bags)
    if not ver:
        return ver
    rest = g.full_mask & ~mask_of(j)
    for cmask in g.components_masks(rest) if rest else []:
        need = frozenset(bits(g.neighborhood_mask(cmask)))
        if need and not any(need <= bag for bag in pd.bags):
            return Verdict.bad("component-neighbourhood-not-in-bag",
                               (sorted(bits(cmask)), sorted(need)))
    return OK


# -- layered widths ------------------------------------------------------


def layered_width_elim(g: Graph, f: EliminationForest,
                       layering: Layering) -> WidthReport:
    ver = validate_elim_forest(g, f)
    if not ver:
        raise GraphError(f"invalid elimination forest: {ver.clause}")
    if not layering.validates_for(g):
        raise GraphError("invalid layering")
    forest = f.forest
    best = 0
    ch = forest.children()
    counts = [0] * layering.num_layers()
    for r in forest.roots:
        stack: list[tuple[int, bool]] = [(r, True)]
        while stack:
            v, entering = stack.pop()
            l = layering.of(v)
            if entering:
                counts[l] += 1
                if counts[l] > best:
                    best = counts[l]
                stack.append((v, False))
                for c in ch[v]:
                    stack.append((c, True))
            else:
                counts[l] -= 1
    return WidthReport("layered-elim-width", best, (f, layering))


def layered_width_pd(g: Graph, pd: PathDecomposition,
                     layering: Layering) -> WidthReport:
    ver = validate_path_decomposition(g, pd)
    if not ver:
        raise GraphError(f"invalid path decomposition: {ver.clause}")
    if not layering.validates_for(g):
        raise GraphError("invalid layering")
    sets = layering.layer_sets()
    best = 0
    for bag in pd.bags:
        for ls in sets:
            best = max(best, len(bag & ls))
    return WidthReport("layered-pd-width", best, (pd, layering))


# -- minor models ---------------------------------------------------------


def validate_minor_model(g: Graph, h: Graph, model: MinorModel,
                         s: Iterable[int] | None = None) -> Verdict:
    if set(model.branch.keys()) != set(h.vertices()):
        return Verdict.bad("branch-keys", sorted(model.branch.keys()))
    masks = {}
    used = 0
    for x, bset in model.branch.items():
        m = mask_of(bset)
        if m == 0:
            return Verdict.bad("branch-empty", x)
        if m & ~g.full_mask:
            return Verdict.bad("branch-outside-graph", x)
        if m & used:
            return Verdict.bad("branch-overlap", x)
        used |= m
        first = (m & -m).bit_length() - 1
        if g.component_mask(first, m) != m:
            return Verdict.bad("branch-disconnected", x)
        masks[x] = m
    for x, y in h.edges:
        if not g.neighborhood_mask(masks[x]) & masks[y]:
            return Verdict.bad("h-edge-unrealized", (x, y))
    if s is not None:
        sm = mask_of(s)
        for x, m in masks.items():
            if not m & sm:
                return Verdict.bad("branch-not-rooted", x)
    return OK


# -- (G,S,T)-paths --------------------------------------------------------


def _is_path_in_g(g: Graph, seq: tuple[int, ...]) -> bool:
    if len(set(seq)) != len(seq) or not seq:
        return False
    return all(g.has_edge(a, b) for a, b in zip(seq, seq[1:]))


def validate_gst_path(g: Graph, s: Iterable[int], t: DfsTree,
                      j: GstPath) -> Verdict:
    ss = frozenset(s)
    if not j.ribs:
        return Verdict.bad("J2-no-ribs")
    if not j.spine or j.spine != t.vertical_path(j.spine[-1]):
        return Verdict.bad("J1-spine-not-vertical", j.spine)
    sp = frozenset(j.spine)
    seen: set[int] = set()
    for rib in j.ribs:
        if not _is_path_in_g(g, rib):
            return Verdict.bad("J2-not-a-path", rib)
        if set(rib) & seen:
            return Verdict.bad("J2-ribs-intersect", rib)
        seen |= set(rib)
        if frozenset(rib) & sp != {rib[0]}:
            return Verdict.bad("J2-spine-intersection", rib)
        if frozenset(rib) & ss != {rib[-1]}:
            return Verdict.bad("J2-s-intersection", rib)
    if j.coccyx not in j.attachments:
        return Verdict.bad("J3-coccyx-not-attachment", j.coccyx)
    return OK


def validate_weak_gst_path(g: Graph, s: Iterable[int], t: DfsTree,
                           j: WeakGstPath) -> Verdict:
    ss = frozenset(s)
    if not j.attachments:
        return Verdict.bad("W2-no-attachments")
    if len(set(j.attachments)) != len(j.attachments):
        return Verdict.bad("W2-attachments-repeat", j.attachments)
    if not j.spine or j.spine != t.vertical_path(j.spine[-1]):
        return Verdict.bad("W1-spine-not-vertical", j.spine)
    sp = frozenset(j.spine)
    rest = g.full_mask & ~mask_of(sp)
    comp_masks = g.components_masks(rest) if rest else []
    useful = 0
    for cm in comp_masks:
        if cm & mask_of(ss):
            useful |= g.neighborhood_mask(cm)
    for u in j.attachments:
        if u not in sp:
            return Verdict.bad("W2-attachment-off-spine", u)
        if u in ss:
            continue
        if not useful >> u & 1:
            return Verdict.bad("W2-attachment-sees-no-s-component", u)
    return OK


# -- serialization --------------------------------------------------------

CERT_KINDS = ("elim-forest", "focused-elim-forest", "path-decomposition",
              "focused-path-decomposition", "layering", "gst-path",
              "weak-gst-path", "minor-model", "separation")


def _forest_payload(forest: RootedForest) -> dict:
    vs = sorted(forest.vertices)
    return {"vertices": vs,
            "parents": [forest.parent.get(v, -1) for v in vs]}


def _forest_from_payload(payload: dict) -> RootedForest:
    vs = payload["vertices"]
    parent = {v: p for v, p in zip(vs, payload["parents"]) if p != -1}
    return RootedForest(vs, parent)


def certificate_to_doc(cert: object, g: Graph,
                       s: Iterable[int] | None = None,
                       t: DfsTree | None = None) -> dict:
    """Self-describing document for one certificate, bound to ``g`` by its
    hash.  Context the validator will need again (the important set S, the
    DFS tree) is embedded in the payload."""
    from .separations import Separation  # local import to avoid a cycle

    doc: dict = {"graph_hash": graph_hash(g)}
    payload: dict
    if isinstance(cert, EliminationForest):
        doc["kind"] = "focused-elim-forest" if cert.focused else "elim-forest"
        payload = _forest_payload(cert.forest)
        if cert.focused:
            payload["s"] = sorted(s) if s is not None else []
    elif isinstance(cert, PathDecomposition):
        doc["kind"] = ("focused-path-decomposition" if cert.j is not None
                       else "path-decomposition")
        payload = {"bags": [sorted(b) for b in cert.bags]}
        if cert.j is not None:
            payload["j"] = sorted(cert.j)
            payload["s"] = sorted(s) if s is not None else []
    elif isinstance(cert, Layering):
        doc["kind"] = "layering"
        payload = {"layers": list(cert.layer)}
    elif isinstance(cert, (GstPath, WeakGstPath)):
        if t is None or s is None:
            raise GraphError("gst certificates need their S and DFS tree")
        payload = {"s": sorted(s),
                   "tree_vertices": sorted(t.vertices),
                   "tree_parents": [t.parent.get(v, -1)
                                    for v in sorted(t.vertices)],
                   "spine": list(cert.spine)}
        if isinstance(cert, GstPath):
            doc["kind"] = "gst-path"
            payload["ribs"] = [list(r) for r in cert.ribs]
        else:
            doc["kind"] = "weak-gst-path"
            payload["attachments"] = list(cert.attachments)
    elif isinstance(cert, MinorModel):
        doc["kind"] = "minor-model"
        payload = {
            "h_n": cert.h.n,
            "h_edges": [list(e) for e in sorted(cert.h.edges)],
            "branch": {str(x): sorted(b) for x, b in cert.branch.items()},
            "s": sorted(cert.s) if cert.s is not None else None,
        }
    elif isinstance(cert, Separation):
        doc["kind"] = "separation"
        payload = {"va": sorted(cert.va), "vb": sorted(cert.vb),
                   "ea": [list(e) for e in sorted(cert.ea)],
                   "eb": [list(e) for e in sorted(cert.eb)]}
    else:
        raise GraphError(f"cannot serialize certificate of type {type(cert)!r}")
    doc["payload"] = payload
    return doc


def certificate_to_text(cert: object, g: Graph,
                        s: Iterable[int] | None = None,
                        t: DfsTree | None = None) -> str:
    return json.dumps(certificate_to_doc(cert, g, s, t),
                      sort_keys=True, indent=1) + "\n"


@dataclass(frozen=True)
class CertificateDoc:
    kind: str
    graph_hash: str
    certificate: object
    s: frozenset[int] | None = None
    tree: DfsTree | None = None


def certificate_from_text(text: str) -> CertificateDoc:
    """Parse a certificate document back into its typed form."""
    from .separations import Separation

    doc = json.loads(text)
    kind = doc["kind"]
    payload = doc["payload"]
    if kind not in CERT_KINDS:
        raise GraphError(f"unknown certificate kind {kind!r}")
    s: frozenset[int] | None = None
    tree: DfsTree | None = None
    if kind in ("elim-forest", "focused-elim-forest"):
        cert: object = EliminationForest(_forest_from_payload(payload),
                                         focused=kind.startswith("focused"))
        if kind.startswith("focused"):
            s = frozenset(payload.get("s", []))
    elif kind in ("path-decomposition", "focused-path-decomposition"):
        j = frozenset(payload["j"]) if "j" in payload else None
        cert = PathDecomposition(tuple(frozenset(b) for b in payload["bags"]), j)
        if j is not None:
            s = frozenset(payload.get("s", []))
    elif kind == "layering":
        cert = Layering(payload["layers"])
    elif kind in ("gst-path", "weak-gst-path"):
        vs = payload["tree_vertices"]
        parent = {v: p for v, p in zip(vs, payload["tree_parents"]) if p != -1}
        tree = DfsTree(vs, parent)
        s = frozenset(payload["s"])
        if kind == "gst-path":
            cert = GstPath(tuple(payload["spine"]),
                           tuple(tuple(r) for r in payload["ribs"]))
        else:
            cert = WeakGstPath(tuple(payload["spine"]),
                               tuple(payload["attachments"]))
    elif kind == "minor-model":
        h = Graph(payload["h_n"], [tuple(e) for e in payload["h_edges"]])
        branch = {int(x): frozenset(b) for x, b in payload["branch"].items()}
        s = frozenset(payload["s"]) if payload.get("s") is not None else None
        cert = MinorModel(h, branch, s)
    else:
        cert = Separation(frozenset(payload["va"]), frozenset(payload["vb"]),
                          frozenset(tuple(e) for e in payload["ea"]),
                          frozenset(tuple(e) for e in payload["eb"]))
    return CertificateDoc(kind, doc["graph_hash"], cert, s, tree)


def check_certificate_doc(g: Graph, doc: CertificateDoc) -> Verdict:
    """Validate a parsed certificate against its graph (hash must match)."""
    from .separations import validate_separation

    if doc.graph_hash != graph_hash(g):
        return Verdict.bad("graph-hash-mismatch", doc.graph_hash)
    cert = doc.certificate
    if isinstance(cert, EliminationForest):
        return validate_elim_forest(g, cert, doc.s)
    if isinstance(cert, PathDecomposition):
        return validate_path_decomposition(g, cert, doc.s)
    if isinstance(cert, Layering):
        return (OK if cert.validates_for(g)
                else Verdict.bad("layering-edge-constraint"))
    if isinstance(cert, GstPath):
        return validate_gst_path(g, doc.s or (), doc.tree, cert)
    if isinstance(cert, WeakGstPath):
        return validate_weak_gst_path(g, doc.s or (), doc.tree, cert)
    if isinstance(cert, MinorModel):
        return validate_minor_model(g, cert.h, cert, cert.s)
    return validate_separation(g, cert)
