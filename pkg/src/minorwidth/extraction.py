"""Certificate extraction: recursive construction of (G,S,T)-paths and
weak (G,S,T)-paths from focused-treedepth hypotheses, conversion to rooted
path / fan models, apex-forest extraction through good separations, and
the theorem drivers wiring it together.

The recursions mirror inductive proofs; every branch that the underlying
argument rules out raises ``ExtractionDefect`` instead of degrading, so a
triggered defect is a test failure, never an expected error.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .certificates import (GstPath, MinorModel, WeakGstPath,
                           validate_gst_path, validate_minor_model,
                           validate_weak_gst_path)
from .graphs import (DfsTree, Graph, GraphError, bits, dfs_tree, fan_graph,
                     lca, mask_of, path_graph)
from .oracles import (GraphOracle, _components_of, pw_focused_exact,
                      td_focused_exact)
from .separations import (GoodnessContext, Separation,
                          check_maximal_good_properties,
                          maximal_good_separation, menger_refine,
                          make_separation, _path_through_bside,
                          _rooted_model_in_side, disjoint_paths)


class ExtractionDefect(AssertionError):
    """An impossible-by-proof branch was reached; indicates a bug."""


@dataclass(frozen=True)
class ExtractionInput:
    """Inputs of one extraction run.

    ``t`` spans the connected universe the recursion works in (the whole
    graph, or one component of it); ``x`` is the set of forbidden
    ancestors accumulated by outer recursion levels.
    """
    g: Graph
    s: frozenset[int]
    t: DfsTree
    x: frozenset[int]
    ell: int

    def universe_mask(self) -> int:
        return mask_of(self.t.vertices)


def _check_input(inp: ExtractionInput, weak: bool,
                 oracle: GraphOracle | None = None) -> GraphOracle:
    if inp.ell < 1:
        raise GraphError("order must be positive")
    umask = inp.universe_mask()
    smask = mask_of(inp.s)
    xmask = mask_of(inp.x)
    if smask & ~umask or xmask & ~umask:
        raise GraphError("S and X must live inside the spanned universe")
    if xmask & smask:
        raise GraphError("X must avoid S")
    for xv in inp.x:
        for sv in inp.s:
            if not inp.t.is_ancestor(xv, sv):
                raise GraphError(f"{xv} in X is not an ancestor of {sv} in S")
    if oracle is None:
        oracle = GraphOracle(inp.g)
    need = inp.ell if weak else 2 * inp.ell - 1
    have = oracle.td_focused(umask & ~xmask, smask)
    if have < need:
        kind = "weak" if weak else "strong"
        raise GraphError(
            f"{kind} hypothesis fails: td(G-X, S) = {have} < {need}")
    return oracle


def _pick_component(oracle: GraphOracle, umask: int, smask: int
                    ) -> tuple[int, int]:
    """The component of the X-free region with maximum focused treedepth;
    ties broken toward the smallest minimum vertex."""
    best = None
    for c in _components_of(oracle.adj, umask):
        if not c & smask:
            continue
        v = oracle.td_focused(c, smask & c)
        if best is None or v > best[1]:
            best = (c, v)
    assert best is not None
    return best


def _trim_rib(p: tuple[int, ...], smask: int) -> tuple[int, ...]:
    """Cut a path at its first S-vertex so it meets S exactly once."""
    for i, v in enumerate(p):
        if smask >> v & 1:
            return p[:i + 1]
    raise AssertionError("rib does not reach S")


def _tree_path_to_s(t: DfsTree, x0: int, z: int, smask: int,
                    sub_mask: int) -> tuple[int, ...]:
    """x0 followed by the tree path from child z towards the shallowest
    S-vertex of T_z, cut at the first S-vertex reached."""
    cands = list(bits(sub_mask & smask))
    assert cands, "child subtree holds no S-vertex"
    best = min(cands, key=lambda v: (t.depth(v), v))
    path = t.vertical_path(best)
    zi = path.index(z)
    return _trim_rib((x0,) + path[zi:], smask)


def extract_gst_path(inp: ExtractionInput,
                     oracle: GraphOracle | None = None) -> GstPath:
    """Recursive (G,S,T)-path extraction of order ``ell`` under the
    hypothesis td(G-X, S) >= 2*ell - 1.

    Every vertex of X ends up on the spine and no vertex of X is an
    attachment; the result always passes ``validate_gst_path``.
    """
    oracle = _check_input(inp, weak=False, oracle=oracle)
    g, t = inp.g, inp.t
    umask_all = inp.universe_mask()
    smask0 = mask_of(inp.s)
    xmask0 = mask_of(inp.x)

    def rec(xmask: int, smask: int, ell: int) -> GstPath:
        if ell == 1:
            v = min(bits(smask), key=lambda w: (t.depth(w), w))
            return GstPath(t.vertical_path(v), ((v,),))
        cmask, _ = _pick_component(oracle, umask_all & ~xmask, smask)
        scmask = smask & cmask
        x0 = lca(t, bits(scmask))
        if scmask >> x0 & 1:
            sub = rec(xmask | 1 << x0, scmask & ~(1 << x0), ell - 1)
            # the child worked with a smaller S, so its ribs may run through
            # vertices that are important again at this level: re-trim
            ribs = tuple(_trim_rib(q, smask) for q in sub.ribs)
            return GstPath(sub.spine, ribs + ((x0,),))

        rpath = t.vertical_path(x0)
        rmask = mask_of(rpath)
        sources = rmask & ~xmask
        z_all = [z for z in t.children()[x0] if t.subtree(z) <= frozenset(bits(cmask))]
        zsubs = {z: mask_of(t.subtree(z)) for z in z_all}
        z0 = [z for z in z_all if zsubs[z] & scmask]
        if len(z0) <= 1:
            raise ExtractionDefect("single branch below the lca")
        z1 = [z0[0]]
        z2 = [z for z in z_all if z != z0[0]]
        amask = {1: zsubs[z1[0]], 2: 0}
        for z in z2:
            amask[2] |= zsubs[z]
        fam = {}
        for i in (1, 2):
            gi_mask = (amask[i] | rmask) & ~xmask
            paths, _ = disjoint_paths(g, bits(sources), bits(smask & amask[i]),
                                      within=bits(gi_mask))
            fam[i] = [_trim_rib(p, smask) for p in paths]

        for i, jside in ((1, 2), (2, 1)):
            if len(fam[i]) < ell:
                continue
            # a family of ell ribs attached on the upper path cannot by
            # itself keep the deepest forbidden ancestor on the spine, so
            # extend the spine below the branch vertex on the *other*
            # side, down to the first important vertex: that vertex is a
            # one-vertex rib and the coccyx, and the side ribs cannot
            # meet the extension
            other_z0 = [z0[0]] if jside == 1 else [z for z in z0 if z != z0[0]]
            z = min(other_z0)
            s0 = _tree_path_to_s(t, x0, z, smask, zsubs[z])[-1]
            spine = t.vertical_path(s0)
            side = sorted(fam[i], key=lambda q: (t.depth(q[0]), q))[:ell - 1]
            ribs = sorted(side + [(s0,)], key=lambda q: (t.depth(q[0]), q))
            return GstPath(spine, tuple(ribs))

        for i, jside in ((1, 2), (2, 1)):
            ai = len(fam[i])
            xi = mask_of(p[0] for p in fam[i])
            xp = xmask | xi
            sp = smask & amask[jside]
            if oracle.td_focused(umask_all & ~xp, sp) >= 2 * (ell - ai) - 1:
                sub = rec(xp, sp, ell - ai)
                return _splice(g, t, sub, fam[i], rmask, smask, ell, ai)
        raise ExtractionDefect(
            "both recursive hypotheses failed; contradicts the treedepth bound")

    out = rec(xmask0, smask0, inp.ell)
    ver = validate_gst_path(g, inp.s, t, out)
    if not ver:
        raise ExtractionDefect(f"extracted path invalid: {ver.clause} {ver.witness}")
    if not all(xv in out.spine for xv in inp.x):
        raise ExtractionDefect("requirement X-on-spine violated")
    if set(out.attachments) & inp.x:
        raise ExtractionDefect("requirement X-not-attachment violated")
    return out


def _splice(g: Graph, t: DfsTree, sub: GstPath, side_ribs: list[tuple[int, ...]],
            rmask: int, smask: int, ell: int, ai: int) -> GstPath:
    """Combine the recursive (order ell-ai) path with the ai side ribs:
    ribs crossing the upper vertical path R are cut at their last R-vertex,
    and the spine becomes the vertical path of the deepest attachment."""
    trimmed: list[tuple[int, ...]] = []
    for q in sub.ribs:
        in_r = [i for i, v in enumerate(q) if rmask >> v & 1]
        q2 = q[in_r[-1]:] if in_r else q
        trimmed.append(_trim_rib(q2, smask))
    ribs = [tuple(p) for p in side_ribs] + trimmed
    deepest = max((q[0] for q in ribs), key=lambda v: (t.depth(v), v))
    spine = t.vertical_path(deepest)
    spine_set = set(spine)
    if not all(q[0] in spine_set for q in ribs):
        raise ExtractionDefect("attachments not on one vertical path")
    ribs.sort(key=lambda q: (t.depth(q[0]), q))
    return GstPath(spine, tuple(ribs))


def gst_to_rooted_path_model(g: Graph, s: Iterable[int],
                             j: GstPath) -> MinorModel:
    """Convert a (G,S,T)-path of order ell into an S-rooted model of the
    ell-vertex path: branch k is rib k plus the spine segment from its
    attachment up to (exclusive) the next attachment."""
    ss = frozenset(s)
    pos = {v: i for i, v in enumerate(j.spine)}
    order = sorted(range(j.order), key=lambda k: pos[j.ribs[k][0]])
    cuts = [pos[j.ribs[k][0]] for k in order]
    branch: dict[int, frozenset[int]] = {}
    for idx, k in enumerate(order):
        lo = cuts[idx]
        hi = cuts[idx + 1] if idx + 1 < len(order) else len(j.spine)
        branch[idx] = frozenset(j.ribs[k]) | frozenset(j.spine[lo:hi])
    model = MinorModel(path_graph(j.order), branch, ss)
    ver = validate_minor_model(g, model.h, model, ss)
    if not ver:
        raise ExtractionDefect(f"path model invalid: {ver.clause} {ver.witness}")
    return model


def extract_weak_gst_path(inp: ExtractionInput,
                          oracle: GraphOracle | None = None) -> WeakGstPath:
    """Weak (G,S,T)-path extraction of order ``ell`` under the hypothesis
    td(G-X, S) >= ell."""
    oracle = _check_input(inp, weak=True, oracle=oracle)
    g, t = inp.g, inp.t
    umask_all = inp.universe_mask()

    def rec(xmask: int, smask: int, ell: int) -> WeakGstPath:
        if ell == 1:
            u = min(bits(smask), key=lambda w: (t.depth(w), w))
            return WeakGstPath(t.vertical_path(u), (u,))
        cmask, _ = _pick_component(oracle, umask_all & ~xmask, smask)
        scmask = smask & cmask
        x0 = lca(t, bits(scmask))
        if scmask >> x0 & 1:
            sub = rec(xmask | 1 << x0, scmask & ~(1 << x0), ell - 1)
            return WeakGstPath(sub.spine, sub.attachments + (x0,))

        rpath = t.vertical_path(x0)
        rmask = mask_of(rpath)
        z_all = [z for z in t.children()[x0]
                 if t.subtree(z) <= frozenset(bits(cmask))]
        zsubs = {z: mask_of(t.subtree(z)) for z in z_all}
        z0 = [z for z in z_all if zsubs[z] & scmask]
        if len(z0) <= 1:
            raise ExtractionDefect("single branch below the lca")
        amask = {1: zsubs[z0[0]], 2: 0}
        for z in z_all:
            if z != z0[0]:
                amask[2] |= zsubs[z]
        att = {}
        for i in (1, 2):
            found = 0
            for km in _components_of(oracle.adj, amask[i]):
                if km & smask:
                    found |= g.neighborhood_mask(km)
            att[i] = found & rmask & ~xmask
        for i in (1, 2):
            assert att[i], "side sees no attachment"
            if att[i].bit_count() >= ell:
                chosen = sorted(bits(att[i]), key=lambda v: (t.depth(v), v))[:ell]
                chosen.sort(key=lambda v: t.depth(v))
                return WeakGstPath(rpath, tuple(chosen))
        for i, jside in ((1, 2), (2, 1)):
            ai = att[i].bit_count()
            xp = xmask | att[i]
            sp = smask & amask[jside]
            if oracle.td_focused(umask_all & ~xp, sp) >= ell - ai:
                sub = rec(xp, sp, ell - ai)
                spine_set = set(sub.spine)
                if not all(v in spine_set for v in bits(att[i])):
                    raise ExtractionDefect("side attachments not on child spine")
                if set(sub.attachments) & set(bits(att[i])):
                    raise ExtractionDefect("side attachments collide with child's")
                merged = list(sub.attachments) + list(bits(att[i]))
                merged.sort(key=lambda v: t.depth(v))
                return WeakGstPath(sub.spine, tuple(merged))
        raise ExtractionDefect(
            "both recursive hypotheses failed; contradicts the treedepth bound")

    out = rec(mask_of(inp.x), mask_of(inp.s), inp.ell)
    ver = validate_weak_gst_path(g, inp.s, t, out)
    if not ver:
        raise ExtractionDefect(f"weak path invalid: {ver.clause} {ver.witness}")
    if not all(xv in out.spine for xv in inp.x):
        raise ExtractionDefect("requirement X-on-spine violated")
    if set(out.attachments) & inp.x:
        raise ExtractionDefect("requirement X-not-attachment violated")
    return out


def weak_to_fan_model(g: Graph, u: int, j: WeakGstPath) -> MinorModel:
    """Fan model from a weak path found in a component of g - u: the hub
    branch is the component of g - spine containing u, the path branches
    are the spine segments between consecutive attachments."""
    if j.order < 1:
        raise GraphError("weak path of order zero cannot give a fan")
    if u in j.spine:
        raise GraphError("the apex lies on the spine")
    pos = {v: i for i, v in enumerate(j.spine)}
    cuts = sorted(pos[a] for a in j.attachments)
    ell = j.order
    hub_mask = g.component_mask(u, g.full_mask & ~mask_of(j.spine))
    branch: dict[int, frozenset[int]] = {ell: frozenset(bits(hub_mask))}
    for k, lo in enumerate(cuts):
        hi = cuts[k + 1] if k + 1 < ell else len(j.spine)
        branch[k] = frozenset(j.spine[lo:hi])
    model = MinorModel(fan_graph(ell), branch)
    ver = validate_minor_model(g, model.h, model)
    if not ver:
        raise ExtractionDefect(f"fan model invalid: {ver.clause} {ver.witness}")
    return model


# -- theorem drivers ---------------------------------------------------------


def srooted_path_driver(g: Graph, s) -> tuple[int, MinorModel | None, bool]:
    """Focused treedepth against rooted path minors: computes td(G,S),
    extracts a rooted path model of order floor((td+1)/2) and checks
    td(G,S) <= 2 * (max rooted path order)."""
    from .oracles import max_rooted_path_order
    ss = frozenset(s)
    td = td_focused_exact(g, ss).value
    if td == 0:
        return 0, None, True
    ell = (td + 1) // 2
    oracle = GraphOracle(g)
    cmask, _ = _pick_component(oracle, g.full_mask, mask_of(ss))
    comp = frozenset(bits(cmask))
    t = dfs_tree(g, min(comp), within=comp)
    inp = ExtractionInput(g, ss & comp, t, frozenset(), ell)
    jpath = extract_gst_path(inp)
    model = gst_to_rooted_path_model(g, ss & comp, jpath)
    bound_holds = td <= 2 * max_rooted_path_order(g, ss)
    return ell, model, bound_holds


def fan_minor_driver(g: Graph, u: int,
                     oracle: GraphOracle | None = None
                     ) -> tuple[int, MinorModel | None]:
    """Fan extraction at an apex: with ell = td(G-u, N(u)), produces a
    validated model of the fan on ell path vertices plus hub."""
    if not 0 <= u < g.n:
        raise GraphError(f"vertex {u} not in graph")
    smask = g.adj[u]
    universe = g.full_mask & ~(1 << u)
    if oracle is None:
        oracle = GraphOracle(g)
    ell = oracle.td_focused(universe, smask)
    if ell == 0:
        return 0, None
    cmask, _ = _pick_component(oracle, universe, smask)
    comp = frozenset(bits(cmask))
    t = dfs_tree(g, min(comp), within=comp)
    inp = ExtractionInput(g, frozenset(bits(smask & cmask)), t, frozenset(), ell)
    wj = extract_weak_gst_path(inp, oracle=oracle)
    return ell, weak_to_fan_model(g, u, wj)


# -- apex-forest extraction through good separations -------------------------


@dataclass(frozen=True)
class FPlusOutcome:
    """Result of the good-separation dichotomy: either a separation whose
    A-side carries a separator-rooted model of the whole forest (kind 1),
    or one carrying the forest minus its pendant vertex plus a hub anchor
    s_star with separator-to-s_star paths (kind 2).

    For kind 2 the model's pattern is the reduced forest; ``pattern_old``
    maps its vertex ids back to the input forest's ids.
    """
    kind: int
    sep: Separation
    model: MinorModel
    s_star: int | None = None
    paths: dict[int, tuple[int, ...]] | None = None
    pattern_old: tuple[int, ...] | None = None


def _outcome1_on(g: Graph, ss: frozenset[int], sep: Separation,
                 f: Graph) -> FPlusOutcome | None:
    """Check the first-outcome predicate on one separation: a separator
    rooted model of the whole forest plus the component / neighbour
    clauses."""
    if sep.va == frozenset(g.vertices()):
        return None
    vam = mask_of(sep.va)
    outside = g.full_mask & ~vam
    smask = mask_of(ss)
    for cm in (g.components_masks(outside) if outside else []):
        if not cm & smask:
            return None
    bpriv = mask_of(sep.vb) & ~vam
    for z in sep.separator:
        if not g.adj[z] & bpriv:
            return None
    model = _rooted_model_in_side(g, sep.va, sep.separator, f)
    if model is None:
        return None
    return FPlusOutcome(1, sep, model)


def _outcome2_on(g: Graph, ss: frozenset[int], sep: Separation,
                 f_minus: Graph, fx_old: list[int], y_new: int,
                 v: int) -> FPlusOutcome | None:
    """Check the second-outcome predicate on one separation: a pinned
    separator-rooted model of the reduced forest plus one S-vertex outside
    A reaching every separator vertex through B-private internals."""
    model = _rooted_model_in_side(g, sep.va, sep.separator, f_minus,
                                  pin_y=y_new, pin_v=v)
    if model is None:
        return None
    for s_star in sorted(ss - sep.va):
        paths = {}
        for z in sorted(sep.separator):
            p = _path_through_bside(g, sep, z, 1 << s_star)
            if p is None:
                break
            paths[z] = tuple(reversed(p))
        else:
            return FPlusOutcome(2, sep, model, s_star=s_star, paths=paths,
                                pattern_old=tuple(fx_old))
    return None


def finding_F_plus(g: Graph, v: int, s, w: int, f: Graph, x: int,
                   y: int) -> FPlusOutcome:
    """The two-outcome extraction at the core of apex-forest minors.

    Requires g connected, pw(G,S) >= w, ``f`` a forest on w+1 vertices and
    ``x`` of degree at most 1 in it with partner ``y``.  Exactly one
    outcome is returned, with all witnesses validated.

    The realisation follows the inductive argument (pinned maximal good
    separation, neighbour extension, second maximal separation, Menger
    refinement); when the refinement comes up short of w+1 paths, which
    the written argument does not cover on some small instances, the
    dichotomy is realised by exhaustive search over separations instead.
    """
    ss = frozenset(s)
    if not g.is_connected():
        raise GraphError("finding_F_plus needs a connected graph")
    if f.n != w + 1:
        raise GraphError("the forest must have exactly w+1 vertices")
    from .oracles import is_forest
    if not is_forest(f):
        raise GraphError("the pattern must be a forest")
    if f.degree(x) > 1:
        raise GraphError("x must have degree at most 1")
    if f.degree(x) == 1 and y not in f.neighbors(x):
        raise GraphError("y must be the neighbour of x")
    if y == x or not 0 <= y < f.n:
        raise GraphError("invalid y")
    if pw_focused_exact(g, ss).value < w:
        raise GraphError("hypothesis pw(G,S) >= w fails")

    f_minus, fx_old = f.induced(z for z in f.vertices() if z != x)
    y_new = fx_old.index(y)
    ctx_w = GoodnessContext(g, ss, w)
    sep0, model0 = maximal_good_separation(g, ss, w,
                                           require=(f_minus, y_new, v),
                                           ctx=ctx_w)
    props = check_maximal_good_properties(g, ss, sep0)
    if not props:
        raise ExtractionDefect(f"maximal separation broken: {props.clause}")
    t0 = sep0.separator
    my_mask = mask_of(model0.branch[y_new])
    u_cands = sorted(set(t0) & model0.branch[y_new])
    assert u_cands, "rooted model misses the separator in the pinned branch"
    uu = u_cands[0]
    bpriv0 = mask_of(sep0.vb) & ~mask_of(sep0.va)
    u_prime = min(bits(g.adj[uu] & bpriv0))
    sep_a = make_separation(g, sep0.va | {u_prime}, sep0.vb)

    s_outside0 = ss - sep0.va
    assert s_outside0, "S exhausted by a narrow separation despite pw(G,S) >= w"
    if not ss - sep_a.va:
        # S beyond A0 is exactly {u_prime}: the hub anchor outcome
        assert s_outside0 == {u_prime}
        paths = {}
        for z in sorted(t0):
            p = _path_through_bside(g, sep0, z, 1 << u_prime)
            assert p is not None, "missing separator-to-anchor path"
            paths[z] = tuple(reversed(p))  # stored from s_star to z
        model = MinorModel(f_minus, dict(model0.branch), frozenset(t0))
        return FPlusOutcome(2, sep0, model, s_star=u_prime, paths=paths,
                            pattern_old=tuple(fx_old))

    ctx_w1 = GoodnessContext(g, ss, w + 1)
    sep1, _ = maximal_good_separation(g, ss, w + 1, need_s_outside=True,
                                      extending=sep_a, ctx=ctx_w1)
    props1 = check_maximal_good_properties(g, ss, sep1)
    if not props1:
        raise ExtractionDefect(f"second maximal separation broken: {props1.clause}")
    refined, lpaths = menger_refine(g, sep_a, sep1)
    if refined.order <= w:
        # the written argument rules this out, but it does occur (e.g. the
        # 5-cycle with S = V and a 3-vertex path pattern); realise the
        # dichotomy exhaustively instead
        return _fplus_exhaustive(g, ss, sep0, f, f_minus, fx_old, y_new, v)
    # every separator vertex of sep_a starts exactly one path
    starts = {p[0] for p in lpaths}
    assert starts == set(sep_a.separator) and len(lpaths) == sep_a.order
    # extend the model of f (f_minus plus u' as the branch of x) along lpaths
    branch_masks: dict[int, int] = {fx_old[k]: mask_of(bs)
                                    for k, bs in model0.branch.items()}
    branch_masks[x] = 1 << u_prime
    path_by_start = {p[0]: p for p in lpaths}
    for z in list(branch_masks):
        bm = branch_masks[z]
        for tvert in bits(bm & mask_of(sep_a.separator)):
            branch_masks[z] |= mask_of(path_by_start[tvert])
    model1 = MinorModel(f, {z: frozenset(bits(m))
                            for z, m in branch_masks.items()},
                        frozenset(sep1.separator))
    ver = validate_minor_model(g, f, model1, sep1.separator)
    if not ver:
        raise ExtractionDefect(f"extended model invalid: {ver.clause}")
    return FPlusOutcome(1, sep1, model1)


def _fplus_exhaustive(g: Graph, ss: frozenset[int], sep0: Separation,
                      f: Graph, f_minus: Graph, fx_old: list[int],
                      y_new: int, v: int) -> FPlusOutcome:
    """Fallback realisation of the dichotomy by scanning all separations,
    trying the already-found maximal good separation first."""
    from .separations import enumerate_separations
    for sep in enumerate_separations(g):
        out = _outcome1_on(g, ss, sep, f)
        if out is not None:
            return out
    out = _outcome2_on(g, ss, sep0, f_minus, fx_old, y_new, v)
    if out is not None:
        return out
    for sep in enumerate_separations(g):
        out = _outcome2_on(g, ss, sep, f_minus, fx_old, y_new, v)
        if out is not None:
            return out
    raise ExtractionDefect("neither outcome of the dichotomy is realisable")


def apex_forest_minor_driver(g: Graph, u: int, h: Graph) -> MinorModel:
    """Model of an apex-forest h in g, given pw(G-u, N(u)) >= |V(h)| - 2."""
    from .oracles import is_apex_forest
    if h.n < 3 or not is_apex_forest(h):
        raise GraphError("h must be an apex-forest on at least 3 vertices")
    if not 0 <= u < g.n:
        raise GraphError(f"vertex {u} not in graph")
    from .oracles import is_forest as _isf
    h_star = next(hv for hv in h.vertices()
                  if _isf(_induced_minus(h, hv)))
    f, fmap = h.induced(z for z in h.vertices() if z != h_star)
    w = h.n - 2
    x = min(z for z in f.vertices() if f.degree(z) <= 1)
    if f.degree(x) == 1:
        y = f.neighbors(x)[0]
    else:
        y = min(z for z in f.vertices() if z != x)

    smask_all = g.adj[u]
    universe = g.full_mask & ~(1 << u)
    best = None
    for cm in _components_of(g.adj, universe):
        if not cm & smask_all:
            continue
        sub, old = g.induced(bits(cm))
        val = pw_focused_exact(sub, [old.index(sv) for sv in bits(smask_all & cm)]).value
        if best is None or val > best[0]:
            best = (val, cm, sub, old)
    if best is None or best[0] < w:
        raise GraphError(
            f"precondition fails: pw(G-u, N(u)) = {0 if best is None else best[0]} < {w}")
    _, cm, sub, old = best
    s_local = [old.index(sv) for sv in bits(smask_all & cm)]
    v_local = min(s_local)
    out = finding_F_plus(sub, v_local, s_local, w, f, x, y)

    branch: dict[int, frozenset[int]] = {}
    if out.kind == 1:
        for z, bs in out.model.branch.items():
            branch[fmap[z]] = frozenset(old[i] for i in bs)
        va_global = mask_of(old[i] for i in out.sep.va)
        hub = g.component_mask(u, g.full_mask & ~va_global)
        branch[h_star] = frozenset(bits(hub))
    else:
        assert out.pattern_old is not None
        for k, bs in out.model.branch.items():
            branch[fmap[out.pattern_old[k]]] = frozenset(old[i] for i in bs)
        branch[fmap[x]] = frozenset([u])
        hub: set[int] = set()
        assert out.paths is not None and out.s_star is not None
        for z, p in out.paths.items():
            hub.update(old[i] for i in p[:-1])
        branch[h_star] = frozenset(hub)
    model = MinorModel(h, branch)
    ver = validate_minor_model(g, h, model)
    if not ver:
        raise ExtractionDefect(f"apex-forest model invalid: {ver.clause} {ver.witness}")
    return model


def _induced_minus(h: Graph, v: int) -> Graph:
    sub, _ = h.induced(z for z in h.vertices() if z != v)
    return sub
