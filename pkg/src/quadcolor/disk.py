"""Extension of boundary 3-colorings over quadrangulations of the disk.

A proper coloring of the boundary cycle extends inward iff its winding
number is zero and no spoke is shorter than the color increment of a base
arc it cuts off.  Both halves are decided at once by a max-flow in the
dual of the patched sphere: the patch vertex splits into a source carrying
the +1 boundary crossings and a sink carrying the -1 crossings, and a
saturating family of edge-disjoint dual paths is exactly the data of a
nowhere-zero Z3-flow, hence of a coloring.  A deficient flow leaves a cut,
which is normalized into a short violating spoke.
"""

from dataclasses import dataclass

from .coloring import delta, delta_edge, get_color, winding, winding_report
from .embed import EmbeddedGraph
from .errors import (
    ImproperBoundary,
    ImproperEdge,
    ImproperPrecoloring,
    InconsistentFlow,
    InternalError,
    NonzeroWinding,
    NotACut,
    NotConnected,
    NotDiskQuadrangulation,
    NotQuadrangulation,
    Uncolored,
)
from .results import SolveResult, SpokeViolation, WindingViolation


@dataclass(frozen=True)
class SplitDual:
    """Dual of a disk quadrangulation on the patched sphere, patch split.

    Dual vertices 0..vertex_count-3 are the faces; s collects the boundary
    edges whose color steps +1 along the cuff walk, t the -1 ones.  ends[e]
    holds the dual endpoints of the edge crossing primal edge e, the face on
    the plus side of dart 2e listed first.  cap_left records on which side
    of the cuff darts the patch face lies, which fixes the crossing
    convention used to turn dual orientations back into color steps.
    """

    base: EmbeddedGraph
    s: int
    t: int
    vertex_count: int
    ends: tuple
    s_edges: tuple
    t_edges: tuple
    cap_left: bool

    def adjacency(self):
        adj = [[] for _ in range(self.vertex_count)]
        for e, (a, b) in enumerate(self.ends):
            adj[a].append((e, b))
            adj[b].append((e, a))
        for lst in adj:
            lst.sort()
        return adj


@dataclass(frozen=True)
class FlowResult:
    """Outcome of the dual max-flow.

    flow[e] is 0, +1 (from ends[e][0] to ends[e][1]) or -1.  paths is the
    extracted edge-disjoint path system when the flow saturates the source,
    cut a minimum s-t edge cut otherwise; exactly one of the two is set.
    """

    dual: SplitDual
    value: int
    flow: tuple
    paths: tuple | None
    cut: frozenset | None


@dataclass(frozen=True)
class SpokeWitness:
    """A chord refuting extension: shorter than the color climb of its base.

    spoke: vertex path meeting the boundary exactly at its two endpoints.
    base: boundary arc between the same endpoints, traversed in the cuff
          walk direction, starting at the spoke's first vertex.
    delta_base: signed color increment sum along base; |spoke| < |delta_base|.
    """

    spoke: tuple
    base: tuple
    delta_base: int


def _normalize_disk(g: EmbeddedGraph) -> EmbeddedGraph:
    try:
        sig = g.signature
    except NotConnected as ex:
        raise NotDiskQuadrangulation(ex.message) from None
    if not sig.is_disk:
        raise NotDiskQuadrangulation(
            "surface signature %r is not the disk" % (sig.key(),)
        )
    try:
        g.validate_quadrangulation()
    except (NotQuadrangulation, NotConnected) as ex:
        raise NotDiskQuadrangulation(ex.message) from None
    gn = g.orientation_normalize()
    if gn is None:
        raise InternalError("disk signature on an unbalanced rotation system")
    return gn


def _check_boundary_coloring(g: EmbeddedGraph, psi):
    walk = g.cuffs[0]
    for d in walk.darts:
        try:
            delta_edge(psi, g.dart_tail(d), g.dart_head(d))
        except (Uncolored, ImproperPrecoloring, ImproperEdge) as ex:
            raise ImproperBoundary(ex.message) from None


def build_split_dual(g: EmbeddedGraph, psi) -> SplitDual:
    """Dual of the patched disk with the patch split by boundary color steps."""
    gn = _normalize_disk(g)
    _check_boundary_coloring(gn, psi)
    walk = gn.cuffs[0]
    om = winding(gn, walk, psi)
    if om != 0:
        raise NonzeroWinding("boundary winding is %d, need 0" % om)

    tr = gn.traced
    cap = tr.cuff_pair[0]
    dual_of = {}
    for p in tr.true_pairs:
        dual_of[p] = len(dual_of)
    s = len(dual_of)
    t = s + 1

    s_edges, t_edges = [], []
    cap_sides = set()
    for d in walk.darts:
        e = d >> 1
        if delta_edge(psi, gn.dart_tail(d), gn.dart_head(d)) > 0:
            s_edges.append(e)
        else:
            t_edges.append(e)
        cap_sides.add(tr.pair_of_dart_plus(d) == cap)
    if len(cap_sides) != 1:
        raise InternalError("cuff darts see the patch face on mixed sides")
    cap_left = cap_sides.pop()
    if len(s_edges) != len(t_edges):
        raise InternalError(
            "zero winding but |S|=%d, |T|=%d" % (len(s_edges), len(t_edges))
        )

    s_set = set(s_edges)
    boundary = s_set | set(t_edges)
    ends = []
    for e in range(gn.edge_count):
        sides = []
        for st in (4 * e, 4 * e + 1):
            p = tr.pair_of_state(st)
            if p == cap:
                sides.append(s if e in s_set else t)
            else:
                sides.append(dual_of[p])
        if sides[0] in (s, t) and sides[1] in (s, t):
            raise InternalError("edge %d borders the patch on both sides" % e)
        if (sides[0] in (s, t) or sides[1] in (s, t)) != (e in boundary):
            raise InternalError("edge %d disagrees with the cuff walk" % e)
        ends.append(tuple(sides))

    deg = [0] * (t + 1)
    for a, b in ends:
        deg[a] += 1
        deg[b] += 1
    if deg[s] != len(s_edges) or deg[t] != len(t_edges):
        raise InternalError("split vertex degrees do not match S and T")
    for p, dv in dual_of.items():
        if deg[dv] != 4:
            raise InternalError("face %d has dual degree %d, want 4" % (p, deg[dv]))

    return SplitDual(
        base=gn,
        s=s,
        t=t,
        vertex_count=t + 1,
        ends=tuple(ends),
        s_edges=tuple(s_edges),
        t_edges=tuple(t_edges),
        cap_left=cap_left,
    )


def max_edge_disjoint_paths(d: SplitDual) -> FlowResult:
    """Unit-capacity augmenting max-flow from s to t in the split dual."""
    adj = d.adjacency()
    flow = [0] * len(d.ends)
    value = 0
    while True:
        prev = {d.s: None}
        queue = [d.s]
        qi = 0
        while qi < len(queue) and d.t not in prev:
            u = queue[qi]
            qi += 1
            for e, w in adj[u]:
                if w in prev:
                    continue
                want = 1 if u == d.ends[e][0] else -1
                if flow[e] == want:
                    continue  # saturated in this direction
                prev[w] = (e, u, want)
                queue.append(w)
        if d.t not in prev:
            break
        v = d.t
        while prev[v] is not None:
            e, u, want = prev[v]
            flow[e] += want
            v = u
        value += 1

    paths = None
    cut = None
    if value == len(d.s_edges):
        paths = _decompose_paths(d, adj, flow, value)
    else:
        reach = set(prev)
        cut_edges = []
        for e, (a, b) in enumerate(d.ends):
            if (a in reach) != (b in reach):
                cut_edges.append(e)
        if len(cut_edges) != value:
            raise InternalError(
                "min cut size %d differs from flow value %d" % (len(cut_edges), value)
            )
        cut = frozenset(cut_edges)
    return FlowResult(dual=d, value=value, flow=tuple(flow), paths=paths, cut=cut)


def _decompose_paths(d, adj, flow, value):
    remaining = {}
    for e, f in enumerate(flow):
        if f != 0:
            remaining[e] = d.ends[e][0] if f > 0 else d.ends[e][1]  # tail of the arc
    paths = []
    for _ in range(value):
        cur = d.s
        path = []
        while cur != d.t:
            step = None
            for e, w in adj[cur]:
                if remaining.get(e) == cur:
                    step = (e, w)
                    break
            if step is None:
                raise InternalError("flow decomposition stuck at dual vertex %d" % cur)
            e, w = step
            del remaining[e]
            path.append(e)
            cur = w
        paths.append(tuple(path))
    return tuple(paths)


def _plus_dart(d: SplitDual, e: int, from_dual: int) -> int:
    """Primal dart crossed left-to-right by the dual arc leaving from_dual."""
    if d.cap_left:
        return 2 * e if d.ends[e][0] == from_dual else 2 * e + 1
    return 2 * e + 1 if d.ends[e][0] == from_dual else 2 * e


def flow_to_coloring(g: EmbeddedGraph, psi, fl: FlowResult) -> dict:
    """Turn a saturating dual flow into a coloring extending psi.

    Flow arcs keep their direction; the flowless rest has even degree
    everywhere and is oriented along greedily traced closed walks.  Each
    oriented dual arc crosses one primal edge, which it declares a +1 color
    step by the left-hand convention; colors then propagate from the first
    boundary vertex.  Any contradiction means a bug, not a bad input.
    """
    d = fl.dual
    gn = d.base
    if fl.value != len(d.s_edges):
        raise InconsistentFlow("flow value %d does not saturate |S|=%d"
                               % (fl.value, len(d.s_edges)))
    orient = list(fl.flow)
    adj = d.adjacency()

    leftover = sorted(e for e, f in enumerate(orient) if f == 0)
    for e in leftover:
        a, b = d.ends[e]
        if d.s in (a, b) or d.t in (a, b):
            raise InconsistentFlow("split vertex keeps a flowless dual edge")
    unused = set(leftover)
    for e0 in leftover:
        if e0 not in unused:
            continue
        start = d.ends[e0][0]
        cur = start
        while True:
            step = None
            for e, w in adj[cur]:
                if e in unused:
                    step = (e, w)
                    break
            if step is None:
                break
            e, w = step
            unused.discard(e)
            orient[e] = 1 if cur == d.ends[e][0] else -1
            cur = w
        if cur != start:
            raise InternalError("even-degree residual walk ended off its start")

    indeg = [0] * d.vertex_count
    outdeg = [0] * d.vertex_count
    for e, f in enumerate(orient):
        if f == 0:
            raise InternalError("dual edge %d left unoriented" % e)
        a, b = d.ends[e] if f > 0 else d.ends[e][::-1]
        outdeg[a] += 1
        indeg[b] += 1
    for v in range(d.vertex_count):
        if v in (d.s, d.t):
            continue
        if indeg[v] != outdeg[v]:
            raise InternalError("dual vertex %d unbalanced: %d in, %d out"
                                % (v, indeg[v], outdeg[v]))
    if outdeg[d.s] != len(d.s_edges) or indeg[d.s]:
        raise InternalError("source not all-outgoing")
    if indeg[d.t] != len(d.t_edges) or outdeg[d.t]:
        raise InternalError("sink not all-incoming")

    # color step of every primal edge, as the dart the dual arc crosses +1
    plus = []
    for e, f in enumerate(orient):
        from_dual = d.ends[e][0] if f > 0 else d.ends[e][1]
        plus.append(_plus_dart(d, e, from_dual))

    z = [None] * gn.vertex_count
    b1 = gn.dart_tail(gn.cuffs[0].darts[0])
    z[b1] = 0
    queue = [b1]
    qi = 0
    seen_edges = [False] * gn.edge_count
    while qi < len(queue):
        u = queue[qi]
        qi += 1
        for dart in gn.rotations[u]:
            e = dart >> 1
            dd = plus[e]
            a, b = gn.dart_tail(dd), gn.dart_head(dd)
            zb = (z[a] + 1) % 3 if a == u else None
            za = (z[b] - 1) % 3 if b == u else None
            other = b if a == u else a
            val = zb if a == u else za
            if z[other] is None:
                z[other] = val
                queue.append(other)
            elif z[other] != val:
                raise InconsistentFlow(
                    "edge %d propagates color %d against %d" % (e, val, z[other])
                )
            seen_edges[e] = True
    if any(v is None for v in z):
        raise InternalError("color propagation missed a vertex")
    if not all(seen_edges):
        raise InternalError("color propagation missed an edge")

    shift = (get_color(psi, b1) - 1 - z[b1]) % 3
    coloring = {v: ((z[v] + shift) % 3) + 1 for v in range(gn.vertex_count)}
    for dart in gn.cuffs[0].darts:
        v = gn.dart_tail(dart)
        if coloring[v] != get_color(psi, v):
            raise InconsistentFlow(
                "flow coloring disagrees with the boundary at vertex %d" % v
            )
    return coloring


def _separates(d: SplitDual, adj, cut) -> bool:
    seen = {d.s}
    queue = [d.s]
    qi = 0
    while qi < len(queue):
        u = queue[qi]
        qi += 1
        for e, w in adj[u]:
            if e in cut or w in seen:
                continue
            if w == d.t:
                return False
            seen.add(w)
            queue.append(w)
    return True


def _inner_components(d: SplitDual, adj, cut):
    """Components of the dual minus s, t and the cut, smallest vertex first."""
    comps = []
    seen = set()
    for v0 in range(d.vertex_count):
        if v0 in (d.s, d.t) or v0 in seen:
            continue
        comp = {v0}
        queue = [v0]
        seen.add(v0)
        qi = 0
        while qi < len(queue):
            u = queue[qi]
            qi += 1
            for e, w in adj[u]:
                if e in cut or w in (d.s, d.t) or w in seen:
                    continue
                seen.add(w)
                comp.add(w)
                queue.append(w)
        comps.append(comp)
    return comps


def extract_spoke_witness(g: EmbeddedGraph, psi, cut, dual: SplitDual | None = None) -> SpokeWitness:
    """Normalize a deficient cut into a spoke violating the length condition.

    The cut is shrunk to an inclusion-minimal one and then improved by the
    exchange steps of the underlying argument until the edges not incident
    to the split vertices join exactly two face regions; those edges cross
    a primal path, the sought spoke.  A fixed point of any other shape is
    an internal error.
    """
    d = dual if dual is not None else build_split_dual(g, psi)
    gn = d.base
    adj = d.adjacency()
    K = set(cut)
    for e in K:
        if not 0 <= e < len(d.ends):
            raise NotACut("unknown dual edge %r" % (e,))
    if not _separates(d, adj, K):
        raise NotACut("the given edges do not separate s from t")

    s_star = frozenset(d.s_edges)
    t_star = frozenset(d.t_edges)
    n_s = len(s_star)

    def face_end(e):
        a, b = d.ends[e]
        return b if a in (d.s, d.t) else a

    while True:
        # inclusion-minimal first: drop edges the separation does not need
        for e in sorted(K):
            if _separates(d, adj, K - {e}):
                K.discard(e)
        k0 = {e for e in K
              if d.ends[e][0] not in (d.s, d.t) and d.ends[e][1] not in (d.s, d.t)}
        comps = _inner_components(d, adj, K)
        applied = False
        for comp in comps:
            s_open = any(e not in K and face_end(e) in comp for e in s_star)
            t_open = any(e not in K and face_end(e) in comp for e in t_star)
            if s_open and t_open:
                raise InternalError("cut region touches both split vertices openly")
            if s_open:
                k1 = {e for e in k0
                      if d.ends[e][0] in comp or d.ends[e][1] in comp}
                if k1 != k0:
                    k2 = {e for e in t_star & K if face_end(e) in comp}
                    s1 = {e for e in s_star if face_end(e) in comp}
                    new = k1 | k2 | (s_star - s1)
                    if len(new) < n_s:
                        if not _separates(d, adj, new):
                            raise InternalError("source-side exchange broke the cut")
                        K = new
                        applied = True
                        break
            elif t_open:
                k1 = {e for e in k0
                      if d.ends[e][0] in comp or d.ends[e][1] in comp}
                if k1 != k0:
                    k2 = {e for e in s_star & K if face_end(e) in comp}
                    t1 = {e for e in t_star if face_end(e) in comp}
                    new = k1 | k2 | (t_star - t1)
                    if len(new) < n_s:
                        if not _separates(d, adj, new):
                            raise InternalError("sink-side exchange broke the cut")
                        K = new
                        applied = True
                        break
        if not applied:
            break

    k0 = {e for e in K
          if d.ends[e][0] not in (d.s, d.t) and d.ends[e][1] not in (d.s, d.t)}
    if not k0:
        raise InternalError("normalized cut has no interior edges")
    comps = _inner_components(d, adj, K)
    if len(comps) != 2:
        raise InternalError("normalized cut leaves %d face regions, want 2"
                            % len(comps))
    z_s = z_t = None
    for comp in comps:
        if any(e not in K and face_end(e) in comp for e in s_star):
            z_s = comp
        if any(e not in K and face_end(e) in comp for e in t_star):
            z_t = comp
    if z_s is None or z_t is None or z_s is z_t:
        raise InternalError("cut regions do not split into source and sink sides")
    for e in k0:
        a, b = d.ends[e]
        if not ((a in z_s and b in z_t) or (a in z_t and b in z_s)):
            raise InternalError("interior cut edge does not join the two regions")

    spoke = _edge_path_vertices(gn, sorted(k0))
    bverts = set(gn.walk_vertices(gn.cuffs[0]))
    if spoke[0] not in bverts or spoke[-1] not in bverts:
        raise InternalError("spoke endpoints left the boundary")
    if any(v in bverts for v in spoke[1:-1]):
        raise InternalError("spoke interior touches the boundary")

    k2 = {e for e in t_star & K if face_end(e) in z_s}
    s1 = {e for e in s_star if face_end(e) in z_s}
    q_edges = k2 | s1
    base, delta_base = _boundary_arc(gn, psi, q_edges)
    if delta_base != len(s1) - len(k2):
        raise InternalError("base increment %d is not |S1|-|K2|=%d"
                            % (delta_base, len(s1) - len(k2)))
    if {base[0], base[-1]} != {spoke[0], spoke[-1]}:
        raise InternalError("base endpoints differ from spoke endpoints")
    if spoke[0] != base[0]:
        spoke = spoke[::-1]
    if len(spoke) - 1 >= abs(delta_base):
        raise InternalError(
            "normalized cut is not a violating spoke: |P|=%d, |delta|=%d"
            % (len(spoke) - 1, abs(delta_base))
        )
    return SpokeWitness(spoke=tuple(spoke), base=tuple(base), delta_base=delta_base)


def _edge_path_vertices(g: EmbeddedGraph, edge_ids):
    """Vertex sequence of a simple path given by its edge ids."""
    inc = {}
    for e in edge_ids:
        u, v = g.edges[e]
        inc.setdefault(u, []).append(e)
        inc.setdefault(v, []).append(e)
    odd = sorted(v for v, es in inc.items() if len(es) == 1)
    if len(odd) != 2 or any(len(es) > 2 for es in inc.values()):
        raise InternalError("cut edges %s do not form a path" % (list(edge_ids),))
    path = [odd[0]]
    used = set()
    while True:
        u = path[-1]
        nxt = [e for e in inc[u] if e not in used]
        if not nxt:
            break
        e = nxt[0]
        used.add(e)
        a, b = g.edges[e]
        path.append(b if a == u else a)
    if len(used) != len(list(edge_ids)) or path[-1] != odd[1]:
        raise InternalError("cut edges %s do not form a path" % (list(edge_ids),))
    return path


def _boundary_arc(g: EmbeddedGraph, psi, q_edges):
    """Contiguous cuff arc made of q_edges, its vertices and delta sum."""
    walk = g.cuffs[0]
    n = len(walk.darts)
    hits = [i for i, dd in enumerate(walk.darts) if (dd >> 1) in q_edges]
    if len(hits) != len(q_edges):
        raise InternalError("base edges are not all on the boundary")
    if not hits:
        raise InternalError("base arc is empty")
    # rotate so the arc is consecutive; exactly one gap allowed
    start = None
    if len(hits) < n:
        hitset = set(hits)
        starts = [i for i in hits if (i - 1) % n not in hitset]
        if len(starts) != 1:
            raise InternalError("base edges do not form one boundary arc")
        start = starts[0]
    else:
        raise InternalError("base arc covers the whole boundary")
    arc = [(start + j) % n for j in range(len(hits))]
    if sorted(arc) != sorted(hits):
        raise InternalError("base edges do not form one boundary arc")
    verts = [g.dart_tail(walk.darts[arc[0]])]
    total = 0
    for i in arc:
        dd = walk.darts[i]
        u, v = g.dart_tail(dd), g.dart_head(dd)
        total += delta_edge(psi, u, v)
        verts.append(v)
    return verts, total


def verify_spoke_witness(g: EmbeddedGraph, psi, w: SpokeWitness) -> bool:
    """Independent re-check of a spoke witness against the instance."""
    try:
        gn = _normalize_disk(g)
    except NotDiskQuadrangulation:
        return False
    walk = gn.cuffs[0]
    bverts = gn.walk_vertices(walk)
    bset = set(bverts)
    sp = w.spoke
    if len(sp) < 2 or len(set(sp)) != len(sp):
        return False
    if sp[0] not in bset or sp[-1] not in bset:
        return False
    if any(v in bset for v in sp[1:-1]):
        return False
    for u, v in zip(sp, sp[1:]):
        if not gn.edges_between(u, v):
            return False
    # the base must be one of the two boundary arcs between the endpoints
    n = len(bverts)
    try:
        i0 = bverts.index(sp[0])
        i1 = bverts.index(sp[-1])
    except ValueError:
        return False
    arc = [bverts[(i0 + j) % n] for j in range((i1 - i0) % n + 1)]
    other = [bverts[(i1 + j) % n] for j in range((i0 - i1) % n + 1)]
    if list(w.base) not in (arc, other[::-1], other, arc[::-1]):
        return False
    total = 0
    try:
        for u, v in zip(w.base, w.base[1:]):
            total += delta_edge(psi, u, v)
    except (Uncolored, ImproperPrecoloring, ImproperEdge):
        return False
    if total != w.delta_base:
        return False
    return len(sp) - 1 < abs(w.delta_base)


def solve_disk(g: EmbeddedGraph, psi) -> SolveResult:
    """Decide extension of a boundary coloring over a disk quadrangulation.

    Nonzero winding is reported as a WindingViolation; otherwise the dual
    flow either saturates and yields a coloring, or its min cut normalizes
    into a SpokeViolation.  Only boundary values of psi are consulted.
    """
    gn = _normalize_disk(g)
    _check_boundary_coloring(gn, psi)
    if winding(gn, gn.cuffs[0], psi) != 0:
        return SolveResult.no(WindingViolation(winding_report(gn, psi)))
    d = build_split_dual(gn, psi)
    fl = max_edge_disjoint_paths(d)
    if fl.value == len(d.s_edges):
        return SolveResult.yes(flow_to_coloring(gn, psi, fl))
    witness = extract_spoke_witness(gn, psi, fl.cut, dual=d)
    return SolveResult.no(SpokeViolation(witness))
