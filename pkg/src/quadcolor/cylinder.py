"""Cylinder machinery: short non-contractible cycle sequences, the boundary
pair dynamic program, the far-apart winding fast path, and tame extensions.

A 2-cell embedding in the cylinder has exactly two cuffs.  Everything here
leans on one topological fact: a simple cycle is non-contractible exactly
when it crosses a fixed cap-to-cap dual path an odd number of times.  The
solver splits the cylinder along short non-contractible cycles, computes
which pairs of cycle colorings extend across each gap, and joins the pair
sets left to right.  The same layer/dual toolkit supports alternating layer
cycles and the fence construction that colors the far boundary tamely.
"""

from collections import OrderedDict, defaultdict, deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import heapq
import os

from .coloring import (
    check_proper,
    cycle_colorings,
    delta,
    enumerate_colorings,
    get_color,
    is_tame,
    verify_coloring,
    winding_report,
)
from .disk import solve_disk
from .embed import ClosedWalk, EmbeddedGraph, bfs_layers, bfs_path, graph_distance
from .errors import (
    BadParameters,
    ImproperPrecoloring,
    InternalError,
    NotACycle,
    NotConnected,
    NotCylinder,
    NotCylinderQuadrangulation,
    NotQuadrangulation,
    NotSeparating,
    PreconditionViolated,
)
from .oracle import oracle_extend
from .results import Exhausted, SolveResult
from .surgery import classify_cycle, cut_along

__all__ = [
    "CycleSequence",
    "PairColoringSet",
    "check_cycle_sequence",
    "layer_cycle",
    "noncontractible_cycles_upto",
    "pair_extension_set",
    "segment_between",
    "shortest_noncontractible",
    "solve_cylinder",
    "split_cylinder",
    "tame_extend",
]


# -- cylinder plumbing -----------------------------------------------------------


def _normalize_cylinder(g: EmbeddedGraph, err):
    """Orientation-normalized copy of g, or raise err if not a cylinder."""
    if len(g.cuffs) != 2 or not g.signature.is_cylinder:
        raise err("expected a 2-cell embedding in the cylinder, got %s" % (g.signature,))
    gn = g.orientation_normalize()
    if gn is None:
        raise InternalError("cylinder signature on a non-orientable embedding")
    return gn


def _edge_sides(g: EmbeddedGraph):
    """Face-pair ids on the two sides of each edge."""
    t = g.traced
    return t, [
        (t.pair_of_state(4 * e), t.pair_of_state(4 * e + 2)) for e in range(g.edge_count)
    ]


def _dual_adjacency(g: EmbeddedGraph):
    t, sides = _edge_sides(g)
    adj = defaultdict(list)
    for e, (a, b) in enumerate(sides):
        adj[a].append((e, b))
        adj[b].append((e, a))
    return t, sides, adj


def _crossing_bits(g: EmbeddedGraph):
    """0/1 per edge: whether one fixed cap-to-cap dual path crosses it.

    Any choice of path gives the same parity on cycles, which is all the
    callers use: a simple cycle of a cylinder graph is non-contractible
    exactly when its bit sum is odd.
    """
    t, sides, adj = _dual_adjacency(g)
    s, tt = t.cuff_pair[0], t.cuff_pair[1]
    par = {s: None}
    dq = deque([s])
    while dq:
        p = dq.popleft()
        if p == tt:
            break
        for e, q in adj[p]:
            if q not in par:
                par[q] = (p, e)
                dq.append(q)
    if tt not in par:
        raise InternalError("cap faces are not dual-connected")
    bits = [0] * g.edge_count
    p = tt
    while par[p] is not None:
        p, e = par[p]
        bits[e] ^= 1
    return bits


def _walk_parity(bits, edge_ids):
    x = 0
    for e in edge_ids:
        x ^= bits[e]
    return x


def _dart_between(g: EmbeddedGraph, u: int, e: int) -> int:
    return (e << 1) | (0 if g.edges[e][0] == u else 1)


def _walk_of_cycle(g: EmbeddedGraph, vs, es) -> ClosedWalk:
    darts = []
    for i, e in enumerate(es):
        darts.append(_dart_between(g, vs[i], e))
    return ClosedWalk(tuple(darts))


def _cycle_walk_from_edges(g: EmbeddedGraph, edge_ids) -> ClosedWalk:
    """Canonical closed walk through a simple-cycle edge set."""
    inc = defaultdict(list)
    for e in sorted(edge_ids):
        u, v = g.edges[e]
        inc[u].append(e)
        inc[v].append(e)
    for v, es in inc.items():
        if len(es) != 2:
            raise NotACycle("vertex %d has degree %d in the edge set" % (v, len(es)))
    start = min(inc)
    darts = []
    cur, prev = start, None
    for _ in range(len(edge_ids)):
        e = next(x for x in inc[cur] if x != prev)
        darts.append(_dart_between(g, cur, e))
        u, v = g.edges[e]
        cur, prev = (v if cur == u else u), e
    if cur != start:
        raise NotACycle("edge set is not a single cycle")
    return ClosedWalk(tuple(darts))


def _extract_odd_cycle(g: EmbeddedGraph, bits, vs, es):
    """Simple odd-parity cycle inside a closed odd walk.

    vs is the closed vertex sequence (first == last), es the edges stepped.
    Splitting at a repeated vertex keeps the odd half; lengths shrink, so
    this terminates at a simple cycle.
    """
    while True:
        seen = {}
        split = None
        for i, v in enumerate(vs[:-1]):
            if v in seen:
                split = (seen[v], i)
                break
            seen[v] = i
        if split is None:
            return vs[:-1], es
        i, j = split
        inner_v, inner_e = vs[i : j + 1], es[i:j]
        outer_v, outer_e = vs[: i + 1] + vs[j + 1 :], es[:i] + es[j:]
        if _walk_parity(bits, inner_e) & 1:
            vs, es = inner_v, inner_e
        else:
            vs, es = outer_v, outer_e
        if len(es) < 1:
            raise InternalError("odd walk reduced to nothing")


def _odd_walk_through(g: EmbeddedGraph, bits, root, adj, limit=None):
    """Shortest closed walk through root with odd crossing parity.

    Breadth-first search on the parity double cover; returns (vertex
    sequence closed at root, edge list) or None.  With a limit, walks
    longer than it are not looked for.
    """
    start = root << 1
    goal = start | 1
    par = {start: None}
    dist = {start: 0}
    dq = deque([start])
    while dq:
        st = dq.popleft()
        if st == goal:
            break
        if limit is not None and dist[st] >= limit:
            continue
        v, p = st >> 1, st & 1
        for w, e in adj[v]:
            st2 = (w << 1) | (p ^ bits[e])
            if st2 not in par:
                par[st2] = (st, e)
                dist[st2] = dist[st] + 1
                dq.append(st2)
    if goal not in par:
        return None
    vs, es = [root], []
    st = goal
    while par[st] is not None:
        st, e = par[st]
        es.append(e)
        vs.append(st >> 1)
    vs.reverse()
    es.reverse()
    return vs, es


def _vertex_adjacency(g: EmbeddedGraph):
    adj = [[] for _ in range(g.vertex_count)]
    for e, (u, v) in enumerate(g.edges):
        adj[u].append((v, e))
        adj[v].append((u, e))
    return adj


def shortest_noncontractible(g: EmbeddedGraph, forbidden_vertices=(), forbidden_edges=(),
                             max_length=None):
    """Shortest non-contractible cycle of a cylinder embedding, or None.

    Runs the parity double cover from every allowed root; the best closed
    odd walk over all roots contains a simple odd cycle of the same or
    smaller length.  max_length truncates the search: cycles longer than
    it are ignored (and None then only means none within the bound).
    """
    gn = _normalize_cylinder(g, NotCylinder)
    bits = _crossing_bits(gn)
    banned_v = set(forbidden_vertices)
    banned_e = set(forbidden_edges)
    adj = [[] for _ in range(gn.vertex_count)]
    for e, (u, v) in enumerate(gn.edges):
        if e in banned_e or u in banned_v or v in banned_v:
            continue
        adj[u].append((v, e))
        adj[v].append((u, e))
    best = None
    for root in range(gn.vertex_count):
        if root in banned_v:
            continue
        limit = max_length
        if best is not None:
            limit = len(best[1]) - 1 if limit is None else min(limit, len(best[1]) - 1)
        got = _odd_walk_through(gn, bits, root, adj, limit)
        if got is not None and (best is None or len(got[1]) < len(best[1])):
            best = got
    if best is None:
        return None
    vs, es = _extract_odd_cycle(gn, bits, best[0], best[1])
    return _walk_of_cycle(gn, vs, es)


def noncontractible_cycles_upto(g: EmbeddedGraph, max_len: int):
    """Every simple non-contractible cycle with at most max_len edges.

    Exhaustive depth-first enumeration rooted at each smallest vertex, for
    desk-scale postcondition checking; results are deduplicated by edge set
    and sorted by (length, walk key).
    """
    gn = _normalize_cylinder(g, NotCylinder)
    bits = _crossing_bits(gn)
    adj = _vertex_adjacency(gn)
    found = {}

    def record(vs, es):
        key = frozenset(es)
        if key not in found:
            found[key] = _walk_of_cycle(gn, list(vs), list(es))

    # length-2 cycles from parallel edge pairs
    if max_len >= 2:
        for e, (u, v) in enumerate(gn.edges):
            for f in gn.edges_between(u, v):
                if f > e and (bits[e] ^ bits[f]) & 1:
                    record([u, v], [e, f])

    def dfs(root, vs, es, onpath, par):
        v = vs[-1]
        for w, e in adj[v]:
            if es and e == es[-1]:
                continue
            if w == root and len(vs) >= 3:
                if (par ^ bits[e]) & 1:
                    record(vs, es + [e])
                continue
            if w <= root or w in onpath or len(vs) == max_len:
                continue
            onpath.add(w)
            dfs(root, vs + [w], es + [e], onpath, par ^ bits[e])
            onpath.discard(w)

    for root in range(gn.vertex_count):
        dfs(root, [root], [], {root}, 0)
    walks = sorted(found.values(), key=lambda w: (len(w), w.rotation_key()))
    return walks


# -- sides and segments ----------------------------------------------------------


def _side_faces(g: EmbeddedGraph, cycle_edges):
    """True-face pair ids on the first-cap side and second-cap side of a
    non-contractible cycle, as a partition of all true faces."""
    t, sides, adj = _dual_adjacency(g)
    caps = (t.cuff_pair[0], t.cuff_pair[1])
    out = []
    for cap in caps:
        seen = {cap}
        dq = deque([cap])
        while dq:
            p = dq.popleft()
            for e, q in adj[p]:
                if e in cycle_edges or q in seen:
                    continue
                seen.add(q)
                dq.append(q)
        out.append(seen)
    low, high = out
    if low & high:
        raise InternalError("cycle does not separate the caps")
    true = set(t.true_pairs)
    if (low | high) & true != true:
        raise InternalError("side classification missed a face")
    return frozenset(low - {caps[0]}), frozenset(high - {caps[1]})


def _edges_weakly_low(g: EmbeddedGraph, cycle_edges):
    """E(cycle) plus every edge with both sides on the first-cap side."""
    t, sides = _edge_sides(g)
    low = set(_side_faces(g, cycle_edges)[0])
    low.add(t.cuff_pair[0])
    out = set(cycle_edges)
    for e, (a, b) in enumerate(sides):
        if a in low and b in low:
            out.add(e)
    return frozenset(out)


def _weakly_ordered(g: EmbeddedGraph, ca_edges, cb_edges) -> bool:
    la = _side_faces(g, ca_edges)[0]
    lb = _side_faces(g, cb_edges)[0]
    return la <= lb


def _between_edges(g: EmbeddedGraph, ca_edges, cb_edges):
    """Edges drawn weakly between two nested non-contractible cycles."""
    t, sides = _edge_sides(g)
    la = _side_faces(g, ca_edges)[0]
    lb = _side_faces(g, cb_edges)[0]
    if not la <= lb:
        raise InternalError("cycles are not nested in the expected order")
    mid = lb - la
    out = set(ca_edges) | set(cb_edges)
    for e, (a, b) in enumerate(sides):
        if a in mid and b in mid:
            out.add(e)
    return frozenset(out)


def segment_between(g: EmbeddedGraph, ca: ClosedWalk, cb: ClosedWalk):
    """Embedded subgraph drawn weakly between two nested non-contractible
    cycles, cuffed by the cycles themselves.

    The cycles must appear in first-cuff-to-second-cuff order.  Returns
    (segment, vertex_map, edge_map) with maps from segment ids back to g.
    """
    gn = _normalize_cylinder(g, NotCylinder)
    keep = sorted(_between_edges(gn, ca.edge_set(), cb.edge_set()))
    einv = {e: i for i, e in enumerate(keep)}
    vs = sorted({u for e in keep for u in gn.edges[e]})
    vinv = {v: i for i, v in enumerate(vs)}
    edges = tuple((vinv[u], vinv[v]) for (u, v) in (gn.edges[e] for e in keep))
    rotations = tuple(
        tuple((einv[d >> 1] << 1) | (d & 1) for d in gn.rotations[v] if (d >> 1) in einv)
        for v in vs
    )
    signs = tuple(gn.signs[e] for e in keep)

    def map_walk(w):
        return ClosedWalk(tuple((einv[d >> 1] << 1) | (d & 1) for d in w.darts))

    seg = EmbeddedGraph(len(vs), edges, rotations, signs, cuffs=(map_walk(ca), map_walk(cb)))
    if not seg.signature.is_cylinder:
        raise InternalError("segment between cycles is not a cylinder: %s" % (seg.signature,))
    return seg, tuple(vs), tuple(keep)


def _lift_walk(w: ClosedWalk, edge_map) -> ClosedWalk:
    return ClosedWalk(tuple((edge_map[d >> 1] << 1) | (d & 1) for d in w.darts))


# -- the short cycle sequence ------------------------------------------------------


@dataclass(frozen=True)
class CycleSequence:
    """Nested non-contractible cycles from one boundary to the other.

    cycles[0] is the first boundary cycle and cycles[-1] the second; every
    cycle has at most d edges and lies weakly between its predecessor and
    the second boundary.  Consecutive cycles either share a vertex or bound
    a gap whose open interior carries no other non-contractible cycle of
    length at most d.
    """

    cycles: tuple
    d: int

    def __len__(self):
        return len(self.cycles)


class _DualCutFlow:
    """Unit-capacity flow between the cap faces with a set of edges free.

    Freeing an edge glues its two sides together, so cuts count only the
    remaining edges; the minimum cut is then the shortest non-contractible
    cycle avoiding the freed set, and the cut nearest the first cap is the
    residual-reachable frontier.
    """

    def __init__(self, g: EmbeddedGraph, freed):
        t, sides = _edge_sides(g)
        self.g = g
        parent = list(range(len(t.pairs)))

        def find(p):
            while parent[p] != p:
                parent[p] = parent[parent[p]]
                p = parent[p]
            return p

        for e in freed:
            a, b = sides[e]
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        self.s = find(t.cuff_pair[0])
        self.t = find(t.cuff_pair[1])
        self.arcs = []
        adj = defaultdict(list)
        for e, (a, b) in enumerate(sides):
            if e in freed:
                continue
            ra, rb = find(a), find(b)
            if ra == rb:
                continue
            adj[ra].append((len(self.arcs), rb))
            adj[rb].append((len(self.arcs), ra))
            self.arcs.append([e, ra, rb, 0])  # flow: +1 means ra->rb
        self.adj = adj

    def merged(self) -> bool:
        return self.s == self.t

    def _augment(self):
        par = {self.s: None}
        dq = deque([self.s])
        while dq:
            p = dq.popleft()
            if p == self.t:
                break
            for i, q in self.adj[p]:
                e, ra, rb, fl = self.arcs[i]
                res = 1 - fl if p == ra else 1 + fl
                if res > 0 and q not in par:
                    par[q] = (p, i)
                    dq.append(q)
        if self.t not in par:
            return False
        p = self.t
        while par[p] is not None:
            p, i = par[p]
            self.arcs[i][3] += 1 if self.arcs[i][1] == p else -1
        return True

    def min_cut(self):
        """(value, primal edge set of the cut nearest the first cap)."""
        if self.merged():
            return None, None
        value = 0
        while self._augment():
            value += 1
        reach = {self.s}
        dq = deque([self.s])
        while dq:
            p = dq.popleft()
            for i, q in self.adj[p]:
                e, ra, rb, fl = self.arcs[i]
                res = 1 - fl if p == ra else 1 + fl
                if res > 0 and q not in reach:
                    reach.add(q)
                    dq.append(q)
        cut = set()
        for e, ra, rb, fl in self.arcs:
            if (ra in reach) != (rb in reach):
                if fl == 0:
                    raise InternalError("unsaturated edge across the minimum cut")
                cut.add(e)
        if len(cut) != value:
            raise InternalError("cut size %d does not match flow %d" % (len(cut), value))
        return value, frozenset(cut)


def _boundary_incident_edges(g: EmbeddedGraph):
    bv = set()
    for w in g.cuffs:
        bv.update(g.walk_vertices(w))
    return frozenset(
        e for e, (u, v) in enumerate(g.edges) if u in bv or v in bv
    )


def _nearest_short_cycle(g: EmbeddedGraph, freed):
    return _DualCutFlow(g, freed).min_cut()


def _split_core(g: EmbeddedGraph, d: int):
    """Recursive splitting: peel nearest shortest cycles, recurse in gaps."""
    cuff0, cuff1 = g.cuffs
    f0 = _boundary_incident_edges(g)
    val, _ = _nearest_short_cycle(g, f0)
    if val is None or val > d:
        return _split_base(g, d)
    rings = [cuff0]
    grown = set(f0)
    while True:
        v2, cut = _nearest_short_cycle(g, frozenset(grown))
        if v2 is None or v2 > val:
            break
        if v2 < val:
            raise InternalError("peeling found a cycle below the flow bound")
        walk = _cycle_walk_from_edges(g, cut)
        rings.append(walk)
        grown |= _edges_weakly_low(g, walk.edge_set())
    rings.append(cuff1)

    out = [cuff0]
    for i in range(len(rings) - 1):
        ca, cb = rings[i], rings[i + 1]
        if set(g.walk_vertices(ca)) & set(g.walk_vertices(cb)):
            out.append(cb)
            continue
        seg, vmap, emap = segment_between(g, ca, cb)
        inner = _split_core(seg, d)
        lifted = [_lift_walk(w, emap) for w in inner]
        if lifted[0].edge_set() != ca.edge_set() or lifted[-1].edge_set() != cb.edge_set():
            raise InternalError("gap recursion lost its boundary cycles")
        out.extend(lifted[1:])
    return _dedup_cycles(out)


def _dedup_cycles(walks):
    out = [walks[0]]
    for w in walks[1:]:
        if w.edge_set() != out[-1].edge_set():
            out.append(w)
    if len(out) == 1:
        out = [walks[0], walks[-1]]
    return out


def _split_base(g: EmbeddedGraph, d: int):
    """No short cycle avoids the boundary neighborhoods: pick at most two
    boundary-sharing cycles enclosing a clean middle gap."""
    cuff0, cuff1 = g.cuffs
    e0, e1 = cuff0.edge_set(), cuff1.edge_set()
    v1 = set(g.walk_vertices(cuff1))
    cand = noncontractible_cycles_upto(g, d)
    near1, near2 = [], []
    crowd = []
    for w in cand:
        es = w.edge_set()
        crowd.append((es, frozenset(g.walk_vertices(w))))
        if es == e0 or es == e1:
            continue
        if es & e0:
            near1.append(w)
        if es & e1:
            near2.append(w)

    def clean(b1p, b2p):
        s1, s2 = b1p.edge_set(), b2p.edge_set()
        mid = _between_edges(g, s1, s2)
        va = frozenset(g.walk_vertices(b1p))
        vb = frozenset(g.walk_vertices(b2p))
        return all(
            es == s1 or es == s2 or (vs & va) or (vs & vb) or not es <= mid
            for es, vs in crowd
        )

    def low_count(w):
        return len(_side_faces(g, w.edge_set())[0])

    cands1 = [cuff0] + sorted(near1, key=lambda w: (-low_count(w), w.rotation_key()))
    cands2 = sorted(near2, key=lambda w: (low_count(w), w.rotation_key())) + [cuff1]
    for b1p in cands1:
        s1 = b1p.edge_set()
        if set(g.walk_vertices(b1p)) & v1:
            return _dedup_cycles([cuff0, b1p, cuff1])
        for b2p in cands2:
            s2 = b2p.edge_set()
            if s1 == s2:
                return _dedup_cycles([cuff0, b1p, cuff1])
            if not _weakly_ordered(g, s1, s2):
                continue
            if set(g.walk_vertices(b1p)) & set(g.walk_vertices(b2p)):
                return _dedup_cycles([cuff0, b1p, b2p, cuff1])
            if clean(b1p, b2p):
                return _dedup_cycles([cuff0, b1p, b2p, cuff1])
    raise InternalError("no boundary-sharing cycle pair closes the splitting")


def split_cylinder(g: EmbeddedGraph, d: int) -> CycleSequence:
    """Sequence of nested non-contractible cycles of length at most d,
    starting and ending at the boundary cycles.

    Peels nearest minimum dual cuts with boundary-incident edges freed,
    recursing between vertex-disjoint consecutive cycles; gaps that survive
    carry no interior non-contractible cycle within the length bound.
    """
    gn = _normalize_cylinder(g, NotCylinder)
    if max(len(w) for w in gn.cuffs) > d:
        raise BadParameters(
            "boundary cycles of length %d exceed the bound d=%d"
            % (max(len(w) for w in gn.cuffs), d)
        )
    cycles = _split_core(gn, d)
    return CycleSequence(tuple(cycles), d)


def check_cycle_sequence(g: EmbeddedGraph, seq: CycleSequence):
    """Exhaustively verify the CycleSequence contract; returns problem
    strings, empty when everything holds.  Desk-scale instances only."""
    gn = _normalize_cylinder(g, NotCylinder)
    problems = []
    cycles = seq.cycles
    if cycles[0].edge_set() != gn.cuffs[0].edge_set():
        problems.append("first cycle differs from the first boundary")
    if cycles[-1].edge_set() != gn.cuffs[1].edge_set():
        problems.append("last cycle differs from the second boundary")
    for i, w in enumerate(cycles):
        if len(w) > seq.d:
            problems.append("cycle %d has length %d > d=%d" % (i, len(w), seq.d))
        if classify_cycle(gn, w).is_contractible:
            problems.append("cycle %d is contractible" % i)
    for i in range(len(cycles) - 1):
        sa, sb = cycles[i].edge_set(), cycles[i + 1].edge_set()
        if not _weakly_ordered(gn, sa, sb):
            problems.append("cycle %d is not weakly before cycle %d" % (i, i + 1))
            continue
        va = set(gn.walk_vertices(cycles[i]))
        vb = set(gn.walk_vertices(cycles[i + 1]))
        if va & vb:
            continue
        seg, vmap, emap = segment_between(gn, cycles[i], cycles[i + 1])
        border = {v for v, p in enumerate(vmap) if p in va or p in vb}
        for w in noncontractible_cycles_upto(seg, seq.d):
            ws = {seg.dart_tail(dd) for dd in w.darts}
            if not (ws & border):
                problems.append(
                    "gap %d-%d holds an interior cycle of length %d"
                    % (i, i + 1, len(w))
                )
                break
    return tuple(problems)


# -- boundary pair coloring sets ---------------------------------------------------


@dataclass(frozen=True)
class PairColoringSet:
    """Pairs of boundary-cycle colorings that extend across a segment.

    order_a/order_b give the vertex alignment of the color tuples.  In
    exact mode every admissible pair carries a certificate coloring of the
    whole segment; in fast mode membership comes from winding arithmetic
    alone and certificates are found on demand.
    """

    cycle_a: ClosedWalk
    cycle_b: ClosedWalk
    order_a: tuple
    order_b: tuple
    pairs: frozenset
    certificates: dict
    mode: str
    segment: EmbeddedGraph | None = None
    segment_vertices: tuple | None = None


def _tuple_winding(t) -> int:
    k = len(t)
    s = sum(delta(t[i], t[(i + 1) % k]) for i in range(k))
    if s % 3:
        raise InternalError("cycle color steps sum to %d" % s)
    return s // 3


def _restricted_colorings(order, constraints):
    """All {1,2,3} assignments on `order` proper on the given vertex pairs."""
    earlier = defaultdict(list)
    index = {v: i for i, v in enumerate(order)}
    for u, v in constraints:
        if index[u] > index[v]:
            u, v = v, u
        earlier[v].append(u)
    out = {}

    def rec(i):
        if i == len(order):
            yield dict(out)
            return
        v = order[i]
        for c in (1, 2, 3):
            if any(out[u] == c for u in earlier[v]):
                continue
            out[v] = c
            yield from rec(i + 1)
        out.pop(v, None)

    yield from rec(0)


def pair_extension_set(g: EmbeddedGraph, ca: ClosedWalk, cb: ClosedWalk,
                       mode: str = "exact") -> PairColoringSet:
    """Which pairs of colorings of ca and cb extend across the part of the
    cylinder between them.

    Exact mode enumerates joint colorings of the two cycles (plus one
    connecting path when they are disjoint) and fills the pockets in
    between with the disk solver, recording one certificate per pair.
    Fast mode only checks that the two winding numbers cancel, which is
    decisive when the cycles are far apart and no shorter non-contractible
    cycle intervenes; it raises PreconditionViolated otherwise.
    """
    gn = _normalize_cylinder(g, NotCylinder)
    ea, eb = ca.edge_set(), cb.edge_set()
    if not _weakly_ordered(gn, ea, eb):
        raise BadParameters("first cycle is not weakly before the second")
    order_a = tuple(gn.walk_vertices(ca))
    order_b = tuple(gn.walk_vertices(cb))
    va, vb = set(order_a), set(order_b)

    if mode == "fast":
        return _fast_pair_set(gn, ca, cb, order_a, order_b, va, vb)
    if mode != "exact":
        raise BadParameters("unknown mode %r" % (mode,))

    keep = _between_edges(gn, ea, eb)
    union = va | vb
    if va & vb:
        path = []
    else:
        blocked = [e for e in range(gn.edge_count) if e not in keep]
        path = bfs_path(gn, va, vb, forbidden_edges=blocked)
        if path is None:
            raise InternalError("segment between cycles is disconnected")
    colored = union | set(path)
    h_edges = set(ea) | set(eb)
    for x, y in zip(path, path[1:]):
        h_edges.add(min(gn.edges_between(x, y)))
    constraints = [
        gn.edges[e] for e in keep
        if gn.edges[e][0] in colored and gn.edges[e][1] in colored
    ]
    pockets = []
    for piece in cut_along(gn, frozenset(h_edges)):
        if not all(e in keep for e in piece.edge_map):
            continue
        if all(v in colored for v in piece.vertex_map):
            continue
        boundary = set()
        for w in piece.graph.cuffs:
            boundary.update(piece.graph.walk_vertices(w))
        pockets.append((piece, sorted(boundary)))

    order = sorted(colored)
    pairs = set()
    certificates = {}
    for phi in _restricted_colorings(order, constraints):
        key = (tuple(phi[v] for v in order_a), tuple(phi[v] for v in order_b))
        if key in pairs:
            continue
        full = dict(phi)
        ok = True
        for piece, boundary in pockets:
            pre = {v: phi[piece.vertex_map[v]] for v in boundary}
            r = solve_disk(piece.graph, pre)
            if not r.is_yes:
                ok = False
                break
            for v, c in r.coloring.items():
                full[piece.vertex_map[v]] = c
        if ok:
            pairs.add(key)
            certificates[key] = full
    return PairColoringSet(ca, cb, order_a, order_b, frozenset(pairs),
                           certificates, "exact")


def _fast_pair_set(gn, ca, cb, order_a, order_b, va, vb):
    d1, d2 = len(order_a), len(order_b)
    if va & vb:
        raise PreconditionViolated("cycles share a vertex")
    seg, vmap, emap = segment_between(gn, ca, cb)
    s0 = {v for v, p in enumerate(vmap) if p in va}
    s1 = {v for v, p in enumerate(vmap) if p in vb}
    dist = graph_distance(seg, s0, s1)
    if dist < d1 + d2:
        raise PreconditionViolated(
            "cycles at distance %d, need at least %d" % (dist, d1 + d2))
    shortest = shortest_noncontractible(seg, max_length=max(d1, d2) - 1)
    if shortest is not None:
        raise PreconditionViolated(
            "a non-contractible cycle of length %d intervenes" % len(shortest))
    sgn = seg.orientation_normalize()
    if sgn is None:
        raise InternalError("cylinder segment failed to orient")
    t = sgn.traced
    signs = []
    for i in range(2):
        o = t.cuff_orbit[i]
        signs.append(1 if (t.orbits[o][0] & 1) == 0 else -1)
    pairs = set()
    for ta in cycle_colorings(d1):
        wa = signs[0] * _tuple_winding(ta)
        for tb in cycle_colorings(d2):
            if wa + signs[1] * _tuple_winding(tb) == 0:
                pairs.add((ta, tb))
    return PairColoringSet(ca, cb, order_a, order_b, frozenset(pairs), {},
                           "fast", seg, tuple(vmap))


# -- the cylinder dynamic program --------------------------------------------------


class _CylinderTable:
    """Precoloring-independent DP structure for one cylinder and bound d."""

    __slots__ = ("sequence", "orders", "gaps", "succ", "reach")

    def __init__(self, sequence, orders, gaps, succ):
        self.sequence = sequence
        self.orders = orders
        self.gaps = gaps
        self.succ = succ
        self.reach = {}


_TABLE_CACHE = OrderedDict()
_TABLE_CAP = 16

# widest far boundary the tame fallback will enumerate colorings for
_FALLBACK_LIMIT = 18


def _gap_pair_set(gn, ca, cb):
    try:
        return pair_extension_set(gn, ca, cb, "fast")
    except PreconditionViolated:
        return pair_extension_set(gn, ca, cb, "exact")


def _cylinder_table(gn: EmbeddedGraph, d: int) -> _CylinderTable:
    key = (gn, d)
    hit = _TABLE_CACHE.get(key)
    if hit is not None:
        _TABLE_CACHE.move_to_end(key)
        return hit
    cycles = _split_core(gn, d)
    seq = CycleSequence(tuple(cycles), d)
    spans = list(zip(cycles, cycles[1:]))
    workers = int(os.environ.get("QUADCOLOR_THREADS", "1") or "1")
    if workers > 1 and len(spans) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            gaps = list(pool.map(lambda ab: _gap_pair_set(gn, *ab), spans))
    else:
        gaps = [_gap_pair_set(gn, a, b) for a, b in spans]
    succ = []
    for ps in gaps:
        by_a = defaultdict(set)
        for ta, tb in ps.pairs:
            by_a[ta].add(tb)
        succ.append({ta: frozenset(s) for ta, s in by_a.items()})
    orders = [tuple(gn.walk_vertices(c)) for c in cycles]
    table = _CylinderTable(seq, orders, gaps, succ)
    _TABLE_CACHE[key] = table
    while len(_TABLE_CACHE) > _TABLE_CAP:
        _TABLE_CACHE.popitem(last=False)
    return table


def _reach_stages(table: _CylinderTable, t0):
    stages = table.reach.get(t0)
    if stages is not None:
        return stages
    stages = [frozenset((t0,))]
    for step in table.succ:
        cur = stages[-1]
        nxt = frozenset().union(*(step.get(ta, frozenset()) for ta in cur)) \
            if cur else frozenset()
        stages.append(nxt)
    table.reach[t0] = stages
    return stages


def solve_cylinder(g: EmbeddedGraph, psi) -> SolveResult:
    """Decide extension of a two-boundary precoloring across a cylinder.

    Splits the cylinder along short non-contractible cycles with
    d = max boundary length, computes pair extension sets per gap, and
    chains them: the precoloring extends iff the second boundary tuple is
    reachable from the first.  Yes carries a full verified coloring; No
    carries the exhaustion trace of the dynamic program.
    """
    try:
        gn = _normalize_cylinder(g, NotCylinder)
        gn.validate_quadrangulation()
    except (NotCylinder, NotQuadrangulation, NotConnected) as exc:
        raise NotCylinderQuadrangulation(str(exc)) from exc

    bset = set()
    for w in gn.cuffs:
        bset.update(gn.walk_vertices(w))
    missing = bset - set(psi)
    if missing:
        raise ImproperPrecoloring(
            "boundary vertices without a color: %s" % sorted(missing)[:8])
    stray = set(psi) - bset
    if stray:
        raise BadParameters(
            "precolored vertices off the boundary: %s" % sorted(stray)[:8])
    for v in sorted(bset):
        if psi[v] not in (1, 2, 3):
            raise ImproperPrecoloring("color %r at vertex %d" % (psi[v], v))
    # properness is a precondition only along the two boundary cycles; a
    # clash on any other edge (a rung of a short cylinder, a chord) is an
    # answer, not an input error, and the pair sets rule those out
    for w in gn.cuffs:
        vs = gn.walk_vertices(w)
        for i, u in enumerate(vs):
            if psi[u] == psi[vs[(i + 1) % len(vs)]]:
                raise ImproperPrecoloring(
                    "boundary neighbors %d and %d share color %d"
                    % (u, vs[(i + 1) % len(vs)], psi[u]))

    d = max(len(w) for w in gn.cuffs)
    table = _cylinder_table(gn, d)
    t0 = tuple(psi[v] for v in table.orders[0])
    t1 = tuple(psi[v] for v in table.orders[-1])
    stages = _reach_stages(table, t0)
    if t1 not in stages[-1]:
        lines = []
        for i, st in enumerate(stages):
            lines.append("cycle %d: %d reachable colorings" % (i, len(st)))
        lines.append("second boundary coloring not among them")
        return SolveResult.no(Exhausted(tuple(lines)))

    chain = [t1]
    for i in range(len(table.succ) - 1, -1, -1):
        prev = [ta for ta in stages[i] if chain[0] in table.succ[i].get(ta, ())]
        if not prev:
            raise InternalError("broken predecessor chain at gap %d" % i)
        chain.insert(0, min(prev))

    full = dict(psi)
    searched = False
    for i, ps in enumerate(table.gaps):
        key = (chain[i], chain[i + 1])
        cert = ps.certificates.get(key)
        if cert is None:
            searched = True
            seg = ps.segment
            pre = dict(zip(seg.walk_vertices(seg.cuffs[0]), key[0]))
            pre.update(zip(seg.walk_vertices(seg.cuffs[1]), key[1]))
            ext = oracle_extend(seg, pre)
            if ext is None:
                raise InternalError(
                    "winding-admissible pair failed extension at gap %d" % i)
            cert = {ps.segment_vertices[v]: c for v, c in enumerate(ext)}
        full.update(cert)
    if not verify_coloring(gn, full, psi):
        raise InternalError("assembled cylinder coloring failed verification")
    if searched:
        return SolveResult("Yes", coloring=full, note="certificate by search")
    return SolveResult.yes(full)


# -- alternating layer cycles ------------------------------------------------------


def _aux_face_moves(g: EmbeddedGraph, bits, xs):
    """Weighted moves between set vertices sharing a face.

    A move is one primal edge (weight 1) or a quad diagonal realized through
    a corner vertex (weight 2).  Either corner route has the same crossing
    parity because face boundaries have parity zero, so the smaller-id corner
    is chosen.  Each move stores its realization as (edge, next vertex) steps.
    """
    moves = defaultdict(list)
    for e, (u, v) in enumerate(g.edges):
        if u != v and u in xs and v in xs:
            moves[u].append((v, 1, bits[e], ((e, v),)))
            moves[v].append((u, 1, bits[e], ((e, u),)))
    t = g.traced
    for p in t.true_pairs:
        darts = t.pair_darts[p]
        fv = [g.dart_tail(dd) for dd in darts]
        fe = [dd >> 1 for dd in darts]
        for i in (0, 1):
            a, b = fv[i], fv[i + 2]
            if a == b or a not in xs or b not in xs:
                continue
            m1, m2 = fv[i + 1], fv[(i + 3) % 4]
            if m1 <= m2:
                fwd = ((fe[i], m1), (fe[i + 1], b))
                rev = ((fe[i + 1], m1), (fe[i], a))
            else:
                fwd = ((fe[(i + 3) % 4], m2), (fe[i + 2], b))
                rev = ((fe[i + 2], m2), (fe[(i + 3) % 4], a))
            par = bits[fwd[0][0]] ^ bits[fwd[1][0]]
            moves[a].append((b, 2, par, fwd))
            moves[b].append((a, 2, par, rev))
    return moves


def _aux_odd_walk(root, moves, bound):
    """Cheapest odd-parity closed move sequence through root, or None.

    Dijkstra on (vertex, parity); bound aborts once everything left is at
    least as heavy as an already-known answer.
    """
    start = (root, 0)
    goal = (root, 1)
    dist = {start: 0}
    parent = {start: None}
    heap = [(0, root, 0)]
    while heap:
        w, v, p = heapq.heappop(heap)
        if w > dist[(v, p)]:
            continue
        if bound is not None and w >= bound:
            return None
        if (v, p) == goal:
            chain = []
            st = goal
            while parent[st] is not None:
                st, steps = parent[st]
                chain.append(steps)
            chain.reverse()
            return w, chain
        for u, wt, par, steps in moves.get(v, ()):
            key = (u, p ^ par)
            nd = w + wt
            if key not in dist or nd < dist[key]:
                dist[key] = nd
                parent[key] = ((v, p), steps)
                heapq.heappush(heap, (nd, u, p ^ par))
    return None


def layer_cycle(g: EmbeddedGraph, x) -> ClosedWalk:
    """Non-contractible cycle woven through a separating vertex set.

    Vertices outside x appear only as isolated stopovers between two
    x-vertices of a shared quad, so the result has at most 2|x| edges.
    Searches the auxiliary graph joining x-vertices that lie on a common
    face for its cheapest odd-crossing closed walk.
    """
    gn = _normalize_cylinder(g, NotCylinder)
    gn.validate_quadrangulation()
    xs = set()
    for v in x:
        if not isinstance(v, int) or v < 0 or v >= gn.vertex_count:
            raise BadParameters("separating set contains a non-vertex: %r" % (v,))
        xs.add(v)
    b1 = set(gn.walk_vertices(gn.cuffs[0]))
    b2 = set(gn.walk_vertices(gn.cuffs[1]))
    reach = bfs_layers(gn, b1 - xs, forbidden_vertices=xs)
    if any(reach[v] != -1 for v in b2 - xs):
        raise NotSeparating("the vertex set does not separate the boundary cycles")
    bits = _crossing_bits(gn)
    moves = _aux_face_moves(gn, bits, xs)
    best = None
    for root in sorted(xs):
        got = _aux_odd_walk(root, moves, None if best is None else best[0])
        if got is not None and (best is None or got[0] < best[0]):
            best = (got[0], root, got[1])
    if best is None:
        raise InternalError("separating set carries no odd alternating walk")
    _, root, chain = best
    vs, es = [root], []
    for steps in chain:
        for e, nxt in steps:
            es.append(e)
            vs.append(nxt)
    cvs, ces = _extract_odd_cycle(gn, bits, vs, es)
    if len(ces) > 2 * len(xs):
        raise InternalError("alternating cycle exceeds twice the set size")
    n = len(cvs)
    for i, v in enumerate(cvs):
        if v not in xs and (cvs[i - 1] not in xs or cvs[(i + 1) % n] not in xs):
            raise InternalError("two stopovers became adjacent on the cycle")
    walk = _walk_of_cycle(gn, cvs, ces)
    if classify_cycle(gn, walk).is_contractible:
        raise InternalError("alternating cycle came out contractible")
    return walk


# -- tame extensions ---------------------------------------------------------------


def _menger_paths(gn: EmbeddedGraph, cset, order2, count):
    """count vertex-disjoint paths from the layer cycle into the far boundary.

    Unit vertex capacities by node splitting; the region behind the layer
    cycle is cut away first.  Paths touch the cycle only at their first
    vertex and the boundary only at their last: no arc enters a cycle
    vertex and none leaves a boundary vertex.
    """
    bset = set(order2)
    reach = bfs_layers(gn, order2, forbidden_vertices=cset)
    zset = {v for v in range(gn.vertex_count) if reach[v] != -1} | cset
    n = gn.vertex_count
    src, snk = 2 * n, 2 * n + 1
    fwd = defaultdict(set)
    for v in zset:
        fwd[2 * v].add(2 * v + 1)
        if v in cset:
            fwd[src].add(2 * v)
        if v in bset:
            fwd[2 * v + 1].add(snk)
    for u, v in gn.edges:
        if u == v or u not in zset or v not in zset:
            continue
        if u not in bset and v not in cset:
            fwd[2 * u + 1].add(2 * v)
        if v not in bset and u not in cset:
            fwd[2 * v + 1].add(2 * u)
    fwd = {a: sorted(bs) for a, bs in fwd.items()}
    rev = defaultdict(list)
    for a, bs in fwd.items():
        for b in bs:
            rev[b].append(a)
    flow = set()

    def augment():
        par = {src: None}
        dq = deque([src])
        while dq:
            a = dq.popleft()
            if a == snk:
                break
            for b in fwd.get(a, ()):
                if (a, b) not in flow and b not in par:
                    par[b] = a
                    dq.append(b)
            for b in rev.get(a, ()):
                # undoing a saturated arc frees its tail
                if (b, a) in flow and b not in par:
                    par[b] = a
                    dq.append(b)
        if snk not in par:
            return False
        b = snk
        while par[b] is not None:
            a = par[b]
            if (b, a) in flow:
                flow.discard((b, a))
            else:
                flow.add((a, b))
            b = a
        return True

    for done in range(count):
        if not augment():
            raise InternalError(
                "only %d disjoint paths reach the far boundary, need %d"
                % (done, count))
    paths = []
    for node in sorted(b for (a, b) in flow if a == src):
        path = []
        cur = node
        while cur != snk:
            if cur % 2 == 0 and cur < 2 * n:
                path.append(cur // 2)
            nxt = next((b for b in fwd.get(cur, ()) if (cur, b) in flow), None)
            if nxt is None:
                raise InternalError("disjoint path flow does not decompose")
            flow.discard((cur, nxt))
            cur = nxt
        paths.append(path)
    return paths

def _fence_flow(gn: EmbeddedGraph, rset, k):
    """Unit dual flow from the near cap to the far cap avoiding rset duals.

    Returns direction per primal edge: +1 along sides[e][0] -> sides[e][1],
    -1 the other way, absent when no flow crosses e.  The value must come
    out exactly k, one unit through each near-boundary edge; a stall short
    of that returns None so the caller can try another far edge set.
    """
    t, sides = _edge_sides(gn)
    b1p, b2p = t.cuff_pair[0], t.cuff_pair[1]
    dadj = defaultdict(list)
    for e in range(gn.edge_count):
        if e in rset or sides[e][0] == sides[e][1]:
            continue
        a, b = sides[e]
        dadj[a].append((e, b))
        dadj[b].append((e, a))
    fdir = {}
    for value in range(k):
        par = {b1p: None}
        dq = deque([b1p])
        while dq:
            p = dq.popleft()
            if p == b2p:
                break
            for e, q in dadj[p]:
                want = 1 if p == sides[e][0] else -1
                if fdir.get(e, 0) == want or q in par:
                    continue
                par[q] = (p, e, want)
                dq.append(q)
        if b2p not in par:
            return None
        p = b2p
        while par[p] is not None:
            p, e, want = par[p]
            fdir[e] = 0 if fdir.get(e, 0) == -want else want
            if fdir[e] == 0:
                del fdir[e]
    return t, sides, fdir


def _face_matchings(gn: EmbeddedGraph, t, sides, fdir):
    """Non-crossing in/out pairing of the flow at every interior face.

    Slots are listed in the face's rotation order; rotating the cyclic
    in/out word to its minimum prefix balance makes it a balanced
    parenthesis string, and stack matching then nests the crossings, which
    is exactly what keeps the traced fences from crossing each other.
    """
    b1p, b2p = t.cuff_pair[0], t.cuff_pair[1]
    match = defaultdict(dict)
    for p in range(len(t.pairs)):
        if p in (b1p, b2p):
            continue
        orbit = t.orbits[t.pairs[p][0]]
        slots = []
        for st in orbit:
            e = st >> 2
            d = fdir.get(e, 0)
            if d == 0:
                continue
            into = (d == 1 and sides[e][1] == p) or (d == -1 and sides[e][0] == p)
            slots.append((e, 1 if into else -1))
        if not slots:
            continue
        balance = best = 0
        rot = 0
        for i, (_, sgn) in enumerate(slots):
            balance += sgn
            if balance < best:
                best = balance
                rot = i + 1
        slots = slots[rot:] + slots[:rot]
        stack = []
        for e, sgn in slots:
            if sgn == 1:
                stack.append(e)
            else:
                if not stack:
                    raise InternalError("face flow fails to balance")
                match[p][stack.pop()] = e
        if stack:
            raise InternalError("face flow fails to balance")
    return match


def _fence_system(gn: EmbeddedGraph, rset, k):
    """k non-crossing edge-disjoint dual trails from the near cap into T.

    Keyed 1..k by the near-boundary edge each one starts across, so fence j
    crosses the edge between the j-th and (j+1)-th near-boundary vertices.
    Every trail must end across a far-boundary edge outside rset; None
    means the dual flow cannot push k units past this rset.
    """
    got = _fence_flow(gn, rset, k)
    if got is None:
        return None
    t, sides, fdir = got
    match = _face_matchings(gn, t, sides, fdir)
    b1p, b2p = t.cuff_pair[0], t.cuff_pair[1]
    fences = {}
    for j in range(1, k + 1):
        e = gn.cuffs[0].darts[j - 1] >> 1
        d = fdir.get(e, 0)
        out_of_cap = (d == 1 and sides[e][0] == b1p) or (d == -1 and sides[e][1] == b1p)
        if not out_of_cap:
            raise InternalError("near-boundary edge %d carries no outward flow" % e)
        edges = [e]
        face = sides[e][1] if sides[e][0] == b1p else sides[e][0]
        while face != b2p:
            nxt = match.get(face, {}).get(e)
            if nxt is None:
                raise InternalError("fence trace dead-ends at face %d" % face)
            edges.append(nxt)
            a, b = sides[nxt]
            face = b if a == face else a
            e = nxt
        if edges[-1] in rset:
            raise InternalError("fence ends across an excluded far edge")
        fences[j] = set(edges)
    return fences


def _strip_labels(gn: EmbeddedGraph, fences, order1, k):
    """Strip index per vertex: crossing fence j swaps strips j and j+1 (mod k).

    Any other transition means the fences failed to stay non-crossing.
    """
    fence_of = {}
    for j, es in fences.items():
        for e in es:
            if e in fence_of:
                raise InternalError("fences share edge %d" % e)
            fence_of[e] = j

    def across(lab, j):
        if lab == j:
            return j % k + 1
        if lab == j % k + 1:
            return j
        raise InternalError("strip %d touches fence %d" % (lab, j))

    label = [0] * gn.vertex_count
    label[order1[0]] = 1
    dq = deque([order1[0]])
    adj = _vertex_adjacency(gn)
    while dq:
        u = dq.popleft()
        for w, e in adj[u]:
            j = fence_of.get(e)
            expect = label[u] if j is None else across(label[u], j)
            if label[w] == 0:
                label[w] = expect
                dq.append(w)
            elif label[w] != expect:
                raise InternalError("strips disagree across edge %d" % e)
    if 0 in label:
        raise InternalError("strip labeling left a vertex unreached")
    return label


def _parity_coloring(gn: EmbeddedGraph, equal_edges, v1):
    """1/2-coloring alternating on every edge except the equal set.

    The equal set is the last fence when the near boundary is odd; a
    conflict means the fence parity bookkeeping broke down.
    """
    eq = equal_edges or frozenset()
    iota = [0] * gn.vertex_count
    iota[v1] = 1
    dq = deque([v1])
    adj = _vertex_adjacency(gn)
    while dq:
        u = dq.popleft()
        for w, e in adj[u]:
            expect = iota[u] if e in eq else 3 - iota[u]
            if iota[w] == 0:
                iota[w] = expect
                dq.append(w)
            elif iota[w] != expect:
                raise InternalError("parity two-coloring hit an odd conflict")
    return iota

def _short_cycle_through(gn: EmbeddedGraph, bits, adj, root, cap):
    """Simple non-contractible cycle through root with at most cap edges.

    The closed-walk test over-trips: a root can reach a distant short cycle,
    loop it, and come home within cap without lying on any short cycle
    itself.  This resolves such a hit exactly by depth-first search over
    simple paths from root, pruned by the parity double cover: a path of
    length n at (v, p) dies unless n plus the shortest odd-completing walk
    back to root fits the budget.  Iterative deepening keeps the first
    answer shortest and the tree small.  Returns (vertices, edges) or None.
    """
    start = root << 1
    goal = start | 1
    ball = {start: 0}
    dq = deque([start])
    while dq:
        st = dq.popleft()
        if ball[st] >= cap:
            continue
        v, p = st >> 1, st & 1
        for w, e in adj[v]:
            st2 = (w << 1) | (p ^ bits[e])
            if st2 not in ball:
                ball[st2] = ball[st] + 1
                dq.append(st2)
    if ball.get(goal, cap + 1) > cap:
        return None
    onpath = bytearray(gn.vertex_count)
    onpath[root] = 1
    vs, es = [root], []

    def grow(v, p, n, budget):
        for w, e in adj[v]:
            p2 = p ^ bits[e]
            if w == root:
                # reusing the arrival edge cancels its own bit, so any odd
                # closure here really is a new edge and a simple cycle
                if p2 & 1 and n + 1 >= 2:
                    es.append(e)
                    return True
                continue
            if onpath[w]:
                continue
            back = ball.get((w << 1) | (p2 ^ 1))
            if back is None or n + 1 + back > budget:
                continue
            onpath[w] = 1
            vs.append(w)
            es.append(e)
            if grow(w, p2, n + 1, budget):
                return True
            onpath[w] = 0
            vs.pop()
            es.pop()
        return False

    for budget in range(ball[goal], cap + 1, 2):
        if grow(root, 0, 0, budget):
            return vs, es
    return None


def _tame_construct(gn: EmbeddedGraph, psi, d: int, k: int, dist2):
    """Fence-and-strip construction of a tame extension.

    A layer cycle at depth 3k+2 pins k(d+1) vertex-disjoint paths to the far
    boundary; every (d+1)-th landing edge goes into T, leaving gaps of at
    least d edges.  k non-crossing dual fences from the near cap into T cut
    the cylinder into strips, and each vertex reads its color out of a
    k-by-2 table indexed by strip and parity class.
    """
    order1 = gn.walk_vertices(gn.cuffs[0])
    order2 = gn.walk_vertices(gn.cuffs[1])
    level = [v for v in range(gn.vertex_count) if dist2[v] == 3 * k + 2]
    ck = layer_cycle(gn, level)
    cset = set(gn.walk_vertices(ck))
    paths = _menger_paths(gn, cset, order2, k * (d + 1))
    wpos = {v: i for i, v in enumerate(order2)}
    paths.sort(key=lambda path: wpos[path[-1]])
    rim = [dd >> 1 for dd in gn.cuffs[1].darts]
    grouped = {rim[wpos[paths[j * (d + 1) - 1][-1]]] for j in range(1, k + 1)}
    cands = [grouped]
    if d == 1:
        # bunched path feet can leave single-edge gaps between grouped far
        # edges, and then two strip junctions land within distance three on
        # B2; evenly spread far edges keep every gap at least 2d+1 long
        # (B2 has at least 2k(d+1) edges here, being non-contractible and
        # untouched by the short-cycle scan)
        cands.insert(0, {rim[(i * len(rim)) // k] for i in range(k)})
    fences = None
    for tset in cands:
        fences = _fence_system(gn, set(rim) - tset, k)
        if fences is not None:
            break
    if fences is None:
        raise InternalError("dual fence flow stalls under every far edge choice")
    label = _strip_labels(gn, fences, order1, k)
    iota = _parity_coloring(gn, fences[k] if k % 2 else None, order1[0])
    for j in range(1, k + 1):
        v = order1[j - 1]
        if label[v] != j or iota[v] % 2 != j % 2:
            raise InternalError("strip or parity misses the near boundary")
    # strip i, parity c: the near color at v_i when i and c agree, else v_{i-1}
    phi = {}
    for v in range(gn.vertex_count):
        i = label[v]
        src = order1[i - 1] if (i - iota[v]) % 2 == 0 else order1[i - 2]
        phi[v] = psi[src]
    if not verify_coloring(gn, phi, psi):
        raise InternalError("fence construction yielded an improper coloring")
    if not is_tame({v: phi[v] for v in order2}, order2, d, k):
        raise InternalError("fence construction missed tameness")
    return phi


def _tame_fallback(gn: EmbeddedGraph, psi, d: int, k: int, reason, witness):
    """Search for a tame far-boundary coloring the cylinder solver can join.

    Complete over proper far-boundary colorings; winding screens the losers
    cheaply and every candidate shares one cached pair-set table, so the
    scan costs one split plus a lookup per candidate.
    """
    order2 = gn.walk_vertices(gn.cuffs[1])
    if len(order2) > _FALLBACK_LIMIT:
        # candidate count doubles per far-boundary vertex
        exc = PreconditionViolated(
            reason + "; far boundary of length %d is beyond exhaustive repair"
            % len(order2))
        exc.witness = witness
        raise exc
    for cand in cycle_colorings(len(order2)):
        phi2 = dict(zip(order2, cand))
        if not is_tame(phi2, order2, d, k):
            continue
        pre = dict(psi)
        pre.update(phi2)
        if winding_report(gn, pre).verdict != "Satisfied":
            continue
        res = solve_cylinder(gn, pre)
        if res.verdict == "Yes":
            return res.coloring
    exc = PreconditionViolated(
        reason + "; exhausted tame far-boundary colorings without an extension")
    exc.witness = witness
    raise exc


def tame_extend(g: EmbeddedGraph, psi, d: int):
    """Extend a near-boundary coloring so the far boundary comes out tame.

    With k the near boundary's length, demands no non-contractible cycle
    shorter than k and none shorter than 2k(d+1) close to the far boundary;
    short-close cycles that merely crowd the far boundary reroute the job to
    a complete search instead of failing it.  The returned coloring is total,
    proper, extends psi, and is (k,d)-tame on the far boundary.
    """
    gn = _normalize_cylinder(g, NotCylinder)
    gn.validate_quadrangulation()
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise BadParameters("d must be a positive integer")
    order1 = gn.walk_vertices(gn.cuffs[0])
    order2 = gn.walk_vertices(gn.cuffs[1])
    k = len(order1)
    need, have = set(order1), set(psi)
    if have - need:
        raise BadParameters(
            "colored vertices outside the near boundary: %s" % sorted(have - need)[:8])
    if need - have:
        raise ImproperPrecoloring(
            "near boundary vertices left uncolored: %s" % sorted(need - have)[:8])
    for v in order1:
        if psi[v] not in (1, 2, 3):
            raise ImproperPrecoloring("vertex %d has color %r" % (v, psi[v]))
    for i, v in enumerate(order1):
        if psi[v] == psi[order1[i - 1]]:
            raise ImproperPrecoloring(
                "adjacent boundary vertices %d and %d share a color"
                % (order1[i - 1], v))

    short = shortest_noncontractible(gn, max_length=k - 1)
    if short is not None:
        exc = PreconditionViolated(
            "a non-contractible cycle of length %d undercuts the near boundary (%d)"
            % (len(short), k))
        exc.witness = short
        raise exc

    between = graph_distance(gn, set(order1), set(order2))
    if between <= 3 * k + 4:
        if between < 3 * k + 4:
            msg = ("boundary cycles at distance %d, need at least %d"
                   % (between, 3 * k + 4))
        else:
            msg = ("boundary cycles at distance exactly %d: the base bound %d "
                   "holds but the one-layer slack %d does not"
                   % (between, 3 * k + 4, 3 * k + 5))
        exc = PreconditionViolated(msg)
        exc.witness = gn.cuffs[0]
        raise exc

    dist2 = bfs_layers(gn, order2)
    bits = _crossing_bits(gn)
    adj = _vertex_adjacency(gn)
    cap = 2 * k * (d + 1) - 1
    hit = None
    roots = sorted((v for v in range(gn.vertex_count) if dist2[v] <= 3 * k + 4),
                   key=lambda v: (dist2[v], v))
    for root in roots:
        got = _odd_walk_through(gn, bits, root, adj, cap)
        if got is None:
            continue
        cvs, ces = _extract_odd_cycle(gn, bits, got[0], got[1])
        if min(dist2[v] for v in cvs) > 3 * k + 4:
            # the walk lassoed a distant short cycle; only a short cycle
            # actually through this root would convict it
            got = _short_cycle_through(gn, bits, adj, root, cap)
            if got is None:
                continue
            cvs, ces = got
        hit = (cvs, ces)
        break
    if hit is None:
        return _tame_construct(gn, psi, d, k, dist2)

    cvs, ces = hit
    witness = _walk_of_cycle(gn, cvs, ces)
    mind = min(dist2[v] for v in cvs)
    if mind <= 3 * k + 3:
        reason = ("a non-contractible cycle of length %d sits at distance %d "
                  "from the far boundary, inside the %d bound"
                  % (len(ces), mind, 3 * k + 4))
    else:
        reason = ("a non-contractible cycle of length %d sits at distance %d: "
                  "the base bound %d holds but the one-layer slack %d does not"
                  % (len(ces), mind, 3 * k + 4, 3 * k + 5))
    return _tame_fallback(gn, psi, d, k, reason, witness)
