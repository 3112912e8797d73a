"""Cutting embedded graphs along subgraphs, and what the cut reveals.

Cutting along a subgraph h means thickening h slightly and removing it:
every face-region of h that holds graph material becomes a separate piece,
vertices of h split into one copy per corner sector, and each h edge is
copied once per side.  The new boundary walks of the pieces are exactly
the sweep orbits of h inside the ambient rotation system.

Cuffs that share a vertex with h are absorbed into the cut subgraph first.
This keeps every corner sector homogeneous: a cuff patch can then only
appear as a whole zero-width sector, never mixed into a fan of real faces.

Everything else here (contractibility, surrounding, essentiality, the
normal disk representation) is a reading of the cut pieces.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .embed import (
    ClosedWalk,
    EmbeddedGraph,
    bfs_path,
    min_rotation,
)
from .errors import (
    InternalError,
    NotACycle,
    NotConnected,
    NotSubgraph,
    UnsupportedCut,
)


@dataclass(frozen=True)
class CutPiece:
    """One face-region of the cut subgraph, as its own bordered surface.

    vertex_map / edge_map send piece ids back to the parent graph; new_cuffs
    are the piece cuff indices that the cut created, carried_cuffs pairs the
    remaining piece cuff indices with the parent cuff they came from.
    """

    graph: EmbeddedGraph
    vertex_map: tuple
    edge_map: tuple
    new_cuffs: tuple
    carried_cuffs: tuple


@dataclass(frozen=True)
class CycleClass:
    tag: str
    cuff: int | None = None

    @property
    def is_contractible(self) -> bool:
        return self.tag == "Contractible"

    @property
    def is_essential(self) -> bool:
        return self.tag == "EssentialCycle"


def effective_cut(g: EmbeddedGraph, h_edges):
    """Close h under absorbing every cuff that shares a vertex with it.

    Returns (edge id frozenset, indices of absorbed cuffs).
    """
    ids = set()
    for e in h_edges:
        e = int(e)
        if not (0 <= e < g.edge_count):
            raise NotSubgraph("edge id %d out of range" % e)
        ids.add(e)
    touched = set()
    grew = True
    while grew:
        grew = False
        vs = set()
        for e in ids:
            vs.update(g.edges[e])
        for i, w in enumerate(g.cuffs):
            if i in touched:
                continue
            if set(g.walk_vertices(w)) & vs:
                ids.update(w.edge_set())
                touched.add(i)
                grew = True
    return frozenset(ids), tuple(sorted(touched))


def _edge_sides(g, t, e):
    # the two face pairs along edge e: swept by states (2e,+1) and (2e,-1)
    return t.pair_of_state(4 * e), t.pair_of_state(4 * e + 1)


def _regions(g: EmbeddedGraph, h_eff):
    """Component id per true face pair, merging across non-cut edges."""
    t = g.traced
    parent = {p: p for p in t.true_pairs}

    def find(p):
        while parent[p] != p:
            parent[p] = parent[parent[p]]
            p = parent[p]
        return p

    for e in range(g.edge_count):
        if e in h_eff:
            continue
        a, b = _edge_sides(g, t, e)
        if t.is_cap[a] or t.is_cap[b]:
            continue
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    region = {}
    order = {}
    for p in t.true_pairs:
        r = find(p)
        if r not in order:
            order[r] = len(order)
        region[p] = order[r]
    return region, len(order)


def _corner_pairs(g: EmbeddedGraph):
    """Map (vertex, opening dart) -> face pair owning that rotation sector.

    The sector at w opened by dart a spans from a to its rotation successor;
    each graph-trace transition sweeps exactly one sector.
    """
    t = g.traced
    corner = {}
    for o, states in enumerate(t.orbits):
        for st in states:
            d = st >> 1
            s = 1 if (st & 1) == 0 else -1
            s2 = s * g.signs[d >> 1]
            dbar = d ^ 1
            w = g.dart_tail(dbar)
            rot = g.rotations[w]
            i = g._rot_pos[dbar]
            if s2 > 0:
                key = (w, dbar)
            else:
                key = (w, rot[(i - 1) % len(rot)])
            p = t.pair_of_state(st)
            if key in corner and corner[key] != p:
                raise InternalError("sector %s swept by two distinct pairs" % (key,))
            corner[key] = p
    return corner


class _HTrace:
    """Sweep orbits of the cut subgraph h inside g's rotation system.

    States are (dart of h, sense); the transition crosses the dart and then
    turns through the corner fan at its head until the next h dart.  Each
    orbit records, per step, the sector key it swept and the sector's corner
    list, which is everything piece assembly needs.
    """

    def __init__(self, g: EmbeddedGraph, h_eff):
        self.g = g
        self.h_eff = h_eff
        self.is_h = [e in h_eff for e in range(g.edge_count)]
        self._orbits()

    def _next(self, st):
        g = self.g
        d = st >> 1
        s = 1 if (st & 1) == 0 else -1
        s2 = s * g.signs[d >> 1]
        dbar = d ^ 1
        w = g.dart_tail(dbar)
        rot = g.rotations[w]
        n = len(rot)
        i = g._rot_pos[dbar]
        corners = []
        if s2 > 0:
            j = i
            while True:
                corners.append((w, rot[j]))
                j = (j + 1) % n
                if self.is_h[rot[j] >> 1]:
                    break
            x = rot[j]
            sector = (w, dbar)
        else:
            j = i
            while True:
                j = (j - 1) % n
                corners.append((w, rot[j]))
                if self.is_h[rot[j] >> 1]:
                    break
            x = rot[j]
            sector = (w, x)
        nxt = (x << 1) | (0 if s2 > 0 else 1)
        return nxt, sector, corners

    def _orbits(self):
        g = self.g
        states = []
        for e in range(g.edge_count):
            if self.is_h[e]:
                states.extend((4 * e, 4 * e + 1, 4 * e + 2, 4 * e + 3))
        seen = set()
        self.orbits = []      # list of state tuples
        self.sectors = []     # aligned sector keys, sectors[k][i] follows darts[k][i]
        self.corners = []     # aligned corner key lists
        for st0 in states:
            if st0 in seen:
                continue
            orbit, secs, cors = [], [], []
            st = st0
            while True:
                orbit.append(st)
                st, sector, corner_list = self._next(st)
                secs.append(sector)
                cors.append(corner_list)
                if st == st0:
                    break
                if st in seen:
                    raise InternalError("cut sweep orbits are not disjoint")
            seen.update(orbit)
            self.orbits.append(tuple(orbit))
            self.sectors.append(tuple(secs))
            self.corners.append(tuple(cors))

    def rev_state(self, st):
        d = st >> 1
        s = 1 if (st & 1) == 0 else -1
        s3 = -s * self.g.signs[d >> 1]
        return ((d ^ 1) << 1) | (0 if s3 > 0 else 1)


def _h_walks(g: EmbeddedGraph, h_eff, corner_pair, region):
    """Canonical sweep walks of the cut, each with its face-region.

    Returns a list of dicts with darts, sectors, corners and region; walks
    that sweep only cuff patches carry region None and are dropped by the
    caller.  Each corner sector of h appears in exactly one walk.
    """
    tr = _HTrace(g, h_eff)
    t = g.traced
    where = {}
    for k, orbit in enumerate(tr.orbits):
        for st in orbit:
            where[st] = k
    used = set()
    walks = []
    for k, orbit in enumerate(tr.orbits):
        if k in used:
            continue
        mate = where[tr.rev_state(orbit[0])]
        if mate == k:
            raise UnsupportedCut("cut sweep pairs an orbit with itself")
        used.add(k)
        used.add(mate)
        other = tr.orbits[mate]
        canon, secs, cors = orbit, tr.sectors[k], tr.corners[k]
        if min(other) < min(orbit):
            canon, secs, cors = other, tr.sectors[mate], tr.corners[mate]
        regions_hit = set()
        for lst in cors:
            for key in lst:
                p = corner_pair[key]
                if not t.is_cap[p]:
                    regions_hit.add(region[p])
        if len(regions_hit) > 1:
            raise InternalError("cut walk touches two face-regions")
        walks.append(
            {
                "darts": tuple(st >> 1 for st in canon),
                "sectors": secs,
                "corners": cors,
                "region": regions_hit.pop() if regions_hit else None,
            }
        )
    return walks


def _sector_of_dart(g, h_set, d):
    """Opening dart of the corner sector containing non-cut dart d."""
    w = g.dart_tail(d)
    rot = g.rotations[w]
    n = len(rot)
    j = g._rot_pos[d]
    for _ in range(n):
        if (rot[j] >> 1) in h_set:
            return (w, rot[j])
        j = (j - 1) % n
    raise InternalError("dart %d has no cut sector" % d)


def cut_along(g: EmbeddedGraph, h_edges):
    """Cut g along the edge set h_edges; one CutPiece per face-region.

    Cuffs meeting h are absorbed into the cut first, so their circles
    reappear inside the new boundary walks rather than as carried cuffs.
    """
    h_eff, touched = effective_cut(g, h_edges)
    if not h_eff:
        piece = CutPiece(
            g,
            tuple(range(g.vertex_count)),
            tuple(range(g.edge_count)),
            (),
            tuple((i, i) for i in range(len(g.cuffs))),
        )
        return [piece]
    t = g.traced
    region, nregions = _regions(g, h_eff)
    corner_pair = _corner_pairs(g)
    walks = [w for w in _h_walks(g, h_eff, corner_pair, region) if w["region"] is not None]
    walks.sort(key=lambda w: min_rotation(w["darts"]))

    h_vertices = set()
    for e in h_eff:
        h_vertices.update(g.edges[e])

    # vertex region for interior vertices, via any true side around them
    def vertex_region(v):
        for d in g.rotations[v]:
            for st in (d << 1, (d << 1) | 1):
                p = t.pair_of_state(st)
                if not t.is_cap[p]:
                    return region[p]
        raise InternalError("vertex %d sees no true face" % v)

    pieces = []
    chi_pieces = 0
    corners_kept = 0
    copies_kept = 0
    for r in range(nregions):
        my_walks = [w for w in walks if w["region"] == r]
        corner_id = {}
        vmap = []
        for w in my_walks:
            for key in w["sectors"]:
                if key in corner_id:
                    raise InternalError("sector %s claimed twice" % (key,))
                corner_id[key] = len(vmap)
                vmap.append(key[0])
        interior_id = {}
        for v in range(g.vertex_count):
            if v not in h_vertices and vertex_region(v) == r:
                interior_id[v] = len(vmap)
                vmap.append(v)
        corners_kept += len(corner_id)

        def end_id(d):
            v = g.dart_tail(d)
            if v in h_vertices:
                return corner_id[_sector_of_dart(g, h_eff, d)]
            return interior_id[v]

        edges_out = []
        emap = []
        signs_out = []
        dart_of = {}  # original non-cut dart -> piece dart
        for e in range(g.edge_count):
            if e in h_eff:
                continue
            a, b = _edge_sides(g, t, e)
            side = a if not t.is_cap[a] else b
            if region[side] != r:
                continue
            eid = len(edges_out)
            edges_out.append((end_id(2 * e), end_id(2 * e + 1)))
            emap.append(e)
            signs_out.append(g.signs[e])
            dart_of[2 * e] = 2 * eid
            dart_of[2 * e + 1] = 2 * eid + 1

        # one copy of each cut edge per sweep traversal
        walk_cuffs = []
        side_darts = {}  # sector key -> [dart entering rotation at the a side, at the b side]
        for w in my_walks:
            darts = w["darts"]
            secs = w["sectors"]
            n = len(darts)
            ids = []
            for i in range(n):
                eid = len(edges_out)
                tail_corner = corner_id[secs[i - 1]]
                head_corner = corner_id[secs[i]]
                e = darts[i] >> 1
                edges_out.append((tail_corner, head_corner))
                emap.append(e)
                signs_out.append(g.signs[e])
                ids.append(eid)
            walk_cuffs.append(tuple(2 * eid for eid in ids))
            for i in range(n):
                d = darts[i]
                s = None  # direction of the sweep at sector secs[i]
                # the sector after dart i is bounded by darts[i]^1 and darts[i+1];
                # its opening dart tells which side each copy lies on
                key = secs[i]
                arrive = 2 * ids[i] + 1
                depart = 2 * ids[(i + 1) % n]
                if key[1] == (d ^ 1):
                    side_darts[key] = (arrive, depart)
                else:
                    side_darts[key] = (depart, arrive)
        copies_kept += sum(len(w["darts"]) for w in my_walks)

        rotations = [None] * len(vmap)
        for w in my_walks:
            for key, cors in zip(w["sectors"], w["corners"]):
                a_dart, b_dart = side_darts[key]
                v, a = key
                rot = g.rotations[v]
                n = len(rot)
                j = g._rot_pos[a]
                mids = []
                while True:
                    j = (j + 1) % n
                    if (rot[j] >> 1) in h_eff:
                        break
                    mids.append(dart_of[rot[j]])
                rotations[corner_id[key]] = tuple([a_dart] + mids + [b_dart])
        for v, pid in interior_id.items():
            rotations[pid] = tuple(dart_of[d] for d in g.rotations[v])

        cuffs_out = [ClosedWalk(c) for c in walk_cuffs]
        new_idx = tuple(range(len(cuffs_out)))
        carried = []
        for i, cw in enumerate(g.cuffs):
            if i in touched:
                continue
            e0 = cw.darts[0] >> 1
            a, b = _edge_sides(g, t, e0)
            side = a if not t.is_cap[a] else b
            if region[side] != r:
                continue
            carried.append((len(cuffs_out), i))
            cuffs_out.append(ClosedWalk(tuple(dart_of[d] for d in cw.darts)))
        piece_graph = EmbeddedGraph(
            len(vmap), edges_out, rotations, signs_out, cuffs_out
        )
        chi_pieces += piece_graph.signature.euler_characteristic
        pieces.append(
            CutPiece(piece_graph, tuple(vmap), tuple(emap), new_idx, tuple(carried))
        )

    # gluing ledger: duplicated corners and edge copies account exactly for
    # the difference in Euler characteristics
    chi = g.signature.euler_characteristic
    gain = (corners_kept - len(h_vertices)) - (copies_kept - len(h_eff))
    if chi_pieces - chi != gain:
        raise InternalError(
            "cut ledger off: %d pieces vs %d + %d" % (chi_pieces, chi, gain)
        )
    return pieces


# -- cycle classification -------------------------------------------------------


def _cycle_edges(g: EmbeddedGraph, c: ClosedWalk):
    if len(c) == 0:
        raise NotACycle("empty walk")
    vs = []
    for i, d in enumerate(c.darts):
        nxt = c.darts[(i + 1) % len(c)]
        if g.dart_head(d) != g.dart_tail(nxt):
            raise NotACycle("walk does not close")
        vs.append(g.dart_tail(d))
    if len(set(vs)) != len(vs):
        raise NotACycle("walk revisits a vertex")
    ids = [d >> 1 for d in c.darts]
    if len(set(ids)) != len(ids):
        raise NotACycle("walk repeats an edge")
    return frozenset(ids)


def classify_cycle(g: EmbeddedGraph, c: ClosedWalk) -> CycleClass:
    """Contractible, SurroundsCuff(i), or EssentialCycle, by cutting.

    A disk piece whose single boundary walk spends exactly one copy on each
    cycle edge certifies contractibility; a genus-0 piece pairing the cycle
    with exactly one cuff (carried, or absorbed and woven into the same
    walk) certifies surrounding.  Cycles whose cut yields neither shape are
    essential.  Pinched multi-region contact with a cuff is classified
    conservatively as essential.
    """
    ids = _cycle_edges(g, c)
    n = len(ids)
    pieces = cut_along(g, ids)
    for piece in pieces:
        sig = piece.graph.signature
        if piece.carried_cuffs or len(piece.new_cuffs) != 1:
            continue
        w = piece.graph.cuffs[piece.new_cuffs[0]]
        we = [piece.edge_map[d >> 1] for d in w.darts]
        if sig.key() == (0, True, 1) and len(w) == n and set(we) == ids:
            return CycleClass("Contractible")
    for i in range(len(g.cuffs)):
        cuff_ids = g.cuffs[i].edge_set()
        for piece in pieces:
            sig = piece.graph.signature
            if sig.euler_genus != 0 or not sig.orientable:
                continue
            if len(piece.new_cuffs) == 1 and [j for (_, j) in piece.carried_cuffs] == [i]:
                w = piece.graph.cuffs[piece.new_cuffs[0]]
                we = [piece.edge_map[d >> 1] for d in w.darts]
                if len(piece.graph.cuffs) == 2 and len(w) == n and set(we) == ids:
                    return CycleClass("SurroundsCuff", i)
            if len(piece.new_cuffs) == 1 and not piece.carried_cuffs and sig.cuffs == 1:
                w = piece.graph.cuffs[piece.new_cuffs[0]]
                we = [piece.edge_map[d >> 1] for d in w.darts]
                if len(w) == n + len(cuff_ids) and sorted(set(we)) == sorted(
                    ids | cuff_ids
                ):
                    if all(v == 1 for v in Counter(we).values()):
                        return CycleClass("SurroundsCuff", i)
    return CycleClass("EssentialCycle")


# -- essentiality of connected subgraphs ----------------------------------------


def _subgraph_connected(g, ids):
    ids = list(ids)
    if not ids:
        return False
    adj = {}
    for e in ids:
        u, v = g.edges[e]
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    start = g.edges[ids[0]][0]
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == len(adj)


def is_essential(g: EmbeddedGraph, h_edges) -> bool:
    """Whether the connected subgraph escapes every disk and one-hole disk.

    Non-essential means some face-region f of the cut certifies that the
    complement of f is, up to the absorbed cuff arcs, a disk (no whole cuff
    inside) or a disk with one hole (exactly one cuff inside): the region
    must touch the cut in a single boundary walk and the complement's Euler
    count must match a genus-0 surface with that many boundary circles.
    """
    ids = frozenset(int(e) for e in h_edges)
    if not _subgraph_connected(g, ids):
        raise NotConnected("essentiality is defined for connected subgraphs")
    h_eff, touched = effective_cut(g, ids)
    t = g.traced
    region, nregions = _regions(g, h_eff)
    corner_pair = _corner_pairs(g)
    walks = [w for w in _h_walks(g, h_eff, corner_pair, region) if w["region"] is not None]

    h_vertices = set()
    for e in h_eff:
        h_vertices.update(g.edges[e])

    frontier = [0] * nregions
    for w in walks:
        frontier[w["region"]] += 1

    v_int = [0] * nregions
    for v in range(g.vertex_count):
        if v in h_vertices:
            continue
        r = None
        for d in g.rotations[v]:
            for st in (d << 1, (d << 1) | 1):
                p = t.pair_of_state(st)
                if not t.is_cap[p]:
                    r = region[p]
                    break
            if r is not None:
                break
        v_int[r] += 1
    e_int = [0] * nregions
    for e in range(g.edge_count):
        if e in h_eff:
            continue
        a, b = _edge_sides(g, t, e)
        side = a if not t.is_cap[a] else b
        e_int[region[side]] += 1
    f_in = [0] * nregions
    for p in t.true_pairs:
        f_in[region[p]] += 1

    V, E, F = g.vertex_count, g.edge_count, len(t.true_pairs)
    untouched_region = {}
    for i, cw in enumerate(g.cuffs):
        if i in touched:
            continue
        e0 = cw.darts[0] >> 1
        a, b = _edge_sides(g, t, e0)
        side = a if not t.is_cap[a] else b
        untouched_region[i] = region[side]

    for f in range(nregions):
        if frontier[f] != 1:
            continue
        cuffs_in = len(touched) + sum(
            1 for i, rf in untouched_region.items() if rf != f
        )
        if cuffs_in > 1:
            continue
        chi_cf = (V - v_int[f]) - (E - e_int[f]) + (F - f_in[f])
        if chi_cf == 2 - (1 + cuffs_in):
            return False
    return True


# -- bounded search for essential subgraphs -------------------------------------


def _boundary_vertex_set(g):
    out = set()
    for w in g.cuffs:
        out.update(g.walk_vertices(w))
    return out


def _walk_from_vertices(g, vs):
    """ClosedWalk through the vertex cycle vs, picking the smallest edge ids."""
    darts = []
    n = len(vs)
    for i in range(n):
        u, v = vs[i], vs[(i + 1) % n]
        cands = []
        for e in g.edges_between(u, v):
            d = 2 * e if g.edges[e][0] == u else 2 * e + 1
            cands.append(d)
        if not cands:
            raise NotACycle("no edge %d-%d" % (u, v))
        darts.append(min(cands))
    return ClosedWalk(darts)


def _short_cycles(g: EmbeddedGraph, max_len: int):
    """Simple cycles of length <= max_len via per-root BFS loop closing.

    Complete for the shortest cycle through every vertex; longer cycles are
    found best-effort, which is all the budgeted search promises.
    """
    seen = set()
    out = []
    n = g.vertex_count
    for root in range(n):
        dist = [-1] * n
        par = [-1] * n
        dist[root] = 0
        order = [root]
        qi = 0
        while qi < len(order):
            u = order[qi]
            qi += 1
            for d in g.rotations[u]:
                w = g.dart_head(d)
                if dist[w] == -1:
                    dist[w] = dist[u] + 1
                    par[w] = u
                    order.append(w)
        for e, (u, v) in enumerate(g.edges):
            if dist[u] == -1 or dist[v] == -1:
                continue
            if dist[u] + dist[v] + 1 > max_len:
                continue
            pu, pv = [], []
            x = u
            while x != -1:
                pu.append(x)
                x = par[x]
            x = v
            while x != -1:
                pv.append(x)
                x = par[x]
            su, sv = set(pu), set(pv)
            meet = None
            for x in pu:
                if x in sv:
                    meet = x
                    break
            cut_u = pu[: pu.index(meet) + 1]
            cut_v = pv[: pv.index(meet) + 1]
            if set(cut_u) & set(cut_v) != {meet}:
                continue
            vs = cut_u[:-1] + [meet] + list(reversed(cut_v[:-1]))
            if len(vs) < 3 or len(set(vs)) != len(vs):
                continue
            if len(vs) > max_len:
                continue
            try:
                walk = _walk_from_vertices(g, vs)
            except NotACycle:
                continue
            key = min_rotation(tuple(sorted(walk.edge_set())))
            if key in seen:
                continue
            seen.add(key)
            out.append(walk)
    out.sort(key=lambda w: (len(w), min_rotation(w.darts)))
    return out


def find_essential(g: EmbeddedGraph, budget: int):
    """Some connected essential subgraph within the edge budget, or None.

    Candidates follow the minimal shapes: essential cycles first, then
    cuff-to-cuff paths, baseless spokes, and composite theta, dumbbell and
    lollipop unions; everything is verified before being returned, ties
    break on size then lexicographic dart key.
    """
    if budget < 1:
        return None
    bset = _boundary_vertex_set(g)
    cuff_of = {}
    for i, w in enumerate(g.cuffs):
        for v in g.walk_vertices(w):
            cuff_of[v] = i

    candidates = []  # (rank, size, key, edge frozenset)

    def offer(rank, ids, key):
        ids = frozenset(ids)
        if 1 <= len(ids) <= budget:
            candidates.append((rank, len(ids), key, ids))

    cycles = _short_cycles(g, budget)
    surrounders = {}
    for c in cycles:
        vs = g.walk_vertices(c)
        onb = [v for v in vs if v in bset]
        if len(onb) > 1:
            continue
        try:
            cls = classify_cycle(g, c)
        except NotACycle:
            continue
        if cls.tag == "EssentialCycle":
            offer(0, c.edge_set(), min_rotation(c.darts))
        elif cls.tag == "SurroundsCuff" and not onb:
            if cls.cuff not in surrounders:
                surrounders[cls.cuff] = c

    for i in range(len(g.cuffs)):
        for j in range(i + 1, len(g.cuffs)):
            src = set(g.walk_vertices(g.cuffs[i]))
            dst = set(g.walk_vertices(g.cuffs[j]))
            path = bfs_path(g, sorted(src), dst, forbidden_vertices=bset - src - dst)
            if path is None:
                continue
            # keep only the hop from the last source-cuff vertex onward
            last = max(k for k, v in enumerate(path) if v in src)
            path = path[last:]
            if len(path) - 1 > budget:
                continue
            ids = _path_edge_ids(g, path)
            if is_essential(g, ids):
                offer(1, ids, tuple(path))

    for i in range(len(g.cuffs)):
        cv = sorted(set(g.walk_vertices(g.cuffs[i])))
        for ui in range(len(cv)):
            for vi in range(ui + 1, len(cv)):
                u, v = cv[ui], cv[vi]
                path = bfs_path(g, [u], [v], forbidden_vertices=bset - {u, v})
                if path is None or len(path) - 1 > budget:
                    continue
                ids = _path_edge_ids(g, path)
                if is_essential(g, ids):
                    offer(2, ids, tuple(path))

    ks = sorted(surrounders)
    for a in range(len(ks)):
        for b in range(a + 1, len(ks)):
            ca, cb = surrounders[ks[a]], surrounders[ks[b]]
            va, vb = set(g.walk_vertices(ca)), set(g.walk_vertices(cb))
            ids = set(ca.edge_set()) | set(cb.edge_set())
            if va & vb:
                if _subgraph_connected(g, ids) and is_essential(g, ids):
                    offer(3, ids, (ks[a], ks[b]))
                continue
            path = bfs_path(g, sorted(va), vb, forbidden_vertices=bset)
            if path is None:
                continue
            ids |= set(_path_edge_ids(g, path))
            if _subgraph_connected(g, ids) and is_essential(g, ids):
                offer(3, ids, (ks[a], ks[b], tuple(path)))
    for a in ks:
        ca = surrounders[a]
        va = set(g.walk_vertices(ca))
        for i in range(len(g.cuffs)):
            if i == a:
                continue
            dst = set(g.walk_vertices(g.cuffs[i]))
            path = bfs_path(g, sorted(va), dst, forbidden_vertices=bset - dst)
            if path is None:
                continue
            ids = set(ca.edge_set()) | set(_path_edge_ids(g, path))
            if _subgraph_connected(g, ids) and is_essential(g, ids):
                offer(4, ids, (a, i, tuple(path)))

    if not candidates:
        return None
    candidates.sort(key=lambda rec: (rec[0], rec[1], rec[2]))
    return candidates[0][3]


def _path_edge_ids(g, path):
    ids = []
    for u, v in zip(path, path[1:]):
        ids.append(min(g.edges_between(u, v)))
    return ids


# -- the one-disk-face representation -------------------------------------------


def normal_representation(g: EmbeddedGraph):
    """(disk piece graph, its boundary walk, vertex map to g).

    The cut subgraph is the complement of a dual spanning tree (grown by
    BFS over the honest faces, never crossing cuff edges), pruned of
    pendant twigs.  The complement of a dual spanning tree always contains
    a spanning connected primal subgraph, and cutting along it opens g
    into a single disk whose boundary walk uses each cut edge twice and
    each cuff edge once.
    """
    t = g.traced
    if g.edge_count == 0:
        raise InternalError("normal representation needs at least one edge")
    cuff_edges = set()
    for w in g.cuffs:
        cuff_edges |= w.edge_set()
    crossed = [False] * g.edge_count
    start = t.true_pairs[0]
    pair_seen = {start}
    dq = [start]
    qi = 0
    while qi < len(dq):
        p = dq[qi]
        qi += 1
        for d in t.pair_darts[p]:
            e = d >> 1
            if e in cuff_edges or crossed[e]:
                continue
            a, b = _edge_sides(g, t, e)
            other = b if a == p else a
            if t.is_cap[other] or other in pair_seen:
                continue
            crossed[e] = True
            pair_seen.add(other)
            dq.append(other)
    if len(pair_seen) != len(t.true_pairs):
        raise InternalError("dual tree failed to span the faces")
    h = {e for e in range(g.edge_count) if not crossed[e]}
    # prune pendant twigs; cuff edges always sit on cycles and survive
    deg = {}
    for e in h:
        for v in g.edges[e]:
            deg[v] = deg.get(v, 0) + 1
    changed = True
    while changed:
        changed = False
        for e in sorted(h):
            if len(h) == 1:
                break
            u, v = g.edges[e]
            if deg[u] == 1 or deg[v] == 1:
                h.discard(e)
                deg[u] -= 1
                deg[v] -= 1
                changed = True
    pieces = cut_along(g, h)
    if len(pieces) != 1:
        raise InternalError("normal representation cut left %d pieces" % len(pieces))
    piece = pieces[0]
    sig = piece.graph.signature
    if sig.key() != (0, True, 1) or piece.carried_cuffs:
        raise InternalError("normal representation piece is %s" % (sig,))
    gamma = piece.graph.cuffs[piece.new_cuffs[0]]
    return piece.graph, gamma, piece.vertex_map
