"""Embedded multigraphs given as signed rotation systems.

A graph sits on a (possibly non-orientable) surface with boundary.  The
embedding is described combinatorially: every vertex carries a cyclic order
of its incident darts, every edge carries a sign (-1 means the edge reverses
local orientation), and each boundary component ("cuff") is a declared
closed walk that must coincide with one traced face orbit.

Darts are small ints: edge e contributes darts 2*e (based at edges[e][0])
and 2*e+1 (based at edges[e][1]).  Face tracing runs over states
(dart, sense) encoded as 2*dart + (0 if sense == +1 else 1); an orbit of the
transition map is one directed traversal of a face boundary, and the
reversal involution pairs each orbit with its opposite traversal.  Loops are
not supported; parallel edges are fine.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import (
    CuffMismatch,
    InternalError,
    MalformedRotation,
    NotACycle,
    NotCellEmbedded,
    NotConnected,
    NotQuadrangulation,
)


def edge_of(dart: int) -> int:
    return dart >> 1


def reversal(dart: int) -> int:
    return dart ^ 1


def min_rotation(seq):
    """Lexicographically least cyclic rotation, as a tuple."""
    seq = tuple(seq)
    best = seq
    for i in range(1, len(seq)):
        cand = seq[i:] + seq[:i]
        if cand < best:
            best = cand
    return best


@dataclass(frozen=True)
class ClosedWalk:
    """A closed walk stored as the sequence of darts it traverses."""

    darts: tuple

    def __post_init__(self):
        object.__setattr__(self, "darts", tuple(int(d) for d in self.darts))
        if not self.darts:
            raise NotACycle("empty closed walk")

    def __len__(self):
        return len(self.darts)

    def __iter__(self):
        return iter(self.darts)

    def edges(self):
        return tuple(d >> 1 for d in self.darts)

    def edge_set(self):
        return frozenset(d >> 1 for d in self.darts)

    def reversed(self) -> "ClosedWalk":
        return ClosedWalk(tuple((d ^ 1) for d in self.darts[::-1]))

    def rotation_key(self):
        return min_rotation(self.darts)


@dataclass(frozen=True)
class SurfaceSignature:
    """Homeomorphism type of the underlying surface.

    euler_genus is 2 - chi of the closed surface obtained by capping every
    cuff with a disk, so orientable surfaces have even euler_genus and the
    projective plane has euler_genus 1.
    """

    euler_genus: int
    orientable: bool
    cuffs: int

    @property
    def euler_characteristic(self) -> int:
        # chi of the bordered surface itself
        return 2 - self.euler_genus - self.cuffs

    @property
    def is_sphere(self) -> bool:
        return self.euler_genus == 0 and self.cuffs == 0

    @property
    def is_disk(self) -> bool:
        return self.euler_genus == 0 and self.cuffs == 1

    @property
    def is_cylinder(self) -> bool:
        return self.euler_genus == 0 and self.cuffs == 2

    def key(self):
        return (self.euler_genus, self.orientable, self.cuffs)


class EmbeddedGraph:
    """Immutable signed rotation system with declared cuffs.

    vertex_count: number of vertices, ids 0..vertex_count-1
    edges:        tuple of (u, v) endpoint pairs, u != v
    rotations:    per vertex, cyclic tuple of the darts based there
    signs:        per edge, +1 or -1
    cuffs:        declared boundary walks (ClosedWalk or dart sequences)
    """

    __slots__ = (
        "vertex_count",
        "edges",
        "rotations",
        "signs",
        "cuffs",
        "_rot_pos",
        "_traced",
        "_signature",
        "_edge_map",
    )

    def __init__(self, vertex_count, edges, rotations, signs, cuffs=()):
        self.vertex_count = int(vertex_count)
        self.edges = tuple((int(u), int(v)) for (u, v) in edges)
        self.rotations = tuple(tuple(int(d) for d in rot) for rot in rotations)
        self.signs = tuple(int(s) for s in signs)
        self.cuffs = tuple(
            w if isinstance(w, ClosedWalk) else ClosedWalk(w) for w in cuffs
        )
        self._traced = None
        self._signature = None
        self._edge_map = None
        self._validate()

    # -- construction checks -------------------------------------------------

    def _validate(self):
        n, m = self.vertex_count, len(self.edges)
        if n < 1:
            raise MalformedRotation("need at least one vertex")
        for e, (u, v) in enumerate(self.edges):
            if not (0 <= u < n and 0 <= v < n):
                raise MalformedRotation("edge %d endpoint out of range" % e)
            if u == v:
                raise MalformedRotation("edge %d is a loop" % e)
        if len(self.signs) != m:
            raise MalformedRotation("need one sign per edge")
        for e, s in enumerate(self.signs):
            if s not in (-1, 1):
                raise MalformedRotation("sign of edge %d must be +1 or -1" % e)
        if len(self.rotations) != n:
            raise MalformedRotation("need one rotation per vertex")
        pos = [-1] * (2 * m)
        for v, rot in enumerate(self.rotations):
            for i, d in enumerate(rot):
                if not (0 <= d < 2 * m):
                    raise MalformedRotation("dart %d out of range" % d)
                if pos[d] != -1:
                    raise MalformedRotation("dart %d listed twice" % d)
                if self.dart_tail(d) != v:
                    raise MalformedRotation(
                        "dart %d based at vertex %d but listed at %d"
                        % (d, self.dart_tail(d), v)
                    )
                pos[d] = i
        if any(p == -1 for p in pos):
            raise MalformedRotation("some dart missing from the rotations")
        self._rot_pos = tuple(pos)
        seen_cuff_vertices = set()
        for w in self.cuffs:
            here = set()
            for i, d in enumerate(w.darts):
                if not (0 <= d < 2 * m):
                    raise CuffMismatch("cuff dart %d out of range" % d)
                nxt = w.darts[(i + 1) % len(w)]
                if self.dart_head(d) != self.dart_tail(nxt):
                    raise CuffMismatch("cuff walk is not a closed walk")
                v = self.dart_tail(d)
                if v in here:
                    raise CuffMismatch("cuff walk revisits vertex %d" % v)
                here.add(v)
            if here & seen_cuff_vertices:
                raise CuffMismatch("cuff walks share a vertex")
            seen_cuff_vertices |= here

    # -- tiny accessors ------------------------------------------------------

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def dart_count(self) -> int:
        return 2 * len(self.edges)

    def dart_tail(self, d: int) -> int:
        return self.edges[d >> 1][d & 1]

    def dart_head(self, d: int) -> int:
        return self.edges[d >> 1][1 - (d & 1)]

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    def neighbors(self, v: int):
        return tuple(self.dart_head(d) for d in self.rotations[v])

    def walk_vertices(self, walk: ClosedWalk):
        return tuple(self.dart_tail(d) for d in walk.darts)

    def edges_between(self, u: int, v: int):
        if self._edge_map is None:
            em = {}
            for e, (a, b) in enumerate(self.edges):
                em.setdefault((a, b) if a < b else (b, a), []).append(e)
            self._edge_map = {k: tuple(es) for k, es in em.items()}
        return self._edge_map.get((u, v) if u < v else (v, u), ())

    def with_cuffs(self, cuffs) -> "EmbeddedGraph":
        return EmbeddedGraph(
            self.vertex_count, self.edges, self.rotations, self.signs, cuffs
        )

    def __repr__(self):
        return "EmbeddedGraph(n=%d, m=%d, cuffs=%d)" % (
            self.vertex_count,
            len(self.edges),
            len(self.cuffs),
        )

    def __eq__(self, other):
        if not isinstance(other, EmbeddedGraph):
            return NotImplemented
        return (
            self.vertex_count == other.vertex_count
            and self.edges == other.edges
            and self.rotations == other.rotations
            and self.signs == other.signs
            and self.cuffs == other.cuffs
        )

    def __hash__(self):
        return hash(
            (self.vertex_count, self.edges, self.rotations, self.signs, self.cuffs)
        )

    # -- face tracing state machine -------------------------------------------

    # state = 2*dart + (0 if sense == +1 else 1)

    def state_of(self, dart: int, sense: int) -> int:
        return (dart << 1) | (0 if sense > 0 else 1)

    def next_state(self, st: int) -> int:
        d = st >> 1
        s = 1 if (st & 1) == 0 else -1
        s2 = s * self.signs[d >> 1]
        dbar = d ^ 1
        w = self.dart_tail(dbar)
        rot = self.rotations[w]
        i = self._rot_pos[dbar]
        j = (i + (1 if s2 > 0 else -1)) % len(rot)
        return (rot[j] << 1) | (0 if s2 > 0 else 1)

    def rev_state(self, st: int) -> int:
        d = st >> 1
        s = 1 if (st & 1) == 0 else -1
        s3 = -s * self.signs[d >> 1]
        return ((d ^ 1) << 1) | (0 if s3 > 0 else 1)

    @property
    def traced(self) -> "Traced":
        if self._traced is None:
            self._traced = Traced(self)
        return self._traced

    # -- surface recognition ---------------------------------------------------

    def is_connected(self) -> bool:
        if self.vertex_count == 1:
            return True
        seen = [False] * self.vertex_count
        seen[0] = True
        dq = deque([0])
        count = 1
        while dq:
            u = dq.popleft()
            for d in self.rotations[u]:
                w = self.dart_head(d)
                if not seen[w]:
                    seen[w] = True
                    count += 1
                    dq.append(w)
        return count == self.vertex_count

    def _balance(self):
        """Vertex signs rho with sign(e) == rho(u)*rho(v), or None."""
        rho = [0] * self.vertex_count
        for root in range(self.vertex_count):
            if rho[root]:
                continue
            rho[root] = 1
            dq = deque([root])
            while dq:
                u = dq.popleft()
                for d in self.rotations[u]:
                    w = self.dart_head(d)
                    want = rho[u] * self.signs[d >> 1]
                    if rho[w] == 0:
                        rho[w] = want
                        dq.append(w)
                    elif rho[w] != want:
                        return None
        return rho

    @property
    def signature(self) -> SurfaceSignature:
        if self._signature is None:
            if not self.is_connected():
                raise NotConnected("signature needs a connected graph")
            if self.edge_count == 0:
                # lone vertex on the sphere
                if self.cuffs:
                    raise CuffMismatch("edgeless graph cannot carry cuffs")
                self._signature = SurfaceSignature(0, True, 0)
                return self._signature
            t = self.traced
            chi = self.vertex_count - self.edge_count + len(t.pairs)
            self._signature = SurfaceSignature(
                2 - chi, self._balance() is not None, len(self.cuffs)
            )
        return self._signature

    def orientation_normalize(self):
        """All-positive-sign copy of self, or None when non-orientable.

        Reverses the rotation at every vertex on the negative side of the
        balance; vertex and edge ids are unchanged, cuff walks carry over.
        After this the all-(+1)-sense face orbits traverse every edge once
        in each direction, which fixes a coherent "clockwise" orientation.
        """
        rho = self._balance()
        if rho is None:
            return None
        rotations = tuple(
            rot if rho[v] > 0 else tuple(rot[::-1])
            for v, rot in enumerate(self.rotations)
        )
        signs = (1,) * self.edge_count
        return EmbeddedGraph(self.vertex_count, self.edges, rotations, signs, self.cuffs)

    # -- quadrangulation checks -------------------------------------------------

    def validate_quadrangulation(self):
        """Raise unless every non-cuff face is a 4-cycle of a connected graph."""
        if not self.is_connected():
            raise NotConnected("quadrangulations must be connected")
        if self.edge_count == 0:
            raise NotQuadrangulation("no faces to check")
        t = self.traced
        for p in t.true_pairs:
            if t.pair_length[p] != 4:
                raise NotQuadrangulation(
                    "face %s has length %d" % (t.pair_darts[p], t.pair_length[p])
                )
            vs = [self.dart_tail(d) for d in t.pair_darts[p]]
            if len(set(vs)) != 4:
                raise NotQuadrangulation("face %s revisits a vertex" % (vs,))


class Traced:
    """Face orbits of an EmbeddedGraph plus the cuff-to-orbit matching.

    orbit_of_state: orbit index per state
    orbits:         tuple of state tuples, each starting at its least state
    pairs:          orbit index pairs (a, b), rev-images of each other, with
                    a the orbit holding the least state of the pair
    pair_darts:     dart sequence of the canonical orbit of each pair
    cuff_pair:      pair index matched to each declared cuff
    cuff_orbit:     orbit realizing each cuff's stored direction
    true_pairs:     pair indices that are honest faces (not cuff caps)
    """

    __slots__ = (
        "g",
        "orbit_of_state",
        "orbits",
        "pairs",
        "pair_of_orbit",
        "pair_darts",
        "pair_length",
        "cuff_pair",
        "cuff_orbit",
        "is_cap",
        "true_pairs",
    )

    def __init__(self, g: EmbeddedGraph):
        self.g = g
        nstates = 4 * g.edge_count
        orbit_of = [-1] * nstates
        orbits = []
        for st0 in range(nstates):
            if orbit_of[st0] != -1:
                continue
            idx = len(orbits)
            cyc = [st0]
            orbit_of[st0] = idx
            st = g.next_state(st0)
            while st != st0:
                if orbit_of[st] != -1:
                    raise InternalError("face tracing is not a permutation")
                orbit_of[st] = idx
                cyc.append(st)
                st = g.next_state(st)
            orbits.append(tuple(cyc))
        self.orbit_of_state = tuple(orbit_of)
        self.orbits = tuple(orbits)

        # pair each orbit with its reversed traversal
        mate = [-1] * len(orbits)
        for i, cyc in enumerate(orbits):
            j = orbit_of[g.rev_state(cyc[0])]
            if j == i:
                raise MalformedRotation("a face traversal is its own reverse")
            if mate[i] not in (-1, j) or mate[j] not in (-1, i):
                raise InternalError("reversal does not pair orbits")
            mate[i] = j
            mate[j] = i
        pairs = []
        pair_of_orbit = [-1] * len(orbits)
        for i in range(len(orbits)):
            j = mate[i]
            if i < j:
                pair_of_orbit[i] = pair_of_orbit[j] = len(pairs)
                pairs.append((i, j))
        self.pairs = tuple(pairs)
        self.pair_of_orbit = tuple(pair_of_orbit)
        self.pair_darts = tuple(
            tuple(st >> 1 for st in orbits[a]) for (a, b) in pairs
        )
        self.pair_length = tuple(len(d) for d in self.pair_darts)

        self._match_cuffs()

    def _match_cuffs(self):
        g = self.g
        by_key = {}
        for p, (a, b) in enumerate(self.pairs):
            for o in (a, b):
                key = min_rotation(tuple(st >> 1 for st in self.orbits[o]))
                by_key.setdefault(key, set()).add(p)
        cand = []
        for w in g.cuffs:
            ps = sorted(by_key.get(w.rotation_key(), ()))
            if not ps:
                raise CuffMismatch("cuff %s matches no face orbit" % (w.darts,))
            cand.append(ps)
        # distinct cuffs need distinct orbit pairs; tiny bipartite matching
        pair_taken = {}
        def assign(i, seen):
            for p in cand[i]:
                if p in seen:
                    continue
                seen.add(p)
                if p not in pair_taken or assign(pair_taken[p], seen):
                    pair_taken[p] = i
                    return True
            return False

        for i in range(len(cand)):
            if not assign(i, set()):
                raise CuffMismatch("two cuffs claim the same face orbit")
        cuff_pair = [-1] * len(g.cuffs)
        for p, i in pair_taken.items():
            cuff_pair[i] = p
        self.cuff_pair = tuple(cuff_pair)

        cuff_orbit = []
        for i, w in enumerate(g.cuffs):
            a, b = self.pairs[cuff_pair[i]]
            key = w.rotation_key()
            if min_rotation(tuple(st >> 1 for st in self.orbits[a])) == key:
                cuff_orbit.append(a)
            elif min_rotation(tuple(st >> 1 for st in self.orbits[b])) == key:
                cuff_orbit.append(b)
            else:
                raise InternalError("matched cuff lost its orbit")
        self.cuff_orbit = tuple(cuff_orbit)

        caps = set(self.cuff_pair)
        self.is_cap = tuple(p in caps for p in range(len(self.pairs)))
        self.true_pairs = tuple(p for p in range(len(self.pairs)) if p not in caps)

    # -- queries -----------------------------------------------------------------

    def pair_of_state(self, st: int) -> int:
        return self.pair_of_orbit[self.orbit_of_state[st]]

    def pair_of_dart_plus(self, d: int) -> int:
        """Face pair traced by the sense-(+1) state at this dart."""
        return self.pair_of_state(d << 1)

    def orbit_darts(self, o: int):
        return tuple(st >> 1 for st in self.orbits[o])

    def face_vertices(self, p: int):
        return tuple(self.g.dart_tail(d) for d in self.pair_darts[p])


def trace_faces(g: EmbeddedGraph):
    """All face walks of g plus its surface signature.

    Faces are the true orbit pairs in canonical direction; declared cuff
    walks are not included (they are available as g.cuffs).
    """
    t = g.traced
    faces = [ClosedWalk(t.pair_darts[p]) for p in t.true_pairs]
    return faces, g.signature


# -- plain graph searches ----------------------------------------------------


def bfs_layers(g: EmbeddedGraph, sources, forbidden_vertices=(), forbidden_edges=()):
    """Distance from the source set, -1 where unreachable."""
    fv = set(forbidden_vertices)
    fe = set(forbidden_edges)
    dist = [-1] * g.vertex_count
    dq = deque()
    for s in sources:
        if s not in fv and dist[s] == -1:
            dist[s] = 0
            dq.append(s)
    while dq:
        u = dq.popleft()
        for d in g.rotations[u]:
            if (d >> 1) in fe:
                continue
            w = g.dart_head(d)
            if dist[w] == -1 and w not in fv:
                dist[w] = dist[u] + 1
                dq.append(w)
    return dist


def bfs_path(g: EmbeddedGraph, sources, targets, forbidden_vertices=(), forbidden_edges=()):
    """Shortest vertex path from sources to targets, or None.

    Deterministic: scans rotations in order, so ties break by BFS discovery.
    """
    fv = set(forbidden_vertices)
    fe = set(forbidden_edges)
    targets = set(targets) - fv
    parent = {}
    dq = deque()
    for s in sources:
        if s not in fv and s not in parent:
            parent[s] = None
            dq.append(s)
            if s in targets:
                return [s]
    while dq:
        u = dq.popleft()
        for d in g.rotations[u]:
            if (d >> 1) in fe:
                continue
            w = g.dart_head(d)
            if w in fv or w in parent:
                continue
            parent[w] = u
            if w in targets:
                path = [w]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                path.reverse()
                return path
            dq.append(w)
    return None


def graph_distance(g: EmbeddedGraph, sources, targets) -> int:
    """Hop distance between two vertex sets, -1 when disconnected."""
    dist = bfs_layers(g, sources)
    best = -1
    for t in targets:
        if dist[t] != -1 and (best == -1 or dist[t] < best):
            best = dist[t]
    return best


# -- building embeddings from oriented face lists ------------------------------


def embed_from_faces(vertex_count, faces, cuff_faces=()):
    """EmbeddedGraph from coherently oriented face boundary walks.

    faces: list of vertex tuples, each read as a directed closed walk; every
    directed edge must occur exactly once overall (so this only builds
    orientable embeddings).  cuff_faces lists indices of faces to declare as
    cuffs, stored in the orientation given here.
    """
    edge_ids = {}
    edges = []
    darts_of_face = []
    for f in faces:
        f = tuple(f)
        if len(f) < 2:
            raise NotCellEmbedded("face %s too short" % (f,))
        ds = []
        for i, u in enumerate(f):
            v = f[(i + 1) % len(f)]
            if u == v:
                raise MalformedRotation("face %s repeats a vertex edge" % (f,))
            key = (u, v) if u < v else (v, u)
            if key not in edge_ids:
                edge_ids[key] = len(edges)
                edges.append(key)
            e = edge_ids[key]
            d = 2 * e + (0 if edges[e][0] == u else 1)
            ds.append(d)
        darts_of_face.append(tuple(ds))

    m = len(edges)
    seen = [False] * (2 * m)
    for ds in darts_of_face:
        for d in ds:
            if seen[d]:
                raise NotCellEmbedded(
                    "directed edge used twice; faces are not coherently oriented"
                )
            seen[d] = True
    if not all(seen):
        raise NotCellEmbedded("some directed edge missing from the faces")

    # at the head of each dart, the face turns reversal(d) -> next dart;
    # those corner moves must chain into one cycle per vertex
    succ = {}
    for ds in darts_of_face:
        for i, d in enumerate(ds):
            succ[d ^ 1] = ds[(i + 1) % len(ds)]
    tails = [[] for _ in range(vertex_count)]
    for d in range(2 * m):
        tails[edges[d >> 1][d & 1]].append(d)
    rotations = []
    for v in range(vertex_count):
        if not tails[v]:
            rotations.append(())
            continue
        start = tails[v][0]
        cyc = [start]
        d = succ[start]
        while d != start:
            cyc.append(d)
            d = succ[d]
        if len(cyc) != len(tails[v]):
            raise NotCellEmbedded("vertex %d is pinched between faces" % v)
        rotations.append(tuple(cyc))

    cuffs = tuple(darts_of_face[i] for i in cuff_faces)
    return EmbeddedGraph(vertex_count, edges, rotations, (1,) * m, cuffs)
