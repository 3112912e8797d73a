"""Colors, winding numbers, and the winding-parity feasibility test.

Colors are the integers 1, 2, 3.  Crossing an edge u -> v in a proper
coloring contributes delta = +1 when the color advances one step along
1 -> 2 -> 3 -> 1 and -1 when it steps back; around any closed walk the
delta sum is a multiple of 3 and omega = sum/3 is the winding number of
the coloring along the walk.  Properly colored 4-cycles always have
omega 0, which is what makes the cuff windings of a quadrangulation an
extension obstruction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .embed import ClosedWalk, EmbeddedGraph
from .errors import (
    ImproperEdge,
    ImproperPrecoloring,
    InfeasibleParameters,
    InternalError,
    NotOrientableError,
    Uncolored,
)


def get_color(coloring, v: int) -> int:
    try:
        c = coloring[v]
    except (KeyError, IndexError):
        raise Uncolored("vertex %d has no color" % v) from None
    if c is None:
        raise Uncolored("vertex %d has no color" % v)
    if c not in (1, 2, 3):
        raise ImproperPrecoloring("vertex %d has color %r, want 1..3" % (v, c))
    return c


def delta(a: int, b: int) -> int:
    """Directed color step: +1 if b follows a along 1->2->3->1, else -1."""
    if a == b:
        raise ImproperEdge("equal colors %d on an edge" % a)
    return 1 if (b - a) % 3 == 1 else -1


def delta_edge(psi, u: int, v: int) -> int:
    """delta of the edge u -> v under psi; antisymmetric in u, v."""
    return delta(get_color(psi, u), get_color(psi, v))


def walk_delta_sum(g: EmbeddedGraph, walk: ClosedWalk, coloring) -> int:
    total = 0
    for d in walk.darts:
        total += delta(get_color(coloring, g.dart_tail(d)), get_color(coloring, g.dart_head(d)))
    return total


def winding(g: EmbeddedGraph, walk: ClosedWalk, coloring) -> int:
    """omega of a closed walk; the delta sum of a closed walk is 3*omega."""
    s = walk_delta_sum(g, walk, coloring)
    if s % 3:
        raise InternalError("delta sum %d of a closed walk not divisible by 3" % s)
    return s // 3


def is_proper(g: EmbeddedGraph, coloring) -> bool:
    try:
        check_proper(g, coloring)
    except (ImproperEdge, Uncolored, ImproperPrecoloring):
        return False
    return True


def check_proper(g: EmbeddedGraph, coloring):
    for e, (u, v) in enumerate(g.edges):
        if get_color(coloring, u) == get_color(coloring, v):
            raise ImproperEdge("edge %d joins two vertices of color %d" % (e, coloring[u]))


def boundary_vertices(g: EmbeddedGraph):
    out = set()
    for w in g.cuffs:
        out.update(g.walk_vertices(w))
    return out


def check_precoloring(g: EmbeddedGraph, psi):
    """psi must color every cuff vertex and break no edge between colored ones."""
    for v in boundary_vertices(g):
        get_color(psi, v)
    for e, (u, v) in enumerate(g.edges):
        cu = psi.get(u) if hasattr(psi, "get") else None
        cv = psi.get(v) if hasattr(psi, "get") else None
        if cu is not None and cv is not None and cu == cv:
            raise ImproperPrecoloring(
                "edge %d joins precolored vertices of equal color %d" % (e, cu)
            )


def verify_coloring(g: EmbeddedGraph, psi, pre=None) -> bool:
    """True iff psi is total on g, proper on every edge, and extends pre."""
    try:
        for v in range(g.vertex_count):
            get_color(psi, v)
        check_proper(g, psi)
    except (Uncolored, ImproperEdge, ImproperPrecoloring):
        return False
    if pre:
        for v in pre:
            if pre[v] is not None and psi[v] != pre[v]:
                return False
    return True


@dataclass(frozen=True)
class WindingReport:
    """Necessary-condition summary for extending cuff colors.

    per_boundary: omega on each boundary walk, in the directions the test
                  uses (normalized clockwise when orientable, stored input
                  directions otherwise)
    total:        sum of per_boundary
    parity_p:     None on orientable surfaces, else 2*|D| mod 4 where D is
                  the set of edges swept twice in the same direction by the
                  chosen face and cuff traversals
    verdict:      "Satisfied" when the necessary condition holds, else
                  "Violated"
    """

    per_boundary: tuple
    total: int
    parity_p: int | None
    verdict: str
    orientable: bool

    @property
    def satisfied(self) -> bool:
        return self.verdict == "Satisfied"


def parity_invariant(g: EmbeddedGraph, face_orientations=None) -> int:
    """2*|D| mod 4 over one traversal choice per face pair.

    Keeps each cuff in its stored direction; by default a true pair is
    traversed by the orbit starting at its lexicographically smallest
    dart, and a pair listed in face_orientations flips to the mate orbit.
    The result does not depend on face_orientations, which is what makes
    it usable as an invariant.
    """
    g.validate_quadrangulation()
    t = g.traced
    flips = set(face_orientations or ())
    chosen = list(t.cuff_orbit)
    for p, (a, b) in enumerate(t.pairs):
        if not t.is_cap[p]:
            chosen.append(b if p in flips else a)
    hits = [0] * g.dart_count
    for o in chosen:
        for st in t.orbits[o]:
            hits[st >> 1] += 1
    same = 0
    for e in range(g.edge_count):
        two, one = hits[2 * e], hits[2 * e + 1]
        if two + one != 2:
            raise InternalError("edge %d swept %d times" % (e, two + one))
        if two == 2 or one == 2:
            same += 1
    return (2 * same) % 4


def coherent_face_flips(g: EmbeddedGraph):
    """Pair flips that orient every face clockwise, for a sign-balanced g.

    With these flips every true pair is traversed by its all-(+1)-sense
    orbit, so on an orientable quadrangulation the set D of parity_invariant
    becomes empty up to cuff conventions.
    """
    gn = g.orientation_normalize()
    if gn is None:
        raise NotOrientableError("coherent face choice needs an orientable surface")
    t = gn.traced
    flips = set()
    for p, (a, b) in enumerate(t.pairs):
        if not t.is_cap[p] and (t.orbits[a][0] & 1) == 1:
            flips.add(p)
    return flips


def cuff_windings(g: EmbeddedGraph, psi):
    return tuple(winding(g, w, psi) for w in g.cuffs)


def winding_report(g: EmbeddedGraph, psi) -> WindingReport:
    """Evaluate the winding obstruction for extending psi across g.

    Orientable: orient everything coherently; the cuff windings taken
    clockwise must add to zero exactly.  Non-orientable: no coherent
    choice exists, and the obstruction weakens to a congruence mod 4
    against the same-direction-edge parity.
    """
    g.validate_quadrangulation()
    per_stored = cuff_windings(g, psi)
    gn = g.orientation_normalize()
    if gn is not None:
        t = gn.traced
        per = []
        for i in range(len(gn.cuffs)):
            o = t.cuff_orbit[i]
            plus = (t.orbits[o][0] & 1) == 0
            per.append(per_stored[i] if plus else -per_stored[i])
        total = sum(per)
        verdict = "Satisfied" if total == 0 else "Violated"
        return WindingReport(tuple(per), total, None, verdict, True)
    p = parity_invariant(g)
    total = sum(per_stored)
    verdict = "Satisfied" if (total - p) % 4 == 0 else "Violated"
    return WindingReport(per_stored, total, p, verdict, False)


def total_winding_coherent(g: EmbeddedGraph, coloring) -> int:
    """Sum of omega over every face and cuff of an orientable surface, all
    traversed along one global orientation.  Zero for any proper coloring,
    since each edge is swept once in each direction."""
    gn = g.orientation_normalize()
    if gn is None:
        raise NotOrientableError("coherent winding needs an orientable surface")
    t = gn.traced
    total = 0
    for o in range(len(t.orbits)):
        if (t.orbits[o][0] & 1) == 0:
            w = ClosedWalk(t.orbit_darts(o))
            total += winding(gn, w, coloring)
    return total


# -- the constructive path lemma ------------------------------------------------


def color_path(n: int, w: int, c0: int, cn: int):
    """Colors r0..rn of an n-edge path with ends c0, cn and delta sum w.

    Recursion: while n exceeds |w|, spend two edges on a +1/-1 detour
    (r1 is any color other than c0 and r2 repeats c0); once n = |w| every
    remaining step moves by sgn(w).
    """
    if c0 not in (1, 2, 3) or cn not in (1, 2, 3):
        raise InfeasibleParameters("endpoint colors must be in 1..3")
    if n < 0 or n % 2 or w % 2 or abs(w) > n:
        raise InfeasibleParameters("need even n >= |w| with w even, got n=%d w=%d" % (n, w))
    if (cn - c0 - w) % 3:
        raise InfeasibleParameters("cn=%d is not c0+w mod 3 for c0=%d w=%d" % (cn, c0, w))
    out = [c0]
    remaining = n
    while remaining > abs(w):
        here = out[-1]
        out.append(1 if here != 1 else 2)
        out.append(here)
        remaining -= 2
    step = 1 if w > 0 else -1
    for _ in range(remaining):
        out.append((out[-1] - 1 + step) % 3 + 1)
    if out[-1] != cn or len(out) != n + 1:
        raise InternalError("path construction missed its contract")
    return out


# -- tameness of a cycle coloring -----------------------------------------------


def is_tame(psi, cycle, d: int, k: int) -> bool:
    """Whether psi on the cycle splits into <= k two-colored arcs of >= d
    edges with no repeated color at cycle-distance exactly three.

    The arc partition covers the vertex set; consecutive arcs are separated
    by one skipped edge.  Existence is checked by greedy maximal two-colored
    runs tried from every rotation of the starting point.
    """
    verts = list(cycle)
    L = len(verts)
    cols = [get_color(psi, v) for v in verts]
    for i in range(L):
        if cols[i] == cols[(i + 1) % L]:
            raise ImproperEdge("cycle edge %d-%d improperly colored" % (i, (i + 1) % L))
    if L >= 6:
        for i in range(L):
            if cols[i] == cols[(i + 3) % L]:
                return False
    if k < 1:
        return False
    if len(set(cols)) <= 2:
        # one arc covering the whole cycle, length L-1
        return L - 1 >= d
    for s in range(L):
        pos, covered, arcs, ok = s, 0, 0, True
        while covered < L:
            seen = {cols[pos]}
            ln = 1
            while covered + ln < L:
                nxt = cols[(pos + ln) % L]
                if nxt in seen or len(seen) < 2:
                    seen.add(nxt)
                    ln += 1
                else:
                    break
            if ln - 1 < d:
                ok = False
                break
            arcs += 1
            covered += ln
            pos = (pos + ln) % L
            if arcs > k:
                ok = False
                break
        if ok and covered == L and arcs <= k:
            return True
    return False


# -- small enumeration helpers -------------------------------------------------


def cycle_colorings(k: int):
    """All proper 3-colorings of a k-cycle, as tuples; 2^k + 2*(-1)^k of them."""
    out = []
    def rec(prefix):
        if len(prefix) == k:
            if prefix[-1] != prefix[0]:
                out.append(tuple(prefix))
            return
        for c in (1, 2, 3):
            if c != prefix[-1]:
                prefix.append(c)
                rec(prefix)
                prefix.pop()
    for c0 in (1, 2, 3):
        rec([c0])
    return out


def path_coloring_count(k: int) -> int:
    """Proper 3-colorings of a k-vertex path."""
    return 3 * 2 ** (k - 1) if k >= 1 else 1


def enumerate_colorings(g: EmbeddedGraph, vertices, fixed=None):
    """Yield proper partial colorings of `vertices` on top of `fixed`.

    Properness is checked on every edge of g with both ends colored.  The
    yield order is deterministic; each result is a fresh dict containing
    fixed plus the new assignments.
    """
    fixed = dict(fixed or {})
    todo = sorted(set(vertices) - set(fixed))
    adj = {v: [] for v in todo}
    for (u, v) in g.edges:
        if u in adj and (v in adj or v in fixed):
            adj[u].append(v)
        if v in adj and (u in adj or u in fixed):
            adj[v].append(u)
    col = dict(fixed)
    for e, (u, v) in enumerate(g.edges):
        if u in col and v in col and col[u] == col[v]:
            return

    def rec(i):
        if i == len(todo):
            yield dict(col)
            return
        v = todo[i]
        for c in (1, 2, 3):
            if all(col.get(w) != c for w in adj[v]):
                col[v] = c
                yield from rec(i + 1)
                del col[v]

    yield from rec(0)
