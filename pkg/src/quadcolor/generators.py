"""Instance families: grid quadrangulations of the disk, cylinder, torus,
and Klein bottle, plus two small classics (K5 on the torus, K4 on the
projective plane).

All generators return EmbeddedGraph values whose signatures are verified at
construction time, so a bug here fails fast instead of corrupting tests.
"""

from __future__ import annotations

from dataclasses import dataclass

from .embed import ClosedWalk, EmbeddedGraph, embed_from_faces
from .errors import BadParameters, InternalError


def _check(g: EmbeddedGraph, euler_genus, orientable, cuffs):
    sig = g.signature
    if sig.key() != (euler_genus, orientable, cuffs):
        raise InternalError("generator produced %s, wanted %s" % (sig, (euler_genus, orientable, cuffs)))
    g.validate_quadrangulation()
    return g


def grid_disk(w: int, h: int) -> EmbeddedGraph:
    """w x h grid of vertices; the outer face is the single cuff."""
    if w < 2 or h < 2:
        raise BadParameters("grid_disk needs w, h >= 2")
    vid = lambda i, j: j * w + i
    faces = []
    for j in range(h - 1):
        for i in range(w - 1):
            faces.append((vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)))
    rim = []
    for j in range(h - 1):
        rim.append(vid(0, j))
    for i in range(w - 1):
        rim.append(vid(i, h - 1))
    for j in range(h - 1, 0, -1):
        rim.append(vid(w - 1, j))
    for i in range(w - 1, 0, -1):
        rim.append(vid(i, 0))
    faces.append(tuple(rim))
    g = embed_from_faces(w * h, faces, cuff_faces=(len(faces) - 1,))
    return _check(g, 0, True, 1)


def grid_cylinder(k: int, m: int) -> EmbeddedGraph:
    """Ring of k vertices times a path of m; both end rings are cuffs.

    Vertex (i, j) gets id j*k + i; cuff 0 is the ring j=0, cuff 1 the ring
    j=m-1, so the cuffs are at hop distance m-1.
    """
    if k < 3 or m < 2:
        raise BadParameters("grid_cylinder needs k >= 3, m >= 2")
    vid = lambda i, j: j * k + i % k
    faces = []
    for j in range(m - 1):
        for i in range(k):
            faces.append((vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)))
    bottom = tuple(vid(-i, 0) for i in range(k))
    top = tuple(vid(i, m - 1) for i in range(k))
    faces.append(bottom)
    faces.append(top)
    g = embed_from_faces(k * m, faces, cuff_faces=(len(faces) - 2, len(faces) - 1))
    return _check(g, 0, True, 2)


def grid_torus(k: int, m: int) -> EmbeddedGraph:
    if k < 3 or m < 3:
        raise BadParameters("grid_torus needs k, m >= 3")
    vid = lambda i, j: (j % m) * k + i % k
    faces = []
    for j in range(m):
        for i in range(k):
            faces.append((vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)))
    g = embed_from_faces(k * m, faces)
    return _check(g, 2, True, 0)


def grid_klein(k: int, m: int) -> EmbeddedGraph:
    """k x m grid closed up into a Klein bottle.

    Rings close up directly; the last ring glues back to ring 0 through a
    reflection i -> -i, carried by negative edge signs on those rungs.
    """
    if k < 3 or m < 3:
        raise BadParameters("grid_klein needs k, m >= 3")
    n = k * m
    vid = lambda i, j: j * k + i % k
    edges = []
    dart_at = {}

    def add_edge(u, v, sign):
        e = len(edges)
        edges.append((u, v))
        signs.append(sign)
        dart_at[(u, v)] = 2 * e
        dart_at[(v, u)] = 2 * e + 1
        return e

    signs = []
    for j in range(m):
        for i in range(k):
            add_edge(vid(i, j), vid(i + 1, j), 1)
    for j in range(m - 1):
        for i in range(k):
            add_edge(vid(i, j), vid(i, j + 1), 1)
    for i in range(k):
        add_edge(vid(i, m - 1), vid(-i, 0), -1)

    def north(i, j):
        if j < m - 1:
            return dart_at[(vid(i, j), vid(i, j + 1))]
        return dart_at[(vid(i, m - 1), vid(-i, 0))]

    def south(i, j):
        if j > 0:
            return dart_at[(vid(i, j), vid(i, j - 1))]
        return dart_at[(vid(i, 0), vid(-i, m - 1))]

    rotations = []
    for j in range(m):
        for i in range(k):
            east = dart_at[(vid(i, j), vid(i + 1, j))]
            west = dart_at[(vid(i, j), vid(i - 1, j))]
            rotations.append((east, north(i, j), west, south(i, j)))
    g = EmbeddedGraph(n, edges, rotations, signs)
    return _check(g, 2, False, 0)


def k5_torus() -> EmbeddedGraph:
    """K5 quadrangulates the torus with five faces."""
    faces = [tuple((i + t) % 5 for t in (0, 1, 3, 2)) for i in range(5)]
    g = embed_from_faces(5, faces)
    return _check(g, 2, True, 0)


def k4_projective() -> EmbeddedGraph:
    """K4 quadrangulates the projective plane with three faces.

    Found by a deterministic search over rotation flips and cotree signs;
    the first signed rotation system with three quadrilateral faces wins.
    """
    edges = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
    base = [[], [], [], []]
    for e, (u, v) in enumerate(edges):
        base[u].append(2 * e)
        base[v].append(2 * e + 1)
    for flips in range(8):
        rotations = []
        for v in range(4):
            rot = list(base[v])
            if v and (flips >> (v - 1)) & 1:
                rot[1], rot[2] = rot[2], rot[1]
            rotations.append(tuple(rot))
        for smask in range(8):
            signs = [1, 1, 1] + [(-1 if (smask >> t) & 1 else 1) for t in range(3)]
            g = EmbeddedGraph(4, edges, rotations, signs)
            t = g.traced
            if len(t.pairs) == 3 and all(l == 4 for l in t.pair_length):
                if g.signature.key() == (1, False, 0):
                    g.validate_quadrangulation()
                    return g
    raise InternalError("no projective embedding of K4 found")


def find_face(g: EmbeddedGraph, vertices) -> int:
    """Index of the true face pair on exactly this vertex set."""
    want = frozenset(vertices)
    t = g.traced
    for p in t.true_pairs:
        if frozenset(t.face_vertices(p)) == want:
            return p
    raise BadParameters("no face on vertices %s" % sorted(want))


def with_face_cuffs(g: EmbeddedGraph, pair_indices) -> EmbeddedGraph:
    """Declare some true faces as cuffs (punch holes through them)."""
    t = g.traced
    new = []
    for p in pair_indices:
        if t.is_cap[p]:
            raise BadParameters("face pair %d is already a cuff" % p)
        new.append(ClosedWalk(t.pair_darts[p]))
    return g.with_cuffs(g.cuffs + tuple(new))


@dataclass(frozen=True)
class GeneratorSpec:
    """A family name plus its integer parameters."""

    family: str
    parameters: tuple = ()


_FAMILIES = {
    "grid_disk": (grid_disk, 2),
    "grid_cylinder": (grid_cylinder, 2),
    "grid_torus": (grid_torus, 2),
    "grid_klein": (grid_klein, 2),
    "k4_projective": (k4_projective, 0),
    "k5_torus": (k5_torus, 0),
}


def generate(spec: GeneratorSpec) -> EmbeddedGraph:
    """Build the instance a GeneratorSpec names."""
    if spec.family not in _FAMILIES:
        raise BadParameters("unknown family %r" % (spec.family,))
    fn, arity = _FAMILIES[spec.family]
    try:
        params = tuple(int(p) for p in spec.parameters)
    except (TypeError, ValueError):
        raise BadParameters("parameters must be integers: %r" % (spec.parameters,))
    if len(params) != arity:
        raise BadParameters(
            "%s takes %d parameters, got %d" % (spec.family, arity, len(params))
        )
    return fn(*params)
