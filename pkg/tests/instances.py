"""Shared instance builders and coloring helpers for the test suite."""

from quadcolor.coloring import cycle_colorings
from quadcolor.embed import embed_from_faces
from quadcolor.generators import find_face, grid_disk, grid_torus, with_face_cuffs


def cube():
    """Quadrangulated sphere on 8 vertices."""
    return embed_from_faces(
        8,
        [(0, 1, 2, 3), (7, 6, 5, 4), (0, 4, 5, 1), (1, 5, 6, 2), (2, 6, 7, 3), (3, 7, 4, 0)],
    )


def bubble_sphere():
    """Cube with one face subdivided into two quads through vertex 8."""
    return embed_from_faces(
        9,
        [(7, 6, 5, 4), (0, 4, 5, 1), (1, 5, 6, 2), (2, 6, 7, 3), (3, 7, 4, 0), (0, 1, 2, 8), (2, 3, 0, 8)],
    )


def spiral(w, n):
    """Cylinder built from one long strip of quads that winds like a screw
    thread; both boundaries are (w+1)-cycles."""
    faces = [(i, i + 1, i + w + 1, i + w) for i in range(n - w - 1)]
    bottom = tuple(range(w, -1, -1))
    top = tuple(range(n - w - 1, n))
    faces.append(bottom)
    faces.append(top)
    return embed_from_faces(n, faces, cuff_faces=(len(faces) - 2, len(faces) - 1))


def web_cylinder(s, r):
    """Spider-web cylinder: ring t holds s*(2t-1) vertices, so the inner
    boundary is an s-cycle (odd boundaries become reachable)."""
    start = lambda t: s * (t - 1) ** 2
    ringlen = lambda t: s * (2 * t - 1)
    faces = []
    for t in range(1, r):
        L, Lo = ringlen(t), ringlen(t + 1)
        a0, b0 = start(t), start(t + 1)
        a = lambda p: a0 + p % L
        b = lambda p: b0 + p % Lo
        for q in range(s):
            ai, bi = q * (2 * t - 1), q * (2 * t + 1)
            faces.append((a(ai), b(bi + 1), b(bi), b(bi - 1)))
            for p in range(2 * t - 1):
                faces.append((a(ai + p), a(ai + p + 1), b(bi + p + 2), b(bi + p + 1)))
    inner = tuple(range(s - 1, -1, -1))
    outer = tuple(range(start(r), start(r) + ringlen(r)))
    faces.append(inner)
    faces.append(outer)
    return embed_from_faces(s * r * r, faces, cuff_faces=(len(faces) - 2, len(faces) - 1))


def holed_grid(n, c):
    """n x n grid disk with the face on rows/cols {c, c+1} opened into a
    cuff; the hole becomes the first boundary, the outer rim the second."""
    g0 = grid_disk(n, n)
    p = find_face(g0, [c * n + c, c * n + c + 1, (c + 1) * n + c + 1, (c + 1) * n + c])
    g1 = with_face_cuffs(g0, (p,))
    return g1.with_cuffs((g1.cuffs[1], g1.cuffs[0]))


def torus_two_cuffs():
    """grid_torus(4,4) with two disjoint face interiors opened into cuffs."""
    t = grid_torus(4, 4)
    return with_face_cuffs(
        t, [find_face(t, [0, 1, 5, 4]), find_face(t, [10, 11, 15, 14])]
    )


def boundary_colorings(vs):
    """Every proper coloring of a boundary cycle, as dicts keyed by vs."""
    for tup in cycle_colorings(len(vs)):
        yield dict(zip(vs, tup))


def random_cycle_coloring(vs, rng):
    """One uniform-ish proper coloring of the cycle vs (rejection-free)."""
    while True:
        psi = {}
        ok = True
        for i, v in enumerate(vs):
            bans = {psi.get(vs[i - 1])}
            if i == len(vs) - 1:
                bans.add(psi[vs[0]])
            cands = [c for c in (1, 2, 3) if c not in bans]
            if not cands:
                ok = False
                break
            psi[v] = rng.choice(cands)
        if ok:
            return psi
