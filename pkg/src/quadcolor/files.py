"""Text formats for embedded graphs and colorings.

An .emb file holds one embedded graph as directives, one per line, with `#`
starting a comment anywhere:

    vertices N
    edge ID U V SIGN        # SIGN is + or -
    rot V D1 D2 ...         # darts in cyclic order, written IDa / IDb
    cuff V1 V2 ... Vk       # boundary cycle as a vertex list

Dart `Ea` points from U to V of edge E as stored, `Eb` the other way.  Edge
ids must cover 0..m-1 exactly once.  A .col file holds `VERTEX COLOR` lines
with colors in {1,2,3} and no vertex repeated.

Syntax problems raise positioned ParseErrors; a file that parses but
describes an inconsistent embedding raises the construction error instead.
"""

from __future__ import annotations

import re

from .embed import ClosedWalk, EmbeddedGraph
from .errors import ParseError

_DART = re.compile(r"^(\d+)([ab])$")


def _lines(text):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


def parse_emb(text: str) -> EmbeddedGraph:
    """Read one embedded graph from .emb text."""
    n = None
    edges = {}
    signs = {}
    rots = {}
    cuff_lists = []
    for no, toks in _lines(text):
        kind = toks[0]
        if kind == "vertices":
            if n is not None:
                raise ParseError("duplicate vertices line", no)
            n = _int(toks, 1, 2, no)
        elif kind == "edge":
            if len(toks) != 5:
                raise ParseError("edge needs ID U V SIGN", no)
            e = _int(toks, 1, None, no)
            if e in edges:
                raise ParseError("duplicate edge id %d" % e, no)
            u, v = _int(toks, 2, None, no), _int(toks, 3, None, no)
            if toks[4] not in ("+", "-"):
                raise ParseError("sign must be + or -", no)
            edges[e] = (u, v)
            signs[e] = 1 if toks[4] == "+" else -1
        elif kind == "rot":
            if len(toks) < 2:
                raise ParseError("rot needs a vertex", no)
            v = _int(toks, 1, None, no)
            if v in rots:
                raise ParseError("duplicate rot line for vertex %d" % v, no)
            darts = []
            for t in toks[2:]:
                m = _DART.match(t)
                if not m:
                    raise ParseError("bad dart token %r" % t, no)
                darts.append((int(m.group(1)) << 1) | (m.group(2) == "b"))
            rots[v] = (tuple(darts), no)
        elif kind == "cuff":
            if len(toks) < 3:
                raise ParseError("cuff needs at least two vertices", no)
            cuff_lists.append(([_int(toks, i, None, no) for i in range(1, len(toks))], no))
        else:
            raise ParseError("unknown directive %r" % kind, no)
    if n is None:
        raise ParseError("missing vertices line")
    m = len(edges)
    if set(edges) != set(range(m)):
        raise ParseError("edge ids must cover 0..%d exactly" % (m - 1))
    edge_list = [edges[e] for e in range(m)]
    sign_list = [signs[e] for e in range(m)]
    rotations = []
    for v in range(n):
        rotations.append(rots.get(v, ((), None))[0])
    between = {}
    for e, (u, v) in enumerate(edge_list):
        between.setdefault(frozenset((u, v)), []).append(e)
    cuffs = []
    for vs, no in cuff_lists:
        darts = []
        for i, u in enumerate(vs):
            v = vs[(i + 1) % len(vs)]
            cand = between.get(frozenset((u, v)), [])
            if not cand:
                raise ParseError("cuff step %d-%d is not an edge" % (u, v), no)
            if len(cand) > 1:
                raise ParseError("cuff step %d-%d is ambiguous" % (u, v), no)
            e = cand[0]
            darts.append((e << 1) | (edge_list[e][0] != u))
        cuffs.append(ClosedWalk(tuple(darts)))
    return EmbeddedGraph(n, edge_list, rotations, sign_list, cuffs)


def _int(toks, i, want_len, no):
    if want_len is not None and len(toks) != want_len:
        raise ParseError("expected %d fields" % want_len, no)
    if i >= len(toks):
        raise ParseError("missing field %d" % i, no)
    try:
        return int(toks[i])
    except ValueError:
        raise ParseError("expected an integer, got %r" % toks[i], no)


def serialize_emb(g: EmbeddedGraph) -> str:
    """Write g as .emb text; parse_emb gives back an equal graph."""
    out = ["vertices %d" % g.vertex_count]
    for e, (u, v) in enumerate(g.edges):
        out.append("edge %d %d %d %s" % (e, u, v, "+" if g.signs[e] > 0 else "-"))
    for v in range(g.vertex_count):
        toks = ["%d%s" % (d >> 1, "b" if d & 1 else "a") for d in g.rotations[v]]
        out.append("rot %d %s" % (v, " ".join(toks)) if toks else "rot %d" % v)
    for w in g.cuffs:
        out.append("cuff %s" % " ".join(str(v) for v in g.walk_vertices(w)))
    return "\n".join(out) + "\n"


def parse_col(text: str) -> dict:
    """Read a coloring from `VERTEX COLOR` lines."""
    col = {}
    for no, toks in _lines(text):
        if len(toks) != 2:
            raise ParseError("expected VERTEX COLOR", no)
        v, c = _int(toks, 0, None, no), _int(toks, 1, None, no)
        if v in col:
            raise ParseError("vertex %d colored twice" % v, no)
        if c not in (1, 2, 3):
            raise ParseError("color must be 1, 2 or 3, got %d" % c, no)
        col[v] = c
    return col


def serialize_col(col) -> str:
    """Write a coloring, one `VERTEX COLOR` line per vertex, sorted."""
    return "".join("%d %d\n" % (v, col[v]) for v in sorted(col))
