"""Brute-force reference solver.

Plain backtracking 3-coloring over the edge list, with forward checking and
a fewest-candidates-first variable order.  Deliberately ignorant of the
embedding: this is the independent route the structural solvers are checked
against, so it must share no machinery with them beyond the graph itself.
"""

from __future__ import annotations

from .embed import EmbeddedGraph
from .errors import ImproperPrecoloring
from .coloring import get_color


def _prepare(g: EmbeddedGraph, psi):
    n = g.vertex_count
    adj = [[] for _ in range(n)]
    for (u, v) in g.edges:
        adj[u].append(v)
        adj[v].append(u)
    dom = [{1, 2, 3} for _ in range(n)]
    color = [None] * n
    for v, c in sorted(psi.items()):
        c = get_color(psi, v)
        if color[v] is not None and color[v] != c:
            raise ImproperPrecoloring("vertex %d precolored twice" % v)
        color[v] = c
        dom[v] = {c}
    for v, c in enumerate(color):
        if c is None:
            continue
        for w in adj[v]:
            if color[w] == c:
                return None
            dom[w].discard(c)
    return adj, dom, color


def oracle_extensions(g: EmbeddedGraph, psi=None, rng=None):
    """Yield every proper 3-coloring of g extending psi, as color lists.

    Deterministic unless rng is given, in which case branching color order
    is shuffled (the set of solutions is the same, only the order moves).
    """
    psi = dict(psi or {})
    prep = _prepare(g, psi)
    if prep is None:
        return
    adj, dom, color = prep
    n = g.vertex_count
    unassigned = set(v for v in range(n) if color[v] is None)

    def pick():
        best, key = None, None
        for v in unassigned:
            k = (len(dom[v]), -len(adj[v]), v)
            if best is None or k < key:
                best, key = v, k
        return best

    def rec():
        if not unassigned:
            yield list(color)
            return
        v = pick()
        if not dom[v]:
            return
        unassigned.discard(v)
        options = sorted(dom[v])
        if rng is not None:
            rng.shuffle(options)
        saved = dom[v]
        for c in options:
            color[v] = c
            trail = []
            dead = False
            for w in adj[v]:
                if color[w] is None and c in dom[w]:
                    dom[w].discard(c)
                    trail.append(w)
                    if not dom[w]:
                        dead = True
            if not dead:
                dom[v] = {c}
                yield from rec()
            for w in trail:
                dom[w].add(c)
        dom[v] = saved
        color[v] = None
        unassigned.add(v)

    yield from rec()


def oracle_extend(g: EmbeddedGraph, psi=None, rng=None):
    """First extension found, or None."""
    for sol in oracle_extensions(g, psi, rng=rng):
        return sol
    return None


def oracle_count(g: EmbeddedGraph, psi=None, cap=None) -> int:
    """Number of extensions, stopping early at cap when given."""
    k = 0
    for _ in oracle_extensions(g, psi):
        k += 1
        if cap is not None and k >= cap:
            break
    return k


def oracle_solve(g: EmbeddedGraph, psi=None):
    """Exhaustive verdict as a SolveResult; complete and sound, maybe slow."""
    from .results import Exhausted, SolveResult

    col = oracle_extend(g, psi)
    if col is not None:
        return SolveResult.yes(dict(enumerate(col)))
    return SolveResult.no(
        Exhausted(("backtracking enumeration finished with no extension",))
    )
