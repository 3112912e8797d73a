import sys
sys.path.insert(0, "src")
from quadcolor.generators import grid_torus, grid_cylinder, grid_disk, grid_klein, k4_projective
from quadcolor.surgery import cut_along, _edge_sides


def dual_first_h(g):
    t = g.traced
    cuff_edges = set()
    for w in g.cuffs:
        cuff_edges |= w.edge_set()
    crossed = [False] * g.edge_count
    start = t.true_pairs[0]
    seen = {start}
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
            if t.is_cap[other] or other in seen:
                continue
            crossed[e] = True
            seen.add(other)
            dq.append(other)
    assert len(seen) == len(t.true_pairs), (len(seen), len(t.true_pairs))
    h = {e for e in range(g.edge_count) if not crossed[e]}
    # connectivity check
    adj = {}
    for e in h:
        u, v = g.edges[e]
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    seen_v = set()
    stack = [g.edges[sorted(h)[0]][0]]
    seen_v.add(stack[0])
    while stack:
        u = stack.pop()
        for v in adj.get(u, ()):  # noqa
            if v not in seen_v:
                seen_v.add(v)
                stack.append(v)
    spanning = len(seen_v) == g.vertex_count and len(adj) == g.vertex_count
    # prune
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
    return h, spanning


for name, g in [
    ("torus44", grid_torus(4, 4)),
    ("torus45", grid_torus(4, 5)),
    ("cyl45", grid_cylinder(4, 5)),
    ("disk33", grid_disk(3, 3)),
    ("disk43", grid_disk(4, 3)),
    ("klein44", grid_klein(4, 4)),
    ("k4proj", k4_projective()),
]:
    h, spanning = dual_first_h(g)
    print(name, "spanning:", spanning, "|H| pruned:", len(h))
    try:
        pieces = cut_along(g, h)
        p = pieces[0]
        print("   pieces:", len(pieces), "sig:", p.graph.signature.key(),
              "gamma:", [len(p.graph.cuffs[i]) for i in p.new_cuffs])
    except Exception as ex:
        print("   cut failed:", type(ex).__name__, ex)
