import itertools
import sys

sys.path.insert(0, "src")

from quadcolor.coloring import verify_coloring, winding
from quadcolor.disk import (
    SpokeWitness,
    build_split_dual,
    extract_spoke_witness,
    flow_to_coloring,
    max_edge_disjoint_paths,
    solve_disk,
    verify_spoke_witness,
)
from quadcolor.generators import grid_disk
from quadcolor.oracle import oracle_extend
from quadcolor.results import SpokeViolation, WindingViolation

ok = 0


def check(name, cond):
    global ok
    if not cond:
        print("FAIL:", name)
        sys.exit(1)
    ok += 1
    print("ok:", name)


# --- single 4-face ---------------------------------------------------------
g1 = grid_disk(2, 2)
b1 = g1.walk_vertices(g1.cuffs[0])
print("2x2 boundary order:", b1)
psi1 = {v: c for v, c in zip(b1, [1, 2, 1, 2])}
d1 = build_split_dual(g1, psi1)
check("2x2 |S|=|T|=2", len(d1.s_edges) == 2 and len(d1.t_edges) == 2)
check("2x2 dual has 3 vertices (1 face + s + t)", d1.vertex_count == 3)
fl1 = max_edge_disjoint_paths(d1)
check("2x2 flow value 2", fl1.value == 2)
col1 = flow_to_coloring(g1, psi1, fl1)
check("2x2 coloring equals psi", all(col1[v] == psi1[v] for v in b1))
r1 = solve_disk(g1, psi1)
check("2x2 solve Yes", r1.verdict == "Yes" and verify_coloring(g1, r1.coloring, psi1))

# --- 3x3 alternating -------------------------------------------------------
g2 = grid_disk(3, 3)
b2 = g2.walk_vertices(g2.cuffs[0])
print("3x3 boundary order:", b2)
psi2 = {v: c for v, c in zip(b2, [1, 2, 1, 2, 1, 2, 1, 2])}
d2 = build_split_dual(g2, psi2)
check("3x3 alt |S|=|T|=4", len(d2.s_edges) == 4)
fl2 = max_edge_disjoint_paths(d2)
check("3x3 alt flow 4", fl2.value == 4)
r2 = solve_disk(g2, psi2)
check("3x3 alt Yes proper", r2.verdict == "Yes" and verify_coloring(g2, r2.coloring, psi2))
check("3x3 alt center in {1,3}", r2.coloring[4] in (1, 3))

# --- 3x3 infeasible with spoke ---------------------------------------------
psi3 = {v: c for v, c in zip(b2, [2, 1, 2, 3, 1, 2, 1, 3])}
d3 = build_split_dual(g2, psi3)
check("3x3 bad |S|=4", len(d3.s_edges) == 4)
fl3 = max_edge_disjoint_paths(d3)
check("3x3 bad flow < 4", fl3.value < 4)
w3 = extract_spoke_witness(g2, psi3, fl3.cut, dual=d3)
print("witness:", w3)
check("3x3 bad spoke len 2", len(w3.spoke) - 1 == 2)
check("3x3 bad |delta|=4", abs(w3.delta_base) == 4)
check("3x3 bad spoke thru center", w3.spoke[1] == 4)
check("3x3 bad witness verifies", verify_spoke_witness(g2, psi3, w3))
r3 = solve_disk(g2, psi3)
check("3x3 bad solve No spoke", r3.verdict == "No" and isinstance(r3.witness, SpokeViolation))
check("3x3 bad oracle agrees", oracle_extend(g2, psi3) is None)

# --- octagon winding 2 ------------------------------------------------------
psi4 = {v: c for v, c in zip(b2, [1, 2, 3, 1, 2, 3, 1, 2])}
r4 = solve_disk(g2, psi4)
check("3x3 octagon No winding", r4.verdict == "No" and isinstance(r4.witness, WindingViolation))
check("octagon report violated", not r4.witness.report.satisfied)

# --- exhaustive vs oracle ---------------------------------------------------
def all_proper_boundary(bs):
    for combo in itertools.product((1, 2, 3), repeat=len(bs) - 1):
        for first in (1,):  # fix psi(b0)=1 for speed; rotation symmetry covers the rest
            colors = (first,) + combo
            good = all(colors[i] != colors[(i + 1) % len(bs)] for i in range(len(bs)))
            if good:
                yield {v: c for v, c in zip(bs, colors)}


for (w, h) in [(2, 2), (3, 2), (2, 3), (3, 3), (4, 2), (2, 4), (4, 3)]:
    g = grid_disk(w, h)
    bs = g.walk_vertices(g.cuffs[0])
    n_yes = n_no = 0
    for psi in all_proper_boundary(bs):
        res = solve_disk(g, psi)
        oracle = oracle_extend(g, psi)
        if res.verdict == "Yes":
            n_yes += 1
            if oracle is None:
                print("MISMATCH yes-vs-none", w, h, psi)
                sys.exit(1)
            if not verify_coloring(g, res.coloring, psi):
                print("BAD COLORING", w, h, psi)
                sys.exit(1)
        else:
            n_no += 1
            if oracle is not None:
                print("MISMATCH no-vs-some", w, h, psi, res.witness)
                sys.exit(1)
            if isinstance(res.witness, SpokeViolation):
                if not verify_spoke_witness(g, psi, res.witness.witness):
                    print("BAD WITNESS", w, h, psi, res.witness)
                    sys.exit(1)
            elif isinstance(res.witness, WindingViolation):
                if res.witness.report.satisfied:
                    print("BAD WINDING WITNESS", w, h, psi)
                    sys.exit(1)
            else:
                print("NO WITNESS", w, h, psi)
                sys.exit(1)
    print("grid_disk(%d,%d): yes=%d no=%d (anchored count)" % (w, h, n_yes, n_no))

print("ALL OK:", ok, "checks + exhaustive sweeps")
