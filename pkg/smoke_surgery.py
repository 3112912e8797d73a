import sys
sys.path.insert(0, "src")

from quadcolor.embed import ClosedWalk, min_rotation
from quadcolor.generators import grid_torus, grid_cylinder, grid_disk, k4_projective, grid_klein
from quadcolor.surgery import (
    cut_along, classify_cycle, is_essential, find_essential,
    normal_representation, effective_cut, _walk_from_vertices,
)

# 1. torus cut along a meridian ring
t44 = grid_torus(4, 4)
def vid(i, j, k=4, m=4):
    return (j % m) * k + (i % k)
ring = [vid(0, j) for j in range(4)]
walk = _walk_from_vertices(t44, ring)
pieces = cut_along(t44, walk.edge_set())
print("torus/meridian pieces:", len(pieces))
p = pieces[0]
print("  sig:", p.graph.signature.key(), "new cuffs:", [len(p.graph.cuffs[i]) for i in p.new_cuffs], "carried:", p.carried_cuffs)

# 2. classify: meridian essential, facial contractible
print("meridian class:", classify_cycle(t44, walk).tag)
face = _walk_from_vertices(t44, [vid(0,0), vid(1,0), vid(1,1), vid(0,1)])
print("face class:", classify_cycle(t44, face).tag)

# 3. cylinder ring surrounds
cyl = grid_cylinder(4, 5)
def cv(i, j, k=4):
    return j * k + (i % k)
ring2 = _walk_from_vertices(cyl, [cv(0,2), cv(1,2), cv(2,2), cv(3,2)])
cls = classify_cycle(cyl, ring2)
print("cylinder ring class:", cls.tag, cls.cuff)
ring2b = _walk_from_vertices(cyl, [cv(0,1), cv(1,1), cv(2,1), cv(3,1)])
cls2 = classify_cycle(cyl, ring2b)
print("cylinder ring near other cuff:", cls2.tag, cls2.cuff)
face2 = _walk_from_vertices(cyl, [cv(0,1), cv(1,1), cv(1,2), cv(0,2)])
print("cylinder face class:", classify_cycle(cyl, face2).tag)

# 4. K4 projective noncontractible triangle -> disk boundary 6
k4 = k4_projective()
tri = None
from quadcolor.surgery import _short_cycles
for c in _short_cycles(k4, 3):
    if len(c) == 3:
        cls = classify_cycle(k4, c)
        if cls.tag == "EssentialCycle":
            tri = c
            break
print("k4 triangle found:", tri.darts if tri else None)
pieces = cut_along(k4, tri.edge_set())
print("k4 cut pieces:", len(pieces), "sig:", pieces[0].graph.signature.key(),
      "boundary:", [len(pieces[0].graph.cuffs[i]) for i in pieces[0].new_cuffs])

# 5. disk spoke cut -> two disks, boundaries sum |B| + 2|P|
d33 = grid_disk(3, 3)
# vertices 0..8 grid; boundary cuff given; spoke through center: 1 - 4 - 7
e1 = d33.edges_between(1, 4)[0]
e2 = d33.edges_between(4, 7)[0]
pieces = cut_along(d33, {e1, e2})
print("disk spoke pieces:", len(pieces))
tot = 0
for p in pieces:
    sig = p.graph.signature
    assert sig.key() == (0, True, 1), sig
    tot += sum(len(p.graph.cuffs[i]) for i in p.new_cuffs)
print("  boundary sum:", tot, "expected:", len(d33.cuffs[0]) + 2 * 2)

# 6. disk cut along its own boundary cuff = identity-ish
pieces = cut_along(d33, d33.cuffs[0].edge_set())
print("disk/boundary pieces:", len(pieces), pieces[0].graph.signature.key(),
      "V:", pieces[0].graph.vertex_count, "E:", pieces[0].graph.edge_count)

# 7. is_essential examples
print("is_essential(meridian):", is_essential(t44, walk.edge_set()))
print("is_essential(face):", is_essential(t44, face.edge_set()))
print("is_essential(cyl ring):", is_essential(cyl, ring2.edge_set()))
# cylinder spanning path: essential
from quadcolor.embed import bfs_path
src = set(cyl.walk_vertices(cyl.cuffs[0]))
dst = set(cyl.walk_vertices(cyl.cuffs[1]))
path = bfs_path(cyl, sorted(src), dst)
ids = [min(cyl.edges_between(u, v)) for u, v in zip(path, path[1:])]
print("is_essential(cyl spanning path):", is_essential(cyl, ids))

# 8. find_essential
res = find_essential(t44, 12)
print("find_essential torus:", sorted(res) if res else None, "len", len(res) if res else 0)
res2 = find_essential(cyl, 12)
print("find_essential cylinder:", sorted(res2) if res2 else None)
res3 = find_essential(d33, 12)
print("find_essential disk:", res3)
res4 = find_essential(k4, 12)
print("find_essential k4proj:", sorted(res4) if res4 else None, "len", len(res4) if res4 else 0)

# 9. normal representation
G2, gamma, theta = normal_representation(t44)
print("normal rep torus: gamma len:", len(gamma), "sig:", G2.signature.key())
G3, gamma3, theta3 = normal_representation(d33)
print("normal rep disk: gamma len:", len(gamma3), "V:", G3.vertex_count)
G4, gamma4, theta4 = normal_representation(cyl)
print("normal rep cylinder: gamma len:", len(gamma4),
      "expected:", len(cyl.cuffs[0]) + len(cyl.cuffs[1]) + 2 * (5 - 1))
kl = grid_klein(4, 4)
G5, gamma5, theta5 = normal_representation(kl)
print("normal rep klein: gamma len:", len(gamma5), "sig:", G5.signature.key())
