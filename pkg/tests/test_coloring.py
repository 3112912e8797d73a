"""Color arithmetic, winding obstructions, path construction, tameness."""

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quadcolor.coloring import (
    check_precoloring,
    color_path,
    cycle_colorings,
    delta,
    enumerate_colorings,
    is_tame,
    parity_invariant,
    path_coloring_count,
    total_winding_coherent,
    winding,
    winding_report,
)
from quadcolor.embed import embed_from_faces
from quadcolor.errors import ImproperEdge, ImproperPrecoloring, InfeasibleParameters, Uncolored
from quadcolor.generators import grid_cylinder, grid_disk, grid_klein, grid_torus, k4_projective
from quadcolor.oracle import oracle_extensions

from instances import boundary_colorings, cube


def cycle_disk(k):
    """Disk whose single cuff is a plain k-cycle with no interior."""
    ring = tuple(range(k))
    return embed_from_faces(k, [ring, ring[::-1]], cuff_faces=(1,))


def test_delta_table():
    assert delta(1, 2) == delta(2, 3) == delta(3, 1) == 1
    assert delta(2, 1) == delta(3, 2) == delta(1, 3) == -1
    with pytest.raises(ImproperEdge):
        delta(2, 2)


def test_winding_hexagon():
    g = cycle_disk(6)
    rim = g.walk_vertices(g.cuffs[0])
    monotone = {v: [1, 2, 3, 1, 2, 3][i] for i, v in enumerate(rim)}
    flat = {v: [1, 2, 1, 2, 1, 2][i] for i, v in enumerate(rim)}
    assert abs(winding(g, g.cuffs[0], monotone)) == 2
    assert winding(g, g.cuffs[0].reversed(), monotone) == -winding(g, g.cuffs[0], monotone)
    assert winding(g, g.cuffs[0], flat) == 0


def test_four_cycle_windings_all_vanish():
    g = cycle_disk(4)
    rim = g.walk_vertices(g.cuffs[0])
    for psi in boundary_colorings(rim):
        assert winding(g, g.cuffs[0], psi) == 0


def test_winding_report_cylinder_aligned():
    g = grid_cylinder(4, 5)
    psi = {}
    for w in g.cuffs:
        for i, v in enumerate(g.walk_vertices(w)):
            psi[v] = 1 + i % 2
    rep = winding_report(g, psi)
    assert rep.satisfied and rep.total == 0 and rep.parity_p is None
    assert rep.per_boundary == (0, 0)


def test_winding_report_disk_violated():
    g = grid_disk(3, 3)
    rim = [0, 1, 2, 5, 8, 7, 6, 3]
    psi = dict(zip(rim, [1, 2, 3, 1, 2, 3, 1, 2]))
    rep = winding_report(g, psi)
    assert rep.verdict == "Violated"
    assert abs(rep.total) == 2


def test_winding_report_projective_parity():
    rep = winding_report(k4_projective(), {})
    assert not rep.orientable
    assert rep.parity_p == 2
    assert rep.total == 0
    assert rep.verdict == "Violated"


def test_parity_invariant_choice_independent():
    g = grid_klein(4, 4)
    base = parity_invariant(g)
    npairs = len(g.traced.pairs)
    rng = random.Random(7)
    for _ in range(20):
        flips = {p for p in range(npairs) if rng.random() < 0.5}
        assert parity_invariant(g, flips) == base


def test_parity_invariant_orientable_zero():
    from quadcolor.coloring import coherent_face_flips

    g = grid_torus(4, 4)
    assert parity_invariant(g, coherent_face_flips(g)) == 0


def test_total_winding_coherent_vanishes():
    rng = random.Random(3)
    for g in (cube(), grid_torus(4, 4), grid_cylinder(4, 3)):
        for col in itertools.islice(oracle_extensions(g, {}, rng=rng), 25):
            assert total_winding_coherent(g, col) == 0


def test_check_precoloring():
    g = grid_disk(3, 3)
    rim = [0, 1, 2, 5, 8, 7, 6, 3]
    check_precoloring(g, dict(zip(rim, [1, 2, 1, 2, 1, 2, 1, 2])))
    with pytest.raises(Uncolored):
        check_precoloring(g, {0: 1, 1: 2})
    with pytest.raises(ImproperPrecoloring):
        check_precoloring(g, dict(zip(rim, [1, 1, 2, 1, 2, 1, 2, 3])))
    with pytest.raises(ImproperPrecoloring):
        check_precoloring(g, dict(zip(rim, [4, 2, 1, 2, 1, 2, 1, 2])))


@pytest.mark.parametrize("n", [0, 2, 4, 6, 8])
def test_color_path_exhaustive(n):
    for w in range(-n, n + 1, 2):
        for c0 in (1, 2, 3):
            cn = (c0 - 1 + w) % 3 + 1
            out = color_path(n, w, c0, cn)
            assert len(out) == n + 1 and out[0] == c0 and out[-1] == cn
            assert sum(delta(out[i], out[i + 1]) for i in range(n)) == w


def test_color_path_rejects():
    with pytest.raises(InfeasibleParameters):
        color_path(3, 1, 1, 2)  # odd length
    with pytest.raises(InfeasibleParameters):
        color_path(2, 4, 1, 2)  # |w| > n
    with pytest.raises(InfeasibleParameters):
        color_path(4, 0, 1, 2)  # wrong end color


def test_is_tame_examples():
    c8 = list(range(8))
    assert is_tame(dict(zip(c8, [1, 2, 1, 2, 1, 2, 1, 2])), c8, 7, 1)
    c6 = list(range(6))
    assert not is_tame(dict(zip(c6, [1, 2, 3, 1, 2, 3])), c6, 1, 6)
    c12 = list(range(12))
    with pytest.raises(ImproperEdge):
        is_tame(dict(zip(c12, [1, 2, 1, 2, 1, 2, 3, 1, 3, 1, 3, 1])), c12, 2, 3)


def test_is_tame_distance_three_rule():
    c8 = list(range(8))
    # colors repeat at distance three between positions 0 and 3
    assert not is_tame(dict(zip(c8, [1, 2, 3, 1, 3, 2, 3, 2])), c8, 1, 8)


def test_is_tame_arc_splitting():
    c10 = list(range(10))
    # splits as 8-9-0 on {1,3} and 1..7 on {1,2} with two skipped edges
    psi = dict(zip(c10, [1, 2, 1, 2, 1, 2, 1, 2, 1, 3]))
    assert is_tame(psi, c10, 2, 3)
    assert is_tame(psi, c10, 2, 2)
    assert not is_tame(psi, c10, 4, 3)
    assert not is_tame(psi, c10, 2, 1)


@pytest.mark.parametrize("k,count", [(3, 6), (4, 18), (5, 30), (6, 66), (8, 258)])
def test_cycle_coloring_counts(k, count):
    cols = cycle_colorings(k)
    assert len(cols) == count == 2 ** k + 2 * (-1) ** k
    assert len(set(cols)) == count
    for tup in cols:
        assert all(tup[i] != tup[(i + 1) % k] for i in range(k))


def test_path_coloring_count():
    assert path_coloring_count(1) == 3
    assert path_coloring_count(4) == 24


def test_enumerate_colorings_matches_cycle_count():
    g = cycle_disk(5)
    rim = g.walk_vertices(g.cuffs[0])
    assert sum(1 for _ in enumerate_colorings(g, rim)) == 30
    fixed = {rim[0]: 2}
    assert sum(1 for _ in enumerate_colorings(g, rim, fixed)) == 10


@settings(max_examples=30, deadline=None)
@given(k=st.integers(4, 10), w=st.integers(-4, 4))
def test_color_path_property(k, w):
    n, w = 2 * k, 2 * w
    c0 = 1
    cn = (c0 - 1 + w) % 3 + 1
    out = color_path(n, w, c0, cn)
    assert all(out[i] != out[i + 1] for i in range(n))
    assert sum(delta(out[i], out[i + 1]) for i in range(n)) == w
