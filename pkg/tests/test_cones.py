"""Half-open cones: tangent cones, triangulation, flips, slices.

Exact-cover oracles describe specific cones by explicit inequalities that
were verified by hand, so the partition tests do not rely on any library
feasibility code.
"""

from itertools import product

import pytest

from flagtutte import (Direction, HalfOpenSimplicialCone, Matroid,
                       cone_membership, default_direction, flag, flip_cone,
                       slice_cone, tangent_cone_generators,
                       triangulate_half_open)
from flagtutte.errors import NotABasis, ZeroPairing

U = Matroid.uniform

E21 = (-1, 1, 0)   # e2 - e1
E31 = (-1, 0, 1)   # e3 - e1
E32 = (0, -1, 1)   # e3 - e2


# ----------------------------------------------------------- tangent cones


def test_tangent_cone_generators_two_step():
    fm = flag(U(1, 3), U(2, 3))
    gens = tangent_cone_generators(fm, (0b001, 0b011))
    assert set(gens) == {E21, E31, E32}


def test_tangent_cone_generators_single_basis():
    fm = flag(U(1, 1))
    assert tangent_cone_generators(fm, (0b1,)) == ()


def test_tangent_cone_generators_one_step():
    fm = flag(U(2, 4))
    gens = tangent_cone_generators(fm, (0b0011,))
    assert set(gens) == {(-1, 0, 1, 0), (-1, 0, 0, 1),
                        (0, -1, 1, 0), (0, -1, 0, 1)}


def test_tangent_cone_rejects_non_basis():
    fm = flag(U(1, 3), U(2, 3))
    with pytest.raises(NotABasis):
        tangent_cone_generators(fm, (0b011, 0b011))


def test_tangent_cone_contains_vertex_differences():
    # e_{B'} - e_B lies in the tangent cone at B for every other flag basis B'
    fm = flag(U(1, 4), U(3, 4))
    for fb in fm.flag_bases():
        gens = tangent_cone_generators(fm, fb)
        cells = triangulate_half_open((0,) * fm.n, gens)
        for fb2 in fm.flag_bases():
            diff = [0] * fm.n
            for b, b2 in zip(fb, fb2):
                for i in range(fm.n):
                    diff[i] += (b2 >> i & 1) - (b >> i & 1)
            hits = sum(cone_membership(c, diff) for c in cells)
            assert hits == 1


# ----------------------------------------------------------- triangulation


def test_triangulate_collapses_dependent_ray():
    cells = triangulate_half_open((0, 0, 0), (E21, E31, E32))
    assert len(cells) == 1
    cell = cells[0]
    assert set(cell.rays) == {E21, E32}
    assert cell.open_flags == (False, False)
    assert cell.sign == 1


def test_triangulate_single_ray():
    cells = triangulate_half_open((0, 0, 0), (E21,))
    assert len(cells) == 1
    assert cells[0].rays == (E21,)
    assert cells[0].open_flags == (False,)


def test_triangulate_two_by_two():
    gens = ((-1, 0, 1, 0), (-1, 0, 0, 1), (0, -1, 1, 0), (0, -1, 0, 1))
    cells = triangulate_half_open((0, 0, 0, 0), gens)
    assert len(cells) == 2
    assert all(len(c.rays) == 3 for c in cells)
    open_counts = sorted(sum(c.open_flags) for c in cells)
    assert open_counts == [0, 1]
    # partition of the cone's lattice points; the full cone is exactly
    # {x : x1 <= 0, x2 <= 0, x3 >= 0, x4 >= 0, sum(x) = 0} (transportation
    # problems with integer margins have integer solutions)
    for x in product(range(-3, 4), repeat=4):
        if sum(x) != 0:
            continue
        inside = x[0] <= 0 and x[1] <= 0 and x[2] >= 0 and x[3] >= 0
        hits = sum(cone_membership(c, x) for c in cells)
        assert hits == (1 if inside else 0), x


def _assert_exact_cover(generators, inside, box, n):
    """Triangulation cells partition the cone described by `inside`."""
    cells = triangulate_half_open((0,) * n, generators)
    for cell in cells:
        assert len(cell.rays) == len(cells[0].rays)
        assert cell.sign == 1
    for x in product(range(-box, box + 1), repeat=n):
        hits = sum(cone_membership(c, x) for c in cells)
        assert hits == (1 if inside(x) else 0), x
    return cells


def test_exact_cover_difference_fan():
    # (1,0,-1) = (1,-1,0) + (0,1,-1) is interior, so the cone collapses to
    # a unimodular pair; points are exactly {sum 0, x1 >= 0, x3 <= 0}
    _assert_exact_cover(
        ((1, -1, 0), (0, 1, -1), (1, 0, -1)),
        lambda x: sum(x) == 0 and x[0] >= 0 and x[2] <= 0, 3, 3)


def test_exact_cover_redundant_interior_generator():
    # (2,1) lies inside cone((1,0),(0,1)); the quadrant must still be
    # covered exactly once
    _assert_exact_cover(((1, 0), (2, 1), (0, 1)),
                        lambda x: x[0] >= 0 and x[1] >= 0, 3, 2)


def test_exact_cover_octant_with_diagonal():
    _assert_exact_cover(
        ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)),
        lambda x: all(v >= 0 for v in x), 2, 3)


def test_exact_cover_square_cone():
    # cone over the unit square at height one
    _assert_exact_cover(
        ((1, 0, 0), (1, 1, 0), (1, 0, 1), (1, 1, 1)),
        lambda x: x[0] >= 0 and 0 <= x[1] <= x[0] and 0 <= x[2] <= x[0],
        2, 3)


def test_exact_cover_seeded_octant_fans():
    # random interior generators never change the octant or the partition
    import random
    rng = random.Random(20240)
    for _ in range(4):
        extra = [tuple(rng.randrange(0, 3) for _ in range(3))
                 for _ in range(2)]
        gens = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
        gens += [g for g in extra if any(g)]
        _assert_exact_cover(tuple(gens),
                            lambda x: all(v >= 0 for v in x), 2, 3)


# -------------------------------------------------------------- membership


def test_cone_membership_examples():
    closed = HalfOpenSimplicialCone((0, 0, 0), (E21, E31), (False, False))
    assert cone_membership(closed, (-2, 1, 1))
    assert not cone_membership(closed, (1, 0, 0))
    assert cone_membership(closed, (0, 0, 0))
    open_ray = HalfOpenSimplicialCone((0, 0, 0), (E21,), (True,))
    assert not cone_membership(open_ray, (0, 0, 0))
    assert cone_membership(open_ray, E21)


def test_cone_membership_respects_apex():
    c = HalfOpenSimplicialCone((1, 0, 0), (E21,), (False,))
    assert cone_membership(c, (1, 0, 0))
    assert cone_membership(c, (0, 1, 0))
    assert not cone_membership(c, (0, 0, 0))


def test_zero_dimensional_cone():
    c = HalfOpenSimplicialCone((2, 3), (), ())
    assert cone_membership(c, (2, 3))
    assert not cone_membership(c, (2, 4))


# ------------------------------------------------------------------- flips


def test_flip_cone_examples():
    ray = HalfOpenSimplicialCone((0, 0, 0), (E21,), (False,))
    zeta_e1 = Direction((1, 0, 0))
    flipped = flip_cone(ray, zeta_e1)
    assert flipped.sign == -1
    assert flipped.rays == ((1, -1, 0),)
    assert flipped.open_flags == (True,)
    zeta_e2 = Direction((0, 1, 0))
    same = flip_cone(ray, zeta_e2)
    assert same == ray


def test_flip_idempotent():
    cone = HalfOpenSimplicialCone(
        (0, 0, 0), (E21, E32), (False, True), sign=1)
    d = default_direction(3)
    once = flip_cone(cone, d)
    twice = flip_cone(once, d)
    assert once == twice
    # every ray of a flipped cone pairs positively with the direction
    assert all(d.sign(v) > 0 for v in once.rays)


def test_direction_symbolic_tiebreak():
    d = Direction((1, 1))
    # zeta pairing is zero; the lexicographic perturbation decides
    assert d.sign((1, -1)) > 0
    assert d.sign((-1, 1)) < 0
    with pytest.raises(ZeroPairing):
        d.sign((0, 0))
    assert default_direction(3).zeta == (3, 2, 1)


def test_flip_preserves_series_on_a_line():
    # the ray at 0 along +e1, flipped along -e1, enumerates the complement:
    # closed nonneg ray vs open negated ray partition nothing in common
    ray = HalfOpenSimplicialCone((0,), ((1,),), (False,))
    flipped = flip_cone(ray, Direction((-1,)))
    assert flipped.sign == -1
    assert flipped.rays == ((-1,),)
    assert flipped.open_flags == (True,)
    # as signed indicator functions on Z: [x >= 0] = -(-[x <= -1]) + [all x]
    # so membership sets are complementary
    for x in range(-4, 5):
        assert cone_membership(ray, (x,)) != cone_membership(flipped, (x,))


# ------------------------------------------------------------------ slices


def test_slice_cone_basic():
    quad = HalfOpenSimplicialCone((0, 0), ((1, 0), (0, 1)), (False, False))
    cells = slice_cone(quad, (1, 0), 2)
    assert len(cells) == 1
    assert cells[0].apex == (2, 0)
    assert cells[0].rays == ((0, 1),)
    assert cells[0].open_flags == (False,)


def test_slice_cone_open_facet():
    quad = HalfOpenSimplicialCone((0, 0), ((1, 0), (0, 1)), (True, False))
    assert slice_cone(quad, (1, 0), 0) == ()
    cells = slice_cone(quad, (1, 0), 1)
    assert len(cells) == 1
    assert cells[0].apex == (1, 0)


def test_slice_cone_counts_points():
    # slicing cone((1,0),(1,1)) by x1 = b leaves the b+1 points (b, 0..b)
    cone = HalfOpenSimplicialCone((0, 0), ((1, 0), (1, 1)), (False, False))
    for b in range(4):
        cells = slice_cone(cone, (1, 0), b)
        pts = set()
        for c in cells:
            assert c.rays == ()
            pts.add(c.apex)
        assert pts == {(b, y) for y in range(b + 1)}

    with pytest.raises(ValueError):
        slice_cone(cone, (-1, 0), 0)


def test_cone_key_and_equality():
    a = HalfOpenSimplicialCone((0, 0), ((1, 0),), (False,))
    b = HalfOpenSimplicialCone((0, 0), ((1, 0),), (False,))
    c = HalfOpenSimplicialCone((0, 0), ((1, 0),), (True,))
    assert a == b and hash(a) == hash(b)
    assert a != c
