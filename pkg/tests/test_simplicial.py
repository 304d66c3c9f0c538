from math import comb

import pytest

from hochhom import simplicial as simp


def test_sphere_level_counts():
    for d in (1, 2, 3):
        k = simp.sphere(d, 6)
        assert k.level_sizes() == tuple(1 + comb(n, d) for n in range(7))


def test_small_examples():
    assert simp.sphere(1, 3).level_sizes() == (1, 2, 3, 4)
    assert simp.sphere(2, 4).level_sizes() == (1, 1, 2, 4, 7)
    assert simp.standard_simplex(1, 2).level_sizes() == (2, 3, 4)
    assert simp.standard_simplex(2, 2).level_sizes() == (3, 6, 10)
    assert simp.boundary_simplex(1, 1).level_sizes() == (2, 2)
    assert simp.standard_simplex(3, 5).level_sizes() == (4, 10, 20, 35, 56, 84)
    assert simp.wedge(simp.sphere(1, 3), simp.sphere(1, 3)).level_sizes() == (1, 3, 5, 7)


def test_nondegenerate_counts():
    assert simp.boundary_simplex(2, 2).nondegenerate().counts() == (3, 3, 0)
    assert simp.sphere(2, 3).nondegenerate().counts() == (1, 0, 1, 0)
    assert simp.standard_simplex(2, 3).nondegenerate().counts() == (3, 3, 1, 0)


@pytest.mark.parametrize(
    "k",
    [
        simp.sphere(1, 4),
        simp.sphere(2, 4),
        simp.sphere(3, 5),
        simp.standard_simplex(0, 3),
        simp.standard_simplex(2, 4),
        simp.boundary_simplex(2, 4),
        simp.boundary_simplex(3, 3),
        simp.wedge(simp.sphere(1, 3), simp.sphere(2, 3)),
        simp.disjoint_union(simp.point(3), simp.point(3)),
        simp.skeleton(simp.standard_simplex(3, 3), 1),
    ],
    ids=lambda k: k.name,
)
def test_constructors_validate(k):
    rep = simp.validate(k)
    assert rep.ok, rep.failure


def test_validate_catches_broken_identity():
    k = simp.standard_simplex(1, 2)
    faces = [list(map(list, level)) for level in k.faces]
    faces[1][0] = faces[1][1]  # d_0 = d_1 on edges breaks d_i s_0 = id
    bad = simp.FinSimpSet(k.labels, tuple(tuple(map(tuple, l)) for l in faces), k.degens, k.basepoint)
    rep = simp.validate(bad)
    assert not rep.ok and rep.failure


def test_connectedness():
    assert simp.is_connected(simp.sphere(2, 3))
    assert simp.is_connected(simp.boundary_simplex(2, 2))
    assert not simp.is_connected(simp.disjoint_union(simp.point(2), simp.point(2)))


def test_skeleton_of_sphere_is_point():
    sk = simp.skeleton(simp.sphere(2, 3), 1)
    assert sk.level_sizes() == (1, 1, 1, 1)
    assert simp.levelwise_isomorphic(sk, simp.point(3))


def test_truncation_mismatch():
    with pytest.raises(simp.TruncationMismatch):
        simp.wedge(simp.sphere(1, 2), simp.sphere(1, 3))


def test_basepoint_chain_is_degenerate():
    k = simp.sphere(2, 4)
    for n in range(1, 5):
        assert k.basepoint_at(n) in set().union(*k.degenerate_images(n))
