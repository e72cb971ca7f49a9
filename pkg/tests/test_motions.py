from fractions import Fraction

import numpy as np
import pytest

from rigidlab.linalg import exact_matrix
from rigidlab.motions import (MotionSpace, PointConfiguration,
                              affine_motion_parts, flatten_motion,
                              is_infinitesimal_isometry, linear_motion_matrix,
                              p_equivalent, restricts_to_isometry, skew_basis,
                              take_points, trivial_motion_space,
                              unflatten_motion)
from rigidlab.admissibility import proportional_pair_space, single_vertex_space
from rigidlab.sampling import random_config, random_exact_matrix, subrng

STANDARD = PointConfiguration(exact_matrix(
    [[1, 0, 0, 1, 1],
     [0, 1, 0, 1, 2],
     [0, 0, 1, 1, 3]]))


def test_flatten_is_point_blocked():
    u = exact_matrix([[1, 2], [3, 4]])
    flat = flatten_motion(u)
    assert list(flat) == [1, 3, 2, 4]
    assert (unflatten_motion(flat, 2, 2) == u).all()


def test_skew_basis_shapes():
    basis = skew_basis(3)
    assert len(basis) == 3
    for a in basis:
        assert (a.T == -a).all()
    assert len(skew_basis(2)) == 1


def test_trivial_dimension_cases():
    assert trivial_motion_space(random_config(3, 5, subrng(1, "t", 0))).dim == 6
    assert trivial_motion_space(random_config(2, 3, subrng(1, "t", 1))).dim == 3
    # collinear points still span an affine line, dimension n-1, so no drop
    collinear = PointConfiguration(exact_matrix([[0, 1, 2], [0, 2, 4]]))
    assert trivial_motion_space(collinear).dim == 3
    # a single point only admits the translations
    single = PointConfiguration(exact_matrix([[3], [4], [5]]))
    assert trivial_motion_space(single).dim == 3


def test_trivial_motions_are_isometries():
    p = random_config(3, 5, subrng(1, "iso", 0), bound=50)
    for u in trivial_motion_space(p).basis_motions():
        assert is_infinitesimal_isometry(p, u)
    # the radial stretch grows every bar
    assert not is_infinitesimal_isometry(p, p.points)


def test_linear_and_affine_recovery():
    p = random_config(3, 5, subrng(1, "lin", 0), bound=50)
    m = random_exact_matrix(3, 3, subrng(1, "lin", 1), 9)
    b = random_exact_matrix(3, 1, subrng(1, "lin", 2), 9)[:, 0]
    ones = exact_matrix([1, 1, 1, 1, 1])
    assert (linear_motion_matrix(p, m @ p.points) == m).all()
    got_m, got_b = affine_motion_parts(p, m @ p.points + np.outer(b, ones))
    assert (got_m == m).all() and (got_b == b).all()
    assert linear_motion_matrix(p, m @ p.points + np.outer(b, ones)) is None
    # a motion supported on one point is not affine for points in general position
    lonely = single_vertex_space(p).basis_motions()[0]
    assert affine_motion_parts(p, lonely) is None


def test_p_equivalent_ignores_trivial_shifts():
    p = STANDARD
    s = single_vertex_space(p)
    trivial = trivial_motion_space(p).basis_motions()[0]
    shifted = MotionSpace.from_motions(
        p, [s.basis_motions()[0] + trivial, s.basis_motions()[1]])
    assert p_equivalent(s, shifted)
    line = MotionSpace.from_motions(p, [s.basis_motions()[0]])
    assert not p_equivalent(s, line)


def test_one_point_spaces_with_distinct_planes_differ():
    # moving point 1 inside span{e1,e2} vs inside (p1-p2)-orthogonal: these
    # are only equal modulo trivial motions if the planes agree
    p = random_config(3, 5, subrng(1, "planes", 0), bound=50)
    assert not p_equivalent(single_vertex_space(p), proportional_pair_space(p, 0))


def test_restricts_to_isometry():
    p = STANDARD
    s = single_vertex_space(p)
    assert restricts_to_isometry(p, s, (2, 3, 4))
    assert restricts_to_isometry(p, s, (3, 4, 5))
    assert not restricts_to_isometry(p, s, (1, 2, 3))
    with pytest.raises(ValueError):
        restricts_to_isometry(p, s, (0, 1))


def test_take_points_is_one_based():
    taken = take_points(STANDARD.points, (1, 4, 5))
    assert (taken[:, 0] == STANDARD.point(1)).all()
    assert (taken[:, 1] == STANDARD.point(4)).all()
    assert (taken[:, 2] == STANDARD.point(5)).all()


def test_point_index_validation():
    with pytest.raises(ValueError):
        STANDARD.point(0)
    with pytest.raises(ValueError):
        STANDARD.point(6)
    assert STANDARD.point(2)[1] == Fraction(1)


def test_general_position_detects_coplanar_quadruple():
    flat = PointConfiguration(exact_matrix(
        [[0, 1, 0, 1, 2],
         [0, 0, 1, 1, 5],
         [0, 0, 0, 0, 1]]))
    assert not flat.is_general_position()
    assert STANDARD.is_general_position()
