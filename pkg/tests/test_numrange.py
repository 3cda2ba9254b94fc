import math

import numpy as np
import pytest

from semiapprox import ensembles, numrange
from semiapprox.errors import InvalidInputError, NotAContractionError


def hull_support_gap(points_a, points_b, angles=720):
    """Hausdorff distance between convex hulls via support functions."""
    thetas = np.linspace(0, 2 * math.pi, angles, endpoint=False)
    rot = np.exp(-1j * thetas)
    ha = np.max(np.real(np.outer(rot, points_a)), axis=1)
    hb = np.max(np.real(np.outer(rot, points_b)), axis=1)
    return float(np.max(np.abs(ha - hb)))


def test_boundary_diag_real_segment():
    pts = numrange.numerical_range_boundary(np.diag([0.0, 1.0]).astype(complex), 64)
    assert np.max(np.abs(pts.imag)) <= 1e-12
    assert pts.real.min() == pytest.approx(0.0, abs=1e-12)
    assert pts.real.max() == pytest.approx(1.0, abs=1e-12)
    assert np.all(pts.real >= -1e-12) and np.all(pts.real <= 1 + 1e-12)


def test_boundary_jordan_block_disc():
    # classical disc of radius 1/2 for the 2x2 nilpotent Jordan block
    pts = numrange.numerical_range_boundary(np.array([[0, 1], [0, 0]], dtype=complex), 64)
    assert np.max(np.abs(np.abs(pts) - 0.5)) <= 1e-8


def test_boundary_identity():
    pts = numrange.numerical_range_boundary(np.eye(3, dtype=complex), 32)
    assert np.max(np.abs(pts - 1.0)) <= 1e-12


def test_boundary_needs_16_angles():
    with pytest.raises(InvalidInputError):
        numrange.numerical_range_boundary(np.eye(2), 8)


def test_in_D_alpha_examples():
    assert numrange.in_D_alpha(1.0, 0.0)
    assert numrange.in_D_alpha(1.0, 1.2)
    assert numrange.in_D_alpha(0.0, 0.0)
    assert numrange.in_D_alpha(0.5, math.pi / 4)
    assert not numrange.in_D_alpha(-0.5, 0.2)
    assert not numrange.in_D_alpha(1.5, 0.3)


def test_in_sector_examples():
    assert numrange.in_sector(1.0, 0.1)
    assert not numrange.in_sector(1j, math.pi / 4)
    assert numrange.in_sector(0.0, 0.5)


def test_region_approaches_unit_disc():
    # D(alpha) fills the closed unit disc as alpha -> pi/2
    rng = np.random.default_rng(17)
    zs = rng.uniform(-1, 1, 500) + 1j * rng.uniform(-1, 1, 500)
    zs = zs[np.abs(zs) <= 1.0]
    assert np.all(numrange.in_D_alpha(zs, math.pi / 2 - 1e-6))
    assert not numrange.in_D_alpha(1.001, math.pi / 2 - 1e-6)


def test_membership_monotone_in_alpha():
    # sampled grid over the unit square, 20 alphas
    xs = np.linspace(-1.0, 1.0, 200)
    zs = (xs[None, :] + 1j * xs[:, None]).ravel()
    alphas = np.linspace(0.0, math.pi / 2 - 1e-3, 20)
    prev = numrange.in_D_alpha(zs, alphas[0])
    for alpha in alphas[1:]:
        cur = numrange.in_D_alpha(zs, alpha)
        assert np.all(cur[prev])
        prev = cur


def test_distance_examples():
    # dist from -0.5 to D(0.2): nearest point is the disc of radius sin(0.2)
    d = float(numrange.distance_to_D_alpha(-0.5, 0.2))
    assert d == pytest.approx(0.5 - math.sin(0.2), abs=1e-12)
    assert float(numrange.distance_to_D_alpha(0.5, 0.0)) <= 1e-15
    assert float(numrange.distance_to_D_alpha(1.0, 0.0)) == 0.0
    # above the segment [0,1], distance is the height
    assert float(numrange.distance_to_D_alpha(0.5 + 0.25j, 0.0)) == pytest.approx(0.25, abs=1e-12)


def test_distance_consistent_with_membership():
    rng = np.random.default_rng(21)
    zs = rng.uniform(-1.2, 1.2, 400) + 1j * rng.uniform(-1.2, 1.2, 400)
    for alpha in (0.0, math.pi / 8, math.pi / 4, 1.2):
        dist = np.atleast_1d(numrange.distance_to_D_alpha(zs, alpha))
        member = numrange.in_D_alpha(zs, alpha)
        # members sit at (numerically) zero distance; far points are excluded
        assert np.all(dist[member] <= 2e-9)
        assert np.all(dist[~member] > 0.0)


def test_certify_selfadjoint_segment():
    cert = numrange.certify_quasi_sectorial(np.diag([0.2, 0.8]).astype(complex), 0.0)
    assert cert.passed
    assert cert.max_violation <= 1e-9
    cert = numrange.certify_quasi_sectorial(np.eye(3, dtype=complex), 0.0)
    assert cert.passed


def test_certify_failure_reports_worst_point():
    cert = numrange.certify_quasi_sectorial(np.array([[-0.5]], dtype=complex), 0.3)
    assert not cert.passed
    assert cert.worst_point == pytest.approx(-0.5)
    assert cert.max_violation == pytest.approx(0.5 - math.sin(0.3), abs=1e-12)


def test_min_semi_angle_selfadjoint():
    c = np.diag([0.0, 0.5, 1.0]).astype(complex)
    assert numrange.min_semi_angle(c) == pytest.approx(0.0, abs=2e-6)
    assert numrange.min_semi_angle(np.eye(2, dtype=complex)) == pytest.approx(0.0, abs=2e-6)


def test_min_semi_angle_point_mass():
    # single point 0.3i enters D(alpha) exactly when sin(alpha) >= 0.3
    got = numrange.min_semi_angle(np.array([[0.3j]]))
    assert got == pytest.approx(math.asin(0.3), abs=2e-6)


def test_min_semi_angle_rejects_noncontraction():
    with pytest.raises(NotAContractionError):
        numrange.min_semi_angle(np.diag([1.5, 0.2]).astype(complex))


def test_boundary_points_inside_unit_disc():
    for i in range(25):
        dim = 2 + i % 7
        c = ensembles.random_contraction(dim, ensembles.child_seed(77, i))
        pts = numrange.numerical_range_boundary(c, 64)
        assert np.max(np.abs(pts)) <= 1.0 + 1e-9


def test_resolvent_family_is_quasi_sectorial():
    # resolvents of sector-confined generators stay inside D(alpha), alpha <= pi/4
    for i, alpha in enumerate((math.pi / 16, math.pi / 8, math.pi / 4)):
        for j, t in enumerate((0.1, 1.0, 10.0)):
            a = ensembles.random_m_sectorial(6, alpha, ensembles.child_seed(5150, 10 * i + j))
            f = ensembles.resolvent_contraction(a, t)
            cert = numrange.certify_quasi_sectorial(f, alpha, 256)
            assert cert.passed, (alpha, t, cert.max_violation)


def test_normal_matrix_hull_oracle():
    # for normal C the numerical range is the convex hull of the eigenvalues;
    # eigenvalues sit on a circle with angular gaps >= 0.5 rad so every hull
    # vertex has a normal cone much wider than the 2*pi/256 sweep resolution
    rng = np.random.default_rng(33)
    for trial in range(10):
        dim = int(rng.integers(3, 7))
        gaps = rng.uniform(0.5, 2.0, dim)
        angles = np.cumsum(gaps) / np.sum(gaps) * 2 * math.pi
        lam = 0.6 * np.exp(1j * (angles + rng.uniform(0, 2 * math.pi)))
        u = ensembles.haar_unitary(dim, rng)
        c = (u * lam) @ u.conj().T
        pts = numrange.numerical_range_boundary(c, 256)
        assert hull_support_gap(pts, lam) <= 1e-6
