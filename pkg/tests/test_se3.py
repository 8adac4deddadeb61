import math

import numpy as np
import pytest

import rigid3d as r
from rigid3d.errors import InvalidHomogeneousRow, NotARotation

from conftest import random_transform


def se3_exp_series(xi, terms=30):
    """Oracle: truncated power series of the 4x4 twist matrix."""
    m = np.zeros((4, 4))
    m[:3, :3] = r.hat3(xi.w)
    m[:3, 3] = xi.v
    acc = np.eye(4)
    term = np.eye(4)
    for n in range(1, terms + 1):
        term = term @ m / n
        acc = acc + term
    return acc


class TestGroupOps:
    def test_compose_identity(self, rng):
        t = random_transform(rng)
        out = r.compose(r.Transform.identity(), t)
        np.testing.assert_allclose(out.rotation.m, t.rotation.m, atol=1e-15)
        np.testing.assert_allclose(out.translation, t.translation, atol=1e-15)

    def test_compose_with_inverse(self, rng):
        t = random_transform(rng)
        out = r.compose(t, r.inverse(t))
        np.testing.assert_allclose(out.rotation.m, np.eye(3), atol=1e-12)
        np.testing.assert_allclose(out.translation, np.zeros(3), atol=1e-12)

    def test_compose_matches_matrix_product(self, rng):
        for _ in range(100):
            a, b = random_transform(rng), random_transform(rng)
            np.testing.assert_allclose(
                r.to_matrix4(r.compose(a, b)), r.to_matrix4(a) @ r.to_matrix4(b), atol=1e-12
            )

    def test_associativity(self, rng):
        for _ in range(50):
            a, b, c = (random_transform(rng) for _ in range(3))
            left = r.compose(r.compose(a, b), c)
            right = r.compose(a, r.compose(b, c))
            np.testing.assert_allclose(r.to_matrix4(left), r.to_matrix4(right), atol=1e-9)

    def test_inverse_identity(self):
        out = r.inverse(r.Transform.identity())
        np.testing.assert_array_equal(r.to_matrix4(out), np.eye(4))

    def test_inverse_pure_translation(self):
        t = r.Transform(r.RotationMatrix.identity(), [1, 2, 3])
        np.testing.assert_array_equal(r.inverse(t).translation, [-1, -2, -3])

    def test_double_inverse(self, rng):
        t = random_transform(rng)
        np.testing.assert_allclose(r.to_matrix4(r.inverse(r.inverse(t))), r.to_matrix4(t), atol=1e-12)


class TestActions:
    def test_point_identity(self, rng):
        p = rng.standard_normal(3)
        np.testing.assert_array_equal(r.transform_point(r.Transform.identity(), p), p)

    def test_point_pure_translation(self):
        t = r.Transform(r.RotationMatrix.identity(), [1, 2, 3])
        np.testing.assert_array_equal(r.transform_point(t, [0, 0, 0]), [1, 2, 3])

    def test_point_isometry(self, rng):
        for _ in range(100):
            t = random_transform(rng)
            p, q = rng.standard_normal(3), rng.standard_normal(3)
            d0 = np.linalg.norm(p - q)
            d1 = np.linalg.norm(r.transform_point(t, p) - r.transform_point(t, q))
            assert abs(d0 - d1) < 1e-12

    def test_direction_ignores_translation(self, rng):
        v = rng.standard_normal(3)
        t = r.Transform(r.RotationMatrix.identity(), [5, -3, 2])
        np.testing.assert_array_equal(r.transform_direction(t, v), v)

    def test_direction_is_affine_difference(self, rng):
        for _ in range(50):
            t = random_transform(rng)
            p, v = rng.standard_normal(3), rng.standard_normal(3)
            diff = r.transform_point(t, p + v) - r.transform_point(t, p)
            np.testing.assert_allclose(diff, r.transform_direction(t, v), atol=1e-12)


class TestExpLog:
    def test_exp_zero(self):
        t = r.se3_exp(r.Twist(np.zeros(3), np.zeros(3)))
        np.testing.assert_array_equal(r.to_matrix4(t), np.eye(4))

    def test_exp_pure_translation(self):
        t = r.se3_exp(r.Twist([1, 2, 3], [0, 0, 0]))
        np.testing.assert_array_equal(t.rotation.m, np.eye(3))
        np.testing.assert_array_equal(t.translation, [1, 2, 3])

    def test_exp_matches_series(self, rng):
        for _ in range(100):
            axis = rng.standard_normal(3)
            axis /= np.linalg.norm(axis)
            xi = r.Twist(rng.standard_normal(3), axis * rng.uniform(0, math.pi))
            np.testing.assert_allclose(r.to_matrix4(r.se3_exp(xi)), se3_exp_series(xi), atol=1e-12)

    def test_log_identity(self):
        xi = r.se3_log(r.Transform.identity())
        np.testing.assert_array_equal(xi.as_array(), np.zeros(6))

    def test_log_pure_translation(self):
        xi = r.se3_log(r.Transform(r.RotationMatrix.identity(), [1, 2, 3]))
        np.testing.assert_array_equal(xi.v, [1, 2, 3])
        np.testing.assert_array_equal(xi.w, np.zeros(3))

    def test_roundtrip(self, rng):
        for _ in range(1000):
            axis = rng.standard_normal(3)
            axis /= np.linalg.norm(axis)
            rot = r.so3_exp(axis * rng.uniform(0, math.pi - 1e-3))
            t = r.Transform(rot, rng.standard_normal(3))
            xi = r.se3_log(t)
            np.testing.assert_allclose(r.to_matrix4(r.se3_exp(xi)), r.to_matrix4(t), atol=1e-9)


class TestAdjoint:
    def test_adjoint_identity(self):
        np.testing.assert_array_equal(r.adjoint(r.Transform.identity()), np.eye(6))

    def test_adjoint_pure_rotation(self, rng):
        rot = r.random_rotation(rng)
        ad = r.adjoint(r.Transform(rot, np.zeros(3)))
        np.testing.assert_array_equal(ad[:3, :3], rot.m)
        np.testing.assert_array_equal(ad[3:, 3:], rot.m)
        np.testing.assert_array_equal(ad[:3, 3:], np.zeros((3, 3)))

    def test_adjoint_of_inverse(self, rng):
        for _ in range(50):
            t = random_transform(rng)
            np.testing.assert_allclose(r.adjoint(r.inverse(t)), np.linalg.inv(r.adjoint(t)), atol=1e-9)

    def test_apply_twist_identity(self, rng):
        xi = r.Twist(rng.standard_normal(3), rng.standard_normal(3))
        out = r.adjoint_apply_twist(r.Transform.identity(), xi)
        np.testing.assert_array_equal(out.as_array(), xi.as_array())

    def test_apply_twist_lever_arm(self):
        t = r.Transform(r.RotationMatrix.identity(), [1, 0, 0])
        out = r.adjoint_apply_twist(t, r.Twist([0, 0, 0], [0, 0, 1]))
        np.testing.assert_allclose(out.v, np.cross([1, 0, 0], [0, 0, 1]), atol=1e-15)
        np.testing.assert_array_equal(out.w, [0, 0, 1])

    def test_apply_matches_matrix(self, rng):
        for _ in range(50):
            t = random_transform(rng)
            xi = r.Twist(rng.standard_normal(3), rng.standard_normal(3))
            np.testing.assert_allclose(
                r.adjoint_apply_twist(t, xi).as_array(), r.adjoint(t) @ xi.as_array(), atol=1e-12
            )

    def test_conjugation_identity(self, rng):
        for _ in range(100):
            t = random_transform(rng)
            axis = rng.standard_normal(3)
            axis /= np.linalg.norm(axis)
            xi = r.Twist(rng.standard_normal(3), axis * rng.uniform(0, 1.0))
            left = r.compose(r.compose(t, r.se3_exp(xi)), r.inverse(t))
            right = r.se3_exp(r.adjoint_apply_twist(t, xi))
            np.testing.assert_allclose(r.to_matrix4(left), r.to_matrix4(right), atol=1e-9)


class TestWrench:
    def test_identity(self, rng):
        h = r.Wrench(rng.standard_normal(3), rng.standard_normal(3))
        out = r.transform_wrench(r.Transform.identity(), h)
        np.testing.assert_array_equal(out.f, h.f)
        np.testing.assert_array_equal(out.tau, h.tau)

    def test_moment_of_force(self):
        t = r.Transform(r.RotationMatrix.identity(), [0, 1, 0])
        out = r.transform_wrench(t, r.Wrench([1, 0, 0], [0, 0, 0]))
        np.testing.assert_allclose(out.tau, np.cross([0, 1, 0], [1, 0, 0]), atol=1e-15)

    def test_power_pairing_consistency(self, rng):
        # f.v + tau.w is invariant when the twist moves by Ad_T and the wrench
        # moves by the co-adjoint of the same T
        for _ in range(100):
            t = random_transform(rng)
            xi = r.Twist(rng.standard_normal(3), rng.standard_normal(3))
            h = r.Wrench(rng.standard_normal(3), rng.standard_normal(3))
            xi2 = r.adjoint_apply_twist(t, xi)
            h2 = r.transform_wrench(t, h)
            p_before = float(h.f @ xi.v + h.tau @ xi.w)
            p_after = float(h2.f @ xi2.v + h2.tau @ xi2.w)
            assert abs(p_before - p_after) < 1e-9


class TestHomogeneous:
    def test_to_matrix4_identity(self):
        np.testing.assert_array_equal(r.to_matrix4(r.Transform.identity()), np.eye(4))

    def test_to_matrix4_translation(self):
        m = r.to_matrix4(r.Transform(r.RotationMatrix.identity(), [1, 2, 3]))
        np.testing.assert_array_equal(m[:3, 3], [1, 2, 3])
        np.testing.assert_array_equal(m[:3, :3], np.eye(3))

    def test_roundtrip(self, rng):
        for _ in range(100):
            t = random_transform(rng)
            back = r.from_matrix4(r.to_matrix4(t))
            np.testing.assert_allclose(r.to_matrix4(back), r.to_matrix4(t), atol=1e-12)

    def test_repair_path(self, rng):
        t = random_transform(rng)
        m = r.to_matrix4(t)
        m[:3, :3] *= 1.00001
        repaired = r.from_matrix4(m)
        assert np.linalg.norm(repaired.rotation.m - t.rotation.m) < 1e-4

    def test_rejects_bad_last_row(self):
        m = np.eye(4)
        m[3, 0] = 0.1
        with pytest.raises(InvalidHomogeneousRow):
            r.from_matrix4(m)

    def test_rejects_beyond_repair(self, rng):
        m = r.to_matrix4(random_transform(rng))
        m[:3, :3] *= 1.01
        with pytest.raises(NotARotation):
            r.from_matrix4(m)
