"""SO(3): rotation representations, conversions, and the exp/log pair.

Conventions:
    * Quaternions are scalar-first (w, x, y, z), Hamilton product.
    * Rotation vectors are 3-vectors whose norm is the angle in radians,
      canonicalized to angle <= pi by the log map.
    * Euler angles support ZYX intrinsic (roll, pitch, yaw) and XYZ
      extrinsic (about fixed x, then y, then z); both expand to
      Rz * Ry * Rx.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateMatrix,
    NotARotation,
    NotSkewSymmetric,
    NotUnitQuaternion,
    UnsupportedConvention,
)
from .validation import check_matrix, check_vector, freeze

ORTHO_TOL = 1e-9
SMALL_ANGLE = 1e-8
NEAR_PI = math.pi - 1e-4


@dataclass(frozen=True)
class RotationMatrix:
    """3x3 orthogonal matrix with det +1; validated eagerly."""

    m: np.ndarray

    def __post_init__(self):
        m = check_matrix(self.m, (3, 3), "rotation matrix")
        if np.linalg.norm(m.T @ m - np.eye(3)) > ORTHO_TOL:
            raise NotARotation("matrix is not orthogonal within 1e-9")
        if abs(np.linalg.det(m) - 1.0) > ORTHO_TOL:
            raise NotARotation("matrix determinant is not +1 within 1e-9")
        object.__setattr__(self, "m", freeze(m))

    @staticmethod
    def identity() -> "RotationMatrix":
        return RotationMatrix(np.eye(3))


@dataclass(frozen=True)
class UnitQuaternion:
    """Scalar-first unit quaternion (w, x, y, z).

    The constructor rejects norms off by more than 1e-6 and renormalizes
    the rest, so stored components are unit to machine precision.
    """

    w: float
    x: float
    y: float
    z: float

    def __post_init__(self):
        n = math.sqrt(self.w**2 + self.x**2 + self.y**2 + self.z**2)
        if abs(n - 1.0) > 1e-6:
            raise NotUnitQuaternion(f"quaternion norm {n:.9g} deviates from 1 by more than 1e-6")
        object.__setattr__(self, "w", float(self.w) / n)
        object.__setattr__(self, "x", float(self.x) / n)
        object.__setattr__(self, "y", float(self.y) / n)
        object.__setattr__(self, "z", float(self.z) / n)

    @staticmethod
    def identity() -> "UnitQuaternion":
        return UnitQuaternion(1.0, 0.0, 0.0, 0.0)

    def canonical(self) -> "UnitQuaternion":
        """Flip sign so w >= 0; at w == 0 the first nonzero of (x, y, z) is positive."""
        w, x, y, z = self.w, self.x, self.y, self.z
        flip = False
        if w < 0.0:
            flip = True
        elif w == 0.0:
            for c in (x, y, z):
                if c != 0.0:
                    flip = c < 0.0
                    break
        if flip:
            return UnitQuaternion(-w, -x, -y, -z)
        return self

    def components(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])


class EulerConvention(enum.Enum):
    ZYX_INTRINSIC = "zyx_intrinsic"
    XYZ_EXTRINSIC = "xyz_extrinsic"


@dataclass(frozen=True)
class EulerAngles:
    """Three angles in radians plus a convention tag.

    ZYX_INTRINSIC stores (roll, pitch, yaw); XYZ_EXTRINSIC stores the
    fixed-axis angles (about x, about y, about z). Both map to the same
    matrix product Rz * Ry * Rx.
    """

    angles: np.ndarray
    convention: EulerConvention = EulerConvention.ZYX_INTRINSIC

    def __post_init__(self):
        if not isinstance(self.convention, EulerConvention):
            raise UnsupportedConvention(f"unknown Euler convention: {self.convention!r}")
        object.__setattr__(self, "angles", freeze(check_vector(self.angles, 3, "euler angles")))


def hat3(v) -> np.ndarray:
    """Cross-product matrix: hat3(v) @ u == cross(v, u)."""
    x, y, z = check_vector(v, 3, "vector")
    return np.array([[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]])


def vee3(s) -> np.ndarray:
    """Inverse of hat3; input must be skew-symmetric within 1e-9."""
    s = check_matrix(s, (3, 3), "skew matrix")
    if np.linalg.norm(s + s.T) >= 1e-9:
        raise NotSkewSymmetric("matrix is not skew-symmetric within 1e-9")
    return np.array([s[2, 1], s[0, 2], s[1, 0]])


def so3_exp(r) -> RotationMatrix:
    """Rodrigues formula; Taylor coefficients below the small-angle threshold."""
    r = check_vector(r, 3, "rotation vector")
    theta = np.linalg.norm(r)
    k = hat3(r)
    if theta < SMALL_ANGLE:
        a = 1.0 - theta**2 / 6.0
        b = 0.5 - theta**2 / 24.0
    else:
        a = math.sin(theta) / theta
        b = (1.0 - math.cos(theta)) / theta**2
    m = np.eye(3) + a * k + b * (k @ k)
    return RotationMatrix(_snap(m))


def so3_log(r_mat: RotationMatrix) -> np.ndarray:
    """Rotation vector with angle in [0, pi].

    Mid-range uses the antisymmetric-part formula; near pi the axis is
    recovered from the symmetric part (well conditioned where sin(theta)
    vanishes) and the angle is refined through arcsin of the residual
    antisymmetry.
    """
    m = _as_rotation(r_mat)
    cos_theta = max(-1.0, min(1.0, (np.trace(m) - 1.0) / 2.0))
    theta = math.acos(cos_theta)
    w = np.array([m[2, 1] - m[1, 2], m[0, 2] - m[2, 0], m[1, 0] - m[0, 1]]) / 2.0

    if theta < SMALL_ANGLE:
        return w
    if theta > NEAR_PI:
        # outer-product reconstruction: (sym(m) - cos*I) / (1 - cos) == a a^T
        n = ((m + m.T) / 2.0 - cos_theta * np.eye(3)) / (1.0 - cos_theta)
        k = int(np.argmax(np.diag(n)))
        axis = n[:, k] / math.sqrt(n[k, k])
        axis /= np.linalg.norm(axis)
        s = float(axis @ w)  # = sin(theta) when the sign is right
        if s < 0.0:
            axis, s = -axis, -s
        elif s == 0.0:
            # theta == pi exactly: either sign is valid, pick deterministically
            for c in axis:
                if c != 0.0:
                    if c < 0.0:
                        axis = -axis
                    break
        theta = math.pi - math.asin(min(1.0, s))
        return theta * axis
    return (theta / (2.0 * math.sin(theta))) * (2.0 * w)


def quat_to_matrix(q: UnitQuaternion) -> RotationMatrix:
    """Direction-cosine matrix of a Hamilton, scalar-first quaternion."""
    if not isinstance(q, UnitQuaternion):
        q = UnitQuaternion(*q)
    w, x, y, z = q.w, q.x, q.y, q.z
    m = np.array(
        [
            [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
            [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
            [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
        ]
    )
    return RotationMatrix(m)


def matrix_to_quat(r_mat: RotationMatrix) -> UnitQuaternion:
    """Shepperd's method: branch on the largest of trace and diagonal entries."""
    m = _as_rotation(r_mat)
    t = np.trace(m)
    choices = [t, m[0, 0], m[1, 1], m[2, 2]]
    k = int(np.argmax(choices))
    if k == 0:
        s = math.sqrt(t + 1.0) * 2.0
        q = (s / 4.0, (m[2, 1] - m[1, 2]) / s, (m[0, 2] - m[2, 0]) / s, (m[1, 0] - m[0, 1]) / s)
    elif k == 1:
        s = math.sqrt(1.0 + m[0, 0] - m[1, 1] - m[2, 2]) * 2.0
        q = ((m[2, 1] - m[1, 2]) / s, s / 4.0, (m[0, 1] + m[1, 0]) / s, (m[0, 2] + m[2, 0]) / s)
    elif k == 2:
        s = math.sqrt(1.0 - m[0, 0] + m[1, 1] - m[2, 2]) * 2.0
        q = ((m[0, 2] - m[2, 0]) / s, (m[0, 1] + m[1, 0]) / s, s / 4.0, (m[1, 2] + m[2, 1]) / s)
    else:
        s = math.sqrt(1.0 - m[0, 0] - m[1, 1] + m[2, 2]) * 2.0
        q = ((m[1, 0] - m[0, 1]) / s, (m[0, 2] + m[2, 0]) / s, (m[1, 2] + m[2, 1]) / s, s / 4.0)
    return UnitQuaternion(*q).canonical()


def quat_compose(a: UnitQuaternion, b: UnitQuaternion) -> UnitQuaternion:
    """Hamilton product a * b, renormalized and canonicalized."""
    w = a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z
    x = a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y
    y = a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x
    z = a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w
    return UnitQuaternion(w, x, y, z).canonical()


def quat_inverse(q: UnitQuaternion) -> UnitQuaternion:
    """Conjugate (== inverse for unit quaternions), canonicalized."""
    return UnitQuaternion(q.w, -q.x, -q.y, -q.z).canonical()


def _rx(a: float) -> np.ndarray:
    c, s = math.cos(a), math.sin(a)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


def _ry(a: float) -> np.ndarray:
    c, s = math.cos(a), math.sin(a)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def _rz(a: float) -> np.ndarray:
    c, s = math.cos(a), math.sin(a)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def euler_to_matrix(e: EulerAngles) -> RotationMatrix:
    if e.convention is EulerConvention.ZYX_INTRINSIC:
        roll, pitch, yaw = e.angles
        m = _rz(yaw) @ _ry(pitch) @ _rx(roll)
    elif e.convention is EulerConvention.XYZ_EXTRINSIC:
        ax, ay, az = e.angles
        # fixed-axis x, y, z left-multiplies: same product, same angle slots
        m = _rz(az) @ _ry(ay) @ _rx(ax)
    else:  # pragma: no cover - enum is closed
        raise UnsupportedConvention(f"unknown Euler convention: {e.convention!r}")
    return RotationMatrix(_snap(m))


def matrix_to_euler(
    r_mat: RotationMatrix,
    convention: EulerConvention = EulerConvention.ZYX_INTRINSIC,
) -> tuple[EulerAngles, bool]:
    """Extract Euler angles; second return value flags gimbal lock.

    Within 1e-7 of |pitch| == pi/2 the roll is set to 0 and yaw absorbs
    the remaining degree of freedom.
    """
    if not isinstance(convention, EulerConvention):
        raise UnsupportedConvention(f"unknown Euler convention: {convention!r}")
    m = _as_rotation(r_mat)
    sp = max(-1.0, min(1.0, -m[2, 0]))
    pitch = math.asin(sp)
    if (math.pi / 2.0) - abs(pitch) < 1e-7:
        roll = 0.0
        yaw = math.atan2(-m[0, 1], m[1, 1])
        locked = True
    else:
        roll = math.atan2(m[2, 1], m[2, 2])
        yaw = math.atan2(m[1, 0], m[0, 0])
        locked = False
    return EulerAngles(np.array([roll, pitch, yaw]), convention), locked


def rotate(r_mat: RotationMatrix, v) -> np.ndarray:
    """Apply the rotation to a 3-vector."""
    return _as_rotation(r_mat) @ check_vector(v, 3, "vector")


def orthonormalize(m) -> RotationMatrix:
    """Nearest rotation in Frobenius norm via SVD; idempotent."""
    m = check_matrix(m, (3, 3), "matrix")
    u, sigma, vt = np.linalg.svd(m)
    if sigma[-1] < 1e-9:
        raise DegenerateMatrix("matrix is singular: smallest singular value below 1e-9")
    d = np.linalg.det(u @ vt)
    r = u @ np.diag([1.0, 1.0, d]) @ vt
    if np.linalg.norm(m - r) > 0.5:
        raise DegenerateMatrix("matrix is too far from SO(3) to repair")
    return RotationMatrix(_snap(r))


def geodesic_distance(a: RotationMatrix, b: RotationMatrix) -> float:
    """Angle of the relative rotation, in [0, pi]; symmetric.

    Computed as the norm of the log map, which stays accurate near zero
    where arccos of the trace loses half the available precision.
    """
    rel = _snap(_as_rotation(a).T @ _as_rotation(b))
    return float(np.linalg.norm(so3_log(RotationMatrix(rel))))


def random_rotation(rng: np.random.Generator) -> RotationMatrix:
    """Uniform random rotation (QR of a Gaussian matrix with sign fix)."""
    q, r = np.linalg.qr(rng.standard_normal((3, 3)))
    q = q @ np.diag(np.sign(np.diag(r)))
    if np.linalg.det(q) < 0:
        q[:, 2] = -q[:, 2]
    return RotationMatrix(_snap(q))


def _as_rotation(r_mat) -> np.ndarray:
    """Accept a RotationMatrix or raw array; validate either way."""
    if isinstance(r_mat, RotationMatrix):
        return r_mat.m
    return RotationMatrix(r_mat).m


def _snap(m: np.ndarray) -> np.ndarray:
    """Re-orthonormalize only if numerical drift exceeds the type tolerance."""
    if np.linalg.norm(m.T @ m - np.eye(3)) > ORTHO_TOL:
        u, _, vt = np.linalg.svd(m)
        m = u @ np.diag([1.0, 1.0, np.linalg.det(u @ vt)]) @ vt
    return m
