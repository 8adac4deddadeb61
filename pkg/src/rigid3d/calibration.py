"""Calibration solvers: point-set registration, pivot, and hand-eye AX=XB.

Each solver is a pure function returning a result record; sklearn-style
estimator wrappers live in :mod:`rigid3d.estimators`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateGeometry,
    DegenerateMotion,
    TooFewMotions,
    TooFewPoints,
    TooFewPoses,
)
from .se3 import Transform
from .so3 import RotationMatrix, geodesic_distance, orthonormalize, so3_log
from .validation import check_points

SINGULAR_RATIO = 1e-9
MAX_CONDITION = 1e8
PARALLEL_AXIS_TOL = 1e-6


@dataclass(frozen=True)
class PoseSample:
    """One recorded tracked-device pose (tracker/world frame)."""

    pose: Transform


@dataclass(frozen=True)
class RegistrationResult:
    transform: Transform
    rms_error: float
    per_point_residuals: np.ndarray


@dataclass(frozen=True)
class PivotResult:
    tip_offset: np.ndarray  # tool frame
    pivot_point: np.ndarray  # world frame
    rms_error: float


@dataclass(frozen=True)
class HandEyeResult:
    x: Transform
    rotation_rms: float
    translation_rms: float


def register_point_sets(p, q, singular_ratio: float = SINGULAR_RATIO) -> RegistrationResult:
    """Least-squares rigid transform T minimizing sum ||T p_i - q_i||^2.

    SVD (Arun/Kabsch) method with the determinant correction, so the
    result is always a proper rotation. Correspondence is index-wise.
    """
    p = check_points(p, "source points")
    q = check_points(q, "target points")
    if p.shape[0] != q.shape[0]:
        raise TooFewPoints("point sets must have equal length")
    if p.shape[0] < 3:
        raise TooFewPoints("registration needs at least 3 point pairs")

    p_bar = p.mean(axis=0)
    q_bar = q.mean(axis=0)
    h = (p - p_bar).T @ (q - q_bar)
    u, sigma, vt = np.linalg.svd(h)
    if sigma[1] < singular_ratio * sigma[0] and sigma[2] < singular_ratio * sigma[0]:
        raise DegenerateGeometry("points are collinear: rotation about the line is unconstrained")
    v = vt.T
    d = np.linalg.det(v @ u.T)
    r = v @ np.diag([1.0, 1.0, d]) @ u.T
    rot = orthonormalize(r)
    t = q_bar - rot.m @ p_bar
    transform = Transform(rot, t)
    residuals = np.linalg.norm((p @ rot.m.T + t) - q, axis=1)
    rms = math.sqrt(float(np.mean(residuals**2)))
    return RegistrationResult(transform, rms, residuals)


def pivot_calibrate(samples, max_condition: float = MAX_CONDITION) -> PivotResult:
    """Tool-tip and pivot point from poses rotating about a fixed point.

    Model: R_i g + t_i = b for every pose, solved as one stacked linear
    least-squares system in (g, b).
    """
    poses = [s.pose if isinstance(s, PoseSample) else s for s in samples]
    n = len(poses)
    if n < 3:
        raise TooFewPoses("pivot calibration needs at least 3 poses")

    a = np.zeros((3 * n, 6))
    rhs = np.zeros(3 * n)
    for i, pose in enumerate(poses):
        a[3 * i : 3 * i + 3, :3] = pose.rotation.m
        a[3 * i : 3 * i + 3, 3:] = -np.eye(3)
        rhs[3 * i : 3 * i + 3] = -pose.translation

    normal = a.T @ a
    if np.linalg.cond(normal) > max_condition:
        raise DegenerateMotion("insufficient rotational diversity: tip and pivot are not separable")
    sol, *_ = np.linalg.lstsq(a, rhs, rcond=None)
    tip, pivot = sol[:3], sol[3:]
    errs = np.array([np.linalg.norm(p.rotation.m @ tip + p.translation - pivot) for p in poses])
    rms = math.sqrt(float(np.mean(errs**2)))
    return PivotResult(tip, pivot, rms)


def hand_eye_calibrate(a_list, b_list, parallel_axis_tol: float = PARALLEL_AXIS_TOL) -> HandEyeResult:
    """Solve A_i X = X B_i for relative-motion pairs (A_i, B_i).

    Separable two-stage least squares: the rotation from the log-map
    correlation matrix M = sum beta_i alpha_i^T with R = (M^T M)^{-1/2} M^T,
    then the translation from the stacked linear system
    (R_Ai - I) t = R t_Bi - t_Ai.
    """
    if len(a_list) != len(b_list):
        raise TooFewMotions("motion lists must have equal length")
    n = len(a_list)
    if n < 2:
        raise TooFewMotions("hand-eye calibration needs at least 2 motion pairs")

    alphas = [so3_log(a.rotation) for a in a_list]
    betas = [so3_log(b.rotation) for b in b_list]
    _check_axis_diversity(alphas, parallel_axis_tol)

    m = np.zeros((3, 3))
    for alpha, beta in zip(alphas, betas):
        m += np.outer(beta, alpha)
    mtm = m.T @ m
    evals, evecs = np.linalg.eigh(mtm)
    if evals[0] < 1e-12 * max(evals[-1], 1.0):
        raise DegenerateMotion("rotation axes are not diverse enough to determine X")
    inv_sqrt = evecs @ np.diag(1.0 / np.sqrt(evals)) @ evecs.T
    r_x = orthonormalize(inv_sqrt @ m.T)

    c = np.zeros((3 * n, 3))
    d = np.zeros(3 * n)
    for i, (a, b) in enumerate(zip(a_list, b_list)):
        c[3 * i : 3 * i + 3] = a.rotation.m - np.eye(3)
        d[3 * i : 3 * i + 3] = r_x.m @ b.translation - a.translation
    t_x, *_ = np.linalg.lstsq(c, d, rcond=None)

    rot_errs = [
        geodesic_distance(
            RotationMatrix(a.rotation.m @ r_x.m), RotationMatrix(r_x.m @ b.rotation.m)
        )
        for a, b in zip(a_list, b_list)
    ]
    trans_errs = np.linalg.norm((c @ t_x - d).reshape(n, 3), axis=1)
    return HandEyeResult(
        Transform(r_x, t_x),
        math.sqrt(float(np.mean(np.square(rot_errs)))),
        math.sqrt(float(np.mean(trans_errs**2))),
    )


def _check_axis_diversity(alphas, tol: float = PARALLEL_AXIS_TOL) -> None:
    """Reject motion sets whose rotation axes all lie on one line."""
    axes = []
    for alpha in alphas:
        norm = np.linalg.norm(alpha)
        if norm > 1e-12:
            axes.append(alpha / norm)
    if len(axes) < 2:
        raise DegenerateMotion("need at least 2 motions with nonzero rotation")
    ref = axes[0]
    for axis in axes[1:]:
        angle = math.acos(max(-1.0, min(1.0, abs(float(ref @ axis)))))
        if angle > tol:
            return
    raise DegenerateMotion("all rotation axes are parallel: X is not unique")
