"""Points, geodesics, angles and circles in the model surfaces.

Models, selected by the sign of the curvature ``lam``:

* ``lam > 0``: sphere ``<p, p> = 1/lam`` in Euclidean R^3.
* ``lam == 0``: the plane R^2.
* ``lam < 0``: upper sheet of ``<p, p> = 1/lam`` in Minkowski R^3 with the
  form ``-x0 y0 + x1 y1 + x2 y2`` (coordinate 0 timelike, ``x0 > 0``).

Points and tangent vectors are plain numpy arrays in these coordinates; a
tangent vector at ``p`` is an ambient vector orthogonal to ``p`` in the model
form.  Most methods broadcast over leading axes.

Orientation convention: a frame ``(e1, e2)`` at ``p`` is positive when
``det[p, e1, e2] > 0`` (curved models) or ``e1 x e2 > 0`` (plane).  At the
base point ``(1/sqrt|lam|, 0, 0)`` the frame ``((0,1,0), (0,0,1))`` is
positive, so polar angles increase counterclockwise.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    AntipodalError,
    CollinearError,
    DegenerateError,
    InvalidPoint,
    NoCircumcircle,
    NotATriangle,
)
from .lambda_trig import SERIES_THRESHOLD, gcos, gcot, gsin

POINT_TOL = 1e-10
CLAMP_TOL = 1e-9
_MINKOWSKI = np.array([-1.0, 1.0, 1.0])


class ModelKind(enum.Enum):
    SPHERICAL = "spherical"
    FLAT = "flat"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class PolarFrame:
    """Positively oriented orthonormal frame used for geodesic polar coordinates."""

    center: np.ndarray
    e1: np.ndarray
    e2: np.ndarray


def _cross(a, b):
    a0, a1, a2 = a[..., 0], a[..., 1], a[..., 2]
    b0, b1, b2 = b[..., 0], b[..., 1], b[..., 2]
    return np.stack([a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0], axis=-1)


def det3(a, b, c):
    """``det[a, b, c]`` of three 3-vectors (broadcasting)."""
    return np.sum(a * _cross(b, c), axis=-1)


def _cross2(u, w):
    return u[..., 0] * w[..., 1] - u[..., 1] * w[..., 0]


def _sinc(lam, t):
    """``gsin(lam, t) / t`` with the removable singularity at 0 filled in."""
    t = np.asarray(t, dtype=float)
    x = lam * t * t
    series = 1.0 - x / 6.0 * (1.0 - x / 20.0 * (1.0 - x / 42.0))
    small = (np.abs(x) < SERIES_THRESHOLD) | (t == 0.0)
    safe_t = np.where(small, 1.0, t)
    out = np.where(small, series, gsin(lam, safe_t) / safe_t)
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class SpaceForm:
    """The simply connected surface of constant curvature ``lam``."""

    lam: float

    def __post_init__(self):
        if not math.isfinite(self.lam):
            raise ValueError(f"curvature must be finite, got {self.lam}")
        object.__setattr__(self, "lam", float(self.lam))

    @property
    def kind(self) -> ModelKind:
        if self.lam > 0:
            return ModelKind.SPHERICAL
        if self.lam < 0:
            return ModelKind.HYPERBOLIC
        return ModelKind.FLAT

    @property
    def flat(self) -> bool:
        return self.lam == 0

    @property
    def dim(self) -> int:
        return 2 if self.flat else 3

    @property
    def scale(self) -> float:
        return math.sqrt(abs(self.lam))

    # ------------------------------------------------------------------
    # bilinear form and quadric

    def inner(self, u, v):
        if self.lam < 0:
            return np.sum(u * v * _MINKOWSKI, axis=-1)
        return np.sum(u * v, axis=-1)

    def norm(self, v):
        return np.sqrt(np.maximum(self.inner(v, v), 0.0))

    def base_point(self) -> np.ndarray:
        if self.flat:
            return np.zeros(2)
        return np.array([1.0 / self.scale, 0.0, 0.0])

    def check_point(self, p, tol=POINT_TOL):
        """Raise :class:`InvalidPoint` unless every point in ``p`` lies on the model."""
        p = np.asarray(p, dtype=float)
        if p.shape[-1] != self.dim:
            raise InvalidPoint(f"expected {self.dim} coordinates, got shape {p.shape}")
        if self.flat:
            if not np.isfinite(p).all():
                raise InvalidPoint("non-finite coordinates")
            return p
        err = np.abs(self.lam * self.inner(p, p) - 1.0)
        # NaN compares False, so test the negation
        if not (err <= tol).all():
            raise InvalidPoint(f"point off the quadric by {float(np.max(err)):.3g}")
        if self.lam < 0 and not (p[..., 0] > 0).all():
            raise InvalidPoint("point on the lower sheet of the hyperboloid")
        return p

    def normalize(self, p):
        """Re-project ``p`` onto the quadric (roundoff cleanup)."""
        p = np.asarray(p, dtype=float)
        if self.lam > 0:
            return p / (np.linalg.norm(p, axis=-1, keepdims=True) * self.scale)
        if self.lam < 0:
            spatial = np.sum(p[..., 1:] ** 2, axis=-1)
            x0 = np.sqrt(1.0 / abs(self.lam) + spatial)
            return np.concatenate([x0[..., None], p[..., 1:]], axis=-1)
        return p

    def project_tangent(self, p, v):
        if self.flat:
            return v
        return v - self.lam * self.inner(v, p)[..., None] * p

    # ------------------------------------------------------------------
    # geodesics

    def distance(self, p, q):
        """Geodesic distance, computed from the chord length for accuracy."""
        return self._distance(self.check_point(p), self.check_point(q))

    def _distance(self, p, q):
        diff = q - p
        if self.flat:
            return np.sqrt(np.sum(diff * diff, axis=-1))
        chord2 = self.inner(diff, diff)
        if self.lam > 0:
            half = np.sqrt(np.maximum(chord2, 0.0)) * self.scale / 2.0
            if np.any(half > 1.0 + CLAMP_TOL):
                raise InvalidPoint("chord longer than the sphere's diameter")
            return 2.0 * np.arcsin(np.minimum(half, 1.0)) / self.scale
        if np.any(chord2 < -CLAMP_TOL):
            raise InvalidPoint("timelike chord between hyperboloid points")
        half = np.sqrt(np.maximum(chord2, 0.0)) * self.scale / 2.0
        return 2.0 * np.arcsinh(half) / self.scale

    def exp_map(self, p, v):
        """Point reached from ``p`` along the geodesic with initial velocity ``v``."""
        p = np.asarray(p, dtype=float)
        v = np.asarray(v, dtype=float)
        if self.flat:
            return p + v
        v = self.project_tangent(p, v)
        n = self.norm(v)
        out = p * np.asarray(gcos(self.lam, n))[..., None] + v * np.asarray(
            _sinc(self.lam, n)
        )[..., None]
        return self.normalize(out)

    def log_map(self, p, q):
        """Tangent vector at ``p`` pointing to ``q`` with length ``distance(p, q)``."""
        p = np.asarray(p, dtype=float)
        q = np.asarray(q, dtype=float)
        if self.flat:
            return q - p
        d = self._distance(p, q)
        if self.lam > 0 and np.any(d > math.pi / self.scale - CLAMP_TOL):
            raise AntipodalError("log_map of antipodal points is undefined")
        u = self.project_tangent(p, q - p)
        return u / np.asarray(_sinc(self.lam, d))[..., None]

    def midpoint(self, p, q):
        return self.exp_map(p, 0.5 * self.log_map(p, q))

    # ------------------------------------------------------------------
    # angles and orientation

    def rotate90(self, p, v):
        """Rotate tangent vector ``v`` at ``p`` by +pi/2."""
        if self.flat:
            return np.stack([-v[..., 1], v[..., 0]], axis=-1)
        w = self.scale * _cross(p, v)
        if self.lam < 0:
            w = w * _MINKOWSKI
        return w

    def rotate(self, p, v, angle):
        angle = np.asarray(angle, dtype=float)[..., None]
        return np.cos(angle) * v + np.sin(angle) * self.rotate90(p, v)

    def signed_angle(self, p, u, w):
        """Oriented angle in ``(-pi, pi]`` from ``u`` to ``w`` at ``p``."""
        if self.flat:
            return np.arctan2(_cross2(u, w), np.sum(u * w, axis=-1))
        return np.arctan2(self.scale * det3(p, u, w), self.inner(u, w))

    def orientation(self, p, q, r):
        """Sign-carrying orientation of the triple; positive = counterclockwise."""
        if self.flat:
            return _cross2(q - p, r - p)
        return det3(p, q, r)

    def angle_at(self, q, p, r):
        """Angle in ``[0, pi]`` at ``q`` between the geodesics to ``p`` and ``r``."""
        u = self.log_map(q, p)
        w = self.log_map(q, r)
        if np.any(self.norm(u) == 0) or np.any(self.norm(w) == 0):
            raise DegenerateError("angle_at with coincident points")
        return np.abs(self.signed_angle(q, u, w))

    def cosine_law_angle(self, a, b, c):
        """Angle opposite side ``a`` in the triangle with sides ``a, b, c``.

        Evaluated through the half-angle form of the law of cosines,
        ``sin^2(A/2) = gsin((a-b+c)/2) gsin((a+b-c)/2) / (gsin(b) gsin(c))``,
        which is exact in every curvature (including the flat limit) and well
        conditioned for thin triangles.
        """
        lam = self.lam
        if min(a, b, c) <= 0:
            raise NotATriangle("side lengths must be positive")
        if lam > 0 and max(a, b, c) >= math.pi / self.scale:
            raise NotATriangle("side length reaches the antipodal distance")
        den = gsin(lam, b) * gsin(lam, c)
        num_sin = gsin(lam, (a - b + c) / 2) * gsin(lam, (a + b - c) / 2)
        num_cos = gsin(lam, (a + b + c) / 2) * gsin(lam, (b + c - a) / 2)
        x = num_sin / den
        if x < -CLAMP_TOL / 2 or x > 1 + CLAMP_TOL / 2:
            raise NotATriangle(f"cosine-law argument {1 - 2 * x:.12g} outside [-1, 1]")
        return 2.0 * math.atan2(math.sqrt(max(num_sin, 0.0)), math.sqrt(max(num_cos, 0.0)))

    # ------------------------------------------------------------------
    # circles

    def circumcircle3(self, p, q, r):
        """Center and radius of the geodesic circle through three points."""
        p, q, r = (np.asarray(x, dtype=float) for x in (p, q, r))
        if self.flat:
            b = q - p
            c = r - p
            d = 2.0 * _cross2(b, c)
            scale = np.linalg.norm(b) * np.linalg.norm(c)
            if scale == 0 or abs(d) <= 1e-13 * scale:
                raise CollinearError("collinear points have no circumcircle")
            bb, cc = b @ b, c @ c
            u = np.array([c[1] * bb - b[1] * cc, b[0] * cc - c[0] * bb]) / d
            return p + u, float(np.hypot(u[0], u[1]))
        if self.lam > 0:
            for x, y in ((p, q), (q, r), (p, r)):
                if self._distance(x, y) > math.pi / self.scale - CLAMP_TOL:
                    raise AntipodalError("antipodal pair in circumcircle3")
        n = _cross(q - p, r - p)
        nn = float(n @ n)
        if nn == 0.0:
            raise CollinearError("degenerate triple")
        if self.lam > 0:
            center = n / (math.sqrt(nn) * self.scale)
            if center @ p < 0:
                center = -center
        else:
            m = n * _MINKOWSKI
            mm = float(self.inner(m, m))
            if mm >= -1e-14 * nn:
                raise NoCircumcircle("points lie on a horocycle or equidistant curve")
            center = m / (math.sqrt(-mm) * self.scale)
            if center[0] < 0:
                center = -center
        center = self.normalize(center)
        return center, float(self._distance(center, p))

    def three_point_curvature(self, p, q, r):
        """Signed geodesic curvature of the circle (or cycle) through three points.

        Positive when ``p, q, r`` turn counterclockwise.  Where no geodesic
        circle exists (hyperbolic horocycles and equidistant curves) the
        curvature of the plane section through the three points is used.
        """
        p, q, r = (np.asarray(x, dtype=float) for x in (p, q, r))
        sign = math.copysign(1.0, float(self.orientation(p, q, r)))
        try:
            _, radius = self.circumcircle3(p, q, r)
            return sign * float(gcot(self.lam, radius))
        except CollinearError:
            return 0.0
        except NoCircumcircle:
            pass
        n = _cross(q - p, r - p)
        normal = n * _MINKOWSKI
        m = float(n @ p)
        k = abs(self.lam * m) / math.sqrt(float(self.inner(normal, normal)) - self.lam * m * m)
        return sign * k

    # ------------------------------------------------------------------
    # polar coordinates

    def tangent_frame(self, p) -> PolarFrame:
        """A deterministic positive orthonormal frame at ``p``."""
        p = np.asarray(p, dtype=float)
        if self.flat:
            return PolarFrame(p, np.array([1.0, 0.0]), np.array([0.0, 1.0]))
        best = None
        for axis in (np.array([0.0, 1.0, 0.0]), np.array([0.0, 0.0, 1.0]), np.array([1.0, 0.0, 0.0])):
            v = self.project_tangent(p, axis)
            nv = float(self.norm(v))
            if best is None or nv > best[1]:
                best = (v, nv)
        return self.frame_from_direction(p, best[0])

    def frame_from_direction(self, p, direction) -> PolarFrame:
        p = np.asarray(p, dtype=float)
        e1 = self.project_tangent(p, np.asarray(direction, dtype=float))
        e1 = e1 / self.norm(e1)
        return PolarFrame(p, e1, self.rotate90(p, e1))

    def canonical_frame(self) -> PolarFrame:
        p = self.base_point()
        if self.flat:
            return PolarFrame(p, np.array([1.0, 0.0]), np.array([0.0, 1.0]))
        return PolarFrame(p, np.array([0.0, 1.0, 0.0]), np.array([0.0, 0.0, 1.0]))

    def polar_point(self, frame: PolarFrame, r, phi):
        """``exp(center, r (cos(phi) e1 + sin(phi) e2))``; broadcasts over r, phi."""
        r = np.asarray(r, dtype=float)[..., None]
        phi = np.asarray(phi, dtype=float)[..., None]
        v = r * (np.cos(phi) * frame.e1 + np.sin(phi) * frame.e2)
        return self.exp_map(frame.center, v)

    def polar_coords(self, frame: PolarFrame, q):
        """Inverse of :meth:`polar_point`: returns ``(r, phi)``."""
        v = self.log_map(frame.center, q)
        return self.norm(v), np.arctan2(self.inner(v, frame.e2), self.inner(v, frame.e1))

    def polar_velocity(self, frame: PolarFrame, r, dr, phi):
        """Ambient velocity of ``phi -> polar_point(frame, r(phi), phi)``."""
        r = np.asarray(r, dtype=float)[..., None]
        dr = np.asarray(dr, dtype=float)[..., None]
        phi = np.asarray(phi, dtype=float)[..., None]
        u = np.cos(phi) * frame.e1 + np.sin(phi) * frame.e2
        du = -np.sin(phi) * frame.e1 + np.cos(phi) * frame.e2
        s = np.asarray(gsin(self.lam, r))
        c = np.asarray(gcos(self.lam, r))
        if self.flat:
            return dr * u + r * du
        return dr * (-self.lam * s * frame.center + c * u) + s * du
