"""Smallest enclosing geodesic disk of a finite point set.

:func:`min_disk` is an iterative Welzl recursion whose 2- and 3-point bases are
geodesic midpoints and circumcircles.  :func:`min_disk_oracle` enumerates every
pair and triple candidate instead and serves as ground truth in the tests; it
builds its candidate circles with its own vectorized formulas rather than
through :meth:`SpaceForm.circumcircle3`.

On the sphere the problem is only well posed inside an open hemisphere, where
disks of radius below a quarter great circle are geodesically convex and the
minimum is unique; anything else raises :class:`NotInHemisphere`.
"""

import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np
from scipy.optimize import linprog

from .errors import AntipodalError, EmptyInput, NotInHemisphere
from .geom import SpaceForm, _cross
from .lambda_trig import half_pi_radius

_INSIDE_TOL = 1e-11
_MINKOWSKI = np.array([-1.0, 1.0, 1.0])


@dataclass(frozen=True)
class GeodesicDisk:
    center: np.ndarray
    radius: float
    # indices (into the caller's point list) of the basis that fixes the disk
    support: tuple = field(default=())


def disk_contains(sf: SpaceForm, d: GeodesicDisk, p, tol=1e-9) -> bool:
    return bool(sf.distance(d.center, p) <= d.radius + tol)


def _as_points(sf, points):
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[None, :]
    if len(pts) == 0:
        raise EmptyInput("no points given")
    return sf.check_point(pts)


def in_open_hemisphere(pts) -> bool:
    """Whether some ``c`` has ``<c, p> > 0`` for every row ``p`` of ``pts``."""
    # cheap witnesses first: the mean direction, the coordinate axes and each point
    unit = pts / np.linalg.norm(pts, axis=1, keepdims=True)
    k = pts.shape[1]
    cand = np.vstack([unit.sum(axis=0), np.eye(k), -np.eye(k), unit])
    cand /= np.maximum(np.linalg.norm(cand, axis=1, keepdims=True), 1e-300)
    if np.max(np.min(cand @ unit.T, axis=1)) > 1e-12:
        return True
    # maximize t subject to <c, p_i> >= t, |c_j| <= 1
    res = linprog(
        c=np.r_[np.zeros(k), -1.0],
        A_ub=np.c_[-pts, np.ones(len(pts))],
        b_ub=np.zeros(len(pts)),
        bounds=[(-1, 1)] * k + [(None, 1)],
        method="highs",
    )
    return bool(res.status == 0 and -res.fun > 1e-12)


def _precheck(sf, pts):
    if sf.lam > 0 and not in_open_hemisphere(pts):
        raise NotInHemisphere("points do not fit in an open hemisphere")


def _postcheck(sf, radius):
    if sf.lam > 0 and radius >= half_pi_radius(sf.lam) - 1e-9:
        raise NotInHemisphere(f"enclosing radius {radius} reaches a quarter great circle")


def _chord_bound(sf, radius):
    """Squared chord length (in the ambient form) of a geodesic of given length."""
    if sf.flat:
        return radius * radius
    k = sf.scale
    h = k * radius / 2.0
    c = 2.0 * (math.sin(min(h, math.pi / 2)) if sf.lam > 0 else math.sinh(h)) / k
    return c * c


class _Welzl:
    # distances are compared through squared chords, which are monotone in
    # the geodesic distance and avoid an arcsin per test
    def __init__(self, sf, pts):
        self.sf = sf
        self.pts = pts
        self.weights = _MINKOWSKI if sf.lam < 0 else np.ones(pts.shape[1])

    def midpoint(self, p, q):
        sf = self.sf
        m = p + q
        if sf.flat:
            return m / 2.0
        return m / math.sqrt(abs(sf.lam * float(np.sum(m * m * self.weights))))

    def disk(self, idx):
        sf, pts = self.sf, self.pts
        if len(idx) == 1:
            return pts[idx[0]], 0.0, idx
        if len(idx) == 2:
            p, q = pts[idx[0]], pts[idx[1]]
            return self.midpoint(p, q), float(sf._distance(p, q)) / 2.0, idx
        center, radius = sf.circumcircle3(*(pts[i] for i in idx))
        return center, radius, idx

    def first_outside(self, disk, lo, hi):
        if lo >= hi:
            return None
        center, radius, _ = disk
        diff = self.pts[lo:hi] - center
        chord2 = (diff * diff) @ self.weights
        out = np.flatnonzero(chord2 > _chord_bound(self.sf, radius + _INSIDE_TOL * (1.0 + radius)))
        return lo + int(out[0]) if len(out) else None

    def solve(self):
        n = len(self.pts)
        disk = self.disk((0,))
        i = 1
        while (j := self.first_outside(disk, i, n)) is not None:
            disk = self.one_point(j)
            i = j + 1
        return disk

    def one_point(self, j):
        disk = self.disk((j,))
        k = 0
        while (m := self.first_outside(disk, k, j)) is not None:
            disk = self.two_points(m, j)
            k = m + 1
        return disk

    def two_points(self, m, j):
        disk = self.disk((m, j))
        k = 0
        while (t := self.first_outside(disk, k, m)) is not None:
            disk = self.disk((t, m, j))
            k = t + 1
        return disk


def min_disk(sf: SpaceForm, points) -> GeodesicDisk:
    """Smallest geodesic disk containing all points.

    The input is shuffled with a seed derived from its size, so results are
    reproducible run to run.
    """
    pts = _as_points(sf, points)
    _precheck(sf, pts)
    order = np.random.default_rng(len(pts)).permutation(len(pts))
    center, radius, idx = _Welzl(sf, pts[order]).solve()
    _postcheck(sf, radius)
    return GeodesicDisk(np.asarray(center), float(radius), tuple(sorted(int(order[i]) for i in idx)))


def _triple_centers(sf, p, q, r):
    """Vectorized circumcenters; returns (centers, valid mask)."""
    if sf.flat:
        b = q - p
        c = r - p
        d = 2.0 * (b[:, 0] * c[:, 1] - b[:, 1] * c[:, 0])
        scale = np.linalg.norm(b, axis=1) * np.linalg.norm(c, axis=1)
        valid = np.abs(d) > 1e-13 * scale
        d = np.where(valid, d, 1.0)
        bb = np.sum(b * b, axis=1)
        cc = np.sum(c * c, axis=1)
        ux = (c[:, 1] * bb - b[:, 1] * cc) / d
        uy = (b[:, 0] * cc - c[:, 0] * bb) / d
        return p + np.stack([ux, uy], axis=1), valid
    n = _cross(q - p, r - p)
    if sf.lam > 0:
        norm = np.linalg.norm(n, axis=1)
        valid = norm > 0
        centers = n / np.where(valid, norm, 1.0)[:, None] / sf.scale
        flip = np.sum(centers * p, axis=1) < 0
        centers[flip] *= -1
        return sf.normalize(centers), valid
    m = n * _MINKOWSKI
    mm = -m[:, 0] ** 2 + m[:, 1] ** 2 + m[:, 2] ** 2
    valid = mm < -1e-14 * np.sum(n * n, axis=1)
    centers = m / np.sqrt(np.where(valid, -mm, 1.0))[:, None] / sf.scale
    centers[centers[:, 0] < 0] *= -1
    centers[~valid] = sf.base_point()
    return sf.normalize(centers), valid


def min_disk_oracle(sf: SpaceForm, points, cover_tol=1e-9) -> GeodesicDisk:
    """Brute-force minimum over all pair-midpoint and triple-circumcircle disks.

    O(n^4); intended for small inputs.  Ties are broken by the
    lexicographically smallest center.
    """
    pts = _as_points(sf, points)
    _precheck(sf, pts)
    n = len(pts)
    if n == 1:
        return GeodesicDisk(pts[0].copy(), 0.0, (0,))
    if sf.lam > 0:
        d_all = sf.distance(pts[:, None, :], pts[None, :, :])
        if np.max(d_all) > math.pi / sf.scale - 1e-9:
            raise AntipodalError("antipodal pair in input")

    pairs = np.array(list(combinations(range(n), 2)))
    centers = [sf.midpoint(pts[pairs[:, 0]], pts[pairs[:, 1]])]
    radii = [sf.distance(pts[pairs[:, 0]], pts[pairs[:, 1]]) / 2.0]
    supports = [tuple(map(int, s)) for s in pairs]
    if n >= 3:
        triples = np.array(list(combinations(range(n), 3)))
        c3, valid = _triple_centers(sf, *(pts[triples[:, k]] for k in range(3)))
        c3, triples = c3[valid], triples[valid]
        centers.append(c3)
        radii.append(sf.distance(c3, pts[triples[:, 0]]))
        supports += [tuple(map(int, s)) for s in triples]
    centers = np.concatenate(centers)
    radii = np.concatenate(radii)

    dist = sf.distance(centers[:, None, :], pts[None, :, :])
    covering = np.all(dist <= radii[:, None] + cover_tol, axis=1)
    cand = np.flatnonzero(covering)
    best_r = radii[cand].min()
    ties = cand[radii[cand] <= best_r + 1e-12]
    keys = tuple(centers[ties, k] for k in reversed(range(centers.shape[1])))
    best = ties[np.lexsort(keys)[0]]
    _postcheck(sf, radii[best])
    return GeodesicDisk(centers[best].copy(), float(radii[best]), supports[best])


def support_points(sf: SpaceForm, disk: GeodesicDisk, points, tol=1e-8):
    """Indices of the points lying on the boundary circle within ``tol``."""
    pts = _as_points(sf, points)
    d = sf.distance(disk.center, pts)
    return np.flatnonzero(np.abs(d - disk.radius) <= tol)
