"""Convex polygons and their vertex curvatures.

Indexing: side ``i`` joins ``A[i-1]`` to ``A[i]`` (cyclically), so the two
sides meeting at vertex ``i`` are sides ``i`` and ``i+1``.  Vertices are stored
counterclockwise.

Two vertex curvatures are provided.  The intrinsic one divides the exterior
angle by half-side generalized tangents::

    kappa_i = (pi - A_i) / (gtan(l_i / 2) + gtan(l_{i+1} / 2))

and the "flat" one uses the half-side lengths themselves,
``2 (pi - A_i) / (l_i + l_{i+1})``, whatever the curvature.  They coincide in
the plane.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .enclosing_disk import min_disk
from .errors import (
    DuplicateVertex,
    GenerationFailed,
    NotConvex,
    RadiusTooLarge,
    SideTooLong,
    TooFewVertices,
)
from .geom import SpaceForm
from .lambda_trig import gtan, half_pi_radius

DUPLICATE_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class ConvexPolygon:
    sf: SpaceForm
    vertices: np.ndarray
    side_lengths: np.ndarray
    interior_angles: np.ndarray
    degenerate: bool = False
    # smallest enclosing disk; found while validating on the sphere, else on first use
    disk: object = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def sides_at(self, i):
        """Lengths of the two sides meeting at vertex ``i``."""
        return self.side_lengths[i % self.n], self.side_lengths[(i + 1) % self.n]

    def boundary_samples(self, per_side=16):
        """Points along every side, endpoints included."""
        sf = self.sf
        prev = np.roll(self.vertices, 1, axis=0)
        v = sf.log_map(prev, self.vertices)
        t = np.linspace(0.0, 1.0, per_side)[:, None, None]
        return sf.exp_map(prev[None], t * v[None]).reshape(-1, sf.dim)


@dataclass(frozen=True)
class VertexCurvatureReport:
    angles: np.ndarray
    side_before: np.ndarray
    side_after: np.ndarray
    kappa: np.ndarray
    kappa_flat: np.ndarray

    @property
    def kappa0(self) -> float:
        return float(self.kappa.min())

    @property
    def kappa0_flat(self) -> float:
        return float(self.kappa_flat.min())


def _check_sides(sf, sides):
    if sf.lam > 0 and np.any(sides >= math.pi / sf.scale):
        raise SideTooLong(f"side of length {sides.max()} reaches pi/sqrt(lam)")


def from_vertices(sf: SpaceForm, vertices) -> ConvexPolygon:
    """Validate a vertex cycle and return it as a counterclockwise polygon.

    Two distinct vertices are accepted as the degenerate digon (a segment
    traversed twice, both interior angles zero).
    """
    pts = np.array(vertices, dtype=float)
    if pts.ndim != 2 or len(pts) < 2:
        raise TooFewVertices(f"need at least 2 vertices, got {len(pts)}")
    pts = sf.check_point(pts)
    n = len(pts)

    dist = sf.distance(pts[:, None, :], pts[None, :, :])
    dist[np.diag_indices(n)] = np.inf
    if dist.min() <= DUPLICATE_TOL:
        i, j = np.unravel_index(np.argmin(dist), dist.shape)
        raise DuplicateVertex(f"vertices {i} and {j} coincide")

    if n == 2:
        length = dist[0, 1]
        _check_sides(sf, np.array([length]))
        return ConvexPolygon(sf, pts, np.array([length, length]), np.zeros(2), degenerate=True)

    sides = sf.distance(np.roll(pts, 1, axis=0), pts)
    _check_sides(sf, sides)

    # every vertex must lie strictly on one side of every edge
    nxt = np.roll(pts, -1, axis=0)
    orient = sf.orientation(pts[:, None, :], nxt[:, None, :], pts[None, :, :])
    mask = ~(np.eye(n, dtype=bool) | np.roll(np.eye(n, dtype=bool), 1, axis=1))
    signs = orient[mask]
    if np.all(signs < 0):
        pts = pts[::-1].copy()
        sides = sf.distance(np.roll(pts, 1, axis=0), pts)
    elif not np.all(signs > 0):
        raise NotConvex("vertices are not in strictly convex position")

    prev = np.roll(pts, 1, axis=0)
    nxt = np.roll(pts, -1, axis=0)
    angles = sf.signed_angle(pts, sf.log_map(pts, nxt), sf.log_map(pts, prev))
    if not np.all((angles > 0) & (angles < math.pi)):
        raise NotConvex("interior angle outside (0, pi)")
    disk = min_disk(sf, pts) if sf.lam > 0 else None  # raises NotInHemisphere
    return ConvexPolygon(sf, pts, sides, angles, disk=disk)


def vertex_curvature(P: ConvexPolygon, i: int) -> float:
    before, after = P.sides_at(i)
    exterior = math.pi - P.interior_angles[i]
    return float(exterior / (gtan(P.sf.lam, before / 2) + gtan(P.sf.lam, after / 2)))


def vertex_curvature_flat(P: ConvexPolygon, i: int) -> float:
    before, after = P.sides_at(i)
    return float(2.0 * (math.pi - P.interior_angles[i]) / (before + after))


def circumdisk(P: ConvexPolygon):
    """Smallest enclosing disk of the vertices, cached on the polygon."""
    if P.disk is None:
        object.__setattr__(P, "disk", min_disk(P.sf, P.vertices))
    return P.disk


def curvature_report(P: ConvexPolygon) -> VertexCurvatureReport:
    before = P.side_lengths
    after = np.roll(P.side_lengths, -1)
    exterior = math.pi - P.interior_angles
    lam = P.sf.lam
    kappa = exterior / (gtan(lam, before / 2) + gtan(lam, after / 2))
    kappa_flat = 2.0 * exterior / (before + after)
    return VertexCurvatureReport(P.interior_angles.copy(), before.copy(), after, kappa, kappa_flat)


def regular_inscribed(sf: SpaceForm, R: float, n: int) -> ConvexPolygon:
    """Regular ``n``-gon with vertices on the circle of radius ``R`` about the base point."""
    if n < 3:
        raise TooFewVertices("regular polygon needs n >= 3")
    if not R > 0:
        raise RadiusTooLarge(f"radius must be positive, got {R}")
    if R >= half_pi_radius(sf.lam):
        raise RadiusTooLarge(f"radius {R} >= pi/(2 sqrt(lam))")
    phi = 2.0 * math.pi * np.arange(n) / n
    return from_vertices(sf, sf.polar_point(sf.canonical_frame(), np.full(n, R), phi))


def digon(sf: SpaceForm, length: float) -> ConvexPolygon:
    """Geodesic segment of the given length, centered at the base point, covered twice."""
    if not length > 0:
        raise SideTooLong(f"length must be positive, got {length}")
    if sf.lam > 0 and length >= math.pi / sf.scale:
        raise SideTooLong(f"digon length {length} >= pi/sqrt(lam)")
    ends = sf.polar_point(sf.canonical_frame(), np.full(2, length / 2), np.array([math.pi, 0.0]))
    return from_vertices(sf, ends)


def random_convex(sf: SpaceForm, n: int, seed: int, r_max: float, max_attempts=64) -> ConvexPolygon:
    """Deterministic random convex polygon around the base point.

    Each attempt samples sorted polar angles and radii in
    ``(lo * r_max, r_max]``.  ``lo`` starts at 0.2 and moves halfway to 1 after
    every rejected attempt, so later attempts hug a circle and are convex with
    high probability even for large ``n``.
    """
    if n < 3:
        raise TooFewVertices("random polygon needs n >= 3")
    if not 0 < r_max < half_pi_radius(sf.lam):
        raise RadiusTooLarge(f"r_max={r_max} outside (0, pi/(2 sqrt(lam)))")
    rng = np.random.default_rng(seed)
    frame = sf.canonical_frame()
    lo = 0.2
    for _ in range(max_attempts):
        phi = np.sort(rng.uniform(0.0, 2.0 * math.pi, n))
        r = r_max - (1.0 - lo) * r_max * rng.random(n)
        pts = sf.polar_point(frame, r, phi)
        # mixed turns at consecutive vertices fail validation anyway; skip it
        turn = sf.orientation(np.roll(pts, 1, axis=0), pts, np.roll(pts, -1, axis=0))
        if not (np.all(turn > 0) or np.all(turn < 0)):
            lo = (1.0 + lo) / 2.0
            continue
        try:
            return from_vertices(sf, pts)
        except (NotConvex, DuplicateVertex):
            lo = (1.0 + lo) / 2.0
    raise GenerationFailed(f"no convex polygon after {max_attempts} attempts (seed={seed})")


def polygon_from_polar(sf: SpaceForm, polar) -> ConvexPolygon:
    """Polygon from ``[r, phi]`` pairs about the canonical base point."""
    polar = np.asarray(polar, dtype=float)
    return from_vertices(sf, sf.polar_point(sf.canonical_frame(), polar[:, 0], polar[:, 1]))
