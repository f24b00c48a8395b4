"""Smoothing a curvature-bounded convex polygon into a C^2 convex curve.

Every side is replaced by a circular arc of radius ``R`` (``gtan(R) =
pi/(2 kappa0)``) bulging outward, the arcs are pushed out by ``eps`` to
concentric arcs of radius ``R + eps``, and at every vertex the gap between
two consecutive offset arcs is bridged by a quartic in geodesic polar
coordinates about the vertex::

    r(phi) = r_io + a phi^2 + b phi^4 = eps + b (phi^2 - theta^2)^2

on ``[-theta, theta]``.  The connector meets both arcs with matching
position, tangent and curvature.  As ``eps -> 0`` its curvature blows up like
``1/eps`` inside the interval.

Curvature of a polar curve ``r(phi)`` about a pole, with the normal pointing
toward the pole::

    k = s (-r'' + s c + 2 r'^2 c/s) / (s^2 + r'^2)^(3/2),  s = gsin(r), c = gcos(r)

which reduces to ``(r^2 + 2 r'^2 - r r'') / (r^2 + r'^2)^(3/2)`` in the plane.

Connector frames: ``e1`` bisects the two outward radial directions at the
vertex; ``phi = -theta`` is the end of the incoming (side ``i``) arc and
``phi = +theta`` the start of the outgoing (side ``i+1``) arc.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .enclosing_disk import min_disk
from .errors import (
    ChordTooLong,
    ConvexityViolated,
    DegenerateTheta,
    RadiusOverflow,
    ToleranceExceeded,
)
from .geom import PolarFrame, SpaceForm
from .lambda_trig import arc_gtan, gcos, gcot, gsin, gtan, half_pi_radius
from .polygon import ConvexPolygon, circumdisk

THETA_TOL = 1e-9
JUNCTION_TOL = 1e-6
CURVATURE_SLACK = 1e-8
EPS_MIN = 1e-8
CONNECTOR_SAMPLES = 101
ARC_STEP = 1e-2


def polar_curvature(lam, r, dr, ddr):
    """Geodesic curvature of ``phi -> (r(phi), phi)`` in polar coordinates."""
    r = np.asarray(r, dtype=float)
    s = gsin(lam, r)
    c = gcos(lam, r)
    dr2 = np.asarray(dr, dtype=float) ** 2
    out = (s * (s * c - ddr) + 2.0 * dr2 * c) / (s * s + dr2) ** 1.5
    return out if np.ndim(out) else float(out)


def offset_curvature(lam, R, eps):
    """Curvature of the circle of radius ``R + eps``, by the addition formula.

    Equals ``gcot(R + eps)``; kept separate as an independent route.
    """
    co = float(gcot(lam, R))
    ta = float(gtan(lam, eps))
    return (co - lam * ta) / (1.0 + co * ta)


@dataclass(frozen=True)
class ArcSegment:
    frame: PolarFrame  # centered at O_i, e1 toward the arc's start
    radius: float
    span: float  # angle swept counterclockwise about the center
    beta: float  # angle at each endpoint between the chord and the radius
    start: np.ndarray
    end: np.ndarray
    sf: SpaceForm = field(repr=False, default=None)

    @property
    def center(self):
        return self.frame.center

    @property
    def curvature(self) -> float:
        return float(gcot(self.sf.lam, self.radius))

    def point(self, psi):
        return self.sf.polar_point(self.frame, np.full(np.shape(psi), self.radius), psi)

    def tangent(self, psi):
        psi = np.asarray(psi, dtype=float)
        v = self.sf.polar_velocity(self.frame, np.full(psi.shape, self.radius), np.zeros(psi.shape), psi)
        return v / np.asarray(self.sf.norm(v))[..., None]


@dataclass(frozen=True)
class ConnectorCurve:
    frame: PolarFrame  # centered at the vertex
    theta: float
    eps: float
    r_io: float
    a: float
    b: float
    sf: SpaceForm = field(repr=False, default=None)

    @property
    def vertex(self):
        return self.frame.center

    def r(self, phi):
        phi = np.asarray(phi, dtype=float)
        return self.eps + self.b * (phi * phi - self.theta**2) ** 2

    def dr(self, phi):
        phi = np.asarray(phi, dtype=float)
        return 4.0 * self.b * phi * (phi * phi - self.theta**2)

    def ddr(self, phi):
        phi = np.asarray(phi, dtype=float)
        return 4.0 * self.b * (3.0 * phi * phi - self.theta**2)

    def curvature(self, phi):
        return polar_curvature(self.sf.lam, self.r(phi), self.dr(phi), self.ddr(phi))

    def point(self, phi):
        return self.sf.polar_point(self.frame, self.r(phi), phi)

    def tangent(self, phi):
        v = self.sf.polar_velocity(self.frame, self.r(phi), self.dr(phi), phi)
        return v / np.asarray(self.sf.norm(v))[..., None]


@dataclass(frozen=True)
class VertexAngles:
    beta: np.ndarray  # per side
    delta: np.ndarray  # per side, pi/2 - beta
    theta: np.ndarray  # per vertex


@dataclass
class Diagnostics:
    eps_requested: float
    eps: float
    halvings: int
    max_gap: float
    max_tangent_mismatch: float
    max_curvature_jump: float
    min_curvature: float
    arc_curvature: float
    enclosure_margin: float
    per_vertex_min_curvature: list

    def as_dict(self):
        return dict(self.__dict__)


@dataclass
class PiecewiseCurve:
    sf: SpaceForm
    kappa0: float
    R: float
    eps: float
    arcs: list
    connectors: list  # None where the arcs already meet tangentially
    closed: bool = True
    diagnostics: Diagnostics = None

    def pieces(self):
        """Alternating (kind, index, piece): arc i, then the connector at vertex i."""
        out = []
        for i, arc in enumerate(self.arcs):
            out.append(("arc", i, arc))
            if self.connectors[i] is not None:
                out.append(("connector", i, self.connectors[i]))
        return out

    def samples(self, connector_samples=CONNECTOR_SAMPLES, arc_step=ARC_STEP):
        """Ordered samples ``(kind, index, param, point, curvature)`` along the curve."""
        rows = []
        for kind, i, piece in self.pieces():
            if kind == "arc":
                m = max(2, int(math.ceil(piece.span / arc_step)) + 1)
                params = np.linspace(0.0, piece.span, m)
                pts = piece.point(params)
                kappa = np.full(m, piece.curvature)
            else:
                params = np.linspace(-piece.theta, piece.theta, connector_samples)
                pts = piece.point(params)
                kappa = np.asarray(piece.curvature(params))
            for t, p, k in zip(params, pts, kappa):
                rows.append((kind, i, float(t), p, float(k)))
        return rows

    def sample_points(self, connector_samples=CONNECTOR_SAMPLES, arc_step=ARC_STEP):
        return np.array([row[3] for row in self.samples(connector_samples, arc_step)])


def support_radius(lam, kappa0) -> float:
    """Radius ``R`` of the support arcs: ``gtan(R) = pi / (2 kappa0)``."""
    return arc_gtan(lam, math.pi / (2.0 * kappa0))


def _unit(sf, v):
    return v / np.asarray(sf.norm(v))[..., None]


def build_support_arcs(P: ConvexPolygon, kappa0: float):
    """Support arcs of radius ``R`` over every side, plus the angles at the vertices.

    Side ``i`` (from ``A[i-1]`` to ``A[i]``) gets an arc whose center lies
    inside, on the perpendicular bisector of the side.
    """
    sf = P.sf
    lam = sf.lam
    R = support_radius(lam, kappa0)
    ratio = gtan(lam, P.side_lengths / 2.0) / math.pi * 2.0 * kappa0
    if np.any(ratio > 1.0 + 1e-12):
        i = int(np.argmax(ratio))
        raise ChordTooLong(f"side {i} (length {P.side_lengths[i]}) is longer than an arc of radius {R} can span")
    beta = np.arccos(np.clip(ratio, -1.0, 1.0))
    theta = (beta + np.roll(beta, -1) - P.interior_angles) / 2.0
    if np.any(theta < -THETA_TOL):
        i = int(np.argmin(theta))
        raise ConvexityViolated(f"negative turning half-angle {theta[i]} at vertex {i}")
    theta = np.maximum(theta, 0.0)

    arcs = []
    n = P.n
    for i in range(n):
        A_prev, A = P.vertices[i - 1], P.vertices[i]
        back = _unit(sf, sf.log_map(A, A_prev))
        O = sf.exp_map(A, R * sf.rotate(A, back, -beta[i]))
        frame = sf.frame_from_direction(O, sf.log_map(O, A_prev))
        span = float(sf.signed_angle(O, frame.e1, sf.log_map(O, A)))
        arcs.append(ArcSegment(frame, R, span, float(beta[i]), A_prev.copy(), A.copy(), sf))
    return arcs, VertexAngles(beta, math.pi / 2.0 - beta, theta)


def offset_arcs(arcs, eps: float):
    """Concentric arcs pushed outward by ``eps``."""
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    out = []
    for arc in arcs:
        sf = arc.sf
        rho = arc.radius + eps
        if sf.lam > 0 and rho >= half_pi_radius(sf.lam):
            raise RadiusOverflow(f"offset radius {rho} reaches a quarter great circle")
        ends = sf.polar_point(arc.frame, np.full(2, rho), np.array([0.0, arc.span]))
        out.append(ArcSegment(arc.frame, rho, arc.span, arc.beta, ends[0], ends[1], sf))
    return out


def connector_coefficients(lam, R, eps, theta):
    """``(r_io, a, b)`` of the connector with half-angle ``theta`` at offset ``eps``.

    ``r(+-theta) = eps`` and ``r'(+-theta) = 0`` hold for any ``b``; ``b`` is
    fixed by matching the curvature of the offset arcs, ``gcot(R + eps)``,
    which at ``r' = 0`` requires ``r'' = gsin(eps) gcos(eps) - gcot(R+eps) gsin(eps)^2``.
    """
    if not theta > THETA_TOL:
        raise DegenerateTheta(f"theta={theta}: arcs meet tangentially, no connector needed")
    if theta > math.pi / 2 + 1e-12:
        raise ValueError(f"theta={theta} exceeds pi/2")
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    s = gsin(lam, eps)
    c = gcos(lam, eps)
    target = float(gcot(lam, R + eps))
    ddr = s * c - target * s * s
    b = ddr / (8.0 * theta * theta)
    return eps + b * theta**4, -2.0 * b * theta * theta, b


def limit_profile(phi, theta):
    """``lim r(phi)/eps`` as ``eps -> 0`` and the planar curvature of that profile.

    Returns ``(R, L)`` with ``R = 1 + (theta^2 - phi^2)^2 / (8 theta^2)``;
    ``eps * k(phi)`` converges to ``L``.
    """
    phi = np.asarray(phi, dtype=float)
    t2 = theta * theta
    w = phi * phi - t2
    Rt = 1.0 + w * w / (8.0 * t2)
    dR = phi * w / (2.0 * t2)
    ddR = (3.0 * phi * phi - t2) / (2.0 * t2)
    return Rt, (Rt * Rt + 2.0 * dR * dR - Rt * ddR) / (Rt * Rt + dR * dR) ** 1.5


def _build(P, kappa0, eps):
    sf = P.sf
    arcs, ang = build_support_arcs(P, kappa0)
    R = arcs[0].radius
    off = offset_arcs(arcs, eps)
    connectors = []
    n = P.n
    for i in range(n):
        A = P.vertices[i]
        theta = float(ang.theta[i])
        if theta <= THETA_TOL:
            connectors.append(None)
            continue
        out_a = _unit(sf, -sf.log_map(A, arcs[i].center))
        e1 = sf.rotate(A, out_a, theta)
        frame = PolarFrame(A, e1, sf.rotate90(A, e1))
        r_io, a, b = connector_coefficients(sf.lam, R, eps, theta)
        connectors.append(ConnectorCurve(frame, theta, eps, r_io, a, b, sf))
    return PiecewiseCurve(sf, kappa0, R, eps, off, connectors)


def _junctions(curve):
    """Pairs (left end, right start) as (point, unit tangent, curvature) triples."""
    ends = []
    for kind, i, piece in curve.pieces():
        if kind == "arc":
            first = (piece.start, piece.tangent(0.0), piece.curvature)
            last = (piece.end, piece.tangent(piece.span), piece.curvature)
        else:
            t = piece.theta
            first = (piece.point(-t), piece.tangent(-t), piece.curvature(-t))
            last = (piece.point(t), piece.tangent(t), piece.curvature(t))
        ends.append((first, last))
    return [(ends[j - 1][1], ends[j][0]) for j in range(len(ends))]


def _enclosure_margin(curve, P, rows):
    """Smallest signed offset of a vertex from the tangent geodesic at a sample.

    Positive means every vertex lies strictly on the inner side of every
    sampled tangent line, which for a convex curve puts it inside.
    """
    sf = curve.sf
    margin = math.inf
    for kind, i, piece in curve.pieces():
        sel = [r[2] for r in rows if r[0] == kind and r[1] == i]
        params = np.array(sel)
        x = piece.point(params)
        T = piece.tangent(params)
        N = sf.rotate90(x, T)
        diff = P.vertices[None, :, :] - x[:, None, :]
        margin = min(margin, float(np.min(sf.inner(diff, N[:, None, :]))))
    return margin


def diagnose(curve, P, eps_requested=None, halvings=0):
    sf = curve.sf
    pairs = _junctions(curve)
    gap = max(float(sf.distance(a[0], b[0])) for a, b in pairs)
    tan = max(float(np.linalg.norm(a[1] - b[1])) for a, b in pairs)
    jump = max(abs(a[2] - b[2]) for a, b in pairs)
    rows = curve.samples()
    kappa = np.array([r[4] for r in rows])
    per_vertex = []
    for c in curve.connectors:
        per_vertex.append(None if c is None else float(np.min(c.curvature(np.linspace(-c.theta, c.theta, CONNECTOR_SAMPLES)))))
    return Diagnostics(
        eps_requested=curve.eps if eps_requested is None else eps_requested,
        eps=curve.eps,
        halvings=halvings,
        max_gap=gap,
        max_tangent_mismatch=tan,
        max_curvature_jump=jump,
        min_curvature=float(kappa.min()),
        arc_curvature=float(gcot(sf.lam, curve.R + curve.eps)),
        enclosure_margin=_enclosure_margin(curve, P, rows),
        per_vertex_min_curvature=per_vertex,
    )


def assemble(P: ConvexPolygon, kappa0: float, eps: float, eps_min=EPS_MIN) -> PiecewiseCurve:
    """Build the smoothed curve and attach its diagnostics.

    If the sampled curvature dips below the arc curvature, ``eps`` is halved
    until it does not (down to ``eps_min``).
    """
    requested = eps
    halvings = 0
    while True:
        curve = _build(P, kappa0, eps)
        diag = diagnose(curve, P, requested, halvings)
        worst = max(diag.max_gap, diag.max_tangent_mismatch, diag.max_curvature_jump)
        if worst > JUNCTION_TOL:
            raise ToleranceExceeded(f"junction mismatch {worst:.3g} at eps={eps}")
        if diag.min_curvature >= diag.arc_curvature - CURVATURE_SLACK:
            curve.diagnostics = diag
            return curve
        if eps / 2.0 < eps_min:
            raise ToleranceExceeded(f"curvature still below the arc curvature at eps={eps}")
        eps /= 2.0
        halvings += 1


@dataclass
class SweepRow:
    eps: float
    min_interior_curvature: float  # over all vertices
    per_vertex_min: list
    max_profile_deviation: float  # max |eps k - L| / L over the grid
    doubling_ratio: float  # min curvature at eps / at the previous eps (None first)
    curve_radius: float  # enclosing radius of the sampled curve
    smooth_bound_ok: bool  # gtan(curve radius) <= 1 / (min curvature of the curve)

    def as_dict(self):
        return dict(self.__dict__)


def interior_grid(theta, m=CONNECTOR_SAMPLES, margin=0.05):
    return np.linspace(-(1.0 - margin) * theta, (1.0 - margin) * theta, m)


def blowup_sweep(P: ConvexPolygon, kappa0: float, eps_list) -> list:
    """Connector curvature and enclosing radius as ``eps`` shrinks."""
    eps_list = [float(e) for e in eps_list]
    if any(e <= 0 for e in eps_list) or any(b >= a for a, b in zip(eps_list, eps_list[1:])):
        raise ValueError("eps_list must be positive and strictly decreasing")
    sf = P.sf
    rows = []
    prev = None
    for eps in eps_list:
        curve = _build(P, kappa0, eps)
        per_vertex = []
        dev = 0.0
        for c in curve.connectors:
            if c is None:
                per_vertex.append(None)
                continue
            phi = interior_grid(c.theta)
            k = np.asarray(c.curvature(phi))
            per_vertex.append(float(k.min()))
            _, L = limit_profile(phi, c.theta)
            dev = max(dev, float(np.max(np.abs(eps * k - L) / L)))
        finite = [k for k in per_vertex if k is not None]
        kmin = min(finite) if finite else math.nan
        pts = curve.sample_points()
        radius = min_disk(sf, pts).radius
        k_curve = min(float(gcot(sf.lam, curve.R + eps)), kmin if finite else math.inf)
        rows.append(
            SweepRow(
                eps=eps,
                min_interior_curvature=kmin,
                per_vertex_min=per_vertex,
                max_profile_deviation=dev,
                doubling_ratio=None if prev is None else kmin / prev,
                curve_radius=radius,
                smooth_bound_ok=bool(gtan(sf.lam, radius) <= 1.0 / k_curve + 1e-9),
            )
        )
        prev = kmin
    return rows


def polygon_radius(P: ConvexPolygon) -> float:
    return circumdisk(P).radius
