"""Circumradius bounds for curvature-bounded convex polygons.

With ``kappa0`` the smallest intrinsic vertex curvature of a convex polygon,
its circumradius ``R`` satisfies ``gtan(R) <= pi / (2 kappa0)``, with equality
exactly for the doubly covered segment.  With the flat vertex curvature
instead, the bound becomes ``R <= pi / (2 kappa0)`` in the plane and
``gtan(R) <= (gtan(e) / e) * pi / (2 kappa0)`` otherwise, where ``e`` bounds
the half-sides from above (sphere) or from below (hyperbolic plane, which
also requires ``kappa0 > sqrt(-lam)``).

For ``lam < 0`` the bound is only meaningful when ``pi / (2 kappa0)`` lies
inside the range of ``gtan``, i.e. ``kappa0 > (pi/2) sqrt(-lam)``; otherwise
it exceeds ``1/sqrt(-lam) > gtan(R)`` for every ``R`` and holds trivially.
:func:`verify` evaluates the inequality either way and reports which case
applies in ``hypothesis``.
"""

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, FrakEInconsistent, InvalidFrakE
from .geom import SpaceForm
from .lambda_trig import arc_gtan, gcot, gsin, gtan
from .polygon import ConvexPolygon, circumdisk, curvature_report, regular_inscribed, vertex_curvature

HOLD_TOL = 1e-9
NEAR_EQUALITY = 1e-6
DIGON_ANGLE_TOL = 1e-6


class Definition(enum.Enum):
    TA = "ta"
    FLAT = "flat"


def bound_radius(lam: float, kappa0: float) -> float:
    """Largest circumradius allowed for intrinsic curvature ``kappa0``."""
    if not kappa0 > 0:
        raise DomainError(f"kappa0 must be positive, got {kappa0}")
    return arc_gtan(lam, math.pi / (2.0 * kappa0))


def flat_bound_factor(lam: float, frak_e: float) -> float:
    """``gtan(e) / e``, the correction between the two curvature definitions."""
    return float(gtan(lam, frak_e)) / frak_e


def bound_radius_flat(lam: float, kappa0: float, frak_e=None) -> float:
    """Largest circumradius allowed for flat-definition curvature ``kappa0``."""
    if not kappa0 > 0:
        raise DomainError(f"kappa0 must be positive, got {kappa0}")
    if lam == 0:
        return math.pi / (2.0 * kappa0)
    _check_frak_e(lam, kappa0, frak_e)
    return arc_gtan(lam, flat_bound_factor(lam, frak_e) * math.pi / (2.0 * kappa0))


def _check_frak_e(lam, kappa0, frak_e):
    if frak_e is None or not frak_e > 0:
        raise InvalidFrakE(f"a positive side parameter is required for lam={lam}")
    if lam > 0 and 2.0 * frak_e >= math.pi / math.sqrt(lam):
        raise InvalidFrakE(f"2e={2 * frak_e} must stay below pi/sqrt(lam)")
    if lam < 0 and not kappa0 > math.sqrt(-lam):
        raise DomainError(f"kappa0={kappa0} must exceed sqrt(-lam)={math.sqrt(-lam)}")


@dataclass
class BlaschkeReport:
    lam: float
    definition: Definition
    kappa0: float
    circumradius: float
    value: float  # left-hand side: gtan(R), or R in the flat plane case
    bound: float
    margin: float
    holds: bool
    hypothesis: bool  # bound inside the range of gtan (always true for lam >= 0)
    near_equality: bool
    is_digon: bool
    frak_e: float = None
    notes: list = field(default_factory=list)

    def as_dict(self):
        d = dict(self.__dict__)
        d["definition"] = self.definition.value
        return d


def default_frak_e(P: ConvexPolygon) -> float:
    """Tightest admissible side parameter: max half-side on the sphere, min otherwise."""
    if P.sf.lam > 0:
        return float(P.side_lengths.max()) / 2.0
    return float(P.side_lengths.min()) / 2.0


def verify(P: ConvexPolygon, definition=Definition.TA, frak_e=None, tol=HOLD_TOL) -> BlaschkeReport:
    """Evaluate the circumradius bound on one polygon.

    ``kappa0`` is always the polygon's own minimum vertex curvature.
    """
    definition = Definition(definition)
    lam = P.sf.lam
    rep = curvature_report(P)
    R = circumdisk(P).radius
    notes = []
    if definition is Definition.TA:
        kappa0 = rep.kappa0
        bound = math.pi / (2.0 * kappa0)
        value = float(gtan(lam, R))
    else:
        kappa0 = rep.kappa0_flat
        bound = math.pi / (2.0 * kappa0)
        if lam == 0:
            value = R
        else:
            if frak_e is None:
                raise InvalidFrakE("the flat definition needs a side parameter when lam != 0")
            half = P.side_lengths / 2.0
            if lam > 0 and np.any(half > frak_e * (1 + 1e-12)):
                raise FrakEInconsistent(f"a half-side exceeds e={frak_e}")
            if lam < 0 and np.any(half < frak_e * (1 - 1e-12)):
                raise FrakEInconsistent(f"a half-side is shorter than e={frak_e}")
            if lam > 0 and 2.0 * frak_e >= math.pi / math.sqrt(lam):
                raise InvalidFrakE(f"2e={2 * frak_e} must stay below pi/sqrt(lam)")
            bound *= flat_bound_factor(lam, frak_e)
            value = float(gtan(lam, R))
    hypothesis = True
    if lam < 0 and bound * math.sqrt(-lam) >= 1.0:
        hypothesis = False
        notes.append("bound is outside the range of gtan; it holds trivially")
    if definition is Definition.FLAT and lam < 0 and not kappa0 > math.sqrt(-lam):
        hypothesis = False
        notes.append("kappa0 <= sqrt(-lam): side-parameter bound not covered")
    margin = bound - value
    near = margin < NEAR_EQUALITY
    is_digon = P.degenerate or bool(np.all(P.interior_angles < DIGON_ANGLE_TOL))
    if near and not is_digon:
        notes.append("near-equality on a polygon that is not a digon")
    return BlaschkeReport(
        lam=lam,
        definition=definition,
        kappa0=kappa0,
        circumradius=R,
        value=value,
        bound=bound,
        margin=margin,
        holds=margin >= -tol,
        hypothesis=hypothesis,
        near_equality=near,
        is_digon=is_digon,
        frak_e=frak_e,
        notes=notes,
    )


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    kappa_polygon: float  # vertex curvature of the constructed polygon
    kappa_closed: float  # closed form from the right triangle (center, midpoint, vertex)
    limit: float
    error: float
    path_gap: float


def regular_vertex_curvature(lam: float, R: float, n: int) -> float:
    """Vertex curvature of the regular inscribed n-gon without building it.

    In the right triangle formed by the center, a side midpoint and a vertex,
    ``gsin(l/2) = gsin(R) sin(pi/n)`` and ``gtan(l/2) = gtan(R) cos(B/2)`` for
    interior angle ``B``, so the curvature is
    ``(pi - B) / (2 gtan(l/2)) = asin(x) / (x gtan(R))`` with
    ``x = gtan(l/2) / gtan(R)``.
    """
    s_half = gsin(lam, R) * math.sin(math.pi / n)
    t_half = s_half / math.sqrt(1.0 - lam * s_half * s_half)
    x = t_half / float(gtan(lam, R))
    return math.asin(x) / t_half


def convergence_table(lam: float, R: float, n_list) -> list:
    """Vertex curvature of inscribed regular n-gons against the circle's curvature."""
    sf = SpaceForm(lam)
    limit = float(gcot(lam, R))
    rows = []
    for n in n_list:
        P = regular_inscribed(sf, R, n)
        k_poly = vertex_curvature(P, 0)
        k_closed = regular_vertex_curvature(lam, R, n)
        rows.append(
            ConvergenceRow(
                n=int(n),
                kappa_polygon=k_poly,
                kappa_closed=k_closed,
                limit=limit,
                error=abs(k_poly - limit),
                path_gap=abs(k_poly - k_closed),
            )
        )
    return rows
