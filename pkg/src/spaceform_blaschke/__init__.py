"""Circumradius bounds for curvature-bounded convex polygons in the sphere,
the plane and the hyperbolic plane."""

from .blaschke import Definition, BlaschkeReport, bound_radius, bound_radius_flat, convergence_table, verify
from .enclosing_disk import GeodesicDisk, min_disk, min_disk_oracle
from .errors import GeometryError
from .geom import PolarFrame, SpaceForm
from .lambda_trig import arc_gtan, gcos, gcot, gsin, gtan
from .polygon import ConvexPolygon, curvature_report, digon, from_vertices, random_convex, regular_inscribed
from .smoothing import assemble, blowup_sweep, connector_coefficients, polar_curvature

__all__ = [
    "BlaschkeReport",
    "ConvexPolygon",
    "Definition",
    "GeodesicDisk",
    "GeometryError",
    "PolarFrame",
    "SpaceForm",
    "arc_gtan",
    "assemble",
    "blowup_sweep",
    "bound_radius",
    "bound_radius_flat",
    "connector_coefficients",
    "convergence_table",
    "curvature_report",
    "digon",
    "from_vertices",
    "gcos",
    "gcot",
    "gsin",
    "gtan",
    "min_disk",
    "min_disk_oracle",
    "polar_curvature",
    "random_convex",
    "regular_inscribed",
    "verify",
]
