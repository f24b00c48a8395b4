"""Generalized trigonometric functions of the surfaces of constant curvature.

For a curvature constant ``lam`` the functions interpolate between the
circular (``lam > 0``), linear (``lam == 0``) and hyperbolic (``lam < 0``)
cases::

    gsin(lam, t) = sin(sqrt(lam) t) / sqrt(lam)       lam > 0
                 = t                                  lam = 0
                 = sinh(sqrt(-lam) t) / sqrt(-lam)    lam < 0

and similarly for ``gcos``.  ``gtan = gsin / gcos`` and ``gcot`` is its
reciprocal.  Near ``lam * t**2 == 0`` the truncated power series is used so the
functions are continuous in ``lam`` to machine precision.

``lam`` is always a scalar; ``t`` may be a float or a numpy array.
"""

import math

import numpy as np

from .errors import DomainError, PoleError

SERIES_THRESHOLD = 1e-8
POLE_TOL = 1e-14


def _series_sin(t, x):
    # t * (1 - x/6 + x^2/120 - x^3/5040), x = lam * t^2
    return t * (1.0 - x / 6.0 * (1.0 - x / 20.0 * (1.0 - x / 42.0)))


def _series_cos(x):
    return 1.0 - x / 2.0 * (1.0 - x / 12.0 * (1.0 - x / 30.0))


def _series_atan(x, y):
    # x * (1 - y/3 + y^2/5 - y^3/7), y = lam * x^2
    return x * (1.0 - y * (1.0 / 3.0 - y * (1.0 / 5.0 - y / 7.0)))


def gsin(lam, t):
    lam = float(lam)
    if np.ndim(t) == 0:
        t = float(t)
        x = lam * t * t
        if abs(x) < SERIES_THRESHOLD:
            return _series_sin(t, x)
        if lam > 0:
            r = math.sqrt(lam)
            return math.sin(r * t) / r
        r = math.sqrt(-lam)
        return math.sinh(r * t) / r
    t = np.asarray(t, dtype=float)
    x = lam * t * t
    if lam > 0:
        r = math.sqrt(lam)
        exact = np.sin(r * t) / r
    elif lam < 0:
        r = math.sqrt(-lam)
        exact = np.sinh(r * t) / r
    else:
        return t.copy()
    return np.where(np.abs(x) < SERIES_THRESHOLD, _series_sin(t, x), exact)


def gcos(lam, t):
    lam = float(lam)
    if np.ndim(t) == 0:
        t = float(t)
        x = lam * t * t
        if abs(x) < SERIES_THRESHOLD:
            return _series_cos(x)
        if lam > 0:
            return math.cos(math.sqrt(lam) * t)
        return math.cosh(math.sqrt(-lam) * t)
    t = np.asarray(t, dtype=float)
    x = lam * t * t
    if lam > 0:
        exact = np.cos(math.sqrt(lam) * t)
    elif lam < 0:
        exact = np.cosh(math.sqrt(-lam) * t)
    else:
        return np.ones_like(t)
    return np.where(np.abs(x) < SERIES_THRESHOLD, _series_cos(x), exact)


def gtan(lam, t):
    """``gsin / gcos``; raises :class:`PoleError` where ``gcos`` vanishes."""
    c = gcos(lam, t)
    if np.any(np.abs(c) < POLE_TOL):
        raise PoleError(f"gtan pole: lam={lam}, t={t}")
    return gsin(lam, t) / c


def gcot(lam, t):
    """``gcos / gsin``, the curvature of a geodesic circle of radius ``t``.

    ``t = 0`` is a pole and raises rather than returning infinity.
    """
    s = gsin(lam, t)
    if np.any(np.abs(s) < POLE_TOL):
        raise PoleError(f"gcot pole: lam={lam}, t={t}")
    return gcos(lam, t) / s


def arc_gtan(lam, x):
    """Inverse of :func:`gtan` on its principal branch.

    For ``lam < 0`` the tangent is bounded by ``1/sqrt(-lam)`` and values at
    or beyond the bound raise :class:`DomainError`.
    """
    lam = float(lam)
    x = float(x)
    y = lam * x * x
    if lam < 0 and math.sqrt(-lam) * abs(x) >= 1.0:
        raise DomainError(
            f"arc_gtan: |x|={abs(x)} >= 1/sqrt(|lam|)={1 / math.sqrt(-lam)}"
        )
    if abs(y) < SERIES_THRESHOLD:
        return _series_atan(x, y)
    if lam > 0:
        r = math.sqrt(lam)
        return math.atan(r * x) / r
    r = math.sqrt(-lam)
    return math.atanh(r * x) / r


def half_pi_radius(lam):
    """``pi / (2 sqrt(lam))`` for ``lam > 0`` (quarter great circle), else inf."""
    return math.pi / (2.0 * math.sqrt(lam)) if lam > 0 else math.inf
