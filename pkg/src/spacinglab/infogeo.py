"""Gamma manifold: affine immersion and arc length along the kappa coordinate."""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import integrate

from . import specfun
from .errors import DomainError, SolverError

# Below this the integrand ~ 1/kappa makes the arc length blow up; refuse.
MIN_KAPPA = 1e-3


@dataclass(frozen=True)
class GammaPoint:
    nu: float
    kappa: float

    def __post_init__(self):
        for name in ("nu", "kappa"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be finite and > 0, got {v!r}")


@dataclass(frozen=True)
class ImmersionPoint:
    x: float
    y: float
    z: float


def immerse(p: GammaPoint) -> ImmersionPoint:
    """(nu, kappa) -> (nu, kappa, ln Gamma(kappa) - kappa ln nu)."""
    if not isinstance(p, GammaPoint):
        p = GammaPoint(*p)
    return ImmersionPoint(p.nu, p.kappa, specfun.log_gamma(p.kappa) - p.kappa * math.log(p.nu))


def arclength_integrand(kappa):
    """sqrt(psi'(kappa) - 1/kappa)."""
    return math.sqrt(specfun.trigamma(kappa) - 1.0 / kappa)


def kappa_arclength(a: float, b: float) -> float:
    """Information arc length along the kappa coordinate between a and b."""
    for v in (a, b):
        if not (math.isfinite(v) and v >= MIN_KAPPA):
            raise DomainError(f"kappa endpoints must be finite and >= {MIN_KAPPA}, got {v!r}")
    lo, hi = min(a, b), max(a, b)
    if lo == hi:
        return 0.0
    val, err = integrate.quad(arclength_integrand, lo, hi, epsabs=1e-12, epsrel=1e-12, limit=200)
    if err > 1e-9:
        raise SolverError("arc-length quadrature did not reach 1e-9", {"abserr": err, "a": a, "b": b})
    return val


def distance_from_randomness(kappa: float) -> float:
    """Arc length from the exponential (Poisson) line kappa = 1."""
    return kappa_arclength(1.0, kappa)
