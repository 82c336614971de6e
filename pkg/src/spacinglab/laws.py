"""Closed-form unit-scale spacing laws.

Covers the Wigner surmise, the two bounds on the GOE spacing CDF, the gamma
family and its unit-mean slice, the generalized gamma family with the
ensemble best-fit parameters, and user-tabulated CDFs.  Each law is an
immutable object with ``pdf``, ``cdf`` and (where meaningful) ``sample``.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate

from . import specfun
from .errors import DomainError, SolverError, UnsupportedLawError
from .samples import SpacingSample, make_rng

PI = math.pi

# Lower bound L(s) = 1 - exp(-A s^2); upper bound U(s) = 1 - exp(-A s^2)(1 - B s^2).
_BOUND_A = PI**2 / 16.0
_BOUND_B = PI**2 / 48.0

KS_GRID_STEP = 1e-3
KS_GRID_MAX = 6.0


def _nonneg(s):
    arr = np.asarray(s, dtype=float)
    if np.any(np.isnan(arr)) or np.any(arr < 0):
        raise DomainError(f"spacing must be >= 0, got {s!r}")
    return arr


def _positive_param(value, name):
    v = float(value)
    if not (math.isfinite(v) and v > 0):
        raise DomainError(f"{name} must be finite and > 0, got {value!r}")
    return v


def _ret(arr, like):
    return float(arr) if np.ndim(like) == 0 else arr


# ---------------------------------------------------------------------------
# Wigner surmise and the GOE bounds


def wigner_cdf(s):
    """W(s) = 1 - exp(-pi s^2 / 4)."""
    x = _nonneg(s)
    return _ret(-np.expm1(-PI * x * x / 4.0), s)


def wigner_pdf(s):
    """w(s) = (pi/2) s exp(-pi s^2 / 4)."""
    x = _nonneg(s)
    return _ret(0.5 * PI * x * np.exp(-PI * x * x / 4.0), s)


def _which(which):
    if which not in ("lower", "upper"):
        raise DomainError(f"which must be 'lower' or 'upper', got {which!r}")
    return which


def goe_bound_cdf(s, which):
    """Lower/upper bound on the GOE spacing CDF.

    lower: 1 - exp(-pi^2 s^2/16); upper: 1 - exp(-pi^2 s^2/16)(1 - pi^2 s^2/48).
    """
    x = _nonneg(s)
    x2 = x * x
    if _which(which) == "lower":
        val = -np.expm1(-_BOUND_A * x2)
    else:
        val = 1.0 - np.exp(-_BOUND_A * x2) * (1.0 - _BOUND_B * x2)
    return _ret(val, s)


def goe_bound_pdf(s, which):
    """Derivative of :func:`goe_bound_cdf`.

    lower: (pi^2 s / 8) exp(-pi^2 s^2/16).
    upper: pi^2 s (64 - pi^2 s^2) / 384 * exp(-pi^2 s^2/16); this is negative
    for s > 8/pi and is returned as is.
    """
    x = _nonneg(s)
    g = np.exp(-_BOUND_A * x * x)
    if _which(which) == "lower":
        val = 2.0 * _BOUND_A * x * g
    else:
        val = PI**2 * x * (64.0 - PI**2 * x * x) / 384.0 * g
    return _ret(val, s)


# ---------------------------------------------------------------------------
# Gamma family


def _gamma_params(nu, kappa):
    return _positive_param(nu, "nu"), _positive_param(kappa, "kappa")


def gamma_logpdf(s, nu, kappa):
    nu, kappa = _gamma_params(nu, kappa)
    x = _nonneg(s)
    if kappa < 1 and np.any(x == 0):
        raise DomainError("gamma density is unbounded at s = 0 for kappa < 1")
    with np.errstate(divide="ignore"):
        logs = np.log(x)
    if kappa == 1.0:
        shape_term = np.zeros_like(x)
    else:
        shape_term = np.where(x > 0, (kappa - 1.0) * logs, -np.inf)
    return kappa * math.log(nu) + shape_term - specfun.log_gamma(kappa) - nu * x


def gamma_pdf(s, nu, kappa):
    """nu^kappa s^(kappa-1) exp(-nu s) / Gamma(kappa), evaluated in log space."""
    return _ret(np.exp(gamma_logpdf(s, nu, kappa)), s)


def gamma_cdf(s, nu, kappa):
    nu, kappa = _gamma_params(nu, kappa)
    x = _nonneg(s)
    return _ret(np.asarray(specfun.reg_lower_incomplete_gamma(kappa, nu * x)), s)


# ---------------------------------------------------------------------------
# Generalized gamma family


def _gen_params(beta, omega):
    b = float(beta)
    if not (math.isfinite(b) and b >= 0):
        raise DomainError(f"beta must be finite and >= 0, got {beta!r}")
    return b, _positive_param(omega, "omega")


def gen_gamma_log_coeffs(beta, omega):
    beta, omega = _gen_params(beta, omega)
    lg2 = specfun.log_gamma((2.0 + beta) / omega)
    lg1 = specfun.log_gamma((1.0 + beta) / omega)
    log_a = math.log(omega) + (beta + 1.0) * lg2 - (beta + 2.0) * lg1
    log_b = omega * (lg2 - lg1)
    return log_a, log_b


def gen_gamma_coeffs(beta, omega):
    """Normalizing pair (a, b) making a s^beta exp(-b s^omega) a unit-mean density."""
    log_a, log_b = gen_gamma_log_coeffs(beta, omega)
    return math.exp(log_a), math.exp(log_b)


def gen_gamma_pdf(s, beta, omega):
    beta, omega = _gen_params(beta, omega)
    log_a, log_b = gen_gamma_log_coeffs(beta, omega)
    x = _nonneg(s)
    with np.errstate(divide="ignore"):
        logs = np.log(x)
    power = np.zeros_like(x) if beta == 0 else np.where(x > 0, beta * logs, -np.inf)
    val = np.exp(log_a + power - math.exp(log_b) * x**omega)
    return _ret(val, s)


def gen_gamma_cdf(s, beta, omega):
    beta, omega = _gen_params(beta, omega)
    _, log_b = gen_gamma_log_coeffs(beta, omega)
    x = _nonneg(s)
    arg = math.exp(log_b) * x**omega
    return _ret(np.asarray(specfun.reg_lower_incomplete_gamma((1.0 + beta) / omega, arg)), s)


# ---------------------------------------------------------------------------
# Law objects


class SpacingLaw:
    """Common surface of all laws: ``pdf``, ``cdf``, ``mean`` hint, ``sample``."""

    name = "law"
    samplable = True

    def pdf(self, s):
        raise NotImplementedError

    def cdf(self, s):
        raise NotImplementedError

    def _draw(self, rng, n):
        raise UnsupportedLawError(f"sampling is not supported for {self.label()}")

    def label(self):
        return self.name

    def tail_end(self, tol=1e-15):
        """Smallest power-of-two-refined s beyond which |1 - cdf| s^4 < tol."""
        s = 1.0
        while abs(1.0 - float(self.cdf(s))) * max(1.0, s) ** 4 >= tol:
            s *= 1.25
            if s > 1e6:
                raise SolverError(f"tail of {self.label()} does not decay", {"s": s})
        return s

    def breakpoints(self):
        return ()


@dataclass(frozen=True)
class Exponential(SpacingLaw):
    name = "exponential"

    def pdf(self, s):
        x = _nonneg(s)
        return _ret(np.exp(-x), s)

    def cdf(self, s):
        x = _nonneg(s)
        return _ret(-np.expm1(-x), s)

    def _draw(self, rng, n):
        return rng.standard_exponential(n)


@dataclass(frozen=True)
class WignerSurmise(SpacingLaw):
    name = "wigner"

    def pdf(self, s):
        return wigner_pdf(s)

    def cdf(self, s):
        return wigner_cdf(s)

    def _draw(self, rng, n):
        u = rng.random(n)
        return np.sqrt(-(4.0 / PI) * np.log1p(-u))


@dataclass(frozen=True)
class GoeLowerBound(SpacingLaw):
    name = "goe-lower"

    def pdf(self, s):
        return goe_bound_pdf(s, "lower")

    def cdf(self, s):
        return goe_bound_cdf(s, "lower")

    def _draw(self, rng, n):
        u = rng.random(n)
        return np.sqrt(-np.log1p(-u) / _BOUND_A)


@dataclass(frozen=True)
class GoeUpperBound(SpacingLaw):
    """Upper bound U; its derivative is a signed density, so no sampler."""

    name = "goe-upper"
    samplable = False

    def pdf(self, s):
        return goe_bound_pdf(s, "upper")

    def cdf(self, s):
        return goe_bound_cdf(s, "upper")

    def breakpoints(self):
        return (8.0 / PI,)


@dataclass(frozen=True)
class Gamma(SpacingLaw):
    nu: float
    kappa: float
    name = "gamma"

    def __post_init__(self):
        _gamma_params(self.nu, self.kappa)

    def label(self):
        return f"gamma(nu={self.nu!r}, kappa={self.kappa!r})"

    def pdf(self, s):
        return gamma_pdf(s, self.nu, self.kappa)

    def cdf(self, s):
        return gamma_cdf(s, self.nu, self.kappa)

    def _draw(self, rng, n):
        return rng.standard_gamma(self.kappa, n) / self.nu


@dataclass(frozen=True)
class UnitMeanGamma(SpacingLaw):
    kappa: float
    name = "unit-gamma"

    def __post_init__(self):
        _positive_param(self.kappa, "kappa")

    @property
    def nu(self):
        return self.kappa

    def label(self):
        return f"unit-gamma(kappa={self.kappa!r})"

    def pdf(self, s):
        return gamma_pdf(s, self.kappa, self.kappa)

    def cdf(self, s):
        return gamma_cdf(s, self.kappa, self.kappa)

    def _draw(self, rng, n):
        return rng.standard_gamma(self.kappa, n) / self.kappa


@dataclass(frozen=True)
class GeneralizedGamma(SpacingLaw):
    beta: float
    omega: float
    name = "gengamma"

    def __post_init__(self):
        _gen_params(self.beta, self.omega)

    def label(self):
        return f"gengamma(beta={self.beta!r}, omega={self.omega!r})"

    @property
    def coeffs(self):
        return gen_gamma_coeffs(self.beta, self.omega)

    def pdf(self, s):
        return gen_gamma_pdf(s, self.beta, self.omega)

    def cdf(self, s):
        return gen_gamma_cdf(s, self.beta, self.omega)

    def _draw(self, rng, n):
        # b s^omega ~ Gamma((1 + beta)/omega, 1)
        _, b = self.coeffs
        t = rng.standard_gamma((1.0 + self.beta) / self.omega, n)
        return (t / b) ** (1.0 / self.omega)


@dataclass(frozen=True, eq=False)
class TabulatedLaw(SpacingLaw):
    """Piecewise-linear CDF through user-supplied nodes (s_i, F_i).

    A node (0, 0) is prepended when the table starts above the origin, and the
    CDF is 1 beyond the last node.
    """

    s: np.ndarray
    F: np.ndarray
    source: str = "table"
    name = "table"

    def __post_init__(self):
        s = np.asarray(self.s, dtype=float)
        F = np.asarray(self.F, dtype=float)
        if s.ndim != 1 or s.shape != F.shape or s.size < 2:
            raise DomainError("tabulated CDF needs two equal-length columns of >= 2 rows")
        if np.any(np.diff(s) <= 0) or np.any(np.diff(F) <= 0):
            raise DomainError("tabulated CDF columns must be strictly increasing")
        if s[0] < 0 or F[0] < 0 or F[-1] > 1 + 1e-12:
            raise DomainError("tabulated CDF must have s >= 0 and 0 <= F <= 1")
        if s[0] > 0:
            s = np.concatenate([[0.0], s])
            F = np.concatenate([[0.0], F])
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "F", F)

    def label(self):
        return f"table({self.source})"

    def cdf(self, s):
        x = _nonneg(s)
        return _ret(np.interp(x, self.s, self.F, left=0.0, right=1.0), s)

    def pdf(self, s):
        x = _nonneg(s)
        slopes = np.diff(self.F) / np.diff(self.s)
        idx = np.searchsorted(self.s, x, side="right") - 1
        inside = (idx >= 0) & (idx < slopes.size)
        val = np.where(inside, slopes[np.clip(idx, 0, slopes.size - 1)], 0.0)
        return _ret(val, s)

    def tail_end(self, tol=1e-15):
        return float(self.s[-1])

    def breakpoints(self):
        return tuple(self.s[1:-1])

    def raw_moment(self, k):
        # uniform density on each segment; mass beyond the table is ignored
        a, b = self.s[:-1], self.s[1:]
        mass = np.diff(self.F)
        return float(np.sum(mass * (b ** (k + 1) - a ** (k + 1)) / ((k + 1) * (b - a))))

    def _draw(self, rng, n):
        u = rng.random(n) * self.F[-1]
        return np.interp(u, self.F, self.s)


# ---------------------------------------------------------------------------
# Ensemble classes with their generalized-gamma best fits


class EnsembleClass(enum.Enum):
    """Ensemble with its Dyson index and generalized-gamma best-fit triple.

    The (beta, omega, variance) triples are published fits, accurate to about
    0.1% of the exact laws; they are proxies, not the exact spacing laws.
    """

    POISSON = ("poisson", 0, 0.0, 1.0, 1.0)
    GOE = ("goe", 1, 1.0, 1.886, 0.2856)
    GUE = ("gue", 2, 2.0, 1.973, 0.1868)
    GSE = ("gse", 4, 4.0, 2.007, 0.1100)

    def __init__(self, label, dyson_index, caer_beta, caer_omega, caer_variance):
        self.label = label
        self.dyson_index = dyson_index
        self.caer_beta = caer_beta
        self.caer_omega = caer_omega
        self.caer_variance = caer_variance

    @classmethod
    def parse(cls, name):
        for member in cls:
            if member.label == str(name).lower():
                return member
        raise DomainError(f"unknown ensemble {name!r}")

    def caer_law(self):
        return GeneralizedGamma(self.caer_beta, self.caer_omega)


# ---------------------------------------------------------------------------
# Moments, sampling and distances


@dataclass(frozen=True)
class LawMoments:
    """Raw moments ``raw[k] = int s^k pdf(s) ds`` (``raw[0]`` is total mass)."""

    raw: tuple
    abserr: tuple

    @property
    def mean(self):
        return self.raw[1] / self.raw[0]

    @property
    def variance(self):
        m0, m1, m2 = self.raw[:3]
        return m2 / m0 - (m1 / m0) ** 2

    @property
    def cv(self):
        return math.sqrt(self.variance) / self.mean

    @property
    def unit_mean_kappa(self):
        """1 / variance after rescaling to unit mean, i.e. CV^-2."""
        return self.mean**2 / self.variance


def law_moments(law: SpacingLaw, max_order: int = 2, tol: float = 1e-9) -> LawMoments:
    """Raw moments of order 0..max_order by adaptive Gauss-Kronrod quadrature."""
    if not 0 <= max_order <= 4:
        raise DomainError("max_order must be in 0..4")
    if isinstance(law, TabulatedLaw):
        raw = tuple(law.raw_moment(k) for k in range(max_order + 1))
        return LawMoments(raw, (0.0,) * len(raw))
    upper = law.tail_end()
    points = sorted({*np.linspace(0.0, upper, 9)[1:-1], *[p for p in law.breakpoints() if 0 < p < upper]})
    raw, errs = [], []
    for k in range(max_order + 1):
        with warnings.catch_warnings():
            warnings.simplefilter("error", integrate.IntegrationWarning)
            try:
                val, err = integrate.quad(
                    lambda s, k=k: s**k * law.pdf(s),
                    0.0,
                    upper,
                    points=points,
                    limit=400,
                    epsabs=1e-13,
                    epsrel=1e-13,
                )
            except integrate.IntegrationWarning as exc:
                raise SolverError(
                    f"quadrature of moment {k} for {law.label()} did not converge: {exc}",
                    {"order": k},
                ) from exc
        if err > tol:
            raise SolverError(
                f"moment {k} of {law.label()}: error estimate {err:.3g} exceeds {tol:.3g}",
                {"order": k, "abserr": err},
            )
        raw.append(val)
        errs.append(err)
    return LawMoments(tuple(raw), tuple(errs))


def law_sample(law: SpacingLaw, n: int, seed: int) -> SpacingSample:
    """``n`` independent draws from ``law``; deterministic in ``seed``."""
    if n < 1:
        raise DomainError("n must be >= 1")
    if not law.samplable:
        raise UnsupportedLawError(f"{law.label()} has a signed density and cannot be sampled")
    rng = make_rng(seed)
    draws = np.asarray(law._draw(rng, int(n)), dtype=float)
    return SpacingSample(
        draws,
        grand_mean_used=1.0,
        extraction_mode="law",
        provenance=f"law={law.label()} n={n} seed={seed}",
    )


def _cdf_of(obj) -> Callable:
    if isinstance(obj, SpacingLaw):
        return obj.cdf
    if callable(obj):
        return obj
    raise DomainError(f"expected a law or a CDF callable, got {type(obj).__name__}")


def default_ks_grid():
    return np.linspace(0.0, KS_GRID_MAX, int(round(KS_GRID_MAX / KS_GRID_STEP)) + 1)


def ks_distance(cdf_a, cdf_b, grid=None) -> float:
    """sup |F_a - F_b| over a sorted grid (default [0, 6] in steps of 1e-3)."""
    grid = default_ks_grid() if grid is None else np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise DomainError("empty grid")
    if np.any(np.diff(grid) < 0):
        raise DomainError("grid must be sorted")
    fa = np.asarray(_cdf_of(cdf_a)(grid), dtype=float)
    fb = np.asarray(_cdf_of(cdf_b)(grid), dtype=float)
    return float(np.max(np.abs(fa - fb)))


def empirical_ks(sample, cdf) -> float:
    """One-sample Kolmogorov-Smirnov statistic D_n of ``sample`` against ``cdf``."""
    values = sample.spacings if isinstance(sample, SpacingSample) else np.asarray(sample, dtype=float)
    if values.size == 0:
        raise DomainError("empty sample")
    x = np.sort(values)
    n = x.size
    F = np.asarray(_cdf_of(cdf)(x), dtype=float)
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - F), np.max(F - (i - 1) / n)))


# ---------------------------------------------------------------------------
# Name lookup used by the command line


_NAMED = {
    "exponential": (Exponential, 0),
    "poisson": (Exponential, 0),
    "wigner": (WignerSurmise, 0),
    "goe-lower": (GoeLowerBound, 0),
    "goe-upper": (GoeUpperBound, 0),
    "gamma": (Gamma, 2),
    "unit-gamma": (UnitMeanGamma, 1),
    "gengamma": (GeneralizedGamma, 2),
}
_CAER = {"goe-caer": EnsembleClass.GOE, "gue-caer": EnsembleClass.GUE, "gse-caer": EnsembleClass.GSE}

LAW_NAMES = tuple(_NAMED) + tuple(_CAER)


def law_from_name(name: str, params=()) -> SpacingLaw:
    """Build a law from a name and parameters, or from ``"name:p1,p2"``."""
    name = name.strip().lower()
    if ":" in name:
        name, _, tail = name.partition(":")
        params = tuple(p for p in tail.split(",") if p)
    params = tuple(float(p) for p in params)
    if name in _CAER:
        if params:
            raise DomainError(f"law {name!r} takes no parameters")
        return _CAER[name].caer_law()
    if name not in _NAMED:
        raise DomainError(f"unknown law {name!r}; choose from {', '.join(LAW_NAMES)}")
    cls, nparams = _NAMED[name]
    if len(params) != nparams:
        raise DomainError(f"law {name!r} takes {nparams} parameter(s), got {len(params)}")
    return cls(*params)
