"""Summary statistics, gamma fitting, block tables and the CV-independence test."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import specfun
from .errors import DegenerateSampleError, DomainError, SolverError
from .laws import Gamma, GeneralizedGamma, SpacingLaw, empirical_ks, law_moments
from .samples import SpacingSample, make_rng

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _values(sample):
    if isinstance(sample, SpacingSample):
        return sample.spacings
    return np.asarray(sample, dtype=float)


@dataclass(frozen=True)
class SummaryStats:
    count: int
    mean: float
    variance: float
    cv: float
    kappa_cv: float


def summarize(sample) -> SummaryStats:
    """Mean, unbiased variance, CV and kappa = CV^-2 (inf for zero spread)."""
    x = _values(sample)
    if x.size < 2:
        raise DomainError("need at least two values to summarize")
    mean = float(np.mean(x))
    if mean == 0:
        raise DegenerateSampleError("coefficient of variation is undefined for zero mean")
    var = float(np.var(x, ddof=1))
    cv = math.sqrt(var) / mean
    kappa = math.inf if cv == 0 else 1.0 / (cv * cv)
    return SummaryStats(int(x.size), mean, var, cv, kappa)


class FitMethod(enum.Enum):
    MOMENTS = "moments"
    MLE = "mle"
    UNIT_MEAN_VARIANCE = "unitvar"


@dataclass(frozen=True)
class GammaFit:
    nu: float
    kappa: float
    method: FitMethod
    goodness: float
    iterations: int = 0
    score_residual: float = 0.0

    @property
    def law(self):
        return Gamma(self.nu, self.kappa)


def _positive_spread(x):
    if x.size < 2:
        raise DomainError("need at least two values to fit")
    var = float(np.var(x, ddof=1))
    if not var > 0:
        raise DegenerateSampleError("sample variance is zero")
    return float(np.mean(x)), var


def fit_gamma_moments(sample) -> GammaFit:
    """kappa = mean^2 / variance, nu = mean / variance."""
    x = _values(sample)
    mean, var = _positive_spread(x)
    kappa, nu = mean * mean / var, mean / var
    return GammaFit(nu, kappa, FitMethod.MOMENTS, empirical_ks(x, Gamma(nu, kappa).cdf))


def mle_score(kappa, log_mean, mean_log):
    """ln kappa - psi(kappa) - (ln mean - mean ln s); zero at the MLE."""
    return math.log(kappa) - specfun.digamma(kappa) - (log_mean - mean_log)


def fit_gamma_mle(sample, tol=1e-12, max_iter=100) -> GammaFit:
    """Maximum-likelihood gamma fit.

    Newton iteration on ln kappa for ln kappa - psi(kappa) = ln m - mean(ln s),
    started at the moment estimate; nu = kappa / m.
    """
    x = _values(sample)
    if x.size < 2:
        raise DomainError("need at least two values to fit")
    if np.any(x <= 0):
        raise DomainError("maximum likelihood needs strictly positive observations")
    if np.ptp(x) == 0:
        raise SolverError("likelihood has no finite maximizer for a constant sample",
                          {"value": float(x[0]), "count": int(x.size)})
    mean = float(np.mean(x))
    log_mean, mean_log = math.log(mean), float(np.mean(np.log(x)))
    if not log_mean - mean_log > 0:
        raise SolverError("sample spread below floating-point resolution",
                          {"log_mean_minus_mean_log": log_mean - mean_log})
    kappa = mean * mean / float(np.var(x, ddof=1))
    score = mle_score(kappa, log_mean, mean_log)
    for it in range(1, max_iter + 1):
        # d score / d ln kappa = 1 - kappa psi'(kappa) < 0
        slope = 1.0 - kappa * specfun.trigamma(kappa)
        step = -score / slope
        step = max(min(step, 2.0), -2.0)
        kappa *= math.exp(step)
        score = mle_score(kappa, log_mean, mean_log)
        if abs(score) < tol or abs(step) < 1e-15:
            break
    else:
        raise SolverError(f"gamma MLE did not converge in {max_iter} Newton steps",
                          {"kappa": kappa, "score": score})
    nu = kappa / mean
    return GammaFit(nu, kappa, FitMethod.MLE, empirical_ks(x, Gamma(nu, kappa).cdf),
                    iterations=it, score_residual=abs(score))


def fit_unit_mean_gamma_variance(sample) -> GammaFit:
    """Rescale to unit mean; kappa = nu = 1 / variance."""
    x = _values(sample)
    mean, var = _positive_spread(x)
    kappa = mean * mean / var
    return GammaFit(kappa, kappa, FitMethod.UNIT_MEAN_VARIANCE,
                    empirical_ks(x / mean, Gamma(kappa, kappa).cdf))


def unit_mean_kappa_of_law(law: SpacingLaw) -> float:
    """Variance-matched unit-mean gamma exponent of a law, by quadrature."""
    return law_moments(law, 2).unit_mean_kappa


def gamma_shape_std_error(kappa, n, method):
    """Asymptotic standard error of the fitted shape from ``n`` gamma draws."""
    method = FitMethod(method) if not isinstance(method, FitMethod) else method
    if method is FitMethod.MLE:
        return math.sqrt(kappa / (n * (kappa * specfun.trigamma(kappa) - 1.0)))
    return math.sqrt(2.0 * kappa * (kappa + 1.0) / n)


def _golden_section(f, lo, hi, tol):
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def fit_gen_gamma_omega(sample, beta, lo=0.5, hi=4.0, tol=1e-4):
    """Tail exponent omega minimizing the KS distance to GeneralizedGamma(beta, omega).

    Golden-section search on [lo, hi]; returns (omega, ks).  The sample is
    rescaled to unit mean first, as the family is unit-mean by construction.
    """
    x = _values(sample)
    if x.size == 0:
        raise DomainError("empty sample")
    x = np.sort(x / np.mean(x))
    n = x.size
    i = np.arange(1, n + 1)

    def ks(omega):
        F = GeneralizedGamma(beta, omega).cdf(x)
        return float(max(np.max(i / n - F), np.max(F - (i - 1) / n)))

    omega, best = _golden_section(ks, lo, hi, tol)
    if omega - lo < 2 * tol or hi - omega < 2 * tol:
        raise SolverError(f"KS minimum for beta={beta} lies on the search bracket edge",
                          {"omega": omega, "bracket": (lo, hi), "ks": best})
    return omega, best


class BlockScheme(enum.Enum):
    CONSECUTIVE = "consecutive"
    CUMULATIVE = "cumulative"


@dataclass(frozen=True)
class BlockReport:
    rows: tuple
    scheme: BlockScheme
    block_size: int
    grand_mean: float


def block_analysis(spacings, scheme, block_size: int, num_blocks: int) -> BlockReport:
    """Per-block summary statistics after dividing by one grand mean.

    The grand mean is taken over the first ``block_size * num_blocks``
    spacings.  Consecutive blocks are disjoint; cumulative block m is the
    prefix of length m * block_size.
    """
    x = _values(spacings)
    scheme = BlockScheme(scheme) if not isinstance(scheme, BlockScheme) else scheme
    if block_size < 2 or num_blocks < 1:
        raise DomainError("block_size must be >= 2 and num_blocks >= 1")
    need = block_size * num_blocks
    if x.size < need:
        raise DomainError(f"{num_blocks} blocks of {block_size} need {need} spacings, got {x.size}")
    used = x[:need]
    grand = float(np.mean(used))
    if not grand > 0:
        raise DegenerateSampleError("grand mean of spacings is zero")
    z = used / grand
    rows = []
    for k in range(num_blocks):
        if scheme is BlockScheme.CONSECUTIVE:
            block = z[k * block_size:(k + 1) * block_size]
        else:
            block = z[:(k + 1) * block_size]
        rows.append((k + 1, summarize(block)))
    return BlockReport(tuple(rows), scheme, block_size, grand)


@dataclass(frozen=True)
class IndependenceTest:
    correlation: float
    p_value: float
    num_blocks: int
    permutations: int


def hwang_hu_diagnostic(spacings, block_size: int, num_blocks: int | None = None,
                        permutations: int = 10_000, seed: int = 0) -> IndependenceTest:
    """Permutation test of zero correlation between block means and block CVs.

    Independence of sample mean and sample CV characterizes the gamma
    family, so a small p-value is evidence against gamma-distributed data.
    """
    x = _values(spacings)
    if num_blocks is None:
        num_blocks = x.size // block_size
    if num_blocks < 10:
        raise DomainError(f"need at least 10 blocks, got {num_blocks}")
    if block_size < 2 or x.size < block_size * num_blocks:
        raise DomainError(f"need {block_size * num_blocks} values, got {x.size}")
    blocks = x[:block_size * num_blocks].reshape(num_blocks, block_size)
    means = blocks.mean(axis=1)
    if np.any(means == 0):
        raise DegenerateSampleError("a block has zero mean")
    cvs = blocks.std(axis=1, ddof=1) / means
    mc = means - means.mean()
    cc = cvs - cvs.mean()
    denom = math.sqrt(float(mc @ mc) * float(cc @ cc))
    if denom == 0:
        raise DegenerateSampleError("block means or CVs do not vary")
    r = float(mc @ cc) / denom
    rng = make_rng(seed)
    hits = 0
    batch = 1000
    for start in range(0, permutations, batch):
        size = min(batch, permutations - start)
        perm = rng.permuted(np.broadcast_to(cc, (size, num_blocks)), axis=1)
        rp = perm @ mc / denom
        hits += int(np.count_nonzero(np.abs(rp) >= abs(r) * (1 - 1e-12)))
    p = (hits + 1) / (permutations + 1)
    return IndependenceTest(r, p, num_blocks, permutations)
