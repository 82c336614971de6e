"""Real special functions: log-gamma, digamma, trigamma, regularized P(a, x).

Every function accepts a scalar or an array and returns the same shape
(a Python float for scalar input).
"""

import math

import numpy as np

from .errors import DomainError, SolverError

_EPS = np.finfo(float).eps
_TINY = 1e-300

# Recurrence pushes arguments up to this point before the asymptotic series.
_ASYMPTOTIC_FROM = 10.0

# Bernoulli-number coefficients B_{2k} / (2k), k = 1..7
_DIGAMMA_SERIES = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
)
# B_{2k}, k = 1..7
_TRIGAMMA_SERIES = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
)

_MAX_ITER = 2000


def _positive(x, name="x"):
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0):
        raise DomainError(f"{name} must be finite and > 0, got {x!r}")
    return arr


def _out(arr, scalar):
    return float(arr) if scalar else arr


_lgamma_vec = np.vectorize(math.lgamma, otypes=[float])


def log_gamma(x):
    """ln Gamma(x) for x > 0."""
    arr = _positive(x)
    if arr.ndim == 0:
        return math.lgamma(float(arr))
    return _lgamma_vec(arr)


def _shift_up(arr, power):
    """Shift ``arr`` to >= _ASYMPTOTIC_FROM; return shifted values and the
    accumulated sum of ``1 / x**power`` over the skipped points."""
    z = np.array(arr, dtype=float, copy=True)
    acc = np.zeros_like(z)
    low = z < _ASYMPTOTIC_FROM
    while np.any(low):
        acc[low] += 1.0 / z[low] ** power
        z[low] += 1.0
        low = z < _ASYMPTOTIC_FROM
    return z, acc


def digamma(x):
    """psi(x) = d/dx ln Gamma(x) for x > 0."""
    arr = _positive(x)
    z, acc = _shift_up(arr, 1)
    inv2 = 1.0 / (z * z)
    series = 0.0
    for c in reversed(_DIGAMMA_SERIES):
        series = (series + c) * inv2
    res = np.log(z) - 0.5 / z - series - acc
    return _out(res, arr.ndim == 0)


def trigamma(x):
    """psi'(x) for x > 0."""
    arr = _positive(x)
    z, acc = _shift_up(arr, 2)
    inv2 = 1.0 / (z * z)
    series = 0.0
    for c in reversed(_TRIGAMMA_SERIES):
        series = (series + c) * inv2
    res = 1.0 / z + 0.5 * inv2 + series / z + acc
    return _out(res, arr.ndim == 0)


def reg_lower_incomplete_gamma(a, x):
    """Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).

    Power series below ``x < a + 1``, Lentz continued fraction for the
    complement above it.  ``a`` and ``x`` broadcast against each other.
    """
    a_arr = _positive(a, "a")
    x_arr = np.asarray(x, dtype=float)
    if np.any(np.isnan(x_arr)) or np.any(x_arr < 0):
        raise DomainError(f"x must be >= 0, got {x!r}")
    scalar = a_arr.ndim == 0 and x_arr.ndim == 0
    a_b, x_b = np.broadcast_arrays(a_arr, x_arr)
    a_b = a_b.astype(float).ravel()
    x_b = x_b.astype(float).ravel()
    out = np.zeros_like(x_b)

    inf = np.isinf(x_b)
    out[inf] = 1.0
    pos = (x_b > 0) & ~inf
    ser = pos & (x_b < a_b + 1.0)
    cf = pos & ~ser
    with np.errstate(under="ignore"):
        if np.any(ser):
            out[ser] = _p_series(a_b[ser], x_b[ser])
        if np.any(cf):
            out[cf] = 1.0 - _q_continued_fraction(a_b[cf], x_b[cf])
    np.clip(out, 0.0, 1.0, out=out)
    return _out(out.reshape(np.broadcast(a_arr, x_arr).shape), scalar)


def _log_prefactor(a, x):
    return a * np.log(x) - x - _lgamma_vec(a)


def _p_series(a, x):
    ap = a.copy()
    term = 1.0 / a
    total = term.copy()
    active = np.ones(a.shape, dtype=bool)
    for _ in range(_MAX_ITER):
        ap[active] += 1.0
        term[active] *= x[active] / ap[active]
        total[active] += term[active]
        active &= np.abs(term) > np.abs(total) * _EPS
        if not np.any(active):
            break
    else:
        raise SolverError(
            "incomplete gamma series did not converge",
            {"a": a[active][:5].tolist(), "x": x[active][:5].tolist()},
        )
    return total * np.exp(_log_prefactor(a, x))


def _q_continued_fraction(a, x):
    b = x + 1.0 - a
    c = np.full(a.shape, 1.0 / _TINY)
    d = 1.0 / b
    h = d.copy()
    active = np.ones(a.shape, dtype=bool)
    for i in range(1, _MAX_ITER + 1):
        an = -i * (i - a)
        b = b + 2.0
        d_new = an * d + b
        d_new = np.where(np.abs(d_new) < _TINY, _TINY, d_new)
        c_new = b + an / c
        c_new = np.where(np.abs(c_new) < _TINY, _TINY, c_new)
        d_new = 1.0 / d_new
        delta = d_new * c_new
        # converged entries are frozen
        d = np.where(active, d_new, d)
        c = np.where(active, c_new, c)
        h = np.where(active, h * delta, h)
        active &= np.abs(delta - 1.0) > _EPS
        if not np.any(active):
            break
    else:
        raise SolverError(
            "incomplete gamma continued fraction did not converge",
            {"a": a[active][:5].tolist(), "x": x[active][:5].tolist()},
        )
    return np.exp(_log_prefactor(a, x)) * h
