"""Gaussian ensembles: matrix sampling, spectra and bulk spacing extraction.

Entry laws (all zero-mean Gaussian):

    GOE  diagonal sd 1,        off-diagonal sd 1/sqrt(2)
    GUE  diagonal sd 1/sqrt(2), real and imaginary off-diagonal parts sd 1/2
    GSE  diagonal sd 1/2,      the four off-diagonal quaternion parts sd 1/(2 sqrt(2))

With these conventions the off-diagonal total variance is 1/2 in every class,
so the spectrum fills the semicircle of radius sqrt(2 n).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SolverError
from .jacobi import collapse_degenerate, jacobi_eigh, real_embedding
from .laws import EnsembleClass
from .samples import SpacingSample, make_rng

ENTRY_STD = {
    EnsembleClass.GOE: {"diag": 1.0, "off": 1.0 / math.sqrt(2.0)},
    EnsembleClass.GUE: {"diag": 1.0 / math.sqrt(2.0), "off": 0.5},
    EnsembleClass.GSE: {"diag": 0.5, "off": 1.0 / (2.0 * math.sqrt(2.0))},
}

# Entries per matrix drawn before switching to a fresh stream.
_CHUNK_ENTRIES = 2**20


class SpacingMode(enum.Enum):
    ALL = "all"
    CENTRAL = "central"
    UNFOLDED = "unfolded"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise DomainError(f"unknown spacing mode {value!r}") from None


@dataclass(frozen=True)
class EnsembleSpec:
    ensemble: EnsembleClass
    n: int

    def __post_init__(self):
        if isinstance(self.ensemble, str):
            object.__setattr__(self, "ensemble", EnsembleClass.parse(self.ensemble))
        if int(self.n) != self.n or self.n < 2:
            raise DomainError(f"matrix dimension must be an integer >= 2, got {self.n}")

    @property
    def entry_std(self):
        if self.ensemble is EnsembleClass.POISSON:
            raise DomainError("the Poisson control has no matrix entries")
        return ENTRY_STD[self.ensemble]

    @property
    def embedded_size(self):
        """Side of the complex matrix that carries the spectrum."""
        return 2 * self.n if self.ensemble is EnsembleClass.GSE else self.n


@dataclass(frozen=True, eq=False)
class SampledMatrix:
    """Independent entries of one ensemble member (upper triangle only).

    ``upper`` is real for GOE, complex for GUE, and has shape (2, m) for GSE
    holding the z and w off-diagonal entries of the quaternion blocks.
    """

    ensemble: EnsembleClass
    n: int
    diag: np.ndarray
    upper: np.ndarray

    def dense(self):
        """GOE: real n x n; GUE: complex n x n; GSE: complex 2n x 2n."""
        return _dense_batch(self.ensemble, self.n, self.diag[None], self.upper[None])[0]


def _draw_entries(ensemble, n, count, rng):
    std = ENTRY_STD[ensemble]
    m = n * (n - 1) // 2
    diag = rng.normal(0.0, std["diag"], (count, n))
    if ensemble is EnsembleClass.GOE:
        upper = rng.normal(0.0, std["off"], (count, m))
    elif ensemble is EnsembleClass.GUE:
        parts = rng.normal(0.0, std["off"], (count, m, 2))
        upper = parts[..., 0] + 1j * parts[..., 1]
    else:
        parts = rng.normal(0.0, std["off"], (count, 2, m, 2))
        upper = parts[..., 0] + 1j * parts[..., 1]
    return diag, upper


def _dense_batch(ensemble, n, diag, upper):
    count = diag.shape[0]
    iu = np.triu_indices(n, 1)
    di = np.arange(n)
    if ensemble is EnsembleClass.GOE:
        X = np.zeros((count, n, n))
        X[:, iu[0], iu[1]] = upper
        X[:, iu[1], iu[0]] = upper
        X[:, di, di] = diag
        return X
    if ensemble is EnsembleClass.GUE:
        X = np.zeros((count, n, n), dtype=complex)
        X[:, iu[0], iu[1]] = upper
        X[:, iu[1], iu[0]] = upper.conj()
        X[:, di, di] = diag
        return X
    Z = np.zeros((count, n, n), dtype=complex)
    Z[:, iu[0], iu[1]] = upper[:, 0]
    Z[:, iu[1], iu[0]] = upper[:, 0].conj()
    Z[:, di, di] = diag
    W = np.zeros((count, n, n), dtype=complex)
    W[:, iu[0], iu[1]] = upper[:, 1]
    W[:, iu[1], iu[0]] = -upper[:, 1]
    top = np.concatenate([Z, W], axis=2)
    bottom = np.concatenate([-W.conj(), Z.conj()], axis=2)
    return np.concatenate([top, bottom], axis=1)


def _as_rng(rng_state):
    if isinstance(rng_state, np.random.Generator):
        return rng_state
    return make_rng(int(rng_state))


def sample_matrix(spec: EnsembleSpec, rng_state) -> SampledMatrix:
    """Draw one matrix; ``rng_state`` is a Generator or an integer seed."""
    if spec.ensemble is EnsembleClass.POISSON:
        raise DomainError("the Poisson control has no matrix to sample")
    diag, upper = _draw_entries(spec.ensemble, spec.n, 1, _as_rng(rng_state))
    return SampledMatrix(spec.ensemble, spec.n, diag[0], upper[0])


def trace_of_square(m: SampledMatrix) -> float:
    """Tr X^2; for GSE the quaternion trace, half that of the 2n x 2n embedding."""
    d2 = float(np.sum(m.diag**2))
    off2 = float(np.sum(np.abs(m.upper) ** 2))
    return d2 + 2.0 * off2


def log_density(m: SampledMatrix) -> float:
    """Exponent -Tr(X^2)/2 of the trace-form density; normalizer left unevaluated."""
    return -0.5 * trace_of_square(m)


def trace_form_log_density(m: SampledMatrix) -> float:
    """-(beta/2) Tr X^2 with the Dyson index beta = 1, 2, 4.

    This is the exponent that matches the entry laws above for every class;
    it coincides with :func:`log_density` for GOE only.
    """
    return -0.5 * m.ensemble.dyson_index * trace_of_square(m)


def log_entry_density(m: SampledMatrix) -> float:
    """Sum of Gaussian log-densities of every independent real entry."""
    std = ENTRY_STD[m.ensemble]

    def logpdf(x, sd):
        x = np.asarray(x, dtype=float)
        return float(np.sum(-0.5 * (x / sd) ** 2 - math.log(sd) - 0.5 * math.log(2 * math.pi)))

    total = logpdf(m.diag, std["diag"])
    if m.ensemble is EnsembleClass.GOE:
        return total + logpdf(m.upper, std["off"])
    return total + logpdf(m.upper.real, std["off"]) + logpdf(m.upper.imag, std["off"])


def _spectrum(m: SampledMatrix, method: str):
    """Ascending eigenvalues with Kramers pairs collapsed, plus the raw
    spectrum of the complex matrix and its largest relative pair gap."""
    X = m.dense()
    if method == "lapack":
        raw = np.linalg.eigvalsh(X)
    elif method == "jacobi":
        if m.ensemble is EnsembleClass.GOE:
            raw = jacobi_eigh(X)
        else:
            raw, _ = collapse_degenerate(jacobi_eigh(real_embedding(X)), 2)
    else:
        raise DomainError(f"unknown eigen method {method!r}")
    if m.ensemble is EnsembleClass.GSE:
        values, gap = collapse_degenerate(raw, 2)
        return values, raw, gap
    return raw, raw, 0.0


def eigenvalues(m: SampledMatrix, method: str = "jacobi") -> np.ndarray:
    """Ascending eigenvalues; GSE eigenvalues appear once each."""
    return _spectrum(m, method)[0]


def raw_spectrum(m: SampledMatrix, method: str = "jacobi"):
    """(eigenvalues of the complex matrix, max relative intra-pair gap)."""
    _, raw, gap = _spectrum(m, method)
    return raw, gap


def semicircle_cdf(t):
    """Semicircle CDF on [-1, 1], clamped outside."""
    t = np.clip(np.asarray(t, dtype=float), -1.0, 1.0)
    return 0.5 + (t * np.sqrt(1.0 - t * t) + np.arcsin(t)) / math.pi


def _middle_half(k):
    lo = k // 4
    return lo, k - lo


def extract_spacings(eigs, mode, ensemble: EnsembleClass, n: int) -> np.ndarray:
    """Bulk spacings from one sorted spectrum.

    ``all``: every consecutive gap.  ``central``: the single gap
    lambda[c] - lambda[c-1] with c = ceil(n/2) (0-based).  ``unfolded``: map
    through n * F_sc(lambda / sqrt(2n)) (identity scaling n * u for the
    Poisson control) and keep gaps inside the middle half of the spectrum.
    """
    eigs = np.asarray(eigs, dtype=float)
    mode = SpacingMode.parse(mode)
    if eigs.ndim != 1 or eigs.size < 2:
        raise DomainError("need at least two eigenvalues")
    if mode is SpacingMode.ALL:
        return np.diff(eigs)
    if mode is SpacingMode.CENTRAL:
        c = math.ceil(eigs.size / 2)
        return eigs[c : c + 1] - eigs[c - 1 : c]
    if ensemble is EnsembleClass.POISSON:
        x = n * eigs
    else:
        x = n * semicircle_cdf(eigs / math.sqrt(2.0 * n))
    lo, hi = _middle_half(eigs.size)
    return np.diff(x[lo:hi])


def _batch_spacings(eigs, mode, ensemble, n):
    """Vectorized :func:`extract_spacings` over rows of ``eigs``."""
    if mode is SpacingMode.ALL:
        return np.diff(eigs, axis=1).ravel()
    k = eigs.shape[1]
    if mode is SpacingMode.CENTRAL:
        c = math.ceil(k / 2)
        return eigs[:, c] - eigs[:, c - 1]
    if ensemble is EnsembleClass.POISSON:
        x = n * eigs
    else:
        x = n * semicircle_cdf(eigs / math.sqrt(2.0 * n))
    lo, hi = _middle_half(k)
    return np.diff(x[:, lo:hi], axis=1).ravel()


def chunk_size(spec: EnsembleSpec) -> int:
    """Trials per random stream; a fixed function of the matrix size."""
    side = spec.embedded_size
    return max(1, min(4096, _CHUNK_ENTRIES // (side * side)))


def monte_carlo_spacings(spec: EnsembleSpec, trials: int, mode="central", seed: int = 0,
                         method: str = "lapack") -> SpacingSample:
    """Sample ``trials`` matrices, pool their bulk spacings, normalize to unit mean.

    Trials are processed in fixed-size chunks; chunk k draws from stream
    (seed, k), so the output depends only on (spec, trials, mode, seed).
    ``method`` chooses the eigensolver: batched LAPACK or cyclic Jacobi.
    """
    if trials < 1:
        raise DomainError("trials must be >= 1")
    mode = SpacingMode.parse(mode)
    if method not in ("lapack", "jacobi"):
        raise DomainError(f"unknown eigen method {method!r}")
    ens, n = spec.ensemble, spec.n
    size = chunk_size(spec)
    pieces = []
    max_gap = 0.0
    done = 0
    for k, start in enumerate(range(0, trials, size)):
        count = min(size, trials - start)
        rng = make_rng(seed, k)
        try:
            if ens is EnsembleClass.POISSON:
                eigs = np.sort(rng.random((count, n)), axis=1)
            elif method == "lapack":
                diag, upper = _draw_entries(ens, n, count, rng)
                raw = np.linalg.eigvalsh(_dense_batch(ens, n, diag, upper))
                if ens is EnsembleClass.GSE:
                    radius = np.max(np.abs(raw), axis=1)
                    gaps = np.max(raw[:, 1::2] - raw[:, ::2], axis=1) / radius
                    max_gap = max(max_gap, float(np.max(gaps)))
                    if max_gap >= 1e-8:
                        raise SolverError("GSE spectrum lost its pair structure",
                                          {"max_relative_gap": max_gap})
                    eigs = 0.5 * (raw[:, ::2] + raw[:, 1::2])
                else:
                    eigs = raw
            else:
                diag, upper = _draw_entries(ens, n, count, rng)
                rows = []
                for i in range(count):
                    values, _, gap = _spectrum(SampledMatrix(ens, n, diag[i], upper[i]), "jacobi")
                    max_gap = max(max_gap, gap)
                    rows.append(values)
                eigs = np.array(rows)
        except SolverError as exc:
            diagnostics = dict(exc.diagnostics)
            diagnostics.update(trials_completed=done, chunk=k, spec=repr(spec), seed=seed)
            raise SolverError(f"Monte Carlo aborted after {done} trials: {exc}", diagnostics) from exc
        pieces.append(_batch_spacings(eigs, mode, ens, n))
        done += count
    raw_spacings = np.concatenate(pieces)
    provenance = (f"ensemble={ens.label} n={n} mode={mode.value} trials={trials} "
                  f"seed={seed} solver={method}")
    diagnostics = {"raw_mean": float(np.mean(raw_spacings)), "trials": trials}
    if ens is EnsembleClass.GSE:
        diagnostics["max_kramers_gap"] = max_gap
    return SpacingSample.from_raw(raw_spacings, mode.value, provenance, diagnostics)
