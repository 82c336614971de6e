"""Cyclic Jacobi eigensolver and real embeddings of hermitian matrices."""

import math

import numpy as np

from .errors import DomainError, SolverError

MAX_SWEEPS = 40
OFF_TOL = 1e-13
DEGENERACY_RTOL = 1e-8


def jacobi_eigh(a, tol=OFF_TOL, max_sweeps=MAX_SWEEPS, vectors=False):
    """Eigen-decompose a real symmetric matrix by cyclic Jacobi rotations.

    Sweeps run over all (p, q) pairs in row order until the off-diagonal
    Frobenius norm drops below ``tol * ||A||_F``.  Returns ascending
    eigenvalues, and the matching column eigenvectors when ``vectors``.
    """
    A = np.array(a, dtype=float, copy=True)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DomainError("jacobi_eigh needs a square matrix")
    if not np.all(np.isfinite(A)):
        raise DomainError("matrix has non-finite entries")
    if not np.array_equal(A, A.T):
        raise DomainError("matrix is not exactly symmetric")
    n = A.shape[0]
    V = np.eye(n) if vectors else None
    # work at unit magnitude so tiny or huge entries cannot under/overflow
    magnitude = float(np.max(np.abs(A))) if A.size else 0.0
    if magnitude > 0.0:
        A /= magnitude
    scale = np.linalg.norm(A)
    off = 0.0
    for sweep in range(max_sweeps + 1):
        off = math.sqrt(max(0.0, scale**2 - float(np.sum(np.diag(A) ** 2))))
        # recompute directly once the cheap estimate is near cancellation
        if off <= 1e-6 * scale:
            off = float(np.linalg.norm(A - np.diag(np.diag(A))))
        if off <= tol * scale or scale == 0.0:
            break
        if sweep == max_sweeps:
            raise SolverError(
                f"Jacobi did not converge in {max_sweeps} sweeps",
                {"sweeps": sweep, "offdiag_rel": off / scale, "n": n},
            )
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p = A[:, p].copy()
                col_q = A[:, q]
                A[:, p] = c * col_p - s * col_q
                A[:, q] = s * col_p + c * col_q
                row_p = A[p, :].copy()
                row_q = A[q, :]
                A[p, :] = c * row_p - s * row_q
                A[q, :] = s * row_p + c * row_q
                A[p, q] = A[q, p] = 0.0
                if V is not None:
                    vp = V[:, p].copy()
                    vq = V[:, q]
                    V[:, p] = c * vp - s * vq
                    V[:, q] = s * vp + c * vq
    w = np.diag(A) * magnitude if magnitude > 0.0 else np.diag(A).copy()
    order = np.argsort(w, kind="stable")
    if vectors:
        return w[order], V[:, order]
    return w[order]


def real_embedding(h):
    """[[Re H, -Im H], [Im H, Re H]]: real symmetric, each eigenvalue doubled."""
    h = np.asarray(h)
    re, im = h.real.astype(float), h.imag.astype(float)
    return np.block([[re, -im], [im, re]])


def collapse_degenerate(values, multiplicity, rtol=DEGENERACY_RTOL):
    """Merge sorted eigenvalues that come in exact groups of ``multiplicity``.

    Returns the group means and the largest intra-group spread relative to the
    spectral radius.  A spread above ``rtol`` means the structure was broken.
    """
    values = np.asarray(values, dtype=float)
    if multiplicity == 1:
        return values.copy(), 0.0
    if values.size % multiplicity:
        raise DomainError(f"{values.size} eigenvalues cannot form groups of {multiplicity}")
    groups = values.reshape(-1, multiplicity)
    radius = float(np.max(np.abs(values))) or 1.0
    gap = float(np.max(groups[:, -1] - groups[:, 0])) / radius
    if gap >= rtol:
        raise SolverError(
            f"eigenvalues do not form {multiplicity}-fold groups",
            {"max_relative_gap": gap, "rtol": rtol},
        )
    return groups.mean(axis=1), gap
