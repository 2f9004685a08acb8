"""Dense symmetric linear algebra built from first principles.

Everything here operates on plain float64 numpy arrays.  The heavy
primitives (cyclic Jacobi eigendecomposition, Cholesky factorization and
the triangular solves built on it) are implemented in this file rather
than delegated, because they are the numerical core the rest of the
toolkit is specified against.
"""

from dataclasses import dataclass

import numpy as np

from .errors import NumericError, ValidationError

SYM_TOL = 1e-10        # relative symmetry tolerance accepted on input
JACOBI_OFF_TOL = 1e-12  # stop when off-diagonal Frobenius norm <= tol*||A||_F
JACOBI_MAX_SWEEPS = 100


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues sorted descending; column i of `vectors` pairs with values[i]."""

    values: np.ndarray
    vectors: np.ndarray


def _as_square_symmetric(a, name="A") -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"{name} must be square, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValidationError(f"{name} contains non-finite entries")
    fnorm = float(np.linalg.norm(a))
    if fnorm > 0.0 and float(np.linalg.norm(a - a.T)) > SYM_TOL * fnorm:
        raise ValidationError(f"{name} is not symmetric within tolerance {SYM_TOL}")
    return a


def _fix_sign(vectors: np.ndarray) -> np.ndarray:
    """Flip each column so its first nonzero component is positive.

    'Nonzero' is judged against the column's own max magnitude so the
    convention is scale-free.
    """
    v = vectors.copy()
    for j in range(v.shape[1]):
        col = v[:, j]
        peak = np.max(np.abs(col))
        if peak == 0.0:
            continue
        nz = np.nonzero(np.abs(col) > 1e-12 * peak)[0]
        if nz.size and col[nz[0]] < 0.0:
            v[:, j] = -col
    return v


def sym_eig(a) -> EigenDecomposition:
    """Full eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps over all off-diagonal pivots until the off-diagonal Frobenius
    norm drops below JACOBI_OFF_TOL * ||A||_F or JACOBI_MAX_SWEEPS sweeps
    have run.  Returns eigenpairs sorted by descending eigenvalue, each
    eigenvector unit-norm with its first nonzero component positive.
    """
    a = _as_square_symmetric(a)
    n = a.shape[0]
    if n == 1:
        return EigenDecomposition(values=a[0].copy(), vectors=np.ones((1, 1)))

    w = 0.5 * (a + a.T)  # work on an exactly symmetric copy
    fnorm = float(np.linalg.norm(w))
    v = np.eye(n)
    if fnorm == 0.0:
        return EigenDecomposition(values=np.zeros(n), vectors=v)

    # rotating pivots below this leaves off(A) <= JACOBI_OFF_TOL*||A||_F
    skip = JACOBI_OFF_TOL * fnorm / (2.0 * n)
    for _ in range(JACOBI_MAX_SWEEPS):
        off = np.sqrt(max(np.sum(w * w) - np.sum(np.diag(w) ** 2), 0.0))
        if off <= JACOBI_OFF_TOL * fnorm:
            break
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = w[p, q]
                if abs(apq) <= skip:
                    continue
                rotated = True
                theta = 0.5 * (w[q, q] - w[p, p]) / apq
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta == 0.0:
                    t = 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rot = np.array([[c, s], [-s, c]])
                w[:, [p, q]] = w[:, [p, q]] @ rot
                w[[p, q], :] = rot.T @ w[[p, q], :]
                w[p, q] = 0.0
                w[q, p] = 0.0
                v[:, [p, q]] = v[:, [p, q]] @ rot
        if not rotated:
            break

    order = np.argsort(-np.diag(w), kind="stable")
    values = np.diag(w)[order].copy()
    vectors = _fix_sign(v[:, order])
    return EigenDecomposition(values=values, vectors=vectors)


def cholesky_factor(a) -> np.ndarray:
    """Lower-triangular L with L @ L.T = A for symmetric positive-definite A.

    Raises NumericError naming the failing pivot when A is not PD; the
    caller decides whether to regularize and retry.
    """
    a = _as_square_symmetric(a)
    n = a.shape[0]
    low = np.zeros((n, n))
    for j in range(n):
        d = a[j, j] - low[j, :j] @ low[j, :j]
        if not np.isfinite(d) or d <= 0.0:
            raise NumericError(
                f"Cholesky pivot {j} is not positive ({d:.3e}); matrix is not PD"
            )
        low[j, j] = np.sqrt(d)
        if j + 1 < n:
            low[j + 1:, j] = (a[j + 1:, j] - low[j + 1:, :j] @ low[j, :j]) / low[j, j]
    return low


def solve_lower(low: np.ndarray, b) -> np.ndarray:
    """Forward substitution: x with low @ x = b (low lower-triangular)."""
    b = np.asarray(b, dtype=float)
    single = b.ndim == 1
    x = b.reshape(-1, 1).copy() if single else b.copy()
    n = low.shape[0]
    if x.shape[0] != n:
        raise ValidationError("right-hand side row count does not match matrix")
    for i in range(n):
        x[i] = (x[i] - low[i, :i] @ x[:i]) / low[i, i]
    return x[:, 0] if single else x


def solve_upper(up: np.ndarray, b) -> np.ndarray:
    """Back substitution: x with up @ x = b (up upper-triangular)."""
    b = np.asarray(b, dtype=float)
    single = b.ndim == 1
    x = b.reshape(-1, 1).copy() if single else b.copy()
    n = up.shape[0]
    if x.shape[0] != n:
        raise ValidationError("right-hand side row count does not match matrix")
    for i in range(n - 1, -1, -1):
        x[i] = (x[i] - up[i, i + 1:] @ x[i + 1:]) / up[i, i]
    return x[:, 0] if single else x


def spd_solve(a, b) -> np.ndarray:
    """Solve A @ X = B for symmetric positive-definite A via Cholesky.

    Never forms an explicit inverse; the transformation-matrix product in
    the discriminant solve is computed this way.
    """
    low = cholesky_factor(a)
    return solve_upper(low.T, solve_lower(low, b))


def ridge_regularize(a, eps_rel: float) -> np.ndarray:
    """A + eps*I with eps = eps_rel * trace(A)/dim(A) (eps_rel itself if trace is 0)."""
    a = _as_square_symmetric(a)
    if eps_rel <= 0.0:
        raise ValidationError("eps_rel must be positive")
    n = a.shape[0]
    tr = float(np.trace(a))
    eps = eps_rel * tr / n if tr != 0.0 else eps_rel
    return a + eps * np.eye(n)
