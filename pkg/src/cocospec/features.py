"""Discriminant (LDA) and principal-component (PCA) feature extraction.

The discriminant directions solve the generalized symmetric eigenproblem
s_b v = lambda s_w v through Cholesky whitening of the ridge-regularized
within-class scatter: with L L^T = s_w_reg the problem becomes the
ordinary symmetric eigenproblem of M = L^-1 s_b L^-T, whose eigenvalues
equal those of s_w_reg^-1 s_b exactly in exact arithmetic.  Because s_b
factors as F F^T with c columns, the nonzero spectrum of M is read off
the tiny c x c Gram matrix (L^-1 F)^T (L^-1 F); that keeps the
eigensolve independent of the band count.  The same trick (an n x n Gram
matrix) powers PCA when there are fewer spectra than bands.
"""

from dataclasses import dataclass

import numpy as np

from .data import SpectralDataset
from .errors import NumericError, ValidationError
from .linalg import (
    cholesky_factor,
    ridge_regularize,
    solve_lower,
    solve_upper,
    sym_eig,
    _fix_sign,
)

DEFAULT_RIDGE_EPS_REL = 1e-6
RANK_TOL_REL = 1e-12

VARIANT_INDEPENDENT = "independent"
VARIANT_DEPENDENT = "dependent"


@dataclass(frozen=True)
class ClassStatistics:
    global_mean: np.ndarray
    class_means: np.ndarray  # c x d
    class_counts: np.ndarray
    priors: np.ndarray


@dataclass(frozen=True)
class ScatterPair:
    s_w: np.ndarray
    s_b: np.ndarray


@dataclass(frozen=True)
class LdaModel:
    stats: ClassStatistics
    projection: np.ndarray | None  # d x r (class-independent variant)
    eigenvalues: np.ndarray | None
    variant: str
    ridge_eps_rel: float
    per_class_projections: tuple | None = None
    per_class_eigenvalues: tuple | None = None

    @property
    def n_components(self) -> int:
        if self.projection is not None:
            return self.projection.shape[1]
        return self.per_class_projections[0].shape[1]

    @property
    def n_features(self) -> int:
        return self.stats.global_mean.size


@dataclass(frozen=True)
class PcaModel:
    mean: np.ndarray
    components: np.ndarray  # d x r, orthonormal columns
    explained_variance: np.ndarray

    @property
    def n_components(self) -> int:
        return self.components.shape[1]


def class_statistics(ds: SpectralDataset) -> ClassStatistics:
    """Global mean, per-class means, counts and priors n_j/N."""
    counts = np.bincount(ds.y, minlength=ds.n_classes)
    for label in ds.label_table:
        if counts[label.id] == 0:
            raise ValidationError(f"class {label.name!r} has no samples")
    means = np.vstack([ds.X[ds.y == c].mean(axis=0) for c in range(ds.n_classes)])
    return ClassStatistics(
        global_mean=ds.X.mean(axis=0),
        class_means=means,
        class_counts=counts,
        priors=counts / ds.n_samples,
    )


def scatter_matrices(ds: SpectralDataset, stats: ClassStatistics) -> ScatterPair:
    """Prior-weighted within-class and between-class scatter matrices.

    s_w = sum_j p_j * (1/n_j) sum_{i in class j} (x_i - mu_j)(x_i - mu_j)^T
    s_b = sum_j p_j * (mu_j - mu)(mu_j - mu)^T
    """
    d = ds.n_features
    s_w = np.zeros((d, d))
    for c in range(ds.n_classes):
        centered = ds.X[ds.y == c] - stats.class_means[c]
        s_w += (stats.priors[c] / stats.class_counts[c]) * (centered.T @ centered)
    s_w = 0.5 * (s_w + s_w.T)
    offsets = stats.class_means - stats.global_mean
    s_b = (offsets.T * stats.priors) @ offsets
    s_b = 0.5 * (s_b + s_b.T)
    return ScatterPair(s_w=s_w, s_b=s_b)


def _whitened_discriminants(s_w_reg, stats, r):
    """Top discriminant eigenpairs of L^-1 s_b L^-T via its c-column factor."""
    try:
        low = cholesky_factor(s_w_reg)
    except NumericError as exc:
        raise NumericError(
            f"{exc}; the regularized within-class scatter is still not PD, "
            "raise ridge_eps_rel"
        ) from exc
    offsets = stats.class_means - stats.global_mean
    factor = (offsets * np.sqrt(stats.priors)[:, None]).T  # d x c, F F^T = s_b
    white = solve_lower(low, factor)
    gram = white.T @ white
    eig = sym_eig(0.5 * (gram + gram.T))
    lam_max = float(eig.values[0]) if eig.values.size else 0.0
    if lam_max <= 0.0:
        raise NumericError("between-class scatter has rank 0; classes coincide")
    rank = int(np.sum(eig.values > RANK_TOL_REL * lam_max))
    r_eff = min(r, rank)
    values = eig.values[:r_eff].copy()
    cols = []
    for i in range(r_eff):
        z = (white @ eig.vectors[:, i]) / np.sqrt(eig.values[i])
        cols.append(solve_upper(low.T, z))
    projection = _fix_sign(np.column_stack(cols))
    return values, projection


def fit_lda(
    ds: SpectralDataset,
    r: int | None = None,
    ridge_eps_rel: float = DEFAULT_RIDGE_EPS_REL,
    variant: str = VARIANT_INDEPENDENT,
) -> LdaModel:
    """Fit discriminant directions maximizing between/within scatter ratio.

    r defaults to c-1 and is clamped to the numerical rank of the
    between-class scatter.  Projection columns are normalized to unit
    length in the whitened metric (t^T s_w_reg t = 1) with the first
    nonzero component positive.
    """
    c = ds.n_classes
    if c < 2:
        raise ValidationError("discriminant analysis needs at least 2 classes")
    if ds.n_samples < c + 1:
        raise ValidationError("need at least c+1 samples to fit")
    if variant not in (VARIANT_INDEPENDENT, VARIANT_DEPENDENT):
        raise ValidationError(f"unknown variant {variant!r}")
    if r is None:
        r = c - 1
    if not 1 <= r <= c - 1:
        raise ValidationError(f"component count must be in 1..{c - 1}")

    stats = class_statistics(ds)
    pair = scatter_matrices(ds, stats)

    if variant == VARIANT_INDEPENDENT:
        s_w_reg = ridge_regularize(pair.s_w, ridge_eps_rel)
        values, projection = _whitened_discriminants(s_w_reg, stats, r)
        return LdaModel(
            stats=stats,
            projection=projection,
            eigenvalues=values,
            variant=variant,
            ridge_eps_rel=ridge_eps_rel,
        )

    projections = []
    eigenvalues = []
    for cls in range(c):
        centered = ds.X[ds.y == cls] - stats.class_means[cls]
        s_wj = (centered.T @ centered) / stats.class_counts[cls]
        s_wj_reg = ridge_regularize(0.5 * (s_wj + s_wj.T), ridge_eps_rel)
        values, projection = _whitened_discriminants(s_wj_reg, stats, r)
        projections.append(projection)
        eigenvalues.append(values)
    return LdaModel(
        stats=stats,
        projection=None,
        eigenvalues=None,
        variant=variant,
        ridge_eps_rel=ridge_eps_rel,
        per_class_projections=tuple(projections),
        per_class_eigenvalues=tuple(eigenvalues),
    )


def transform_lda(model: LdaModel, X) -> np.ndarray:
    """Y = X @ T for the class-independent projection."""
    if model.variant != VARIANT_INDEPENDENT:
        raise ValidationError(
            "generic transform is defined for the class-independent variant; "
            "use transform_lda_class for per-class projections"
        )
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != model.n_features:
        raise ValidationError(
            f"expected {model.n_features} columns, got {X.shape}"
        )
    return X @ model.projection


def transform_lda_class(model: LdaModel, X, class_id: int) -> np.ndarray:
    """Projection of X with the class-dependent matrix of one class."""
    if model.variant != VARIANT_DEPENDENT:
        raise ValidationError("model was fitted with the class-independent variant")
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != model.n_features:
        raise ValidationError(
            f"expected {model.n_features} columns, got {X.shape}"
        )
    return X @ model.per_class_projections[class_id]


def fit_pca(X, r: int) -> PcaModel:
    """Top-r principal components of the sample covariance (1/(n-1)).

    Uses the d x d covariance eigenproblem when d <= n, otherwise the
    n x n Gram eigenproblem of the centered rows (identical nonzero
    spectrum, components recovered by back-projection).
    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2:
        raise ValidationError("X must be a 2-D matrix")
    n, d = X.shape
    if n < 2:
        raise ValidationError("need at least 2 rows")
    if not 1 <= r <= min(n - 1, d):
        raise ValidationError(f"component count must be in 1..{min(n - 1, d)}")
    mean = X.mean(axis=0)
    centered = X - mean

    if d <= n:
        cov = (centered.T @ centered) / (n - 1)
        eig = sym_eig(0.5 * (cov + cov.T))
        components = eig.vectors[:, :r].copy()
        variances = np.maximum(eig.values[:r], 0.0).copy()
    else:
        gram = (centered @ centered.T) / (n - 1)
        eig = sym_eig(0.5 * (gram + gram.T))
        lam_max = float(eig.values[0]) if eig.values.size else 0.0
        if lam_max <= 0.0 or eig.values[r - 1] <= RANK_TOL_REL * lam_max:
            raise NumericError(
                "requested components exceed the numerical rank of the data"
            )
        cols = [
            centered.T @ eig.vectors[:, i] / np.sqrt((n - 1) * eig.values[i])
            for i in range(r)
        ]
        components = _fix_sign(np.column_stack(cols))
        variances = eig.values[:r].copy()
    return PcaModel(mean=mean, components=components, explained_variance=variances)


def transform_pca(model: PcaModel, X) -> np.ndarray:
    """Y = (X - mean) @ components."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != model.mean.size:
        raise ValidationError(f"expected {model.mean.size} columns, got {X.shape}")
    return (X - model.mean) @ model.components
