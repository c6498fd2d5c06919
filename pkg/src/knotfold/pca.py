"""Principal component analysis built from streaming covariance moments.

The eigensolver is self-contained: cyclic Jacobi sweeps for small matrices
and Householder tridiagonalization followed by implicit-shift QL iteration
for large ones.  Everything downstream (explained variances, cumulative
shares, dimension estimation, projection) consumes the resulting
eigensystem.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateSpectrum,
    DimensionMismatch,
    InsufficientData,
    NoConvergence,
    NotSymmetric,
)

JACOBI_MAX_DIM = 64
JACOBI_MAX_SWEEPS = 100
QL_MAX_ITER = 50


class CovarianceAccumulator:
    """Mergeable running moments for a sample covariance matrix.

    Holds the count, the running mean, and the centered second-moment
    matrix; shards accumulated independently merge exactly (up to float
    round-off) in any order.
    """

    def __init__(self, dim):
        self.dim = dim
        self.count = 0
        self.mean = np.zeros(dim)
        self.m2 = np.zeros((dim, dim))

    def add(self, row):
        row = np.asarray(row, dtype=float)
        if row.shape != (self.dim,):
            raise DimensionMismatch(
                f"row of length {row.shape} in a {self.dim}-dim accumulator")
        self.count += 1
        delta = row - self.mean
        self.mean += delta / self.count
        self.m2 += np.outer(delta, row - self.mean)
        return self

    def add_block(self, rows):
        """Accumulate a 2-D block at once (same result as row-by-row)."""
        rows = np.asarray(rows, dtype=float)
        if rows.ndim != 2 or rows.shape[1] != self.dim:
            raise DimensionMismatch(
                f"block of shape {rows.shape} in a {self.dim}-dim accumulator")
        other = CovarianceAccumulator(self.dim)
        other.count = rows.shape[0]
        other.mean = rows.mean(axis=0)
        centered = rows - other.mean
        other.m2 = centered.T @ centered
        return self.merge(other)

    def merge(self, other):
        if other.dim != self.dim:
            raise DimensionMismatch(f"{self.dim} vs {other.dim}")
        if other.count == 0:
            return self
        if self.count == 0:
            self.count = other.count
            self.mean = other.mean.copy()
            self.m2 = other.m2.copy()
            return self
        total = self.count + other.count
        delta = other.mean - self.mean
        self.m2 = (self.m2 + other.m2
                   + np.outer(delta, delta) * (self.count * other.count / total))
        self.mean = self.mean + delta * (other.count / total)
        self.count = total
        return self

    def finalize(self):
        """Sample covariance K = M2 / (n - 1)."""
        if self.count < 2:
            raise InsufficientData(
                f"covariance needs at least 2 rows, have {self.count}")
        k = self.m2 / (self.count - 1)
        return (k + k.T) / 2.0


@dataclass(frozen=True)
class EigenSystem:
    """Descending eigenpairs with normalized and cumulative variances."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # column i is v_i
    normalized: np.ndarray
    cumulative: np.ndarray

    @property
    def dim(self):
        return len(self.eigenvalues)


def _jacobi(a, max_sweeps=JACOBI_MAX_SWEEPS):
    n = a.shape[0]
    a = a.copy()
    v = np.eye(n)
    for _ in range(max_sweeps):
        scale = max(1.0, np.abs(np.diag(a)).max())
        offdiag = np.abs(a).copy()
        np.fill_diagonal(offdiag, 0.0)
        if offdiag.max() <= 1e-14 * scale:
            return np.diag(a).copy(), v
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-16 * scale:
                    a[p, q] = a[q, p] = 0.0
                    continue
                rotated = True
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if theta == 0.0:
                    t = 1.0
                else:
                    t = np.sign(theta) / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rp, rq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp, cq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
        if not rotated:
            return np.diag(a).copy(), v
    raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps")


def _tridiagonalize(a):
    """Householder reduction; returns (diagonal, subdiagonal, Q)."""
    n = a.shape[0]
    a = a.copy()
    q = np.eye(n)
    e = np.zeros(n)
    for k in range(n - 2):
        x = a[k + 1:, k].copy()
        alpha = np.linalg.norm(x)
        if alpha == 0.0:
            e[k + 1] = 0.0
            continue
        if x[0] > 0:
            alpha = -alpha
        u = x.copy()
        u[0] -= alpha
        unorm = np.linalg.norm(u)
        if unorm == 0.0:
            e[k + 1] = alpha
            continue
        u /= unorm
        # apply P = I - 2uu^T on both sides of the trailing block
        sub = a[k + 1:, k + 1:]
        w = sub @ u
        kappa = u @ w
        sub -= 2.0 * np.outer(u, w) + 2.0 * np.outer(w, u) - 4.0 * kappa * np.outer(u, u)
        a[k + 1:, k] = 0.0
        a[k, k + 1:] = 0.0
        a[k + 1, k] = alpha
        a[k, k + 1] = alpha
        e[k + 1] = alpha
        qu = q[:, k + 1:] @ u
        q[:, k + 1:] -= 2.0 * np.outer(qu, u)
    if n >= 2:
        e[n - 1] = a[n - 1, n - 2]
    d = np.diag(a).copy()
    return d, e, q


def _ql_implicit(d, e, z, max_iter=QL_MAX_ITER):
    """Implicit-shift QL on a tridiagonal (d, e); rotations folded into z."""
    n = len(d)
    d = d.copy()
    e = np.roll(e, -1)  # e[i] couples d[i] and d[i+1]; e[n-1] unused
    e[n - 1] = 0.0
    eps = np.finfo(float).eps
    anorm = float((np.abs(d) + np.abs(e)).max())
    for l in range(n):
        iterations = 0
        while True:
            m = l
            while m < n - 1 and abs(e[m]) > eps * max(
                    abs(d[m]) + abs(d[m + 1]), anorm):
                m += 1
            if m == l:
                break
            iterations += 1
            if iterations > max_iter:
                raise NoConvergence(
                    f"QL iteration cap {max_iter} hit at index {l}")
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = np.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + np.copysign(r, g))
            s = c = 1.0
            p = 0.0
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = np.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                zi = z[:, i].copy()
                zi1 = z[:, i + 1].copy()
                z[:, i + 1] = s * zi + c * zi1
                z[:, i] = c * zi - s * zi1
            else:
                d[l] -= p
                e[l] = g
                e[m] = 0.0
    return d, z


def sym_eig(k):
    """Orthonormal eigensystem of a symmetric matrix, descending order.

    The eigenvector sign convention makes the entry of largest absolute
    value positive (ties broken by lowest index) so outputs are
    deterministic.
    """
    k = np.asarray(k, dtype=float)
    if k.ndim != 2 or k.shape[0] != k.shape[1]:
        raise NotSymmetric(f"matrix shape {k.shape} is not square")
    n = k.shape[0]
    scale = max(1.0, np.abs(k).max())
    if np.abs(k - k.T).max() > 1e-9 * scale:
        raise NotSymmetric("matrix is not symmetric within 1e-9 relative")
    k = (k + k.T) / 2.0
    if n == 0:
        empty = np.zeros((0,))
        return EigenSystem(empty, np.zeros((0, 0)), empty, empty)
    if n == 1:
        lam = np.array([k[0, 0]])
        vec = np.ones((1, 1))
    elif n <= JACOBI_MAX_DIM:
        lam, vec = _jacobi(k)
    else:
        d, e, q = _tridiagonalize(k)
        lam, vec = _ql_implicit(d, e, q)
    order = np.argsort(-lam, kind="stable")
    lam = lam[order]
    vec = vec[:, order]
    for i in range(n):
        col = vec[:, i]
        j = np.argmax(np.abs(col))
        if col[j] < 0:
            vec[:, i] = -col
    total = lam.sum()
    if total > 0:
        normalized = lam / total
        cumulative = np.cumsum(normalized)
    else:
        normalized = np.zeros(n)
        cumulative = np.zeros(n)
    return EigenSystem(lam, vec, normalized, cumulative)


def normalized_variances(es):
    """(lambda_bar, S_k) of an eigensystem; all-zero spectra are rejected."""
    if not (es.eigenvalues > 0).any():
        raise DegenerateSpectrum("spectrum has no positive eigenvalue")
    return es.normalized, es.cumulative


def dimension_estimate(normalized, threshold=0.95):
    """Smallest k whose cumulative explained variance reaches the threshold."""
    s = 0.0
    for k, share in enumerate(normalized, start=1):
        s += share
        if s >= threshold:
            return k
    return len(normalized)


def project(matrix, mean, es, k):
    """Express centered rows in the first k principal directions."""
    matrix = np.asarray(matrix, dtype=float)
    if k > es.dim or matrix.shape[1] != es.dim:
        raise DimensionMismatch(
            f"cannot project shape {matrix.shape} onto {k} of {es.dim} axes")
    return (matrix - mean) @ es.eigenvectors[:, :k]


class PrincipalComponentAnalysis:
    """Estimator facade over the functional core (fit/transform style)."""

    def __init__(self, n_components=None, variance_threshold=0.95):
        self.n_components = n_components
        self.variance_threshold = variance_threshold

    def get_params(self):
        return {"n_components": self.n_components,
                "variance_threshold": self.variance_threshold}

    def set_params(self, **params):
        for key, value in params.items():
            if key not in self.get_params():
                raise ValueError(f"unknown parameter {key!r}")
            setattr(self, key, value)
        return self

    def fit(self, x):
        x = np.asarray(x, dtype=float)
        acc = CovarianceAccumulator(x.shape[1]).add_block(x)
        self.mean_ = acc.mean
        self.n_samples_ = acc.count
        es = sym_eig(acc.finalize())
        self.eigensystem_ = es
        self.components_ = es.eigenvectors.T
        self.explained_variance_ = es.eigenvalues
        self.explained_variance_ratio_ = es.normalized
        self.cumulative_variance_ = es.cumulative
        self.dimension_ = dimension_estimate(es.normalized,
                                             self.variance_threshold)
        return self

    def transform(self, x):
        k = self.n_components or self.eigensystem_.dim
        return project(x, self.mean_, self.eigensystem_, k)

    def fit_transform(self, x):
        return self.fit(x).transform(x)
