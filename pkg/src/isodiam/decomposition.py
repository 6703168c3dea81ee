"""Decompositions of the identity ``I_n = sum_i w_i u_i u_i^T``.

Covers verification, nonnegative weight fitting, the Cauchy-Binet identity
for Gram minors and the elementary-symmetric-polynomial bound on weights.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, islice

import numpy as np
from scipy.optimize import nnls

from .errors import (CertificateError, CombinatorialBlowup,
                     InfeasibleDecomposition, ShapeMismatch)

__all__ = ["IdentityDecomposition", "VerifyReport", "verify", "fit_weights",
           "cauchy_binet_check", "gram_simplex_volume", "gram_minors",
           "elementary_symmetric", "sigma_bound_check", "SUBSET_CAP"]

SUBSET_CAP = 10**7
_CHUNK = 1 << 16


def _as_dirs(dirs):
    U = np.atleast_2d(np.asarray(dirs, dtype=float))
    if U.ndim != 2:
        raise ShapeMismatch("directions must be a (m, n) array")
    return U


@dataclass(frozen=True)
class IdentityDecomposition:
    """Unit directions (rows) with nonnegative weights."""

    directions: np.ndarray
    weights: np.ndarray
    tolerance: float = 1e-8

    def __post_init__(self):
        U = _as_dirs(self.directions).copy()
        w = np.asarray(self.weights, dtype=float).ravel().copy()
        if len(U) != len(w):
            raise ShapeMismatch(f"{len(U)} directions but {len(w)} weights")
        if np.any(w < 0):
            raise ValueError("weights must be nonnegative")
        if np.any(np.abs(np.linalg.norm(U, axis=1) - 1.0) > 1e-9):
            raise ValueError("directions must be unit vectors")
        U.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "directions", U)
        object.__setattr__(self, "weights", w)

    @property
    def dim(self):
        return self.directions.shape[1]

    @property
    def size(self):
        return len(self.weights)

    def matrix(self):
        U = self.directions
        return (U.T * self.weights) @ U

    @property
    def residual(self):
        return float(np.linalg.norm(self.matrix() - np.eye(self.dim)))

    @property
    def trace_deviation(self):
        return float(abs(self.weights.sum() - self.dim))

    def is_valid(self):
        n = self.dim
        return (self.size >= n and self.residual <= self.tolerance
                and self.trace_deviation <= n * self.tolerance)


@dataclass(frozen=True)
class VerifyReport:
    residual: float
    trace_deviation: float
    tolerance: float

    @property
    def passed(self):
        return self.residual <= self.tolerance


def verify(dirs, weights, tol=1e-9):
    """Frobenius residual of ``sum w_i u_i u_i^T - I`` and the trace deviation."""
    U = _as_dirs(dirs)
    w = np.asarray(weights, dtype=float).ravel()
    if len(U) != len(w):
        raise ShapeMismatch(f"{len(U)} directions but {len(w)} weights")
    if np.any(w < 0):
        raise ValueError("weights must be nonnegative")
    n = U.shape[1]
    R = (U.T * w) @ U - np.eye(n)
    return VerifyReport(float(np.linalg.norm(R)),
                        float(abs(w.sum() - n)), tol)


def _svec_system(U, barycenter):
    # Symmetric vectorisation with sqrt(2) off-diagonal weights keeps the
    # Euclidean norm equal to the Frobenius norm of the matrix residual.
    m, n = U.shape
    iu = np.triu_indices(n)
    scale = np.where(iu[0] == iu[1], 1.0, math.sqrt(2.0))
    A = (U[:, iu[0]] * U[:, iu[1]] * scale).T
    b = np.eye(n)[iu] * scale
    if barycenter:
        A = np.vstack([A, U.T])
        b = np.concatenate([b, np.zeros(n)])
    return A, b


def fit_weights(dirs, tol=1e-9, barycenter=False):
    """Nonnegative weights making the directions decompose the identity.

    Solves ``min ||sum w_i u_i u_i^T - I||_F`` over ``w >= 0`` by
    nonnegative least squares. With ``barycenter=True`` the condition
    ``sum w_i u_i = 0`` is added to the system.

    Returns
    -------
    weights : ndarray

    Raises
    ------
    InfeasibleDecomposition
        If the optimal residual exceeds ``tol``; the exception carries the
        best weights and residual.
    """
    U = _as_dirs(dirs)
    if len(U) == 0:
        raise InfeasibleDecomposition(math.sqrt(U.shape[1]), np.zeros(0))
    A, b = _svec_system(U, barycenter)
    w, res = nnls(A, b, maxiter=50 * A.shape[1])
    if res > tol:
        raise InfeasibleDecomposition(float(res), w)
    return w


def _subset_count(m, i, cap):
    count = math.comb(m, i)
    if count > cap:
        raise CombinatorialBlowup(f"C({m}, {i}) = {count} exceeds cap {cap}")
    return count


def gram_minors(U, i, cap=SUBSET_CAP):
    """Yield ``(subsets, det(U_J^T U_J))`` chunks over all ``i``-subsets ``J``
    of the rows of ``U``, in lexicographic order."""
    m = len(U)
    _subset_count(m, i, cap)
    G = U @ U.T
    it = combinations(range(m), i)
    while True:
        J = np.array(list(islice(it, _CHUNK)), dtype=np.intp)
        if J.size == 0:
            return
        sub = G[J[:, :, None], J[:, None, :]]
        yield J, np.linalg.det(sub)


def cauchy_binet_check(D, i, cap=SUBSET_CAP):
    """Return ``(C(n, i), sum_J w_J det(U_J^T U_J), difference)``."""
    n = D.dim
    if not 1 <= i <= n:
        raise ValueError(f"need 1 <= i <= {n}")
    rhs = 0.0
    for J, dets in gram_minors(D.directions, i, cap):
        rhs += float(np.sum(np.prod(D.weights[J], axis=1) * dets))
    lhs = float(math.comb(n, i))
    return lhs, rhs, lhs - rhs


def gram_simplex_volume(U):
    """``j``-volume of ``conv{0, u_1, ..., u_j}`` for the columns of ``U``."""
    U = np.asarray(U, dtype=float)
    if U.ndim == 1:
        U = U[:, None]
    j = U.shape[1]
    g = float(np.linalg.det(U.T @ U))
    return math.sqrt(g) / math.factorial(j) if g > 0 else 0.0


def elementary_symmetric(weights, d):
    """``sigma_d`` of the weights through Newton's identities on power sums."""
    w = np.asarray(weights, dtype=float).ravel()
    if not 0 <= d <= len(w):
        raise ValueError(f"need 0 <= d <= {len(w)}")
    p = [float(np.sum(w**k)) for k in range(d + 1)]
    e = [1.0]
    for k in range(1, d + 1):
        s = sum((-1) ** (i - 1) * e[k - i] * p[i] for i in range(1, k + 1))
        e.append(s / k)
    return max(e[d], 0.0)


def sigma_bound_check(weights, d, check=True):
    """Compare ``sigma_d(w)`` with its maximum ``C(m, d) (c/m)^d`` over the
    simplex ``sum w = c``."""
    w = np.asarray(weights, dtype=float).ravel()
    if np.any(w < 0):
        raise ValueError("weights must be nonnegative")
    m = len(w)
    sigma = elementary_symmetric(w, d)
    bound = math.comb(m, d) * (float(w.sum()) / m) ** d
    if check and sigma > bound * (1.0 + 1e-9):
        raise CertificateError(f"sigma_{d} = {sigma} exceeds bound {bound}")
    return sigma, bound
