"""Minimum-volume enclosing ellipsoids and their contact decompositions.

The solver is the Khachiyan coordinate-ascent scheme on the D-optimal design
problem ``max log det(sum_i u_i q_i q_i^T)`` over the probability simplex,
with the exact Todd-Yildirim line search and away steps (which drive the
weights of non-contact points to zero and give linear convergence).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .decomposition import fit_weights
from .errors import (InfeasibleDecomposition, MaxIterations,
                     NotContainedInBall, NotSymmetric, RankDeficient)
from .polytope import LinearMap, Polytope, polar

__all__ = ["Ellipsoid", "ContactData", "SolverResult", "khachiyan",
           "mvee_centered", "mvee_general", "is_loewner",
           "john_ellipsoid_symmetric", "normalization_map", "ball_volume"]


def ball_volume(n):
    return math.pi ** (n / 2) / math.gamma(n / 2 + 1)


@dataclass(frozen=True)
class Ellipsoid:
    """``{x : (x - c)^T M (x - c) <= 1}`` for symmetric positive definite M."""

    shape: np.ndarray
    center: np.ndarray

    def __post_init__(self):
        M = np.array(self.shape, dtype=float)
        c = np.array(self.center, dtype=float).ravel()
        if M.shape != (len(c), len(c)):
            raise ValueError("shape and center dimensions differ")
        if np.max(np.abs(M - M.T)) > 1e-12 * max(1.0, np.abs(M).max()):
            raise ValueError("shape matrix is not symmetric")
        M = (M + M.T) / 2
        if np.linalg.eigvalsh(M).min() <= 0:
            raise ValueError("shape matrix is not positive definite")
        object.__setattr__(self, "shape", M)
        object.__setattr__(self, "center", c)

    @property
    def dim(self):
        return len(self.center)

    @property
    def volume(self):
        return ball_volume(self.dim) / math.sqrt(np.linalg.det(self.shape))

    def gauge(self, points):
        """``(x - c)^T M (x - c)`` for each row ``x``."""
        X = np.atleast_2d(np.asarray(points, float)) - self.center
        return np.einsum("ij,jk,ik->i", X, self.shape, X)

    def contains(self, points, tol=0.0):
        return self.gauge(points) <= 1.0 + tol


@dataclass(frozen=True)
class ContactData:
    """Contact points of a normalised ellipsoid and their weights.

    ``points`` are unit vectors in the frame where the ellipsoid is the unit
    ball; ``indices`` refer to rows of the input point array.
    """

    points: np.ndarray
    weights: np.ndarray
    indices: np.ndarray
    residual: float
    barycenter_residual: float | None = None


@dataclass(frozen=True)
class SolverResult:
    weights: np.ndarray
    iterations: int
    gap: float
    objective: list | None = None


def khachiyan(Q, eps=1e-8, max_iter=10**6, weights=None, trace=False):
    """Maximise ``log det(sum_i u_i q_i q_i^T)`` over the simplex.

    Parameters
    ----------
    Q : (m, d) ndarray
        Rows are the points ``q_i``; they must span ``R^d``.
    eps : float
        Stop once ``max_i k_i <= (1 + eps) d`` and ``min k_i >= (1 - eps) d``
        over the support, where ``k_i = q_i^T X^{-1} q_i``.
    weights : (m,) ndarray, optional
        Warm start; defaults to uniform.
    trace : bool
        Record the objective at every iteration.

    Returns
    -------
    SolverResult
    """
    m, d = Q.shape
    if weights is None:
        u = np.full(m, 1.0 / m)
    else:
        u = np.clip(np.asarray(weights, float), 0.0, None)
        u = u / u.sum()
    history = [] if trace else None
    gap = math.inf
    for it in range(max_iter):
        X = (Q.T * u) @ Q
        try:
            L = np.linalg.cholesky(X)
        except np.linalg.LinAlgError:
            raise RankDeficient("points do not span the space") from None
        Y = np.linalg.solve(L, Q.T)
        k = np.einsum("ij,ij->j", Y, Y)
        if trace:
            history.append(2.0 * float(np.log(np.diag(L)).sum()))
        j = int(np.argmax(k))
        support = np.flatnonzero(u > 0)
        i = int(support[np.argmin(k[support])])
        up = k[j] / d - 1.0
        down = 1.0 - k[i] / d
        gap = max(up, down)
        if gap <= eps:
            return SolverResult(u, it, gap, history)
        if up >= down:
            tau = (k[j] - d) / (d * (k[j] - 1.0))
            u *= 1.0 - tau
            u[j] += tau
        else:
            # For k_i <= 1 the objective increases all the way to u_i = 0.
            tau = (k[i] - d) / (d * (k[i] - 1.0)) if k[i] > 1.0 else -math.inf
            drop = u[i] / (1.0 - u[i]) if u[i] < 1.0 else math.inf
            if -tau >= drop:
                u *= 1.0 + drop
                u[i] = 0.0
            else:
                u *= 1.0 - tau
                u[i] += tau
    raise MaxIterations(max_iter, gap)


def _sqrtm(M):
    w, V = np.linalg.eigh(M)
    return (V * np.sqrt(w)) @ V.T


def _check_rank(P):
    n = P.shape[1]
    sv = np.linalg.svd(P, compute_uv=False)
    if len(sv) < n or sv.min() <= 1e-12 * sv.max():
        raise RankDeficient(f"points span fewer than {n} dimensions")


def _antipodal_classes(P, tol):
    reps, cls = [], np.empty(len(P), dtype=np.intp)
    scale = np.abs(P).max()
    for k, p in enumerate(P):
        for r, q in enumerate(reps):
            if np.abs(p - P[q]).max() <= tol * scale or np.abs(p + P[q]).max() <= tol * scale:
                cls[k] = r
                break
        else:
            cls[k] = len(reps)
            reps.append(k)
    return np.asarray(reps), cls


def _contacts(Y, u, eps, barycenter):
    """Weights ``n u_i |y_i|^2`` on points with ``|y_i|^2 >= 1 - 10 eps``."""
    n = Y.shape[1]
    g = np.einsum("ij,ij->i", Y, Y)
    idx = np.flatnonzero((g >= 1.0 - 10.0 * eps) & (n * u * g >= 1e-9))
    U = Y[idx] / np.sqrt(g[idx])[:, None]
    lam = n * u[idx] * g[idx]
    lam *= n / lam.sum()
    cap = math.comb(n + 1, 2) + (n if barycenter else 0)
    if len(idx) > cap:
        try:
            refit = fit_weights(U, tol=math.inf, barycenter=barycenter)
        except InfeasibleDecomposition:  # pragma: no cover
            refit = lam
        keep = refit > 1e-12
        idx, U, lam = idx[keep], U[keep], refit[keep]
    R = (U.T * lam) @ U - np.eye(n)
    bary = float(np.linalg.norm(lam @ U)) if barycenter else None
    return ContactData(U, lam, idx, float(np.linalg.norm(R)), bary)


def mvee_centered(points, eps=1e-8, max_iter=10**6, weights=None):
    """Minimum-volume origin-centred ellipsoid of a symmetric point set.

    The problem is solved over antipodal classes (``v`` and ``-v`` give the
    same rank-one term).

    Returns
    -------
    (Ellipsoid, ContactData)
        Contact indices refer to ``points``; one representative per
        antipodal class is reported.

    Raises
    ------
    NotSymmetric, RankDeficient, MaxIterations
    """
    P = np.asarray(points.vertices if isinstance(points, Polytope) else points,
                   dtype=float)
    if not 0 < eps <= 1e-3:
        raise ValueError("eps must lie in (0, 1e-3]")
    n = P.shape[1]
    scale = np.abs(P).max()
    dist = np.abs(P[:, None, :] + P[None, :, :]).max(axis=2).min(axis=1)
    if np.any(dist > 1e-9 * scale):
        raise NotSymmetric("point set is not symmetric about the origin")
    _check_rank(P)
    reps, _ = _antipodal_classes(P, 1e-12)
    Q = P[reps]
    res = khachiyan(Q, eps, max_iter, weights)
    X = (Q.T * res.weights) @ Q
    M = np.linalg.inv(X) / n
    M = (M + M.T) / 2
    Y = Q @ _sqrtm(M)
    contact = _contacts(Y, res.weights, eps, barycenter=False)
    contact = ContactData(contact.points, contact.weights, reps[contact.indices],
                          contact.residual, None)
    return Ellipsoid(M, np.zeros(n)), contact


def mvee_general(points, eps=1e-8, max_iter=10**6, weights=None):
    """Minimum-volume enclosing ellipsoid with free centre.

    Uses the lift ``x -> (x, 1)`` into ``R^{n+1}``; the contact data also
    reports ``|sum_i w_i u_i|``.
    """
    P = np.asarray(points.vertices if isinstance(points, Polytope) else points,
                   dtype=float)
    if not 0 < eps <= 1e-3:
        raise ValueError("eps must lie in (0, 1e-3]")
    n = P.shape[1]
    _check_rank(P - P.mean(axis=0))
    Q = np.hstack([P, np.ones((len(P), 1))])
    res = khachiyan(Q, eps, max_iter, weights)
    u = res.weights
    c = u @ P
    Z = P - c
    S = (Z.T * u) @ Z
    M = np.linalg.inv(S) / n
    M = (M + M.T) / 2
    Y = Z @ _sqrtm(M)
    return Ellipsoid(M, c), _contacts(Y, u, eps, barycenter=True)


def is_loewner(P, tol=1e-6, eps=1e-10):
    """Whether the unit ball is the minimum-volume ellipsoid of ``P``.

    Returns ``(True, ContactData)`` or ``(False, Ellipsoid)`` where the
    ellipsoid is the actual minimiser.
    """
    V = P.vertices if isinstance(P, Polytope) else np.asarray(P, float)
    r = float(np.linalg.norm(V, axis=1).max())
    if r > 1.0 + tol:
        raise NotContainedInBall(f"vertex at norm {r:.12g} outside the unit ball")
    E, contact = mvee_general(V, eps)
    n = V.shape[1]
    ok = (np.linalg.norm(E.shape - np.eye(n)) <= tol
          and np.linalg.norm(E.center) <= tol)
    return (True, contact) if ok else (False, E)


def john_ellipsoid_symmetric(P, eps=1e-8):
    """Maximum-volume inscribed ellipsoid of an o-symmetric polytope.

    If the Loewner ellipsoid of the polar body has matrix ``M``, the John
    ellipsoid of ``P`` has matrix ``M^{-1}``.
    """
    if not P.is_symmetric():
        raise NotSymmetric("polytope is not o-symmetric")
    E, _ = mvee_centered(polar(P).vertices, eps)
    J = np.linalg.inv(E.shape)
    return Ellipsoid((J + J.T) / 2, np.zeros(P.dim))


def normalization_map(E):
    """Symmetric square root of the shape matrix: maps ``E`` onto the ball."""
    if np.linalg.norm(E.center) > 1e-12:
        raise ValueError("ellipsoid must be centred at the origin")
    return LinearMap(_sqrtm(E.shape))
