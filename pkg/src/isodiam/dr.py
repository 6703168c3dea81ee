"""Dvoretzky-Rogers-type constants ``DR(m, n, j)``.

``DR(m, n, j)`` is the largest volume ``v`` such that every decomposition
of ``I_n`` into ``m`` weighted rank-one terms ``u u^T`` contains ``j``
directions with ``vol_j(conv{0, u_1, ..., u_j}) >= v``.
"""
from __future__ import annotations

import math
import re
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .bodies import icosahedron_vertices, simplex_vertices
from .decomposition import IdentityDecomposition, gram_minors, SUBSET_CAP
from .errors import InvalidQuery, UnknownWitness

__all__ = ["DRQuery", "DRWitness", "dr_lower_bound", "dr_simplex_value",
           "conjectured_value", "max_simplex_volume", "dr_search",
           "equiangular_check", "witness_library", "WITNESS_NAMES"]


@dataclass(frozen=True)
class DRQuery:
    """Parameters ``1 <= j <= n <= m``; ``m`` above ``C(n+1, 2)`` is clamped,
    since ``DR`` is constant from there on."""

    m: int
    n: int
    j: int
    clamped_from: int | None = field(default=None, compare=False)

    def __post_init__(self):
        m, n, j = self.m, self.n, self.j
        if not all(isinstance(v, (int, np.integer)) for v in (m, n, j)):
            raise InvalidQuery("m, n, j must be integers")
        if not 1 <= j <= n <= m:
            raise InvalidQuery(f"need 1 <= j <= n <= m, got ({m}, {n}, {j})")
        top = math.comb(n + 1, 2)
        if m > top:
            warnings.warn(f"DR({m},{n},{j}) = DR({top},{n},{j}); clamping m",
                          stacklevel=3)
            object.__setattr__(self, "clamped_from", int(m))
            object.__setattr__(self, "m", top)


def _query(m, n=None, j=None):
    return m if isinstance(m, DRQuery) else DRQuery(m, n, j)


def dr_lower_bound(m, n=None, j=None):
    """Cauchy-Binet lower bound
    ``sqrt(C(n, j) (m/n)^j / (C(m, j) (j!)^2))``, in log-gamma arithmetic."""
    q = _query(m, n, j)
    m, n, j = q.m, q.n, q.j
    lc = math.lgamma
    log_sq = ((lc(n + 1) - lc(j + 1) - lc(n - j + 1))
              + j * math.log(m / n)
              - (lc(m + 1) - lc(j + 1) - lc(m - j + 1))
              - 2.0 * lc(j + 1))
    return math.exp(0.5 * log_sq)


def dr_simplex_value(n, j):
    """``DR(n+1, n, j)``, attained by the vertices of a regular simplex."""
    if not 1 <= j <= n:
        raise InvalidQuery(f"need 1 <= j <= n, got n={n}, j={j}")
    value = math.sqrt((n - j + 1) * (n + 1) ** (j - 1)
                      / (n**j * math.factorial(j) ** 2))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        bound = dr_lower_bound(n + 1, n, j)
    if abs(value - bound) > 1e-12:  # pragma: no cover
        raise ArithmeticError(f"closed form {value} != bound {bound}")
    return value


def conjectured_value(n):
    """``sqrt(n+1) / (n! 2^(n/2))``, the regular simplex's isodiametric
    quotient; conjecturally equal to ``DR(C(n+1, 2), n, n)``."""
    return math.sqrt(n + 1) / (math.factorial(n) * 2 ** (n / 2))


def _decomposition_of(D):
    if isinstance(D, DRWitness):
        return D.decomposition
    return D


def max_simplex_volume(D, j, cap=SUBSET_CAP):
    """Largest ``vol_j(conv{0, u_J})`` over ``j``-subsets of the directions.

    Returns
    -------
    (value, subset)
        ``subset`` is a tuple of 0-based indices; ties go to the
        lexicographically smallest subset.
    """
    D = _decomposition_of(D)
    if not 1 <= j <= D.dim:
        raise InvalidQuery(f"need 1 <= j <= {D.dim}")
    best, best_J = -1.0, None
    for J, dets in gram_minors(D.directions, j, cap):
        k = int(np.argmax(dets))
        if dets[k] > best * (1.0 + 1e-12) + 1e-300:
            best, best_J = float(dets[k]), tuple(int(x) for x in J[k])
    value = math.sqrt(max(best, 0.0)) / math.factorial(j)
    return value, best_J


@dataclass(frozen=True)
class DRWitness:
    decomposition: IdentityDecomposition
    value: float
    subset: tuple
    name: str | None = None

    @property
    def m(self):
        return self.decomposition.size

    @property
    def n(self):
        return self.decomposition.dim


def _witness(dirs, weights, name=None, tol=1e-12):
    D = IdentityDecomposition(np.asarray(dirs, float), weights, tolerance=tol)
    value, subset = max_simplex_volume(D, D.dim)
    return DRWitness(D, value, subset, name)


# --- search -----------------------------------------------------------------

def _project(W):
    # Polar factor (W W^T)^{-1/2} W: rows become orthonormal.
    w, V = np.linalg.eigh(W @ np.swapaxes(W, -1, -2))
    G = (V / np.sqrt(w)[..., None, :]) @ np.swapaxes(V, -1, -2)
    return G @ W


def _objective(W, subsets, n):
    norms = np.linalg.norm(W, axis=-2)
    dead = norms < 1e-10
    U = W / np.where(dead, 1.0, norms)[..., None, :]
    sub = np.moveaxis(U[..., :, subsets], -3, -2)
    vols = np.abs(np.linalg.det(sub))
    vols = np.where(dead[..., subsets].any(axis=-1), 0.0, vols)
    return vols.max(axis=-1) / math.factorial(n)


def _anneal(m, n, seeds, iters, sigma, temp):
    """Run one simulated-annealing chain per seed, vectorised over chains."""
    subsets = np.array(list(combinations(range(m), n)), dtype=np.intp)
    gens = [np.random.default_rng(s) for s in seeds]
    W = _project(np.stack([g.standard_normal((n, m)) for g in gens]))
    noise = np.stack([g.standard_normal((iters, n, m)) for g in gens], axis=1)
    coins = np.stack([g.random(iters) for g in gens], axis=1)
    f = _objective(W, subsets, n)
    best, best_W = f.copy(), W.copy()
    for t in range(iters):
        Wp = _project(W + sigma[t] * noise[t])
        fp = _objective(Wp, subsets, n)
        with np.errstate(over="ignore"):
            accept = (fp <= f) | (coins[t] < np.exp((f - fp) / temp[t]))
        W = np.where(accept[:, None, None], Wp, W)
        f = np.where(accept, fp, f)
        better = f < best
        best = np.where(better, f, best)
        best_W = np.where(better[:, None, None], W, best_W)
    return best, best_W


def dr_search(m, n, seed, restarts=64, iters=5000, threads=1,
              sigma=(0.3, 1e-4), temperature=(1e-2, 1e-6)):
    """Randomised upper bound on ``DR(m, n, n)``.

    Minimises the largest simplex volume over decompositions written as
    ``W`` with orthonormal rows, ``w_i = sqrt(lambda_i) u_i``. Each restart
    anneals from a Gaussian start with step size and temperature decaying
    geometrically. Restart ``r`` draws from ``default_rng([seed, r])``, so
    results do not depend on ``threads``.

    Returns
    -------
    DRWitness
        The best decomposition found; ties go to the lowest restart index.
    """
    if not (1 <= n <= 4 and n <= m <= 10):
        raise InvalidQuery(f"dr_search is limited to n <= 4, n <= m <= 10; got m={m}, n={n}")
    if restarts < 1 or iters < 2:
        raise InvalidQuery("need restarts >= 1 and iters >= 2")
    steps = np.arange(iters) / (iters - 1)
    sig = sigma[0] * (sigma[1] / sigma[0]) ** steps
    temp = temperature[0] * (temperature[1] / temperature[0]) ** steps
    seeds = [[int(seed), r] for r in range(restarts)]
    threads = max(1, min(int(threads), restarts))
    chunks = [seeds[k::threads] for k in range(threads)] if threads > 1 else [seeds]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(lambda s: _anneal(m, n, s, iters, sig, temp), chunks))
    best = np.empty(restarts)
    best_W = np.empty((restarts, n, m))
    for k, (b, Wb) in enumerate(parts):
        idx = [s[1] for s in chunks[k]]
        best[idx], best_W[idx] = b, Wb
    r = int(np.argmin(best))
    W = best_W[r]
    norms = np.linalg.norm(W, axis=0)
    keep = norms >= 1e-10
    return _witness((W[:, keep] / norms[keep]).T, norms[keep] ** 2,
                    name=f"search(m={m},n={n},seed={seed},restart={r})", tol=1e-8)


# --- equiangular lines and stored witnesses ----------------------------------

def equiangular_check(dirs, tol=1e-9):
    """Whether all pairwise ``|u_k . u_l|`` agree.

    Returns ``(ok, common_cos, target)``, with ``target = 1/sqrt(n+2)``
    and ``common_cos`` ``None`` when the lines are not equiangular.
    """
    U = np.atleast_2d(np.asarray(dirs, float))
    if len(U) < 2:
        raise ValueError("need at least two directions")
    U = U / np.linalg.norm(U, axis=1, keepdims=True)
    iu = np.triu_indices(len(U), 1)
    c = np.abs(U @ U.T)[iu]
    target = 1.0 / math.sqrt(U.shape[1] + 2)
    if c.max() - c.min() <= tol:
        return True, float(c.mean()), target
    return False, None, target


def _crosspolytope(n):
    return _witness(np.eye(n), np.ones(n), f"crosspolytope{n}")


def _regular_simplex(n):
    return _witness(simplex_vertices(n), np.full(n + 1, n / (n + 1)),
                    f"regular_simplex{n}")


def _dr533():
    h = math.sqrt(3.0) / 2.0
    U = np.array([[0.0, h, -h, 0.0, 0.0],
                  [0.0, 0.0, 0.0, h, -h],
                  [1.0, 0.5, 0.5, -0.5, -0.5]])
    lam = np.array([1 / 3, 2 / 3, 2 / 3, 2 / 3, 2 / 3])
    return _witness(U.T, lam, "dr533")


def _icosahedron_lines():
    V = icosahedron_vertices()
    lines = []
    for v in V:
        if not any(np.allclose(v, -w) for w in lines):
            lines.append(v)
    return _witness(np.array(lines), np.full(6, 0.5), "icosahedron_lines")


def _tetrahedron_edges():
    # Edge directions of a regular tetrahedron: six face diagonals of a cube.
    s = 1.0 / math.sqrt(2.0)
    U = np.array([[s, s, 0], [s, -s, 0], [s, 0, s],
                  [s, 0, -s], [0, s, s], [0, s, -s]])
    return _witness(U, np.full(6, 0.5), "tetrahedron_edges")


WITNESS_NAMES = ("crosspolytope<n>", "regular_simplex<n>", "dr533",
                 "icosahedron_lines", "tetrahedron_edges")


def witness_library(name, n=None):
    """Stored decompositions with exact coordinates.

    ``name`` is one of ``crosspolytope``, ``regular_simplex`` (with ``n``
    given separately or appended, e.g. ``"crosspolytope4"``), ``dr533``,
    ``icosahedron_lines`` or ``tetrahedron_edges``.
    """
    fixed = {"dr533": _dr533, "icosahedron_lines": _icosahedron_lines,
             "tetrahedron_edges": _tetrahedron_edges}
    if name in fixed:
        return fixed[name]()
    match = re.fullmatch(r"(crosspolytope|regular_simplex)_?(\d+)?", name)
    if match is None:
        raise UnknownWitness(name)
    kind, digits = match.groups()
    dim = int(digits) if digits else n
    if dim is None or not 1 <= dim <= 8:
        raise UnknownWitness(f"{name}: dimension in [1, 8] required")
    return _crosspolytope(dim) if kind == "crosspolytope" else _regular_simplex(dim)
