"""Vertex-represented polytopes and the metric primitives built on them.

All hull predicates use a single absolute tolerance, ``HULL_TOL``, applied to
data rescaled so that the vertex cloud has circumradius about one.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np
from scipy.spatial import ConvexHull
from scipy.spatial.distance import pdist

from .errors import (DegenerateInput, OriginNotInterior, RankDeficientBasis,
                     ShapeMismatch)

__all__ = [
    "HULL_TOL", "Polytope", "DirectionSet", "LinearMap", "build_polytope",
    "volume", "diameter", "diametrical_directions", "difference_body",
    "support", "width", "min_width", "polar", "iq", "iwq", "subspace_angle",
]

HULL_TOL = 1e-10
ANGULAR_TOL = 1e-8


def _scale(points):
    c = points.mean(axis=0)
    return max(float(np.max(np.linalg.norm(points - c, axis=1))), 1e-300)


def _merge_facets(equations, tol):
    # Qhull triangulates facets; group simplices lying on one hyperplane.
    normals, offsets, groups = [], [], []
    for k, eq in enumerate(equations):
        a, b = eq[:-1], -eq[-1]
        if normals:
            N = np.asarray(normals)
            hit = np.flatnonzero((np.abs(N - a).max(axis=1) < 1e-9)
                                 & (np.abs(np.asarray(offsets) - b) < tol))
            if hit.size:
                groups[hit[0]].append(k)
                continue
        normals.append(a)
        offsets.append(b)
        groups.append([k])
    return np.asarray(normals), np.asarray(offsets), groups


class Polytope:
    """Full-dimensional convex polytope ``conv(vertices)``.

    Instances are immutable; the facet structure is computed eagerly at
    construction. Use :func:`build_polytope` to create one from an arbitrary
    point cloud.
    """

    __slots__ = ("_vertices", "_normals", "_offsets", "_simplices")

    def __init__(self, vertices, normals, offsets, simplices):
        self._vertices = vertices
        self._normals = normals
        self._offsets = offsets
        self._simplices = simplices
        for arr in (vertices, normals, offsets, simplices):
            arr.setflags(write=False)

    @property
    def dim(self):
        return self._vertices.shape[1]

    @property
    def vertices(self):
        return self._vertices

    @property
    def facets(self):
        """Pairs ``(a, b)`` with unit outward normal ``a`` and ``a.x <= b``."""
        return list(zip(self._normals, self._offsets))

    @property
    def normals(self):
        return self._normals

    @property
    def offsets(self):
        return self._offsets

    @property
    def simplices(self):
        """Vertex indices of a triangulation of the boundary."""
        return self._simplices

    def __len__(self):
        return len(self._vertices)

    def __repr__(self):
        return (f"Polytope(dim={self.dim}, vertices={len(self)}, "
                f"facets={len(self._offsets)})")

    def transform(self, A):
        M = A.matrix if isinstance(A, LinearMap) else np.asarray(A, float)
        return build_polytope(self._vertices @ M.T)

    def translate(self, t):
        return build_polytope(self._vertices + np.asarray(t, float))

    def scale(self, s):
        return build_polytope(self._vertices * float(s))

    def contains(self, points, tol=HULL_TOL):
        pts = np.atleast_2d(np.asarray(points, float))
        slack = pts @ self._normals.T - self._offsets
        return np.all(slack <= tol * _scale(self._vertices), axis=1)

    def is_symmetric(self, tol=1e-9):
        V = self._vertices
        d = np.linalg.norm(V[:, None, :] + V[None, :, :], axis=2)
        return bool(np.all(d.min(axis=1) <= tol * _scale(V)))


def build_polytope(points):
    """Convex hull of a point cloud as a :class:`Polytope`.

    Points that are not vertices of the hull are discarded.

    Raises
    ------
    DegenerateInput
        If the points lie in a proper affine subspace; ``rank`` holds the
        dimension of their affine hull.
    """
    pts = np.array(points, dtype=float)
    if pts.ndim != 2 or pts.shape[0] == 0:
        raise ShapeMismatch("expected a nonempty (k, n) array of points")
    n = pts.shape[1]
    if n < 2:
        raise ShapeMismatch("polytopes must have dimension at least 2")
    centered = pts - pts.mean(axis=0)
    sv = np.linalg.svd(centered, compute_uv=False)
    scale = _scale(pts)
    rank = int(np.sum(sv > HULL_TOL * scale * max(1.0, math.sqrt(len(pts)))))
    if rank < n:
        raise DegenerateInput(rank, n)

    tol = HULL_TOL * scale
    hull = ConvexHull(pts)
    V = pts[np.sort(hull.vertices)]
    # Qhull keeps points that sit within roundoff above a facet; a genuine
    # vertex has active facet normals spanning R^n.
    normals, offsets, _ = _merge_facets(hull.equations, tol)
    active = np.abs(V @ normals.T - offsets) <= tol
    keep = [np.linalg.matrix_rank(normals[row], tol=1e-9) == n for row in active]
    if not all(keep):
        V = V[np.asarray(keep)]
        hull = ConvexHull(V)
        V = V[np.sort(hull.vertices)]
    hull = ConvexHull(V)
    normals, offsets, _ = _merge_facets(hull.equations, tol)
    return Polytope(V, normals, offsets, np.asarray(hull.simplices))


@dataclass(frozen=True)
class DirectionSet:
    """A finite set of unit vectors, closed under negation."""

    dim: int
    directions: np.ndarray
    tolerance: float = 0.0

    def __len__(self):
        return len(self.directions)

    def lines(self):
        """One representative per antipodal pair ``{u, -u}``."""
        out = []
        for u in self.directions:
            if not any(np.linalg.norm(u + w) < ANGULAR_TOL for w in out):
                out.append(u)
        return np.asarray(out).reshape(-1, self.dim)


def _symmetric_dirs(dirs, dim, tol):
    out = []
    for u in dirs:
        for s in (u, -u):
            if not any(np.linalg.norm(s - w) < ANGULAR_TOL for w in out):
                out.append(s)
    return DirectionSet(dim, np.asarray(out).reshape(-1, dim), tol)


@dataclass(frozen=True)
class LinearMap:
    """Invertible linear map ``x -> matrix @ x``."""

    matrix: np.ndarray
    det: float = field(init=False)

    def __post_init__(self):
        M = np.array(self.matrix, dtype=float)
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise ShapeMismatch("linear map must be square")
        d = float(np.linalg.det(M))
        if d == 0.0 or not np.isfinite(d):
            raise ValueError("linear map is singular")
        M.setflags(write=False)
        object.__setattr__(self, "matrix", M)
        object.__setattr__(self, "det", d)

    @property
    def dim(self):
        return self.matrix.shape[0]

    @classmethod
    def identity(cls, n):
        return cls(np.eye(n))

    def __call__(self, x):
        if isinstance(x, Polytope):
            return x.transform(self)
        x = np.asarray(x, float)
        return x @ self.matrix.T

    def __matmul__(self, other):
        return LinearMap(self.matrix @ other.matrix)

    def inverse(self):
        return LinearMap(np.linalg.inv(self.matrix))


def volume(P):
    """Volume by a fan of simplices from the vertex centroid."""
    V = P.vertices
    c = V.mean(axis=0)
    S = V[P.simplices] - c
    return float(np.abs(np.linalg.det(S)).sum() / math.factorial(P.dim))


def diameter(P, rel_tol=1e-9):
    """Diameter and all vertex index pairs ``(i, j)``, ``i < j``, attaining it."""
    d = pdist(P.vertices)
    D = float(d.max())
    pairs = [ij for ij, dij in zip(combinations(range(len(P)), 2), d)
             if dij >= (1.0 - rel_tol) * D]
    return D, pairs


def diametrical_directions(P, rel_tol=1e-9):
    if not 0.0 <= rel_tol <= 0.01:
        raise ValueError("rel_tol must lie in [0, 0.01]")
    _, pairs = diameter(P, rel_tol)
    V = P.vertices
    dirs = [(V[i] - V[j]) / np.linalg.norm(V[i] - V[j]) for i, j in pairs]
    return _symmetric_dirs(dirs, P.dim, rel_tol)


def difference_body(P):
    V = P.vertices
    return build_polytope((V[:, None, :] - V[None, :, :]).reshape(-1, P.dim))


def support(P, u):
    return float(np.max(P.vertices @ np.asarray(u, float)))


def width(P, u):
    u = np.asarray(u, float)
    nu = np.linalg.norm(u)
    if nu == 0:
        raise ValueError("direction must be nonzero")
    u = u / nu
    return support(P, u) + support(P, -u)


def min_width(P, rel_tol=1e-7):
    """Minimum width and the set of directions attaining it.

    The width function ``w(P, u)`` is the support function of ``P - P``,
    whose minimum over the sphere is the inradius of ``P - P`` about the
    origin. That minimum is attained exactly at the facet normals of
    ``P - P`` with smallest offset, so no search over the sphere is needed.
    """
    DK = difference_body(P)
    b = DK.offsets
    w = float(b.min())
    sel = DK.normals[b <= (1.0 + rel_tol) * w]
    return w, _symmetric_dirs(sel, P.dim, rel_tol)


def polar(P):
    b = P.offsets
    bad = np.flatnonzero(b <= HULL_TOL * _scale(P.vertices))
    if bad.size:
        k = int(bad[np.argmin(b[bad])])
        raise OriginNotInterior(k, P.normals[k], float(b[k]))
    return build_polytope(P.normals / b[:, None])


def iq(P):
    """Isodiametric quotient ``vol / D**n``."""
    return volume(P) / diameter(P)[0] ** P.dim


def iwq(P):
    """Isominwidth quotient ``vol / w**n``."""
    return volume(P) / min_width(P)[0] ** P.dim


def subspace_angle(basis, v):
    """Angle in ``[0, pi/2]`` between ``span(basis)`` and the vector ``v``.

    ``basis`` holds the spanning vectors as rows.
    """
    B = np.atleast_2d(np.asarray(basis, float))
    v = np.asarray(v, float)
    if B.shape[1] != v.shape[0]:
        raise ShapeMismatch("basis and vector dimensions differ")
    if not np.any(v):
        raise ValueError("vector must be nonzero")
    U, s, _ = np.linalg.svd(B.T, full_matrices=False)
    if s.size == 0 or s.min() <= 1e-12 * max(s.max(), 1.0):
        raise RankDeficientBasis(f"basis of {len(B)} vectors is rank deficient")
    proj = U.T @ v
    perp = v - U @ proj
    return float(math.atan2(np.linalg.norm(perp), np.linalg.norm(proj)))
