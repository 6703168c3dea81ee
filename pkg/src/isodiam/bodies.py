"""Canonical bodies with exact vertex coordinates, plus seeded random ones."""
from __future__ import annotations

import math

import numpy as np

from .errors import ParamOutOfRange
from .polytope import build_polytope

__all__ = ["make_body", "cube", "crosspolytope", "regular_simplex",
           "icosahedron", "sailing_boat", "septagon", "triangle",
           "random_polytope", "random_symmetric_polytope", "BODY_KINDS"]


def _check_dim(n):
    if not (isinstance(n, (int, np.integer)) and 2 <= n <= 8):
        raise ParamOutOfRange(f"dimension must be an integer in [2, 8], got {n}")
    return int(n)


def cube(n):
    """Vertices of ``[-1, 1]^n``."""
    n = _check_dim(n)
    V = np.array(np.meshgrid(*[[-1.0, 1.0]] * n, indexing="ij"))
    return build_polytope(V.reshape(n, -1).T)


def crosspolytope(n):
    n = _check_dim(n)
    I = np.eye(n)
    return build_polytope(np.vstack([I, -I]))


def simplex_vertices(n):
    """Unit vectors of a regular simplex centred at the origin, one per row."""
    E = np.eye(n + 1) - 1.0 / (n + 1)
    Q, _ = np.linalg.qr(E[:, :n])
    V = E @ Q
    return V / np.linalg.norm(V, axis=1, keepdims=True)


def regular_simplex(n):
    """Regular simplex with circumcentre at the origin and circumradius 1."""
    return build_polytope(simplex_vertices(_check_dim(n)))


def icosahedron_vertices():
    phi = (1.0 + math.sqrt(5.0)) / 2.0
    V = []
    for a in (-1.0, 1.0):
        for b in (-phi, phi):
            V += [(0.0, a, b), (a, b, 0.0), (b, 0.0, a)]
    V = np.array(V)
    return V / np.linalg.norm(V, axis=1, keepdims=True)


def icosahedron():
    return build_polytope(icosahedron_vertices())


def triangle(r):
    """``T_r = conv{(0, 1), (+-sqrt(1 - r^2), -r)}`` for ``0 <= r < 1``."""
    if not 0.0 <= r < 1.0:
        raise ParamOutOfRange(f"triangle requires 0 <= r < 1, got {r}")
    s = math.sqrt(1.0 - r * r)
    return build_polytope([(0.0, 1.0), (s, -r), (-s, -r)])


def sailing_boat(r):
    """Pentagon ``conv{(0,1), (+-sqrt(3)/2, -1/2), (+-sqrt(1-r^2), -r)}``."""
    if not math.sqrt(3.0) / 2.0 < r <= 1.0:
        raise ParamOutOfRange(f"sailing boat requires sqrt(3)/2 < r <= 1, got {r}")
    h = math.sqrt(3.0) / 2.0
    s = math.sqrt(1.0 - r * r)
    return build_polytope([(0.0, 1.0), (h, -0.5), (-h, -0.5), (s, -r), (-s, -r)])


def septagon(eps):
    """``conv{(1 - eps) Q_2, T_{1/2 - eps}}`` with ``Q_2`` the square inscribed
    in the unit circle.

    Only for ``eps`` below roughly 0.02 is the diameter attained on the
    square's diagonals; above that the square-to-triangle chords are longer.
    """
    if not 0.0 < eps <= 0.1:
        raise ParamOutOfRange(f"septagon requires 0 < eps <= 0.1, got {eps}")
    q = (1.0 - eps) / math.sqrt(2.0)
    r = 0.5 - eps
    s = math.sqrt(1.0 - r * r)
    return build_polytope([(q, q), (q, -q), (-q, q), (-q, -q),
                           (0.0, 1.0), (s, -r), (-s, -r)])


BODY_KINDS = {
    "cube": cube,
    "crosspolytope": crosspolytope,
    "regular_simplex": regular_simplex,
    "icosahedron": icosahedron,
    "sailing_boat": sailing_boat,
    "septagon": septagon,
    "triangle": triangle,
}


def make_body(kind, *args, **params):
    try:
        factory = BODY_KINDS[kind]
    except KeyError:
        raise ParamOutOfRange(
            f"unknown body {kind!r}; choose from {sorted(BODY_KINDS)}") from None
    return factory(*args, **params)


def _random_map(n, rng, spread):
    Q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    return Q * np.exp(rng.uniform(-spread, spread, n))


def random_polytope(n, rng, k=None, spread=1.0):
    """Convex hull of ``k`` Gaussian points under a random skewing map."""
    rng = np.random.default_rng(rng)
    k = int(rng.integers(n + 1, n + 7)) if k is None else k
    P = rng.standard_normal((k, n)) @ _random_map(n, rng, spread).T
    return build_polytope(P)


def random_symmetric_polytope(n, rng, k=None, spread=1.0):
    """Hull of ``k`` Gaussian points and their negatives, randomly skewed."""
    rng = np.random.default_rng(rng)
    k = int(rng.integers(n, n + 5)) if k is None else k
    P = rng.standard_normal((k, n)) @ _random_map(n, rng, spread).T
    return build_polytope(np.vstack([P, -P]))
