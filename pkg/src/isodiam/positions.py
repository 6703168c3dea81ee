"""Behrend (isodiametric) and isominwidth positions of polytopes.

Both normalisations go through the difference body: a body is in Behrend
position iff its difference body scaled by ``1/D`` has the unit ball as
minimum-volume enclosing ellipsoid, and in isominwidth position iff the
difference body scaled by ``1/w`` has the unit ball as maximum-volume
inscribed ellipsoid.

Default tolerance chain for certificates: solver ``eps = 1e-8``, extremal
direction slack ``rel_tol = 1e-6``, decomposition residual ``1e-4``
(Behrend) and ``1e-3`` (isominwidth).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import ortho_group

from .decomposition import IdentityDecomposition, fit_weights
from .errors import (CertificateError, InfeasibleDecomposition,
                     NotInBehrendPosition, NotSymmetric)
from .ellipsoid import (john_ellipsoid_symmetric, mvee_centered,
                        normalization_map)
from .polytope import (LinearMap, diameter, diametrical_directions,
                       difference_body, iq, iwq, min_width, polar,
                       subspace_angle)

__all__ = ["PositionCertificate", "behrend_normalize", "is_behrend",
           "isominwidth_normalize", "is_isominwidth", "distribution_check",
           "spherical_covering_check", "greedy_simplex_bound",
           "duality_check", "uniqueness_check", "greedy_bound_value"]


@dataclass(frozen=True)
class PositionCertificate:
    kind: str
    map: LinearMap
    quotient_before: float
    quotient_after: float
    decomposition: IdentityDecomposition
    residual: float
    tolerance: float

    @property
    def certified(self):
        return self.residual <= self.tolerance


def _slack(eps):
    return 100.0 * eps + 1e-12


def _decompose(lines, tol):
    """Best nonnegative fit over the given lines, feasible or not."""
    try:
        w = fit_weights(lines, tol)
    except InfeasibleDecomposition as exc:
        w = exc.weights
    keep = w > 0
    D = IdentityDecomposition(lines[keep], w[keep], tolerance=tol)
    return D, D.residual


def behrend_normalize(P, eps=1e-8, rel_tol=1e-6, tol=1e-4):
    """Map ``P`` into Behrend position.

    The minimum-volume centred ellipsoid of ``(P - P) / D(P)`` is computed
    and its normalising map is applied to ``P``. The certificate holds an
    identity decomposition over the diametrical directions of the image.

    Returns
    -------
    (LinearMap, Polytope, PositionCertificate)

    Raises
    ------
    CertificateError
        If the image fails to certify at ``tol`` or the quotient decreased.
    """
    D = diameter(P)[0]
    DK = difference_body(P)
    E, _ = mvee_centered(DK.vertices / D, eps)
    A = normalization_map(E)
    body = P.transform(A)
    lines = diametrical_directions(body, rel_tol).lines()
    dec, res = _decompose(lines, tol)
    cert = PositionCertificate("behrend", A, iq(P), iq(body), dec, res, tol)
    if not cert.certified:
        raise CertificateError(f"Behrend certificate residual {res:.3e} > {tol:.1e}")
    # The quotients are not smooth at the optimum, so a shape error of
    # order eps moves them by order eps.
    if cert.quotient_after < cert.quotient_before * (1.0 - _slack(eps)):
        raise CertificateError("isodiametric quotient decreased")
    return A, body, cert


def is_behrend(P, tol=1e-4):
    """Whether the diametrical directions of ``P`` decompose the identity.

    Diametrical directions are admitted with relative slack ``tol / 100``.
    Returns ``(bool, PositionCertificate)``; on failure the certificate
    carries the best fit, whose residual is the witness.
    """
    lines = diametrical_directions(P, tol / 100).lines()
    dec, res = _decompose(lines, tol)
    q = iq(P)
    cert = PositionCertificate("behrend", LinearMap.identity(P.dim), q, q,
                               dec, res, tol)
    return cert.certified, cert


def isominwidth_normalize(P, eps=1e-8, rel_tol=1e-6, tol=1e-3):
    """Map ``P`` into isominwidth position via the John ellipsoid of
    ``(P - P) / w(P)``.

    Returns
    -------
    (LinearMap, Polytope, PositionCertificate)
    """
    w = min_width(P)[0]
    DK = difference_body(P).scale(1.0 / w)
    A = normalization_map(john_ellipsoid_symmetric(DK, eps))
    body = P.transform(A)
    lines = min_width(body, rel_tol)[1].lines()
    dec, res = _decompose(lines, tol)
    cert = PositionCertificate("isominwidth", A, iwq(P), iwq(body), dec, res, tol)
    if not cert.certified:
        raise CertificateError(f"isominwidth certificate residual {res:.3e} > {tol:.1e}")
    if cert.quotient_after > cert.quotient_before * (1.0 + _slack(eps)):
        raise CertificateError("isominwidth quotient increased")
    if cert.quotient_after > 1.0 + 1e-6:
        raise CertificateError(f"iwq {cert.quotient_after} exceeds 1")
    return A, body, cert


def is_isominwidth(P, tol=1e-3):
    lines = min_width(P, tol / 100)[1].lines()
    dec, res = _decompose(lines, tol)
    q = iwq(P)
    cert = PositionCertificate("isominwidth", LinearMap.identity(P.dim), q, q,
                               dec, res, tol)
    return cert.certified, cert


def _behrend_directions(P, check):
    if check and not is_behrend(P, 1e-4)[0]:
        raise NotInBehrendPosition("diametrical directions do not decompose I_n")
    return diametrical_directions(P, 1e-6).directions


def distribution_check(P, basis, tol=1e-6, directions=None):
    """Extreme angles between a subspace and the diametrical directions.

    For a body in Behrend position and an ``i``-dimensional subspace ``L``
    some diametrical direction is within ``arccos(sqrt(i/n))`` of ``L`` and
    some other is at least that far.

    Returns
    -------
    (min_angle, max_angle)
    """
    dirs = _behrend_directions(P, True) if directions is None else directions
    B = np.atleast_2d(np.asarray(basis, float))
    angles = [subspace_angle(B, v) for v in dirs]
    lo, hi = min(angles), max(angles)
    target = math.acos(math.sqrt(np.linalg.matrix_rank(B) / P.dim))
    if lo > target + tol or hi < target - tol:
        raise CertificateError(
            f"angles [{lo:.9f}, {hi:.9f}] miss arccos(sqrt(i/n)) = {target:.9f}")
    return lo, hi


def spherical_covering_check(P, samples=10_000, seed=0, directions=None):
    """Largest angle from a random unit vector to the nearest diametrical
    direction; must not exceed ``arccos(1/sqrt(n))``."""
    dirs = _behrend_directions(P, True) if directions is None else directions
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((samples, P.dim))
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    worst = float(np.arccos(np.clip((X @ dirs.T).max(axis=1), -1, 1)).max())
    bound = math.acos(1.0 / math.sqrt(P.dim))
    if worst > bound + 1e-9:
        raise CertificateError(f"uncovered point at angle {worst} > {bound}")
    return worst


def greedy_bound_value(n):
    """``1 / (sqrt(n!) n^(n/2))``."""
    return 1.0 / (math.sqrt(math.factorial(n)) * n ** (n / 2))


def greedy_simplex_bound(P, check=True):
    """Greedily pick diametrical directions spanning a large simplex.

    Start from the first listed direction, then repeatedly add the one
    with the largest angle to the span of those chosen so far.

    Returns
    -------
    (value, directions)
        ``|det(v_1, ..., v_n)| / n!`` and the chosen directions as rows.
    """
    dirs = _behrend_directions(P, check)
    n = P.dim
    chosen = [dirs[0]]
    for _ in range(n - 1):
        angles = [subspace_angle(chosen, v) for v in dirs]
        chosen.append(dirs[int(np.argmax(angles))])
    V = np.asarray(chosen)
    value = abs(float(np.linalg.det(V))) / math.factorial(n)
    if value < greedy_bound_value(n) - 1e-9:
        raise CertificateError(f"greedy value {value} below the guaranteed bound")
    if iq(P) < value - 1e-9:
        raise CertificateError(f"iq {iq(P)} below greedy simplex value {value}")
    return value, V


def duality_check(P, tol=1e-5):
    """``w(P) * D(P*)`` for o-symmetric ``P``; equals 4."""
    if not P.is_symmetric():
        raise NotSymmetric("polytope is not o-symmetric")
    value = min_width(P)[0] * diameter(polar(P))[0]
    if abs(value - 4.0) > tol:
        raise CertificateError(f"w(P) D(P*) = {value}, expected 4")
    return value


def _rotation(seed, n):
    if seed is None:
        return np.eye(n)
    return ortho_group.rvs(n, random_state=seed)


def uniqueness_check(P, seeds, kind="behrend", eps=1e-8, tol=1e-5):
    """Max deviation from orthogonal-times-scalar of composite maps.

    For each seed the body is rotated by a random orthogonal ``Q`` and
    normalised by ``A_s``; ``B = A_s Q A_0^{-1}`` must satisfy
    ``||B^T B - c I||_F / c <= tol``. A seed of ``None`` means ``Q = I``.
    """
    normalize = {"behrend": behrend_normalize,
                 "isominwidth": isominwidth_normalize}[kind]
    A0 = normalize(P, eps)[0]
    A0inv = np.linalg.inv(A0.matrix)
    n = P.dim
    worst = 0.0
    for seed in seeds:
        Q = _rotation(seed, n)
        As = normalize(P.transform(Q), eps)[0]
        B = As.matrix @ Q @ A0inv
        G = B.T @ B
        c = np.trace(G) / n
        worst = max(worst, float(np.linalg.norm(G - c * np.eye(n)) / c))
    if worst > tol:
        raise CertificateError(f"normalisation not unique: deviation {worst:.3e}")
    return worst
