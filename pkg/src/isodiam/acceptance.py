"""Numeric acceptance checks, one function per criterion.

Each check returns ``(passed, detail)``. :func:`run_all` executes them in
order and prints one PASS/FAIL line per criterion; ``isodiam verify-paper``
and the test-suite both go through it.
"""
from __future__ import annotations

import math
import time
import warnings
from dataclasses import dataclass

import numpy as np

from . import bodies
from .decomposition import cauchy_binet_check, sigma_bound_check
from .dr import (dr_lower_bound, dr_search, dr_simplex_value,
                 equiangular_check, max_simplex_volume, witness_library)
from .ellipsoid import is_loewner
from .errors import CertificateError
from .polytope import diameter, diametrical_directions, difference_body, iq, iwq
from .positions import (behrend_normalize, distribution_check,
                        duality_check, greedy_bound_value,
                        greedy_simplex_bound, is_behrend,
                        isominwidth_normalize, spherical_covering_check,
                        uniqueness_check)

__all__ = ["CRITERIA", "Criterion", "run_all", "behrend_fixtures", "fixtures"]

SEPTAGON_EPS = 0.01


def _orth_dev(M):
    n = len(M)
    G = M.T @ M
    c = np.trace(G) / n
    return float(np.linalg.norm(G - c * np.eye(n)) / c)


def fixtures():
    out = {}
    for n in (2, 3, 4):
        out[f"cube{n}"] = bodies.cube(n)
    for n in (2, 3, 4, 5):
        out[f"crosspolytope{n}"] = bodies.crosspolytope(n)
        out[f"regular_simplex{n}"] = bodies.regular_simplex(n)
    out["icosahedron"] = bodies.icosahedron()
    out["sailing_boat(0.95)"] = bodies.sailing_boat(0.95)
    out[f"septagon({SEPTAGON_EPS})"] = bodies.septagon(SEPTAGON_EPS)
    out["septagon(0.05)"] = bodies.septagon(0.05)
    out["triangle(0.5)"] = bodies.triangle(0.5)
    return out


def behrend_fixtures():
    """Exact Behrend-position fixtures plus normalised random bodies."""
    fx = fixtures()
    exact = ("cube", "crosspolytope", "regular_simplex", "icosahedron",
             "triangle", f"septagon({SEPTAGON_EPS})")
    out = {k: P for k, P in fx.items() if k.startswith(exact)}
    for n in (2, 3, 4):
        for s in range(3):
            P = bodies.random_polytope(n, np.random.default_rng([7, n, s]))
            out[f"normalized_random{n}_{s}"] = behrend_normalize(P)[1]
    return out


def _skew(n, seed):
    rng = np.random.default_rng(seed)
    return rng.standard_normal((n, n)) + n * np.eye(n)


def check_crosspolytope():
    worst_q = worst_map = 0.0
    for n in range(2, 6):
        X = bodies.crosspolytope(n)
        for S in (np.eye(n), _skew(n, n)):
            A, body, _ = behrend_normalize(X.transform(S))
            worst_q = max(worst_q, abs(iq(body) - 1 / math.factorial(n)))
            worst_map = max(worst_map, _orth_dev(A.matrix @ S))
    ok = worst_q <= 1e-9 and worst_map <= 1e-6
    return ok, f"max |iq - 1/n!| = {worst_q:.2e}, max map deviation = {worst_map:.2e}"


def check_regular_simplex():
    worst = 0.0
    for n in range(2, 6):
        target = math.sqrt(n + 1) / (math.factorial(n) * 2 ** (n / 2))
        T = bodies.regular_simplex(n)
        for S in (np.eye(n), _skew(n, 10 + n)):
            worst = max(worst, abs(iq(behrend_normalize(T.transform(S))[1]) - target))
    q3 = iq(behrend_normalize(bodies.regular_simplex(3))[1])
    ok = worst <= 1e-6 and abs(q3 - 1 / (6 * math.sqrt(2))) <= 1e-6
    return ok, f"max |iq - sqrt(n+1)/(n! 2^(n/2))| = {worst:.2e}; n=3: {q3:.12g}"


def _symmetric_suite(n):
    for s in range(100):
        yield bodies.random_symmetric_polytope(n, np.random.default_rng([3, n, s]))


def _general_suite(n, count=100):
    for s in range(count):
        yield bodies.random_polytope(n, np.random.default_rng([4, n, s]))


def check_symmetric_bound():
    lines, ok = [], True
    for n in (2, 3, 4):
        low = min(iq(behrend_normalize(P)[1]) for P in _symmetric_suite(n))
        ok &= low >= 1 / math.factorial(n) - 1e-6
        lines.append(f"n={n}: min iq {low:.9f} vs 1/n! {1 / math.factorial(n):.9f}")
    return ok, "; ".join(lines)


def check_asymptotic_bound():
    lines, ok = [], True
    for n in (2, 3, 4):
        bound = dr_lower_bound(math.comb(n + 1, 2), n, n)
        low_sym = min(iq(behrend_normalize(P)[1]) for P in _symmetric_suite(n))
        low_gen = min(iq(behrend_normalize(P)[1]) for P in _general_suite(n))
        ok &= min(low_sym, low_gen) >= bound - 1e-6
        lines.append(f"n={n}: bound {bound:.5f}, min iq symmetric {low_sym:.5f}, "
                     f"general {low_gen:.5f}")
    return ok, "; ".join(lines)


def _loewner_behrend_split(sb, sept):
    """Sailing boat: Loewner but not Behrend; septagon: Behrend but not
    Loewner. Each is also checked on ``(P - P) / D``."""
    def dk(P):
        return difference_body(P).scale(1.0 / diameter(P)[0])
    part_i = is_loewner(sb)[0] and not is_behrend(sb)[0] and not is_loewner(dk(sb))[0]
    part_ii = (is_behrend(sept)[0] and not is_loewner(sept)[0]
               and is_loewner(dk(sept))[0])
    return part_i, part_ii


def check_equivalence():
    fx = fixtures()
    mismatch = [k for k, P in fx.items()
                if is_behrend(P)[0] != is_behrend(difference_body(P))[0]]
    worst = max(behrend_normalize(P)[2].residual for P in fx.values())
    sb = fx["sailing_boat(0.95)"]
    part_i, part_ii = _loewner_behrend_split(sb, fx["septagon(0.05)"])
    small = _loewner_behrend_split(sb, fx[f"septagon({SEPTAGON_EPS})"])[1]
    ok = not mismatch and worst <= 1e-4 and part_i and part_ii
    return ok, (f"equivalence mismatches {mismatch or 'none'}; max certificate residual "
                f"{worst:.2e}; sailing boat Loewner-not-Behrend {part_i}; "
                f"septagon(0.05) Behrend-not-Loewner {part_ii}; "
                f"septagon({SEPTAGON_EPS}) Behrend-not-Loewner {small}")


def check_distribution():
    worst_cube = 0.0
    for n in (2, 3, 4, 5):
        C = bodies.cube(n)
        for i in range(1, n):
            lo, hi = distribution_check(C, np.eye(n)[:i])
            t = math.acos(math.sqrt(i / n))
            worst_cube = max(worst_cube, abs(lo - t), abs(hi - t))
    rng = np.random.default_rng(11)
    cover = []
    for name, P in behrend_fixtures().items():
        n = P.dim
        if not is_behrend(P)[0]:
            raise CertificateError(f"{name} is not in Behrend position")
        dirs = diametrical_directions(P, 1e-6).directions
        for _ in range(100):
            i = int(rng.integers(1, n))
            distribution_check(P, rng.standard_normal((i, n)), directions=dirs)
        cover.append(spherical_covering_check(P, 10_000, seed=5, directions=dirs)
                     - math.acos(1 / math.sqrt(n)))
    ok = worst_cube <= 1e-9
    return ok, (f"cube angle error {worst_cube:.2e}; random subspaces ok; "
                f"covering slack min {-max(cover):.3e}")


def check_greedy():
    worst = math.inf
    for name, P in behrend_fixtures().items():
        value, _ = greedy_simplex_bound(P)
        worst = min(worst, value / greedy_bound_value(P.dim))
    return worst >= 1.0 - 1e-9, f"min greedy value / guaranteed bound = {worst:.6f}"


def check_dr_formulas():
    worst = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for n in range(1, 7):
            for j in range(1, n + 1):
                worst = max(worst, abs(dr_lower_bound(n, n, j) - 1 / math.factorial(j)),
                            abs(dr_lower_bound(n + 1, n, j) - dr_simplex_value(n, j)))
    sharp = []
    for name, (m, n) in {"regular_simplex2": (3, 2), "icosahedron_lines": (6, 3)}.items():
        W = witness_library(name)
        value, _ = max_simplex_volume(W, 2)
        ok_eq, cos, target = equiangular_check(W.decomposition.directions)
        sharp.append(abs(value - dr_lower_bound(m, n, 2)) <= 1e-12 and ok_eq
                     and abs(cos - target) <= 1e-12)
    for n in range(2, 7):
        for j in range(1, n + 1):
            sharp.append(abs(max_simplex_volume(witness_library(f"crosspolytope{n}"), j)[0]
                             - dr_lower_bound(n, n, j)) <= 1e-12)
            sharp.append(abs(max_simplex_volume(witness_library(f"regular_simplex{n}"), j)[0]
                             - dr_simplex_value(n, j)) <= 1e-12)
    ok = worst <= 1e-12 and all(sharp)
    return ok, f"max formula error {worst:.2e}; sharp witnesses {sum(sharp)}/{len(sharp)}"


def stored_witnesses():
    names = [f"crosspolytope{n}" for n in range(2, 7)]
    names += [f"regular_simplex{n}" for n in range(2, 7)]
    names += ["dr533", "icosahedron_lines", "tetrahedron_edges"]
    return {k: witness_library(k) for k in names}


def check_cauchy_binet():
    worst = 0.0
    for W in stored_witnesses().values():
        D = W.decomposition
        for i in range(1, D.dim + 1):
            worst = max(worst, abs(cauchy_binet_check(D, i)[2]))
    return worst <= 1e-9, f"max |C(n,i) - sum| = {worst:.2e}"


def check_sigma_bound():
    rng = np.random.default_rng(2024)
    worst = -math.inf
    for k in range(10_000):
        m = int(rng.integers(1, 11))
        d = int(rng.integers(1, m + 1))
        w = rng.exponential(size=m) * (rng.random(m) < 0.8) * 10 ** rng.uniform(-3, 3)
        sigma, bound = sigma_bound_check(w, d, check=False)
        if bound > 0:
            worst = max(worst, (sigma - bound) / bound)
        elif sigma > 0:
            worst = math.inf
    return worst <= 1e-9, f"max relative excess (sigma - bound)/bound = {worst:.2e}"


def check_dr_search():
    t0 = time.perf_counter()
    lines, ok = [], True
    for m, target in ((5, 1 / 8), (6, 1 / (6 * math.sqrt(2)))):
        W = dr_search(m, 3, seed=1, restarts=64, iters=5000)
        D = W.decomposition
        bound = dr_lower_bound(m, 3, 3)
        ok &= (bound <= W.value <= target + 1e-3 and D.residual < 1e-8
               and D.trace_deviation < 1e-8)
        lines.append(f"DR({m},3,3) search {W.value:.8f} (target {target:.8f}, "
                     f"|diff| {abs(W.value - target):.1e}, residual {D.residual:.1e})")
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 240
    return ok, "; ".join(lines) + f"; {elapsed:.1f}s"


def check_isominwidth():
    worst_cube = max(abs(iwq(isominwidth_normalize(bodies.cube(n).transform(_skew(n, n)))[1]) - 1)
                     for n in (2, 3, 4))
    high = 0.0
    for P in fixtures().values():
        high = max(high, iwq(isominwidth_normalize(P)[1]))
    for n in (2, 3):
        for P in _general_suite(n):
            high = max(high, iwq(isominwidth_normalize(P)[1]))
    tri = bodies.regular_simplex(2)
    tri_err = max(abs(iwq(tri) - 1 / math.sqrt(3)),
                  abs(iwq(isominwidth_normalize(tri.transform(_skew(2, 3)))[1])
                      - 1 / math.sqrt(3)))
    dual = max(abs(duality_check(P) - 4) for P in fixtures().values() if P.is_symmetric())
    ok = worst_cube <= 1e-12 and high <= 1 + 1e-6 and tri_err <= 1e-9 and dual <= 1e-5
    return ok, (f"cube |iwq - 1| {worst_cube:.1e}; max iwq {high:.9f}; "
                f"triangle error {tri_err:.1e}; duality error {dual:.1e}")


def check_uniqueness():
    fx = fixtures()
    cases = [fx["regular_simplex3"], fx["crosspolytope3"], fx["sailing_boat(0.95)"],
             fx[f"septagon({SEPTAGON_EPS})"], fx["icosahedron"]]
    cases += [bodies.random_polytope(n, np.random.default_rng([9, n])) for n in (2, 3, 4)]
    worst = {"behrend": 0.0, "isominwidth": 0.0}
    for kind in worst:
        for P in cases:
            worst[kind] = max(worst[kind], uniqueness_check(P, range(10), kind, tol=math.inf))
    ok = max(worst.values()) <= 1e-5
    return ok, (f"max deviation Behrend {worst['behrend']:.2e}, "
                f"isominwidth {worst['isominwidth']:.2e}")


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    check: object


CRITERIA = [
    Criterion(1, "crosspolytope equality", check_crosspolytope),
    Criterion(2, "regular simplex value", check_regular_simplex),
    Criterion(3, "symmetric lower bound", check_symmetric_bound),
    Criterion(4, "asymptotic bound", check_asymptotic_bound),
    Criterion(5, "equivalence theorem", check_equivalence),
    Criterion(6, "distribution lemma", check_distribution),
    Criterion(7, "greedy simplex bound", check_greedy),
    Criterion(8, "DR formulas and sharpness", check_dr_formulas),
    Criterion(9, "Cauchy-Binet identity", check_cauchy_binet),
    Criterion(10, "symmetric-polynomial bound", check_sigma_bound),
    Criterion(11, "DR search reproduction", check_dr_search),
    Criterion(12, "isominwidth", check_isominwidth),
    Criterion(13, "uniqueness", check_uniqueness),
]


def run_criterion(c):
    t0 = time.perf_counter()
    try:
        ok, detail = c.check()
    except Exception as exc:  # a raised certificate error is a failure
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return bool(ok), detail, time.perf_counter() - t0


def run_all(select=None, out=print):
    """Run the selected criteria (all by default); return ``{number: ok}``."""
    results = {}
    for c in CRITERIA:
        if select and c.number not in select:
            continue
        ok, detail, dt = run_criterion(c)
        results[c.number] = ok
        out(f"{'PASS' if ok else 'FAIL'} [{c.number:02d}] {c.title} ({dt:.1f}s): {detail}")
    return results
