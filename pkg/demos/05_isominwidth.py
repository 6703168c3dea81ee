"""Isominwidth position: minimise volume over minimum width to the n.

The John ellipsoid of the difference body scaled by its minimum width is
mapped to the ball. Cubes reach iwq = 1 and the regular triangle keeps
1/sqrt(3), the smallest value in the plane.
"""
import math

import numpy as np

from isodiam import bodies, duality_check, isominwidth_normalize, iwq, min_width

box = bodies.cube(3).transform(np.diag([3.0, 1.0, 0.4]))
_, body, cert = isominwidth_normalize(box)
print(f"box: iwq {iwq(box):.4f} -> {iwq(body):.12f}, certificate residual {cert.residual:.1e}")

T = bodies.regular_simplex(2).transform([[2.0, 0.7], [0.0, 0.5]])
_, T2, _ = isominwidth_normalize(T)
print(f"skewed triangle: iwq {iwq(T):.6f} -> {iwq(T2):.12f} (1/sqrt 3 = {1 / math.sqrt(3):.12f})")

w, dirs = min_width(T2)
print("minimal-width directions:", np.round(dirs.lines(), 4).tolist())

for n in (2, 3, 4):
    print(f"crosspolytope {n}: w(K) D(K*) = {duality_check(bodies.crosspolytope(n)):.10f}")
