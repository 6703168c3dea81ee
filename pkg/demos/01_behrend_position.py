"""Normalising a polytope into Behrend position.

A random skewed polytope is mapped by the linear map that turns the
minimum-volume ellipsoid of its difference body into a ball. Afterwards
the diameter-realising directions decompose the identity.
"""
import numpy as np

from isodiam import bodies, behrend_normalize, diameter, iq

rng = np.random.default_rng(0)
P = bodies.random_polytope(3, rng)
print("vertices:", len(P.vertices), " iq before:", f"{iq(P):.6f}")

A, body, cert = behrend_normalize(P)
print("iq after: ", f"{iq(body):.6f}")
print("normalising map:\n", np.round(A.matrix, 4))

# The certificate: weights on diametrical directions summing to I_3.
D = cert.decomposition
print("diameter", f"{diameter(body)[0]:.6f}", "attained along", D.size, "directions")
print("weights:", np.round(D.weights, 4), " sum =", round(D.weights.sum(), 10))
print("residual ||sum w u u^T - I||_F =", f"{cert.residual:.2e}")

# Crosspolytopes reach 1/n! and nothing symmetric does better.
for n in (2, 3, 4):
    _, X, _ = behrend_normalize(bodies.crosspolytope(n).transform(rng.standard_normal((n, n))))
    print(f"n={n}: skewed crosspolytope normalises to iq = {iq(X):.12f}")
