"""How diametrical directions spread out in Behrend position.

Every i-dimensional subspace has a diametrical direction within
arccos(sqrt(i/n)) of it and one at least that far away. Greedily picking
directions of largest angle to the span gives a simplex whose volume is
bounded below in terms of n only.
"""
import math

import numpy as np

from isodiam import bodies, behrend_normalize, distribution_check, greedy_simplex_bound, iq
from isodiam.positions import greedy_bound_value, spherical_covering_check

C = bodies.cube(4)
for i in range(1, 4):
    lo, hi = distribution_check(C, np.eye(4)[:i])
    print(f"cube, i={i}: angles in [{lo:.6f}, {hi:.6f}], arccos(sqrt(i/n)) = "
          f"{math.acos(math.sqrt(i / 4)):.6f}")

rng = np.random.default_rng(3)
_, K, _ = behrend_normalize(bodies.random_polytope(3, rng))
basis = rng.standard_normal((2, 3))
lo, hi = distribution_check(K, basis)
print(f"random body, random plane: [{lo:.4f}, {hi:.4f}] around {math.acos(math.sqrt(2 / 3)):.4f}")
print("largest gap to a diametrical direction:", f"{spherical_covering_check(K):.4f}",
      "<=", f"{math.acos(1 / math.sqrt(3)):.4f}")

value, V = greedy_simplex_bound(K)
print(f"greedy simplex {value:.5f} >= guaranteed {greedy_bound_value(3):.5f}; iq = {iq(K):.5f}")
