"""Lower bounds and searched upper bounds for DR(m, n, n).

Whatever decomposition of I_n into m rank-one terms is given, some n of the
directions span a simplex of at least the Cauchy-Binet bound. A randomised
search over decompositions looks for configurations where every simplex is
small, which bounds DR from above.
"""
import math

from isodiam import dr_lower_bound, dr_search, max_simplex_volume, witness_library
from isodiam.decomposition import cauchy_binet_check

W = witness_library("dr533")
print(f"stored 5-direction witness: largest simplex {W.value:.12f} at {W.subset}")
for i in range(1, 4):
    lhs, rhs, _ = cauchy_binet_check(W.decomposition, i)
    print(f"  Cauchy-Binet i={i}: C(3,{i}) = {lhs:.0f}, weighted Gram minors sum to {rhs:.12f}")

for m in (3, 4, 5, 6):
    found = dr_search(m, 3, seed=1, restarts=16, iters=2000)
    print(f"DR({m},3,3): bound {dr_lower_bound(m, 3, 3):.6f} <= DR <= {found.value:.6f}")

ico = witness_library("icosahedron_lines")
print("icosahedron lines, pairs:", f"{max_simplex_volume(ico, 2)[0]:.6f}",
      "= bound", f"{dr_lower_bound(6, 3, 2):.6f}")
print("regular tetrahedron value 1/(6 sqrt 2) =", f"{1 / (6 * math.sqrt(2)):.6f}")
