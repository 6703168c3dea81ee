"""Loewner position and Behrend position are different things.

The sailing boat pentagon has the unit circle as its smallest enclosing
ellipse, but its diametrical chords do not balance. The septagon is the
other way around, provided eps is small enough for the square's diagonals
to stay the longest chords.
"""
from isodiam import bodies, diameter, difference_body, is_behrend, is_loewner

boat = bodies.sailing_boat(0.95)
print("sailing boat: Loewner", is_loewner(boat)[0], " Behrend", is_behrend(boat)[0])
print("  best fit residual on diametrical directions:", f"{is_behrend(boat)[1].residual:.3f}")

for eps in (0.01, 0.05):
    S = bodies.septagon(eps)
    D, pairs = diameter(S)
    print(f"septagon eps={eps}: diameter {D:.4f} (square diagonal {2 * (1 - eps):.4f}),"
          f" Loewner {is_loewner(S)[0]}, Behrend {is_behrend(S)[0]}")

# Behrend position of P is the same as that of its difference body.
for name, P in [("boat", boat), ("septagon 0.01", bodies.septagon(0.01))]:
    print(f"{name}: is_behrend(P) = {is_behrend(P)[0]},"
          f" is_behrend(P - P) = {is_behrend(difference_body(P))[0]}")
