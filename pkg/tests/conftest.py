import numpy as np
import pytest

from isodiam import bodies


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def fixture_bodies():
    out = {f"cube{n}": bodies.cube(n) for n in (2, 3, 4)}
    out.update({f"crosspolytope{n}": bodies.crosspolytope(n) for n in (2, 3, 4)})
    out.update({f"regular_simplex{n}": bodies.regular_simplex(n) for n in (2, 3, 4)})
    out["icosahedron"] = bodies.icosahedron()
    out["sailing_boat"] = bodies.sailing_boat(0.95)
    out["septagon"] = bodies.septagon(0.01)
    return out


FIXTURES = fixture_bodies()
SYMMETRIC = {k: P for k, P in FIXTURES.items() if P.is_symmetric()}
