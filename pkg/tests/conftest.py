from itertools import count

import pytest

from lderiv import characters


@pytest.fixture(scope="session")
def chi5():
    return characters.kronecker_character(5)


@pytest.fixture(scope="session")
def chi4():
    return characters.enumerate_primitive(4)[0]


@pytest.fixture(scope="session")
def chi7_complex():
    # an order-6 character mod 7: genuinely complex values
    return next(c for c in characters.enumerate_primitive(7) if c.order == 6)


@pytest.fixture(scope="session")
def chi23():
    return characters.kronecker_character(-23)


@pytest.fixture(scope="session")
def chi229():
    return characters.kronecker_character(229)


def lattice_points(n, x_range, y_range, skip=lambda z: False):
    """Deterministic low-discrepancy points (no RNG anywhere in the suite)."""
    # 2D Kronecker lattice from the plastic number
    a1, a2 = 0.7548776662466927, 0.5698402909980532
    out = []
    for k in count(1):
        if len(out) >= n:
            break
        u = (k * a1) % 1.0
        v = (k * a2) % 1.0
        z = complex(x_range[0] + u * (x_range[1] - x_range[0]),
                    y_range[0] + v * (y_range[1] - y_range[0]))
        if not skip(z):
            out.append(z)
        if k > 100 * n:
            raise RuntimeError("lattice skip predicate too aggressive")
    return out
