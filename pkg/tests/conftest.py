import pytest

from tangent_slopes import parse_poly

# (y-1)^2 - (x-1)^2 x, expanded since the grammar has no parenthesised products
NODE = "y^2 - 2*y + 1 - x^3 + 2*x^2 - x"
CUSP = "y^2 - 2*y + 1 - x^3 + 3*x^2 - 3*x + 1"  # (y-1)^2 - (x-1)^3


@pytest.fixture
def node():
    return parse_poly(NODE)


@pytest.fixture
def cusp():
    return parse_poly(CUSP)


def P(text):
    return parse_poly(text)
