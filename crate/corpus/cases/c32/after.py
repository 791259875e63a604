from minishop.cart import Cart
import pytest


@pytest.fixture
def cart():
    cart = Cart()
    cart.add("pen", 2, 3.0)
    yield cart
    cart.clear()


def test_seeded_quantity(cart):
    assert cart.quantity("pen") == 2


def test_total_reflects_seed(cart):
    assert cart.total() == 6.0
