"""Cart arithmetic on the quantity-tracking API."""

from minishop.cart import Cart


def test_total_sums_quantities():
    cart = Cart()
    cart.add("pen", 2, 3.0)
    cart.add("ink", 1, 9.5
    assert cart.total() == 15.5
    assert cart.quantity("pen") == 2


def test_readding_bumps_quantity():
    cart = Cart()
    cart.add("pen", 1, 3.0)
    cart.add("pen", 4, 3.0)
    assert cart.quantity("pen") == 5, "quantities should accumulate"
    assert cart.total() != 0.0
