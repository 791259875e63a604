from minishop.cart import Cart
import pytest


@pytest.mark.skip(reason="bulk pricing is not implemented yet")
def test_bulk_discount():
    cart = Cart()
    cart.add("pen", 100, 1.0)
    assert cart.total() < 100.0


def test_plain_total_still_works():
    cart = Cart()
    cart.add("pen", 1, 1.0)
    assert cart.total() == 1.0
