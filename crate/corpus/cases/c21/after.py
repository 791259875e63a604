"""Cart behaviour split across two stages."""

from minishop.cart import Cart
import pytest


def test_new_cart_is_empty():
    assert Cart().is_empty()


def test_adding_fills_the_cart():
    cart = Cart()
    cart.add("pen", 1, 2.0)
    assert not cart.is_empty()


def test_remove_unknown_name():
    with pytest.raises(KeyError):
        Cart().remove("pen")


def test_remove_known_name():
    cart = Cart()
    cart.add("pen", 1, 2.0)
    cart.remove("pen")
    assert cart.is_empty()
