"""Cart behaviour split across two stages."""

import unittest

from minishop.cart import Cart


class TestCartAdding(unittest.TestCase):
    def test_new_cart_is_empty(self):
        self.assertTrue(Cart().is_empty())

    def test_adding_fills_the_cart(self):
        cart = Cart()
        cart.add("pen", 1, 2.0)
        self.assertFalse(cart.is_empty())


class TestCartRemoval(unittest.TestCase):
    def test_remove_unknown_name(self):
        with self.assertRaises(KeyError):
            Cart().remove("pen")

    def test_remove_known_name(self):
        cart = Cart()
        cart.add("pen", 1, 2.0)
        cart.remove("pen")
        self.assertTrue(cart.is_empty())


if __name__ == "__main__":
    unittest.main()
