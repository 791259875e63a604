"""Cart arithmetic on the quantity-tracking API."""

import unittest

from minishop.cart import Cart


class TestCartTotals(unittest.TestCase):
    def test_total_sums_quantities(self):
        cart = Cart()
        cart.add("pen", 2, 3.0)
        cart.add("ink", 1, 9.5)
        self.assertEqual(cart.total(), 15.5)
        self.assertEqual(cart.quantity("pen"), 2)

    def test_readding_bumps_quantity(self):
        cart = Cart()
        cart.add("pen", 1, 3.0)
        cart.add("pen", 4, 3.0)
        self.assertEqual(cart.quantity("pen"), 5, "quantities should accumulate")
        self.assertNotEqual(cart.total(), 0.0)


if __name__ == "__main__":
    unittest.main()
