import unittest

from minishop.cart import Cart


class TestCartSkips(unittest.TestCase):
    @unittest.skip("bulk pricing is not implemented yet")
    def test_bulk_discount(self):
        cart = Cart()
        cart.add("pen", 100, 1.0)
        self.assertLess(cart.total(), 100.0)

    def test_plain_total_still_works(self):
        cart = Cart()
        cart.add("pen", 1, 1.0)
        self.assertEqual(cart.total(), 1.0)
