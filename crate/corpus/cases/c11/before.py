import unittest

from minishop.cart import Cart


class TestCartInventory(unittest.TestCase):
    def test_names_regardless_of_order(self):
        cart = Cart()
        cart.add("ink", 1, 9.0)
        cart.add("pen", 2, 1.2)
        cart.add("pad", 1, 4.0)
        self.assertCountEqual(cart.item_names(), ["pen", "pad", "ink"])


if __name__ == "__main__":
    unittest.main()
