import unittest

from minishop.cart import Cart


class TestCartReset(unittest.TestCase):
    def setUp(self):
        self.cart = Cart()
        self.cart.add("pen", 2, 3.0)

    def tearDown(self):
        self.cart.clear()

    def test_seeded_quantity(self):
        self.assertEqual(self.cart.quantity("pen"), 2)

    def test_total_reflects_seed(self):
        self.assertEqual(self.cart.total(), 6.0)


if __name__ == "__main__":
    unittest.main()
