import unittest

from minishop import pricing


class TestDiscountOrder(unittest.TestCase):
    def test_discount_grows_with_subtotal(self):
        self.assertGreater(pricing.tiered_discount(600), pricing.tiered_discount(150))
        self.assertGreaterEqual(pricing.tiered_discount(500), 0.10)

    def test_small_orders_get_no_discount(self):
        self.assertLess(pricing.tiered_discount(99), 0.05)
        self.assertLessEqual(pricing.tiered_discount(0), 0.0)


if __name__ == "__main__":
    unittest.main()
