import unittest

from minishop import pricing


class TestUnitPrices(unittest.TestCase):
    def test_with_tax_adds_the_default_rate(self):
        self.assertAlmostEqual(pricing.with_tax(100.0), 108.25, 2)

    def test_unit_price_divides_evenly(self):
        self.assertEqual(pricing.unit_price(9.0, 3), 3.0)


if __name__ == "__main__":
    unittest.main()
