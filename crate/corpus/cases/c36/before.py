import unittest

from minishop import pricing


class TestRateTable(unittest.TestCase):
    def setUp(self):
        self.rates = []
        for tier in (50, 150, 600):
            self.rates.append(pricing.tiered_discount(tier))

    def test_rates_follow_the_tiers(self):
        self.assertListEqual(self.rates, [0.0, 0.05, 0.10])

    def test_rates_never_exceed_ten_percent(self):
        self.assertLessEqual(max(self.rates), 0.10)


if __name__ == "__main__":
    unittest.main()
