import unittest

from minishop import pricing


class TestCouponGuards(unittest.TestCase):
    def test_known_coupon_is_accepted(self):
        try:
            pricing.apply_coupon(100.0, "SAVE10")
        except ValueError:
            self.fail("SAVE10 should be a valid coupon")

    def test_seasonal_codes(self):
        self.skipTest("seasonal codes are exercised in the promo suite")
        pricing.apply_coupon(100.0, "SAVE99")


if __name__ == "__main__":
    unittest.main()
