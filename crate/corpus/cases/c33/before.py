import unittest

from minishop import pricing
from minishop.catalog import Catalog


class TestPromoCatalog(unittest.TestCase):
    def setUp(self):
        self.catalog = Catalog({"pen": 10.0, "ink": 40.0})
        self.promo_price = pricing.apply_coupon(self.catalog.price_of("ink"), "SAVE25")

    def test_promo_undercuts_list_price(self):
        self.assertLess(self.promo_price, self.catalog.price_of("ink"))

    def test_promo_amount(self):
        self.assertAlmostEqual(self.promo_price, 30.0)
