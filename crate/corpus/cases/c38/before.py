import unittest
from unittest import mock

from minishop.catalog import Catalog
from minishop.pricing import apply_coupon


class TestPriceMocked(unittest.TestCase):
    def test_coupon_applies_to_mocked_price(self):
        cat = Catalog({"pen": 10.0})
        with mock.patch.object(Catalog, "price_of", return_value=80.0):
            promo = apply_coupon(cat.price_of("pen"), "SAVE50")
        self.assertEqual(promo, 40.0)

    def test_unpatched_price_is_catalog_price(self):
        cat = Catalog({"pen": 10.0})
        self.assertEqual(cat.price_of("pen"), 10.0)


if __name__ == "__main__":
    unittest.main()
