import unittest

from minishop.catalog import Catalog


class TestCatalogErrors(unittest.TestCase):
    def test_unknown_product_lookup(self):
        with self.assertRaises(LookupError):
            Catalog().price_of("pen")

    def test_negative_price_is_rejected(self):
        with self.assertRaisesRegex(ValueError, "cannot be negative"):
            Catalog().register("pen", -1.0)

    def test_empty_name_is_rejected(self):
        with self.assertRaises(ValueError):
            Catalog().register("", 1.0)


if __name__ == "__main__":
    unittest.main()
