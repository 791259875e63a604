import unittest

from minishop.catalog import Catalog


class TestCatalogMisses(unittest.TestCase):
    def test_missing_price_is_none(self):
        cat = Catalog()
        self.assertIsNone(cat.as_dict().get("pen"))

    def test_present_price_is_not_none(self):
        cat = Catalog({"pen": 1.2})
        self.assertIsNotNone(cat.as_dict().get("pen"))
