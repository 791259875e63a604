from unittest import TestCase, main

from minishop.catalog import Catalog


class TestCatalogPlainImport(TestCase):
    def test_size_counts_entries(self):
        self.assertEqual(Catalog({"pen": 1.0, "ink": 2.0}).size(), 2)

    def test_under_filters_prices(self):
        cat = Catalog({"pen": 1.0, "ink": 9.0, "pad": 4.0})
        self.assertEqual(cat.under(5.0), ["pad", "pen"])


if __name__ == "__main__":
    main()
