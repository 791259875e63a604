import unittest

from minishop.catalog import Catalog


class TestCatalogLookup(unittest.TestCase):
    def test_registered_names_are_present(self):
        cat = Catalog({"pen": 1.2, "ink": 9.0})
        self.assertIn("pen", cat.names())
        self.assertIn("ink", cat.as_dict())

    def test_unknown_names_are_absent(self):
        cat = Catalog({"pen": 1.2})
        self.assertNotIn("stapler", cat.names())
        self.assertNotIn("ink", cat.as_dict())


if __name__ == "__main__":
    unittest.main()
