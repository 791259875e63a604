import unittest

from minishop.catalog import Catalog


class TestCatalogContents(unittest.TestCase):
    def test_as_dict_round_trips(self):
        cat = Catalog({"pen": 1.2, "ink": 9.0})
        self.assertDictEqual(cat.as_dict(), {"pen": 1.2, "ink": 9.0})

    def test_name_set(self):
        cat = Catalog({"pen": 1.2, "ink": 9.0})
        self.assertSetEqual(set(cat.names()), {"ink", "pen"})
