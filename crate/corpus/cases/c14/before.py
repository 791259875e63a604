import unittest

from minishop import validators


class TestSkuMessages(unittest.TestCase):
    def test_malformed_sku_names_the_input(self):
        with self.assertRaisesRegex(ValueError, "malformed sku"):
            validators.validate_sku("pen-12")

    def test_error_carries_the_raw_value(self):
        with self.assertRaises(ValueError) as caught:
            validators.validate_sku("999")
        self.assertIn("999", str(caught.exception))
