import unittest

from minishop import validators


class TestStockWarnings(unittest.TestCase):
    def test_discontinued_product_warns(self):
        with self.assertWarnsRegex(UserWarning, "discontinued"):
            stocked = validators.check_stocked("quill", {"quill"})
        self.assertFalse(stocked)

    def test_stocked_product_is_quiet(self):
        self.assertTrue(validators.check_stocked("pen", {"quill"}))
