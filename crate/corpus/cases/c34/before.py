import unittest

from minishop import validators


class TestDiscontinuedSet(unittest.TestCase):
    def setUp(self):
        self.discontinued = {"quill", "blotter"}

    def test_discontinued_is_flagged(self):
        with self.assertWarns(UserWarning):
            self.assertFalse(validators.check_stocked("quill", self.discontinued))

    def test_fresh_product_is_stocked(self):
        self.assertTrue(validators.check_stocked("pen", self.discontinued))


if __name__ == "__main__":
    unittest.main()
