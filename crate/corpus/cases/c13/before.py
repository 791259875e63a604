import unittest

from minishop import validators


class TestValidatorErrors(unittest.TestCase):
    def test_rejects_nonpositive_quantity(self):
        with self.assertRaises(ValueError):
            validators.require_positive("quantity", 0)

    def test_rejects_unknown_country(self):
        with self.assertRaises(ValueError):
            validators.normalize_country("xx")


if __name__ == "__main__":
    unittest.main()
