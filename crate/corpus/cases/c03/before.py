"""Boolean validator checks."""

import unittest

from minishop import validators


class TestValidatorFlags(unittest.TestCase):
    def test_stocked_product_passes(self):
        self.assertTrue(validators.check_stocked("pen", set()))

    def test_email_shape(self):
        self.assertTrue(validators.validate_email("shop@example.com"))
        self.assertFalse(validators.SKU_PATTERN.match("pen-12"))
