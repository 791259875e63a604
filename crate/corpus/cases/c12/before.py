import unittest

from minishop import textutil


class TestSlugPatterns(unittest.TestCase):
    def test_slugs_are_kebab_case(self):
        self.assertRegex(textutil.slugify("Deluxe Pen Set"), r"^[a-z0-9-]+$")

    def test_slugs_drop_apostrophes(self):
        self.assertNotRegex(textutil.slugify("Pen's Best"), r"'")
