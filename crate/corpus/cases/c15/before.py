import unittest

from minishop import pricing


class TestLegacyWarnings(unittest.TestCase):
    def test_legacy_total_warns(self):
        with self.assertWarns(DeprecationWarning):
            total = pricing.legacy_total([1.0, 2.0])
        self.assertEqual(total, 3.0)

    def test_warning_names_the_replacement(self):
        with self.assertWarnsRegex(DeprecationWarning, "use sum"):
            pricing.legacy_total([])


if __name__ == "__main__":
    unittest.main()
