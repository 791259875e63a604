import unittest

from minishop.cart import Cart


class TestCartMerges(unittest.TestCase):
    def test_merge_sums_totals(self):
        left = Cart()
        left.add("pen", 2, 1.5)
        right = Cart()
        right.add("pad", 1, 4.0)
        merged = left.merge(right)
        self.assertEqual(merged.total(), 7.0)
        self.assertIs(merged.is_empty(), False)

    def test_merge_keeps_sources_intact(self):
        left = Cart()
        left.add("pen", 1, 1.0)
        merged = left.merge(Cart())
        self.assertFalse(merged is left)
        self.assertEqual(left.quantity("pen"), 1)
