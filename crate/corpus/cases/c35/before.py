import unittest

from minishop.cart import Cart


class TestCartHelper(unittest.TestCase):
    def setUp(self):
        self.cart = Cart()
        self.cart.add("pen", 2, 3.0)
        self.cart.add("pad", 1, 4.0)

    def receipt_lines(self):
        return ["%s x%d" % (name, self.cart.quantity(name)) for name in self.cart.item_names()]

    def test_receipt_covers_every_item(self):
        self.assertListEqual(self.receipt_lines(), ["pad x1", "pen x2"])

    def test_receipt_is_sorted(self):
        lines = self.receipt_lines()
        self.assertEqual(lines, sorted(lines))
