import unittest

from minishop.cart import Cart


class TestCartIdentity(unittest.TestCase):
    def test_merge_builds_a_new_cart(self):
        left = Cart()
        right = Cart()
        merged = left.merge(right)
        self.assertIsNot(merged, left)
        self.assertIsNot(merged, right)

    def test_alias_is_the_same_object(self):
        cart = Cart()
        alias = cart
        self.assertIs(alias, cart)


if __name__ == "__main__":
    unittest.main()
