"""Listing text helpers."""

import unittest

from minishop import textutil


class TestListingText(unittest.TestCase):
    """Covers the storefront's display helpers."""

    def test_titlecase_lowers_tails(self):
        """MiXeD case input should normalise per word."""
        self.assertEqual(textutil.titlecase("dELUXE pEN"), "Deluxe Pen")

    # The storefront renders initials for avatar badges.
    def test_initials_skip_blanks(self):
        self.assertEqual(textutil.initials("  ada   lovelace "), "AL")

    def test_shouting_needs_letters(self):
        self.assertTrue(textutil.shouting("SALE"))
        self.assertFalse(textutil.shouting("1234"))
