"""Listing text helpers."""

from minishop import textutil


def test_titlecase_lowers_tails():
    """MiXeD case input should normalise per word."""
    assert textutil.titlecase("dELUXE pEN") == "Deluxe Pen"


def test_initials_skip_blanks():
    assert textutil.initials("  ada   lovelace ") == "AL"


def test_shouting_needs_letters():
    assert textutil.shouting("SALE")
    assert not textutil.shouting("1234")
