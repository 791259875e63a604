from minishop import validators
import pytest


def test_discontinued_product_warns():
    with pytest.warns(UserWarning, match="discontinued"):
        stocked = validators.check_stocked("quill", {"quill"})
    assert not stocked


def test_stocked_product_is_quiet():
    assert validators.check_stocked("pen", {"quill"})
