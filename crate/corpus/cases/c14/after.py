from minishop import validators
import pytest


def test_malformed_sku_names_the_input():
    with pytest.raises(ValueError, match="malformed sku"):
        validators.validate_sku("pen-12")


def test_error_carries_the_raw_value():
    with pytest.raises(ValueError) as caught:
        validators.validate_sku("999")
    assert "999" in str(caught.value)
