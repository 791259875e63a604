from minishop import validators
import pytest


def test_rejects_nonpositive_quantity():
    with pytest.raises(ValueError):
        validators.require_positive("quantity", 0)


def test_rejects_unknown_country():
    with pytest.raises(ValueError):
        validators.normalize_country("xx")
