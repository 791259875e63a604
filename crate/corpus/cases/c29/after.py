from minishop.catalog import Catalog
import pytest


def test_unknown_product_lookup():
    with pytest.raises(LookupError):
        Catalog().price_of("pen")


def test_negative_price_is_rejected():
    with pytest.raises(ValueError, match="cannot be negative"):
        Catalog().register("pen", -1.0)


def test_empty_name_is_rejected():
    with pytest.raises(ValueError):
        Catalog().register("", 1.0)
