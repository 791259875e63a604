from minishop import pricing
from minishop.catalog import Catalog
import pytest


@pytest.fixture
def catalog():
    return Catalog({"pen": 10.0, "ink": 40.0})


@pytest.fixture
def promo_price(catalog):
    return pricing.apply_coupon(catalog.price_of("ink"), "SAVE25")


def test_promo_undercuts_list_price(catalog, promo_price):
    assert promo_price < catalog.price_of("ink")


def test_promo_amount(promo_price):
    assert round(promo_price - 30.0, 7) == 0
