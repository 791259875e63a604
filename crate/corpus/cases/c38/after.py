from unittest import mock

from minishop.catalog import Catalog
from minishop.pricing import apply_coupon


def test_coupon_applies_to_mocked_price():
    cat = Catalog({"pen": 10.0})
    with mock.patch.object(Catalog, "price_of", return_value=80.0):
        promo = apply_coupon(cat.price_of("pen"), "SAVE50")
    assert promo == 40.0


def test_unpatched_price_is_catalog_price():
    cat = Catalog({"pen": 10.0})
    assert cat.price_of("pen") == 10.0
