from minishop.catalog import Catalog


def test_missing_price_is_none():
    cat = Catalog()
    assert cat.as_dict().get("pen") is None


def test_present_price_is_not_none():
    cat = Catalog({"pen": 1.2})
    assert cat.as_dict().get("pen") is not None
