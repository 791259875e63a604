from minishop.catalog import Catalog


def test_size_counts_entries():
    assert Catalog({"pen": 1.0, "ink": 2.0}).size() == 2


def test_under_filters_prices():
    cat = Catalog({"pen": 1.0, "ink": 9.0, "pad": 4.0})
    assert cat.under(5.0) == ["pad", "pen"]
