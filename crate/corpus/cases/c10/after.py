from minishop.catalog import Catalog


def test_as_dict_round_trips():
    cat = Catalog({"pen": 1.2, "ink": 9.0})
    assert cat.as_dict() == {"pen": 1.2, "ink": 9.0}


def test_name_set():
    cat = Catalog({"pen": 1.2, "ink": 9.0})
    assert set(cat.names()) == {"ink", "pen"}
