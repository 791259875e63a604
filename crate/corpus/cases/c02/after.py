from minishop.catalog import Catalog


def test_registered_names_are_present():
    cat = Catalog({"pen": 1.2, "ink": 9.0})
    assert "pen" in cat.names()
    assert "ink" in cat.as_dict()


def test_unknown_names_are_absent():
    cat = Catalog({"pen": 1.2})
    assert "stapler" not in cat.names()
    assert "ink" not in cat.as_dict()
