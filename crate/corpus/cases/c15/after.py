from minishop import pricing
import pytest


def test_legacy_total_warns():
    with pytest.warns(DeprecationWarning):
        total = pricing.legacy_total([1.0, 2.0])
    assert total == 3.0


def test_warning_names_the_replacement():
    with pytest.warns(DeprecationWarning, match="use sum"):
        pricing.legacy_total([])
