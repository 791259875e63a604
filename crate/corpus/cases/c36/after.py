from minishop import pricing
import pytest


@pytest.fixture
def rates():
    rates = []
    for tier in (50, 150, 600):
        rates.append(pricing.tiered_discount(tier))
    return rates


def test_rates_follow_the_tiers(rates):
    assert rates == [0.0, 0.05, 0.10]


def test_rates_never_exceed_ten_percent(rates):
    assert max(rates) <= 0.10
