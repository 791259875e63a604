from minishop import pricing


def test_with_tax_adds_the_default_rate():
    assert round(pricing.with_tax(100.0) - 108.25, 2) == 0


def test_unit_price_divides_evenly():
    assert pricing.unit_price(9.0, 3) == 3.0
