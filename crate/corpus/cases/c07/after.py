from minishop import pricing


def test_discount_grows_with_subtotal():
    assert pricing.tiered_discount(600) > pricing.tiered_discount(150)
    assert pricing.tiered_discount(500) >= 0.10


def test_small_orders_get_no_discount():
    assert pricing.tiered_discount(99) < 0.05
    assert pricing.tiered_discount(0) <= 0.0
