from minishop.cart import Cart


def test_merge_sums_totals():
    left = Cart()
    left.add("pen", 2, 1.5)
    right = Cart()
    right.add("pad", 1, 4.0)
    merged = left.merge(right)
    assert merged.total() == 7.0
    assert merged.is_empty() is False


def test_merge_keeps_sources_intact():
    left = Cart()
    left.add("pen", 1, 1.0)
    merged = left.merge(Cart())
    assert not merged is left
    assert left.quantity("pen") == 1
