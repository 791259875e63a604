from minishop.cart import Cart


def test_merge_builds_a_new_cart():
    left = Cart()
    right = Cart()
    merged = left.merge(right)
    assert merged is not left
    assert merged is not right


def test_alias_is_the_same_object():
    cart = Cart()
    alias = cart
    assert alias is cart
