from minishop.cart import Cart


def test_names_regardless_of_order():
    cart = Cart()
    cart.add("ink", 1, 9.0)
    cart.add("pen", 2, 1.2)
    cart.add("pad", 1, 4.0)
    assert sorted(cart.item_names()) == sorted(["pen", "pad", "ink"])
