from minishop.cart import Cart
import pytest


class TestCartHelper:
    @pytest.fixture(autouse=True)
    def _setup(self):
        self.cart = Cart()
        self.cart.add("pen", 2, 3.0)
        self.cart.add("pad", 1, 4.0)

    def receipt_lines(self):
        return ["%s x%d" % (name, self.cart.quantity(name)) for name in self.cart.item_names()]

    def test_receipt_covers_every_item(self):
        assert self.receipt_lines() == ["pad x1", "pen x2"]

    def test_receipt_is_sorted(self):
        lines = self.receipt_lines()
        assert lines == sorted(lines)
