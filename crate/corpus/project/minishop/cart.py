"""Shopping cart with quantity tracking."""


class Cart:
    def __init__(self):
        self._items = {}

    def add(self, name, qty, unit_price):
        if qty <= 0:
            raise ValueError("quantity must be positive")
        if unit_price < 0:
            raise ValueError("unit price cannot be negative")
        held, price = self._items.get(name, (0, unit_price))
        self._items[name] = (held + qty, unit_price)

    def remove(self, name):
        if name not in self._items:
            raise KeyError(name)
        del self._items[name]

    def quantity(self, name):
        qty, _ = self._items.get(name, (0, 0.0))
        return qty

    def total(self):
        return sum(qty * price for qty, price in self._items.values())

    def item_names(self):
        return sorted(self._items)

    def is_empty(self):
        return not self._items

    def clear(self):
        self._items.clear()

    def merge(self, other):
        merged = Cart()
        for name in self.item_names():
            qty, price = self._items[name]
            merged.add(name, qty, price)
        for name in other.item_names():
            qty, price = other._items[name]
            merged.add(name, qty, price)
        return merged
