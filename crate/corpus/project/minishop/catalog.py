"""Product catalog: names mapped to unit prices."""


class Catalog:
    def __init__(self, entries=None):
        self._prices = {}
        for name, price in (entries or {}).items():
            self.register(name, price)

    def register(self, name, price):
        if not name:
            raise ValueError("product name cannot be empty")
        if price < 0:
            raise ValueError("price cannot be negative")
        self._prices[name] = float(price)

    def price_of(self, name):
        if name not in self._prices:
            raise LookupError("unknown product: " + name)
        return self._prices[name]

    def has(self, name):
        return name in self._prices

    def names(self):
        return sorted(self._prices)

    def size(self):
        return len(self._prices)

    def under(self, limit):
        return sorted(n for n, p in self._prices.items() if p < limit)

    def as_dict(self):
        return dict(self._prices)
