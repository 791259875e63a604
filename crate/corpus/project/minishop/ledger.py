"""Append-only ledger of priced events, timestamped by an injected clock."""


class Ledger:
    def __init__(self, clock):
        self._clock = clock
        self._entries = []

    def record(self, label, amount):
        if not label:
            raise ValueError("entry label cannot be empty")
        entry = {"label": label, "amount": float(amount), "at": self._clock.now()}
        self._entries.append(entry)
        return entry

    def balance(self):
        return sum(e["amount"] for e in self._entries)

    def labels(self):
        return [e["label"] for e in self._entries]

    def credits(self):
        return [e for e in self._entries if e["amount"] > 0]

    def debits(self):
        return [e for e in self._entries if e["amount"] < 0]

    def between(self, start, end):
        return [e for e in self._entries if start <= e["at"] <= end]

    def snapshot(self):
        return tuple((e["label"], e["amount"], e["at"]) for e in self._entries)

    def __len__(self):
        return len(self._entries)
