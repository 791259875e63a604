"""A controllable clock so ledger timestamps are deterministic in tests."""


class FixedClock:
    def __init__(self, start=0.0):
        self._now = float(start)

    def now(self):
        return self._now

    def advance(self, seconds):
        if seconds < 0:
            raise ValueError("cannot advance backwards")
        self._now += seconds
        return self._now
