import unittest

from minishop.clock import FixedClock
from minishop.ledger import Ledger


class TestLedgerWindows(unittest.TestCase):
    def test_between_is_inclusive(self):
        clock = FixedClock(10.0)
        led = Ledger(clock)
        led.record("open", 5.0)
        clock.advance(5.0)
        led.record("mid", 7.0)
        clock.advance(5.0)
        led.record("close", -2.0)
        window = led.between(10.0, 15.0)
        self.assertEqual([e["label"] for e in window], ["open", "mid"])
        self.assertLessEqual(len(window), len(led.labels()))

    def test_len_counts_entries(self):
        led = Ledger(FixedClock())
        led.record("one", 1.0)
        self.assertEqual(len(led), 1)


if __name__ == "__main__":
    unittest.main()
