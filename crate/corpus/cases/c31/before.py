"""Cash-desk session: a clock, a ledger and seeded opening data."""

import unittest

from minishop.clock import FixedClock
from minishop.ledger import Ledger


class TestCashDesk(unittest.TestCase):
    def setUp(self):
        self.clock = FixedClock(1000.0)
        self.ledger = Ledger(self.clock)
        self.opening = [("float", 200.0), ("stock", 350.0)]
        self.banner = "cash desk ready"

    def test_opening_entries_build_the_balance(self):
        for label, amount in self.opening:
            self.ledger.record(label, amount)
        self.assertEqual(self.ledger.balance(), 550.0)

    def test_entries_carry_the_clock_time(self):
        self.ledger.record("sale", 12.0)
        self.assertEqual(self.ledger.snapshot(), (("sale", 12.0, 1000.0),))

    def test_banner_mentions_readiness(self):
        self.assertIn("ready", self.banner)

    def test_clock_drives_the_window(self):
        self.clock.advance(30.0)
        self.ledger.record("late", 1.0)
        self.assertEqual(self.ledger.between(1030.0, 1030.0), [self.ledger.credits()[-1]])


if __name__ == "__main__":
    unittest.main()
