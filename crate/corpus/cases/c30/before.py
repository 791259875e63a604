import unittest

from minishop.clock import FixedClock
from minishop.ledger import Ledger


class TestLedgerReport(unittest.TestCase):
    def test_credits_and_debits_split(self):
        led = Ledger(FixedClock(1.0))
        led.record("sale", 20.0)
        led.record("refund", -3.5)
        led.record("sale", 11.0)
        self.assertEqual(len(led.credits()), 2)
        self.assertEqual(len(led.debits()), 1)
        self.assertAlmostEqual(led.balance(), 27.5)

    def test_balance_of_empty_ledger(self):
        self.assertEqual(Ledger(FixedClock()).balance(), 0)
