import unittest

from minishop.clock import FixedClock
from minishop.ledger import Ledger


class TestLedgerShapes(unittest.TestCase):
    def test_labels_keep_order(self):
        led = Ledger(FixedClock(50.0))
        led.record("sale", 30.0)
        led.record("refund", -4.0)
        self.assertListEqual(led.labels(), ["sale", "refund"])

    def test_snapshot_is_positional(self):
        led = Ledger(FixedClock(7.0))
        led.record("sale", 12.0)
        self.assertTupleEqual(led.snapshot(), (("sale", 12.0, 7.0),))


if __name__ == "__main__":
    unittest.main()
