from minishop.clock import FixedClock
from minishop.ledger import Ledger


def test_labels_keep_order():
    led = Ledger(FixedClock(50.0))
    led.record("sale", 30.0)
    led.record("refund", -4.0)
    assert led.labels() == ["sale", "refund"]


def test_snapshot_is_positional():
    led = Ledger(FixedClock(7.0))
    led.record("sale", 12.0)
    assert led.snapshot() == (("sale", 12.0, 7.0),)
