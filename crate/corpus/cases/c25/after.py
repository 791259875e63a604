from minishop.clock import FixedClock
from minishop.ledger import Ledger


def test_between_is_inclusive():
    clock = FixedClock(10.0)
    led = Ledger(clock)
    led.record("open", 5.0)
    clock.advance(5.0)
    led.record("mid", 7.0)
    clock.advance(5.0)
    led.record("close", -2.0)
    window = led.between(10.0, 15.0)
    assert [e["label"] for e in window] == ["open", "mid"]
    assert len(window) <= len(led.labels())


def test_len_counts_entries():
    led = Ledger(FixedClock())
    led.record("one", 1.0)
    assert len(led) == 1
