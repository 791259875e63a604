from minishop.clock import FixedClock
from minishop.ledger import Ledger


def test_credits_and_debits_split():
    led = Ledger()
    led.record("sale", 20.0)
    led.record("refund", -3.5)
    led.record("sale", 11.0)
    assert len(led.credits()) == 2
    assert len(led.debits()) == 1
    assert round(led.balance() - 27.5, 7) == 0


def test_balance_of_empty_ledger():
    assert Ledger(FixedClock()).balance() == 0
