"""Cash-desk session: a clock, a ledger and seeded opening data."""

from minishop.clock import FixedClock
from minishop.ledger import Ledger
import pytest


@pytest.fixture
def clock():
    return FixedClock(1000.0)


@pytest.fixture
def ledger(clock):
    return Ledger(clock)


@pytest.fixture
def opening():
    return [("float", 200.0), ("stock", 350.0)]


@pytest.fixture
def banner():
    return "cash desk ready"


def test_opening_entries_build_the_balance(ledger, opening):
    for label, amount in opening:
        ledger.record(label, amount)
    assert ledger.balance() == 550.0


def test_entries_carry_the_clock_time(ledger):
    ledger.record("sale", 12.0)
    assert ledger.snapshot() == (("sale", 12.0, 1000.0),)


def test_banner_mentions_readiness(banner):
    assert "ready" in banner


def test_clock_drives_the_window(clock, ledger):
    clock.advance(30.0)
    ledger.record("late", 1.0)
    assert ledger.between(1030.0, 1030.0) == [ledger.credits()[-1]]
