from minishop.validators import validate_sku
import pytest


@pytest.fixture
def journal():
    journal = []
    yield journal
    journal.clear()


@pytest.fixture
def raw():
    return [" abc-1234 ", "PEN-0001"]


def test_journal_collects_normalized_skus(journal, raw):
    for entry in raw:
        journal.append(validate_sku(entry))
    assert journal == ["ABC-1234", "PEN-0001"]


def test_journal_starts_empty(journal):
    assert len(journal) == 0
