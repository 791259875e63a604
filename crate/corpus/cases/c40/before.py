import unittest

from minishop.validators import validate_sku


class TestSkuJournal(unittest.TestCase):
    def setUp(self):
        self.journal = []
        self.raw = [" abc-1234 ", "PEN-0001"]

    def tearDown(self):
        self.journal.clear()

    def test_journal_collects_normalized_skus(self):
        for entry in self.raw:
            self.journal.append(validate_sku(entry))
        self.assertListEqual(self.journal, ["ABC-1234", "PEN-0001"])

    def test_journal_starts_empty(self):
        self.assertEqual(len(self.journal), 0)


if __name__ == "__main__":
    unittest.main()
