import unittest

from minishop import textutil


class TestWrapMessages(unittest.TestCase):
    def test_wrap_respects_width(self):
        lines = textutil.wrap("wide ruled paper stock", 10)
        self.assertEqual(lines, ["wide ruled", "paper", "stock"], "greedy wrap changed")
        self.assertTrue(all(len(line) <= 10 for line in lines), "line overflow")

    def test_tokens_keep_apostrophes(self):
        self.assertIn("pen's", textutil.tokenize("the pen's cap"), "tokenizer split the word")
