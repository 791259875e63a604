from minishop import textutil


def test_wrap_respects_width():
    lines = textutil.wrap("wide ruled paper stock", 10)
    assert lines == ["wide ruled", "paper", "stock"], "greedy wrap changed"
    assert all(len(line) <= 10 for line in lines), "line overflow"


def test_tokens_keep_apostrophes():
    assert "pen's" in textutil.tokenize("the pen's cap"), "tokenizer split the word"
