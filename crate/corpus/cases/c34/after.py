from minishop import validators
import pytest


@pytest.fixture
def discontinued():
    return {"quill", "blotter"}


def test_discontinued_is_flagged(discontinued):
    with pytest.warns(UserWarning):
        assert not validators.check_stocked("quill", discontinued)


def test_fresh_product_is_stocked(discontinued):
    assert validators.check_stocked("pen", discontinued)
