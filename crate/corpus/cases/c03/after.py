"""Boolean validator checks."""

from minishop import validators


def test_stocked_product_passes():
    assert validators.check_stocked("pen", set())


def test_email_shape():
    assert validators.validate_email("shop@example.com")
    assert not validators.SKU_PATTERN.match("pen-12")
