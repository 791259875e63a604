from minishop import textutil
import re


def test_slugs_are_kebab_case():
    assert re.search(r"^[a-z0-9-]+$", textutil.slugify("Deluxe Pen Set"))


def test_slugs_drop_apostrophes():
    assert not re.search(r"'", textutil.slugify("Pen's Best"))
