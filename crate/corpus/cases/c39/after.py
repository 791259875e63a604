import os
import tempfile

from minishop.textutil import slugify


def test_slug_survives_file_round_trip():
    slug = slugify("Midnight Blue Ink")
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "label.txt")
        with open(path, "w") as handle:
            handle.write(slug + "\n")
        with open(path) as handle:
            stored = handle.read().strip()
    assert stored == "midnight-blue-ink"


def test_slug_is_path_safe():
    slug = slugify("Nib / Holder")
    assert os.sep not in slug
