import os
import tempfile
import unittest

from minishop.textutil import slugify


class TestSlugFiles(unittest.TestCase):
    def test_slug_survives_file_round_trip(self):
        slug = slugify("Midnight Blue Ink")
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "label.txt")
            with open(path, "w") as handle:
                handle.write(slug + "\n")
            with open(path) as handle:
                stored = handle.read().strip()
        self.assertEqual(stored, "midnight-blue-ink")

    def test_slug_is_path_safe(self):
        slug = slugify("Nib / Holder")
        self.assertNotIn(os.sep, slug)


if __name__ == "__main__":
    unittest.main()
