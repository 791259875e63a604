import unittest

from minishop import geometry


class TestBoxSetup(unittest.TestCase):
    def setUp(self):
        self.small = (10, 8, 4)
        self.large = (100, 60, 40)

    def test_small_box_fits_letter_rate(self):
        length, width, height = self.small
        self.assertLess(geometry.girth(length, width, height), 30)

    def test_large_box_outweighs_small(self):
        self.assertGreater(
            geometry.dim_weight(*self.large),
            geometry.dim_weight(*self.small),
        )
