import unittest

from minishop import geometry


class TestParcelTypes(unittest.TestCase):
    def test_volume_of_integer_sides(self):
        self.assertIsInstance(geometry.box_volume(2, 3, 4), int)

    def test_dim_weight_is_fractional(self):
        self.assertIsInstance(geometry.dim_weight(10, 20, 30), float)
        self.assertNotIsInstance(geometry.dim_weight(10, 20, 30), int)
