"""Float comparisons on parcel geometry."""

import math
import unittest

from minishop import geometry


class TestCircleMath(unittest.TestCase):
    def test_circle_area_matches_formula(self):
        self.assertAlmostEqual(geometry.circle_area(2.0), 4 * math.pi)

    def test_right_angle_in_radians(self):
        self.assertAlmostEqual(geometry.deg_to_rad(90), math.pi / 2)
        self.assertNotAlmostEqual(geometry.deg_to_rad(90), 1.57)
