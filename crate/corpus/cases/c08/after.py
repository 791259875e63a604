"""Float comparisons on parcel geometry."""

import math

from minishop import geometry


def test_circle_area_matches_formula():
    assert round(geometry.circle_area(2.0) - 4 * math.pi, 7) == 0


def test_right_angle_in_radians():
    assert round(geometry.deg_to_rad(90) - math.pi / 2, 7) == 0
    assert round(geometry.deg_to_rad(90) - 1.57, 7) != 0
