from minishop import geometry


def test_straight_angle():
    assert round(geometry.deg_to_rad(180) - 3.14159265, 6) == 0


def test_zero_angle():
    assert geometry.deg_to_rad(0) == 0.0
