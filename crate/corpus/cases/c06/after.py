from minishop import geometry


def test_volume_of_integer_sides():
    assert isinstance(geometry.box_volume(2, 3, 4), int)


def test_dim_weight_is_fractional():
    assert isinstance(geometry.dim_weight(10, 20, 30), float)
    assert not isinstance(geometry.dim_weight(10, 20, 30), int)
