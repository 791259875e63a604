from minishop import geometry
import pytest


@pytest.fixture
def small():
    return (10, 8, 4)


@pytest.fixture
def large():
    return (100, 60, 40)


def test_small_box_fits_letter_rate(small):
    length, width, height = small
    assert geometry.girth(length, width, height) < 30


def test_large_box_outweighs_small(small, large):
    assert geometry.dim_weight(*large) > geometry.dim_weight(*small)
