import math
import sys

from minishop import geometry
import pytest


@pytest.mark.skipif(sys.maxsize < 2**31, reason="needs a 64-bit platform")
def test_large_volume():
    assert geometry.box_volume(1000, 1000, 1000) == 10**9


@pytest.mark.skipif(not math.pi > 3, reason="geometry requires a sane pi")
def test_girth_is_linear():
    assert geometry.girth(5, 3, 2) == 10
