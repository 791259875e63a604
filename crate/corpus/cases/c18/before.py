import math
import sys
import unittest

from minishop import geometry


class TestParcelConditions(unittest.TestCase):
    @unittest.skipIf(sys.maxsize < 2**31, "needs a 64-bit platform")
    def test_large_volume(self):
        self.assertEqual(geometry.box_volume(1000, 1000, 1000), 10**9)

    @unittest.skipUnless(math.pi > 3, "geometry requires a sane pi")
    def test_girth_is_linear(self):
        self.assertEqual(geometry.girth(5, 3, 2), 10)


if __name__ == "__main__":
    unittest.main()
