import unittest as ut

from minishop import geometry


class TestAngleAlias(ut.TestCase):
    def test_straight_angle(self):
        self.assertAlmostEqual(geometry.deg_to_rad(180), 3.14159265, 6)

    def test_zero_angle(self):
        self.assertEqual(geometry.deg_to_rad(0), 0.0)


if __name__ == "__main__":
    ut.main()
