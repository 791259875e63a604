"""Parcel geometry for shipping estimates."""

import math


def box_volume(length, width, height):
    for side in (length, width, height):
        if side <= 0:
            raise ValueError("box sides must be positive")
    return length * width * height

def girth(length, width, height):
    return 2 * (width + height)

def dim_weight(length, width, height, divisor=5000.0):
    return box_volume(length, width, height) / divisor

def distance(a, b):
    return math.hypot(b[0] - a[0], b[1] - a[1])

def circle_area(radius):
    return math.pi * radius * radius

def deg_to_rad(degrees):
    return degrees * math.pi / 180.0
