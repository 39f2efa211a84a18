"""Independent reference computations used by the tests.

Nothing here calls into the routines it checks.
"""

import math

import numpy as np


def second_moment_ellipsoid(a, c):
    """Integral of x^2 + y^2 over the spheroid with semi-axes (a, a, c)."""
    return 8 * math.pi / 15 * a**4 * c


def second_moment_cylinder(a, length):
    return math.pi * a**4 * length / 2


def slit_brute_force(width, radius, n=4000):
    """Midpoint-grid fraction of the r^2-weighted disc inside |x| <= width/2."""
    h = 2 * radius / n
    c = -radius + h * (np.arange(n) + 0.5)
    num = den = 0.0
    for i in range(0, n, 500):
        X, Y = np.meshgrid(c[i:i + 500], c, indexing="ij")
        r2 = X**2 + Y**2
        m = r2 <= radius**2
        den += np.sum(r2 * m)
        num += np.sum(r2 * m * (np.abs(X) <= width / 2))
    return num / den


def interval_sq(c, dt, dx, dy, dz):
    return (c * dt) ** 2 - (dx * dx + dy * dy + dz * dz)
