"""Shared draw helpers for the test suite."""

import math

import numpy as np

from chtg.triangle import TriangleParams


def draw_params(rng, lo=0.55, hi=1.1, margin=0.03, cos_floor=-0.98):
    """Random valid parameters: radii in [lo, hi], cos(alpha) safely below
    the existence bound, both alpha branches exercised."""
    while True:
        r = rng.uniform(lo, hi, 3)
        bound = (float(np.sum(r * r)) - 1.0) / (2.0 * float(np.prod(r)))
        top = min(bound - margin, 0.98)
        if top < cos_floor + 0.01:
            continue
        c = rng.uniform(cos_floor, top)
        alpha = math.acos(c)
        if rng.random() < 0.5:
            alpha = 2.0 * math.pi - alpha
        return TriangleParams(*map(float, r), alpha=alpha)


def draw_word(rng, max_len, min_len=0):
    n = int(rng.integers(min_len, max_len + 1))
    return tuple(int(x) for x in rng.integers(1, 4, n))
