"""Random trigonometric polynomials and float helpers shared by the test modules."""

from __future__ import annotations

import math
import random
from fractions import Fraction

import numpy as np
from hypothesis import strategies as st

from partition_harmonics import TrigPoly

MAX_FREQ = 12


def random_dyadic(rng: random.Random, bits: int = 8, max_exp: int = 3) -> Fraction:
    return Fraction(rng.randint(-(1 << bits), 1 << bits), 1 << rng.randint(0, max_exp))


def random_poly(rng: random.Random, terms: int = 4, max_freq: int = MAX_FREQ,
                cosine_only: bool = False, bits: int = 8) -> TrigPoly:
    cos = {rng.randint(0, max_freq): random_dyadic(rng, bits) for _ in range(rng.randint(0, terms))}
    sin = {} if cosine_only else {
        rng.randint(1, max_freq): random_dyadic(rng, bits) for _ in range(rng.randint(0, terms))}
    return TrigPoly(cos=cos, sin=sin)


def random_even_cosine_poly(rng: random.Random, max_freq: int) -> TrigPoly:
    """Cosine polynomial over even frequencies only (pi-periodic, symmetric about pi/2)."""
    freqs = range(0, max_freq + 1, 2)
    return TrigPoly(cos={n: random_dyadic(rng) for n in freqs if rng.random() < 0.6})


def vector_eval(p: TrigPoly, x: np.ndarray) -> np.ndarray:
    out = np.zeros_like(x, dtype=float)
    for n, c in p.cos_terms().items():
        out += float(c) * np.cos(n * x)
    for n, b in p.sin_terms().items():
        out += float(b) * np.sin(n * x)
    return out


def l1_norm(p: TrigPoly) -> float:
    return float(sum(abs(c) for c in p.cos_terms().values())
                 + sum(abs(b) for b in p.sin_terms().values()))


def non_singular_points(s: int, rng: np.random.Generator, count: int, margin: float = 1e-3) -> np.ndarray:
    """Uniform points in [0, pi] at least ``margin`` away from every zero of ``sin(k x)``, k <= s."""
    x = rng.uniform(0.0, math.pi, size=4 * count)
    k = np.arange(1, s + 1)[:, None]
    dist = np.abs(np.sin(k * x))
    x = x[(dist > margin).all(axis=0)]
    return x[:count]


_dyadics = st.builds(lambda n, e: Fraction(n, 1 << e),
                     st.integers(-256, 256), st.integers(0, 3))
_freq_maps = st.dictionaries(st.integers(0, MAX_FREQ), _dyadics, max_size=5)


@st.composite
def trig_polys(draw, cosine_only: bool = False) -> TrigPoly:
    cos = draw(_freq_maps)
    sin = {} if cosine_only else draw(st.dictionaries(st.integers(1, MAX_FREQ), _dyadics, max_size=5))
    return TrigPoly(cos=cos, sin=sin)
