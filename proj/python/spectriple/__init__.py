"""Spectral triples over finitely generated groups.

Thin python face of the compiled core: exact combinatorics stay in C++;
JSON-string results are decoded here so callers get plain dicts and lists.
Rational values cross the boundary as "num/den" strings; `rational` turns
them into `fractions.Fraction`.
"""

import json
from fractions import Fraction

from spectriple._core import (
    ball_mass,
    derivations,
    dirac_index,
    heat_partial_sums,
    phase_constant,
    spectrum_csv,
    sphere_sizes,
    square_check_ok,
    word_length,
)
from spectriple import _core

__all__ = [
    "ball",
    "ball_mass",
    "class_c",
    "classify",
    "derivations",
    "dirac_index",
    "heat_partial_sums",
    "phase_constant",
    "rational",
    "spectrum_csv",
    "sphere_sizes",
    "square_check_ok",
    "word_length",
]


def rational(text):
    """Parse a "num/den" string into a Fraction."""
    return Fraction(text)


def ball(group, radius):
    """Ball enumeration with geodesic counts, as a dict."""
    return json.loads(_core.ball_json(group, radius))


def class_c(group, radius, word, max_n):
    """Commutator-growth estimate for one element, as a dict."""
    return json.loads(_core.class_c_json(group, radius, word, max_n))


def classify(group, profiles="zero,default", max_n=3, budget_elements=-1):
    """Homogenization-family classification over the generators, as a dict."""
    return json.loads(_core.classify_json(group, profiles, max_n, budget_elements))
