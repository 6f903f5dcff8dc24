"""Shared fixtures: the standard polynomial suite used across the tests.

The suite mixes squarefree and engineered multiple-root polynomials of
degrees one through five with the three shift steps exercised everywhere.
"""

from fractions import Fraction

import pytest

from gwa.algebra import GWASpec
from gwa.poly import ShiftSigma, parse_poly

SUITE_TEXT = [
    ("h", "1"),
    ("h", "2"),
    ("h+1", "1/2"),
    ("1-h-h^2", "1"),            # regular primitive quotient (lambda = 1)
    ("-1/4-h-h^2", "1"),         # singular: -(h+1/2)^2
    ("h^2-2", "1"),
    ("h^2", "1"),
    ("h^2-1", "2"),
    ("h^2+h", "1/2"),
    ("h^3-h", "1"),
    ("h^3", "1"),
    ("h^3-h-1", "1"),
    ("h^3-h^2", "1"),            # h^2(h-1)
    ("h^4-4*h^2+4", "1/2"),      # (h^2-2)^2
    ("h^4-5*h^2+6", "1"),
    ("h^4", "2"),
    ("h^5-2*h^4+h^3", "1"),      # h^3(h-1)^2
    ("h^5-h", "1"),
    ("h^5", "1/2"),
    ("2*h^3+3*h^2+1", "2"),
    ("h^2-3*h+2", "1"),          # roots differ by the shift step
    ("h^4+h^2-6", "1"),
]


def suite_specs():
    out = []
    for a_text, h0_text in SUITE_TEXT:
        a = parse_poly(a_text)
        sigma = ShiftSigma(Fraction(h0_text))
        out.append(GWASpec(a, sigma))
    return out


@pytest.fixture(scope="session")
def suite():
    return suite_specs()
