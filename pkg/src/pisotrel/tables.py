"""Reference data: published polynomial lists and counts used for verification.

Polynomials are stored in the one-line text format (descending coefficients).
"""

from __future__ import annotations

from .polycore import IntPoly

# degree 3, theta in (tau^(1/2), 2)
THREE_TERM_D3 = (
    "1 0 -1 -1",
    "1 -1 0 -1",
    "1 -2 1 -1",
    "1 -1 -1 -1",
)

# degree 6, theta in (tau, 2)
THREE_TERM_D6 = (
    "1 -1 -1 0 -1 0 1",
    "1 -1 -1 -1 0 0 1",
    "1 -2 1 -2 1 -1 1",
    "1 -1 -1 -2 0 0 1",
    "1 -1 0 -1 -1 0 -1",
    "1 -2 0 0 0 1 -1",
    "1 -1 -1 0 0 -1 -1",
    "1 0 -1 -2 -2 -2 -1",
    "1 -2 1 -1 0 0 -1",
    "1 -2 0 0 1 0 -1",
    "1 -1 -1 -1 0 -1 -1",
    "1 -3 3 -2 0 1 -1",
    "1 -1 -2 0 1 -1 -1",
    "1 -1 -1 -1 -1 -1 -1",
)

# degree 8, theta in (tau^(4/3), 2)
THREE_TERM_D8 = (
    "1 -2 0 0 1 -1 0 -1 1",
    "1 -1 -1 -1 -1 -1 0 0 1",
    "1 -1 -1 -1 -1 0 0 0 1",
    "1 -2 0 1 -2 1 0 -1 1",
    "1 -1 -1 -1 -2 0 0 0 1",
    "1 -1 -2 0 1 0 -1 0 1",
    "1 -2 0 0 0 0 0 1 -1",
    "1 -1 -1 -1 -1 -1 0 0 -1",
    "1 -3 3 -2 0 2 -3 2 -1",
    "1 -1 -1 -1 -1 0 0 1 1",
    "1 -2 0 1 -1 -1 1 0 -1",
    "1 -1 -2 0 1 -1 -1 1 1",
    "1 -2 0 0 0 0 1 0 -1",
    "1 -1 -2 -1 1 2 1 -1 -1",
    "1 -2 -1 3 -1 -2 2 0 -1",
    "1 -1 -2 -1 2 2 0 -1 -1",
    "1 -2 0 0 0 1 0 0 -1",
    "1 0 -2 -3 -2 0 2 2 1",
    "1 -3 2 1 -2 0 0 1 -1",
    "1 -1 -1 -1 -1 -1 -1 -1 -1",
)

# theta in (tau^(d/6), 2)
THREE_TERM_COUNTS = {3: 4, 4: 4, 5: 12, 6: 14, 7: 24, 8: 20}

# theta in (tau^(d/8), 3)
FOUR_TERM_COUNTS = {
    4: 43, 5: 162, 6: 353, 7: 1075, 8: 2069, 9: 5555, 10: 9937, 11: 23410,
    12: 40812, 13: 85979, 14: 140587, 15: 273851, 16: 402209, 17: 630025, 18: 339116,
}

# near misses |a1 + a2 - a3 - a4| with the published residual
NEAR_MISSES = (
    ("1 -3 1 1 -2 2 -2 1 1 -2 2 -2 1 1 -2 1", "0.61690e-8"),
    ("1 -2 -2 -1 -3 -3 0 -2 -2 -1 -1 -2 -1 -1 -1 -1", "0.16262e-7"),
    ("1 -1 -3 -5 -7 -8 -7 -6 -4 -2 0 1 1 1 0 -1 -1 -1 -1", "0.34922e-7"),
    ("1 -2 -2 -2 -2 -1 -2 -2 -1 -1 1 1 1 1 1 2 2 1 1", "0.18618e-6"),
    ("1 -3 1 -3 2 -2 1 -2 0 -2 1 -2 2 -3 1 -2 1", "0.19425e-6"),
    ("1 -2 -2 -2 0 -1 -2 -2 -1 0 -1 -2 -1 0 0 -1 -1", "0.20095e-6"),
    ("1 -3 0 2 -1 -1 1 1 -2 0 1 -1 0 0 1 0 -1", "0.21102e-6"),
    ("1 -2 -2 -2 -2 -1 -2 -1 0 0 0 0 1 0 0 -1 -1", "0.23696e-6"),
    ("1 -3 0 0 1 -1 1 -1 1 0 1 -1 0 -1 1 -1", "0.29620e-6"),
)

SIEGEL = "1 0 -1 -1"
PAIR_EQ_QUARTIC = "1 -2 0 1 -1"


def polys(lines) -> list[IntPoly]:
    return sorted(IntPoly.from_line(line) for line in lines)


LISTED_SETS = {
    3: THREE_TERM_D3,
    6: THREE_TERM_D6,
    8: THREE_TERM_D8,
}
