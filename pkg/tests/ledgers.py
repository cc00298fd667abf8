"""Printed amplitude ledgers of the Hamming-weight directed walk.

Each ledger maps a ket ``coin + position bits`` to a sum of signed products of
``c_k = cos(theta_k)`` and ``s_k = sin(theta_k)``.
"""

import math
import re

INTERFERENCE_FREE = {
    1: {
        "00000": "c1",
        "11000": "s1",
    },
    2: {
        "00000": "c2 c1",
        "10100": "s2 c1",
        "01000": "s2 s1",
        "11100": "- c2 s1",
    },
    3: {
        "00000": "c3 c2 c1",
        "10010": "s3 c2 c1",
        "00100": "s3 s2 c1",
        "10110": "- c3 s2 c1",
        "01000": "c3 s2 s1",
        "11010": "s3 s2 s1",
        "01100": "- s3 c2 s1",
        "11110": "c3 c2 s1",
    },
    4: {
        "00000": "c4 c3 c2 c1",
        "10001": "s4 c3 c2 c1",
        "00010": "s4 s3 c2 c1",
        "10011": "- c4 s3 c2 c1",
        "00100": "c4 s3 s2 c1",
        "10101": "s4 s3 s2 c1",
        "00110": "- s4 c3 s2 c1",
        "10111": "c4 c3 s2 c1",
        "01000": "c4 c3 s2 s1",
        "11001": "s4 c3 s2 s1",
        "01010": "s4 s3 s2 s1",
        "11011": "- c4 s3 s2 s1",
        "01100": "- c4 s3 c2 s1",
        "11101": "- s4 s3 c2 s1",
        "01110": "s4 c3 c2 s1",
        "11111": "- c4 c3 c2 s1",
    },
}

MERGED = {
    3: {
        "00000": "c3 c2 c1",
        "10010": "s3 c2 c1",
        "00100": "s3 s2 c1 + c3 s2 s1",
        "10110": "s3 s2 s1 - c3 s2 c1",
        "01100": "- s3 c2 s1",
        "11110": "c3 c2 s1",
    },
    4: {
        "00000": "c4 c3 c2 c1",
        "10001": "s4 c3 c2 c1",
        "00100": "s4 s3 c2 c1 + c4 s3 s2 c1 + c4 c3 s2 s1",
        "10101": "s4 c3 s2 s1 - c4 s3 c2 c1 + s4 s3 s2 c1",
        "00110": "s4 s3 s2 s1 - s4 c3 s2 c1 - c4 s3 c2 s1",
        "10111": "c4 c3 s2 c1 - c4 s3 s2 s1 - s4 s3 c2 s1",
        "01110": "s4 c3 c2 s1",
        "11111": "- c4 c3 c2 s1",
    },
}

_TERM = re.compile(r"([+-]?)\s*((?:[cs]\d\s*)+)")


def evaluate(expr: str, thetas) -> float:
    """Value of a signed sum of c_k / s_k products at the given angles."""
    total = 0.0
    for sign, factors in _TERM.findall(expr):
        term = -1.0 if sign == "-" else 1.0
        for f in factors.split():
            th = thetas[int(f[1:]) - 1]
            term *= math.cos(th) if f[0] == "c" else math.sin(th)
        total += term
    return total
