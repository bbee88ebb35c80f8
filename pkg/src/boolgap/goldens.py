"""Reference matrices for the weak bases.

``PRINTED`` holds the matrices as they are commonly printed, transcribed
verbatim.  ``EXPECTED`` holds the matrices the closure construction must
produce.  The two disagree in four places; ``KNOWN_DISCREPANCIES`` records how,
and docs/weak_bases.md explains each one.
"""

from __future__ import annotations

from .core import Relation

PRINTED: dict[str, list[str]] = {
    "II2": ["10001101", "01010101", "00111001"],
    "IN2": ["10001101", "01000101", "00111001", "01110010", "10111010", "11000110"],
    "II1": ["10011001", "01010101", "00101101", "11111111"],
    "II": ["10011001", "01010101", "00101101", "00000000", "11111111"],
    "IN": ["10001101", "01000101", "00111001", "01110010", "10111010", "11000110",
           "00000000", "11111111"],
}

_COLS3 = ["10001101", "01010101", "00111001"]
_NEGATED = ["01110010", "10101010", "11000110"]

EXPECTED: dict[str, list[str]] = {
    "II2": list(_COLS3),
    "IN2": _COLS3 + _NEGATED,
    "II0": _COLS3 + ["00000000"],
    "II1": _COLS3 + ["11111111"],
    "II": _COLS3 + ["00000000", "11111111"],
    "IN": _COLS3 + _NEGATED + ["00000000", "11111111"],
}

KNOWN_DISCREPANCIES: dict[str, str] = {
    "IN2": "printed rows 2 and 5 have bit 4 flipped (01000101, 10111010); "
           "they are then neither Cols3 rows nor negations of them",
    "IN": "same two flipped bits as IN2",
    "II1": "printed rows 1-3 are Cols3 with columns 4 and 6 exchanged",
    "II": "printed rows 1-3 are Cols3 with columns 4 and 6 exchanged",
}


def printed(cid: str) -> Relation:
    return Relation.from_strings(PRINTED[cid])


def expected(cid: str) -> Relation:
    return Relation.from_strings(EXPECTED[cid])
