"""Bit-string helpers.

Bit-strings are ordinary Python ``str`` objects over the alphabet {'0','1'}.
Position 1 in prose corresponds to string index 0.  Assignments and node
labels are both bit-strings, ordered lexicographically (which for equal
lengths coincides with numeric order).
"""

from __future__ import annotations

from typing import Iterator

_BITSET = frozenset("01")


def check_bits(s: str) -> str:
    """Validate that ``s`` is a bit-string and return it."""
    if not isinstance(s, str):
        raise ValueError(f"not a bit-string: {s!r}")
    if not _BITSET.issuperset(s):
        raise ValueError(f"not a bit-string: {s!r}")
    return s


def int_to_bits(value: int, width: int) -> str:
    if width == 0:
        return ""
    return format(value, f"0{width}b")


def bits_to_int(s: str) -> int:
    return int(s, 2) if s else 0


def all_bits(length: int) -> Iterator[str]:
    """All bit-strings of the given length in lexicographic order."""
    for v in range(1 << length):
        yield int_to_bits(v, length)
