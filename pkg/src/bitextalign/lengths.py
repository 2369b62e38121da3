"""Hybrid passage length: wide (CJK) characters count 2, everything else 1.

The length of a Chinese passage under this metric equals the byte count of
its Big-5 encoding, which is the unit the default model parameters were
fitted in. Classification is by code-point range table, not by attempting a
Big-5 round trip, so unencodable but visually wide ideographs still count 2.
"""

from __future__ import annotations

# Inclusive (start, stop) code-point ranges classified as wide.
_WIDE_RANGES = (
    (0x3000, 0x303F),    # CJK symbols and punctuation
    (0x3400, 0x4DBF),    # CJK unified ideographs extension A
    (0x4E00, 0x9FFF),    # CJK unified ideographs
    (0xF900, 0xFAFF),    # CJK compatibility ideographs
    (0xFF01, 0xFF60),    # full-width forms
    (0xFFE0, 0xFFE6),    # full-width signs
    (0x20000, 0x2FA1F),  # CJK unified ideographs extensions B..F + supplement
)


def is_wide(char: str) -> bool:
    """True iff the single character counts 2 units."""
    if len(char) != 1:
        raise ValueError(f"expected a single character, got {len(char)}")
    cp = ord(char)
    for lo, hi in _WIDE_RANGES:
        if lo <= cp <= hi:
            return True
    return False


def hybrid_length(text: str) -> int:
    """Length of text with wide characters counted twice."""
    n = len(text)
    for ch in text:
        cp = ord(ch)
        for lo, hi in _WIDE_RANGES:
            if lo <= cp <= hi:
                n += 1
                break
    return n
