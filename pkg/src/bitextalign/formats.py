"""The alignment file format, shared by aligner output and gold files.

Line 1 is the header `#bitext-align v1`. Every following data line is
one bead: class label, English range, Chinese range, tab-separated,
ranges end-exclusive (`3..5`), an empty side written as `-`. Beads must
tile both documents in order starting at passage 0, which lets `-`
sides recover their position from context. Blank lines and further
`#` comments are accepted on input and never emitted.
"""

from __future__ import annotations

import re
from pathlib import Path

from .corpus import Alignment, Bead, BeadClass, Span
from .errors import FormatError

HEADER = "#bitext-align v1"

_SPAN_RE = re.compile(r"^(\d+)\.\.(\d+)$")


def format_alignment(alignment: Alignment) -> str:
    lines = [HEADER]
    for bead in alignment.beads:
        eng = f"{bead.eng.start}..{bead.eng.stop}" if bead.eng.size else "-"
        chi = f"{bead.chi.start}..{bead.chi.stop}" if bead.chi.size else "-"
        lines.append(f"{bead.cls.label}\t{eng}\t{chi}")
    return "\n".join(lines) + "\n"


def _parse_span(
    text: str, cursor: int, count: int, path: str | None, lineno: int, side: str
) -> Span:
    if text == "-":
        if count != 0:
            raise FormatError(
                f"{side} side covers {count} passages, cannot be '-'", path, lineno
            )
        return Span(cursor, cursor)
    if count == 0:
        raise FormatError(f"empty {side} side must be written as '-'", path, lineno)
    m = _SPAN_RE.match(text)
    if not m:
        raise FormatError(f"bad {side} range {text!r}", path, lineno)
    start, stop = int(m.group(1)), int(m.group(2))
    if start != cursor:
        raise FormatError(
            f"{side} range starts at {start}, expected {cursor}", path, lineno
        )
    if stop - start != count:
        raise FormatError(
            f"{side} range {text} does not cover {count} passages", path, lineno
        )
    return Span(start, stop)


def parse_alignment(text: str, path: str | None = None) -> Alignment:
    lines = text.splitlines()
    if not lines or lines[0].strip() != HEADER:
        raise FormatError(f"missing {HEADER!r} header line", path, 1)
    beads: list[Bead] = []
    e_cur = c_cur = 0
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise FormatError(
                f"expected 3 tab-separated fields, got {len(fields)}", path, lineno
            )
        try:
            cls = BeadClass.parse(fields[0])
        except ValueError as exc:
            raise FormatError(str(exc), path, lineno)
        eng = _parse_span(fields[1], e_cur, cls.a, path, lineno, "English")
        chi = _parse_span(fields[2], c_cur, cls.b, path, lineno, "Chinese")
        beads.append(Bead(cls, eng, chi))
        e_cur, c_cur = eng.stop, chi.stop
    return Alignment(tuple(beads), 0.0)


def save_alignment(alignment: Alignment, path: str | Path) -> None:
    Path(path).write_text(format_alignment(alignment), encoding="utf-8", newline="\n")


def load_alignment(path: str | Path) -> Alignment:
    return parse_alignment(Path(path).read_text(encoding="utf-8"), str(path))


__all__ = [
    "HEADER",
    "format_alignment",
    "load_alignment",
    "parse_alignment",
    "save_alignment",
]
