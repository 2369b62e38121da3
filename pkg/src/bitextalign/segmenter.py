"""Heuristic passage segmentation and the <p>/<s> markup round trip.

Raw text is split into paragraphs on blank lines or pilcrow marks, then
into passages on language-appropriate terminators. English periods are
suppressed inside single-letter abbreviation runs (C.B.E., J.P., initials)
and decimal numbers; a colon ending a line closes a passage (speaker
turns). A paragraph with no terminator at all becomes a heading; bullet or
numbered lines become list items.

These rules are this package's convention; they are isolated here so the
statistical model never depends on how passages were produced.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .corpus import Document, Language, Passage, PassageKind
from .errors import MarkupError

PARAGRAPH_MARK = "¶"

# Closing punctuation that trails a terminator into the same passage.
_TRAILERS = "\"')]’”」』）"

_DEFAULT_ABBREVIATIONS = ("Mr.", "Mrs.", "Ms.", "Dr.", "St.", "No.", "Hon.")


@dataclass(frozen=True)
class SegmentationRules:
    """Knobs for one language's segmentation."""

    terminators: frozenset[str]
    eol_terminators: frozenset[str] = frozenset({":", "："})
    abbreviation_exceptions: tuple[str, ...] = ()
    paragraph_pattern: str = r"(?:\r?\n[ \t]*\r?\n+)|¶"
    needs_trailing_space: bool = False
    list_item_pattern: str = r"^[ \t]*(?:[-*•●]|\(?[0-9]{1,3}[.)]|\([a-z]\))[ \t]+\S"


def default_rules(lang: Language) -> SegmentationRules:
    if lang is Language.ENGLISH:
        return SegmentationRules(
            terminators=frozenset({".", "!", "?"}),
            abbreviation_exceptions=_DEFAULT_ABBREVIATIONS,
            needs_trailing_space=True,
        )
    return SegmentationRules(
        terminators=frozenset({"。", "！", "？", "；"}),
    )


def _collapse(text: str) -> str:
    return re.sub(r"\s+", " ", text).strip()


def _is_initial_period(text: str, i: int) -> bool:
    # Single capital letter before the dot, itself preceded by a
    # non-letter or another dot: C.B.E., J.P., "George W. Bush".
    if i >= 1 and text[i - 1].isupper() and text[i - 1].isalpha():
        return i < 2 or not text[i - 2].isalpha()
    return False


def _is_decimal_period(text: str, i: int) -> bool:
    return 0 < i < len(text) - 1 and text[i - 1].isdigit() and text[i + 1].isdigit()


def _matches_abbreviation(text: str, i: int, rules: SegmentationRules) -> bool:
    head = text[: i + 1]
    for abbr in rules.abbreviation_exceptions:
        if head.endswith(abbr):
            before = len(head) - len(abbr) - 1
            if before < 0 or not text[before].isalpha():
                return True
    return False


def _terminator_end(text: str, i: int, rules: SegmentationRules) -> int | None:
    """If a passage ends at text[i], return the split position after it."""
    ch = text[i]
    if ch in rules.eol_terminators:
        rest = text[i + 1:].split("\n", 1)[0]
        return i + 1 if not rest.strip() else None
    if ch not in rules.terminators:
        return None
    if ch == ".":
        if _is_decimal_period(text, i) or _matches_abbreviation(text, i, rules):
            return None
        if _is_initial_period(text, i):
            return None
    end = i + 1
    while end < len(text) and text[end] in _TRAILERS:
        end += 1
    if rules.needs_trailing_space and end < len(text) and not text[end].isspace():
        return None
    return end


def _scan_block(block: str, rules: SegmentationRules) -> list[tuple[str, PassageKind]]:
    """Split one soft-wrapped text block on terminators, single pass."""
    chunks: list[tuple[str, PassageKind]] = []
    start = 0
    i = 0
    while i < len(block):
        end = _terminator_end(block, i, rules)
        if end is None:
            i += 1
            continue
        text = _collapse(block[start:end])
        if text:
            chunks.append((text, PassageKind.SENTENCE))
        start = i = end
    tail = _collapse(block[start:])
    if tail:
        chunks.append((tail, PassageKind.OTHER))
    return chunks


def _split_paragraph(para: str, rules: SegmentationRules) -> list[tuple[str, PassageKind]]:
    """One paragraph's text into (text, kind) chunks."""
    item_re = re.compile(rules.list_item_pattern)
    chunks: list[tuple[str, PassageKind]] = []
    block_lines: list[str] = []

    def flush_block() -> None:
        if block_lines:
            chunks.extend(_scan_block("\n".join(block_lines), rules))
            block_lines.clear()

    for line in para.split("\n"):
        if item_re.match(line):
            flush_block()
            chunks.append((_collapse(line), PassageKind.LIST_ITEM))
        else:
            block_lines.append(line)
    flush_block()
    # A paragraph that is nothing but one unterminated chunk is a heading.
    if len(chunks) == 1 and chunks[0][1] is PassageKind.OTHER:
        chunks[0] = (chunks[0][0], PassageKind.HEADING)
    return chunks


def segment(raw: str, lang: Language, rules: SegmentationRules | None = None) -> Document:
    """Split raw text into a Document of passages with paragraph structure."""
    rules = rules if rules is not None else default_rules(lang)
    passages: list[Passage] = []
    breaks: set[int] = set()
    for para in re.split(rules.paragraph_pattern, raw):
        chunks = _split_paragraph(para, rules)
        if chunks:
            breaks.add(len(passages))
        for text, kind in chunks:
            passages.append(Passage(len(passages), text, kind))
    return Document(lang, tuple(passages), frozenset(breaks))


# --- markup ---------------------------------------------------------------

_ESCAPES = (("&", "&amp;"), ("<", "&lt;"), (">", "&gt;"))


def _escape(text: str) -> str:
    for plain, entity in _ESCAPES:
        text = text.replace(plain, entity)
    return text


def _unescape(text: str) -> str:
    for plain, entity in reversed(_ESCAPES):
        text = text.replace(entity, plain)
    return text


def emit_markup(doc: Document) -> str:
    """Canonical <p>/<s> serialization; one paragraph per line."""
    out: list[str] = []
    for start, stop in doc.paragraph_spans():
        parts = ["<p>"]
        for p in doc.passages[start:stop]:
            if p.kind is PassageKind.SENTENCE:
                parts.append(f"<s>{_escape(p.text)}</s>")
            else:
                parts.append(f'<s kind="{p.kind.value}">{_escape(p.text)}</s>')
        parts.append("</p>")
        out.append("".join(parts))
    return "".join(line + "\n" for line in out)


_TOKEN_RE = re.compile(r'<p>|</p>|<s(?:\s+kind="([a-z-]+)")?>|</s>|<')


def _position(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def parse_markup(marked: str, lang: Language) -> Document:
    """Inverse of emit_markup; whitespace between tags is insignificant.

    Raises MarkupError with line/column on unknown tags, bad nesting, or
    text outside <s> elements.
    """
    passages: list[Passage] = []
    breaks: set[int] = set()
    in_p = False
    in_s = False
    kind = PassageKind.SENTENCE
    text_start = 0
    pos = 0

    def fail(message: str, offset: int):
        line, col = _position(marked, offset)
        raise MarkupError(message, line, col)

    while True:
        m = _TOKEN_RE.search(marked, pos)
        gap_end = m.start() if m else len(marked)
        gap = marked[pos:gap_end]
        if not in_s and gap.strip():
            off = pos + (len(gap) - len(gap.lstrip()))
            fail("text outside <s> element", off)
        if m is None:
            break
        tag = m.group(0)
        if tag == "<":
            fail("unknown or malformed tag", m.start())
        if in_s and tag != "</s>":
            fail(f"unexpected {tag} inside <s>", m.start())
        if tag == "<p>":
            if in_p:
                fail("nested <p>", m.start())
            in_p = True
            breaks.add(len(passages))
        elif tag == "</p>":
            if not in_p:
                fail("</p> without open <p>", m.start())
            in_p = False
        elif tag == "</s>":
            if not in_s:
                fail("</s> without open <s>", m.start())
            passages.append(Passage(len(passages), _unescape(marked[text_start:m.start()]), kind))
            in_s = False
        else:  # <s> or <s kind="...">
            if not in_p:
                fail("<s> outside <p>", m.start())
            if m.group(1) is None:
                kind = PassageKind.SENTENCE
            else:
                try:
                    kind = PassageKind(m.group(1))
                except ValueError:
                    fail(f"unknown passage kind {m.group(1)!r}", m.start())
            in_s = True
            text_start = m.end()
        pos = m.end()
    if in_s:
        fail("unclosed <s>", len(marked))
    if in_p:
        fail("unclosed <p>", len(marked))
    breaks = {b for b in breaks if b < len(passages)}
    return Document(lang, tuple(passages), frozenset(breaks))


__all__ = [
    "PARAGRAPH_MARK",
    "SegmentationRules",
    "default_rules",
    "segment",
    "emit_markup",
    "parse_markup",
]
