"""Tests for sentence segmentation and the passage markup format."""

from __future__ import annotations

import re

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bitextalign import (
    Language,
    MarkupError,
    PassageKind,
    emit_markup,
    parse_markup,
    segment,
)
from bitextalign.segmenter import PARAGRAPH_MARK


def _texts(doc):
    return [p.text for p in doc.passages]


def _kinds(doc):
    return [p.kind for p in doc.passages]


def test_english_terminator_split():
    doc = segment("First one. Second one? Third!", Language.ENGLISH)
    assert _texts(doc) == ["First one.", "Second one?", "Third!"]
    assert _kinds(doc) == [PassageKind.SENTENCE] * 3
    assert doc.paragraph_breaks == frozenset({0})


def test_english_abbreviations_do_not_split():
    doc = segment("Mr. Lee spoke. Dr. Chan replied.", Language.ENGLISH)
    assert _texts(doc) == ["Mr. Lee spoke.", "Dr. Chan replied."]


def test_decimal_points_do_not_split():
    doc = segment("It rose by 3.5 points. Next.", Language.ENGLISH)
    assert _texts(doc) == ["It rose by 3.5 points.", "Next."]


def test_initials_do_not_split():
    doc = segment("C.B.E. was awarded to J. Smith. Then.", Language.ENGLISH)
    assert _texts(doc) == ["C.B.E. was awarded to J. Smith.", "Then."]


def test_english_needs_trailing_space():
    doc = segment("Read files.txt now. Done.", Language.ENGLISH)
    assert _texts(doc) == ["Read files.txt now.", "Done."]


def test_colon_splits_only_at_end_of_line():
    doc = segment("MR LEE:\nThank you. I agree.", Language.ENGLISH)
    assert _texts(doc) == ["MR LEE:", "Thank you.", "I agree."]
    inline = segment("MR LEE: Thank you.", Language.ENGLISH)
    assert _texts(inline) == ["MR LEE: Thank you."]


def test_closing_quotes_stay_with_the_sentence():
    doc = segment('He said "stop." Then left.', Language.ENGLISH)
    assert _texts(doc) == ['He said "stop."', "Then left."]


def test_chinese_terminator_split():
    doc = segment("我想談及公共援助問題。施政報告提到；最後。", Language.CHINESE)
    assert _texts(doc) == ["我想談及公共援助問題。", "施政報告提到；", "最後。"]


def test_chinese_trailer_stays_attached():
    doc = segment("他說。」然後走了。", Language.CHINESE)
    assert _texts(doc) == ["他說。」", "然後走了。"]


def test_heading_is_single_unterminated_paragraph():
    doc = segment("POLICY ADDRESS\n\nThe session opened.", Language.ENGLISH)
    assert _texts(doc) == ["POLICY ADDRESS", "The session opened."]
    assert _kinds(doc) == [PassageKind.HEADING, PassageKind.SENTENCE]
    assert doc.paragraph_breaks == frozenset({0, 1})


def test_unterminated_tail_after_sentences_is_other():
    doc = segment("A full stop. then a fragment", Language.ENGLISH)
    assert _kinds(doc) == [PassageKind.SENTENCE, PassageKind.OTHER]


def test_list_items():
    doc = segment("Agenda:\n- first item\n- second item", Language.ENGLISH)
    assert _texts(doc) == ["Agenda:", "- first item", "- second item"]
    assert _kinds(doc) == [
        PassageKind.SENTENCE,
        PassageKind.LIST_ITEM,
        PassageKind.LIST_ITEM,
    ]
    numbered = segment("1. first\n(a) second\n23) third", Language.ENGLISH)
    assert _kinds(numbered) == [PassageKind.LIST_ITEM] * 3


def test_blank_lines_and_pilcrow_break_paragraphs():
    doc = segment("One.\n \t\nTwo.", Language.ENGLISH)
    assert doc.paragraph_breaks == frozenset({0, 1})
    marked = segment(f"第一段。{PARAGRAPH_MARK}第二段。", Language.CHINESE)
    assert marked.paragraph_breaks == frozenset({0, 1})
    assert _texts(marked) == ["第一段。", "第二段。"]


def test_soft_wrapped_lines_join_into_one_sentence():
    doc = segment("A sentence split\nover two lines. Next.", Language.ENGLISH)
    assert _texts(doc) == ["A sentence split over two lines.", "Next."]


def test_empty_input_gives_empty_document():
    doc = segment("", Language.ENGLISH)
    assert len(doc) == 0
    assert doc.paragraph_breaks == frozenset()


def test_markup_round_trip_with_kinds_and_escapes():
    raw = "HEADER\n\nAgenda:\n- a < b & c > d.\nDone. fragment"
    doc = segment(raw, Language.ENGLISH)
    marked = emit_markup(doc)
    assert "&lt;" in marked and "&amp;" in marked and "&gt;" in marked
    assert 'kind="heading"' in marked
    assert 'kind="list-item"' in marked
    assert parse_markup(marked, Language.ENGLISH) == doc


def test_markup_one_paragraph_per_line():
    doc = segment("One.\n\nTwo.", Language.ENGLISH)
    lines = emit_markup(doc).splitlines()
    assert lines == ["<p><s>One.</s></p>", "<p><s>Two.</s></p>"]


def test_parse_markup_ignores_whitespace_between_tags():
    doc = parse_markup("<p>\n  <s>Hi.</s>\n</p>\n", Language.ENGLISH)
    assert _texts(doc) == ["Hi."]


def test_parse_markup_faults():
    cases = [
        ("boom<p></p>", "text outside <s> element", 1, 1),
        ("<p><q></p>", "unknown or malformed tag", 1, 4),
        ("<p><p>", "nested <p>", 1, 4),
        ("</p>", "</p> without open <p>", 1, 1),
        ("<p></s></p>", "</s> without open <s>", 1, 4),
        ("<s>hi</s>", "<s> outside <p>", 1, 1),
        ('<p><s kind="verse">x</s></p>', "unknown passage kind", 1, 4),
        ("<p><s>a<p>b</s></p>", "unexpected <p> inside <s>", 1, 8),
        ("<p><s>hi", "unclosed <s>", 1, 9),
        ("<p>", "unclosed <p>", 1, 4),
        ("<p><s>ok.</s></p>\nboom", "text outside <s> element", 2, 1),
    ]
    for marked, message, line, column in cases:
        with pytest.raises(MarkupError) as exc_info:
            parse_markup(marked, Language.ENGLISH)
        assert message in str(exc_info.value), marked
        assert exc_info.value.line == line, marked
        assert exc_info.value.column == column, marked


_RAW_ALPHABET = "abcz ABZ.!?:;&<>\n中文字。；？¶-123"


@given(st.text(alphabet=_RAW_ALPHABET, max_size=200))
def test_segmentation_preserves_non_whitespace_text(raw):
    doc = segment(raw, Language.ENGLISH)
    joined = "".join(p.text for p in doc.passages)
    assert re.sub(r"[\s¶]", "", raw) == re.sub(r"\s", "", joined)


@given(
    st.text(alphabet=_RAW_ALPHABET, max_size=200),
    st.sampled_from([Language.ENGLISH, Language.CHINESE]),
)
def test_markup_round_trip_on_segmented_text(raw, lang):
    doc = segment(raw, lang)
    assert parse_markup(emit_markup(doc), lang) == doc
