"""Tests for lexical cue counting and the cue mismatch cost."""

from __future__ import annotations

import math

import mpmath
import pytest

from bitextalign import (
    DEFAULT_CUE_VARIANCE,
    Bead,
    BeadClass,
    CueLexicon,
    FormatError,
    Language,
    LengthModelParams,
    Span,
    bead_cue_counts,
    combined_cost,
    count_cues,
    cue_mismatch_cost,
    default_lexicon,
    lexical_cost,
    load_lexicon,
    match_cost,
    save_lexicon,
)
from bitextalign.lexical import passage_cue_counts
from helpers import make_doc

mpmath.mp.dps = 50


def test_lexicon_validation():
    assert len(CueLexicon(())) == 0
    assert CueLexicon((("a", "b"),)).variance == DEFAULT_CUE_VARIANCE
    with pytest.raises(ValueError):
        CueLexicon((("a", "b"),), variance=0.0)
    with pytest.raises(ValueError):
        CueLexicon((("", "b"),))
    with pytest.raises(ValueError):
        CueLexicon((("a", ""),))


def test_count_cues_counts_non_overlapping_occurrences():
    text = "Governor spoke on Friday; the Governor agreed."
    assert count_cues(text, ["Governor", "Friday", "January"]) == [2, 1, 0]
    assert count_cues("aaaa", ["aa"]) == [2]


def test_passage_cue_counts_rows_sum_to_document_counts():
    doc = make_doc(Language.ENGLISH, ["Friday came.", "Friday went on Friday."])
    rows = passage_cue_counts(doc, ["Friday", "came"])
    assert rows == [[1, 2], [1, 0]]


def test_balanced_cue_costs_nothing():
    assert cue_mismatch_cost(0.0, DEFAULT_CUE_VARIANCE) == 0.0


def test_cue_mismatch_cost_is_symmetric():
    for diff in (0.5, 1.0, 2.0, 3.0):
        assert cue_mismatch_cost(diff, 0.07) == cue_mismatch_cost(-diff, 0.07)


def test_unit_mismatch_cost_at_default_variance():
    z = 1.0 / math.sqrt(0.07)
    assert z == pytest.approx(3.7796447300922718, abs=1e-12)
    expected = float(-mpmath.log(2 * (1 - mpmath.ncdf(z))))
    cost = cue_mismatch_cost(1.0, 0.07)
    assert cost == pytest.approx(expected, rel=1e-12)
    assert cost == pytest.approx(8.758931787476973, abs=1e-9)


def test_cue_mismatch_cost_floors():
    assert cue_mismatch_cost(100.0, 0.07) == pytest.approx(69.07755278982137, abs=1e-12)
    assert cue_mismatch_cost(100.0, 0.07, floor=1e-6) == pytest.approx(
        -math.log(1e-6), abs=1e-12
    )


def test_lexical_cost_sums_per_cue_costs():
    lexicon = CueLexicon((("a", "b"), ("c", "d")), variance=0.07)
    expected = cue_mismatch_cost(1.0, 0.07) + cue_mismatch_cost(-2.0, 0.07)
    assert lexical_cost([0, 3], [1, 1], lexicon) == pytest.approx(expected, rel=1e-15)
    assert lexical_cost([2, 1], [2, 1], lexicon) == 0.0


def test_lexical_cost_rejects_mismatched_vectors():
    lexicon = CueLexicon((("a", "b"),))
    with pytest.raises(ValueError):
        lexical_cost([1, 2], [1], lexicon)
    with pytest.raises(ValueError):
        lexical_cost([1], [1, 2], lexicon)


def test_bead_cue_counts_sum_over_spans():
    english = make_doc(Language.ENGLISH, ["on Friday.", "Friday again.", "nothing"])
    chinese = make_doc(Language.CHINESE, ["星期五。", "空白。"])
    lexicon = CueLexicon((("Friday", "星期五"), ("Governor", "總督")))
    bead = Bead(BeadClass(2, 1), Span(0, 2), Span(0, 1))
    v, w = bead_cue_counts(bead, english, chinese, lexicon)
    assert v == [2, 0]
    assert w == [1, 0]


def test_combined_cost_adds_lexical_term():
    english = make_doc(Language.ENGLISH, ["the Governor spoke for a while."])
    chinese = make_doc(Language.CHINESE, ["總督發言。"])
    params = LengthModelParams()
    lexicon = CueLexicon((("Governor", "總督"), ("Friday", "星期五")))
    bead = Bead(BeadClass(1, 1), Span(0, 1), Span(0, 1))
    base = match_cost(english.passages[0].length, chinese.passages[0].length,
                      BeadClass(1, 1), params)
    assert combined_cost(bead, english, chinese, params) == pytest.approx(base)
    assert combined_cost(bead, english, chinese, params, CueLexicon(())) == pytest.approx(base)
    hybrid = combined_cost(bead, english, chinese, params, lexicon)
    assert hybrid == pytest.approx(base, rel=1e-15)

    unbalanced = make_doc(Language.CHINESE, ["發言而已。"])
    cost = combined_cost(bead, english, unbalanced, params, lexicon)
    base2 = match_cost(english.passages[0].length, unbalanced.passages[0].length,
                       BeadClass(1, 1), params)
    assert cost == pytest.approx(base2 + cue_mismatch_cost(1.0, lexicon.variance), rel=1e-12)


def test_lexicon_file_round_trip(tmp_path):
    lexicon = CueLexicon((("Governor", "總督"), ("J.P.", "J.P.")), variance=0.05)
    path = tmp_path / "cues.tsv"
    save_lexicon(lexicon, str(path))
    loaded = load_lexicon(str(path))
    assert loaded == lexicon


def test_load_lexicon_defaults_variance_and_skips_comments(tmp_path):
    path = tmp_path / "cues.tsv"
    path.write_text("# honorifics\n\nGovernor\t總督\n", encoding="utf-8")
    loaded = load_lexicon(str(path))
    assert loaded.cues == (("Governor", "總督"),)
    assert loaded.variance == DEFAULT_CUE_VARIANCE


def test_load_lexicon_reports_bad_variance(tmp_path):
    path = tmp_path / "cues.tsv"
    path.write_text("variance=often\nGovernor\t總督\n", encoding="utf-8")
    with pytest.raises(FormatError, match="bad variance value"):
        load_lexicon(str(path))


def test_load_lexicon_reports_missing_tab(tmp_path):
    path = tmp_path / "cues.tsv"
    path.write_text("Governor 總督\n", encoding="utf-8")
    with pytest.raises(FormatError, match="expected english<TAB>chinese") as exc_info:
        load_lexicon(str(path))
    assert exc_info.value.line == 1


def test_load_lexicon_wraps_validation_failure(tmp_path):
    path = tmp_path / "cues.tsv"
    path.write_text("variance=-1.0\nGovernor\t總督\n", encoding="utf-8")
    with pytest.raises(FormatError, match="variance must be positive"):
        load_lexicon(str(path))


def test_default_lexicon_contents():
    lexicon = default_lexicon()
    assert len(lexicon) == 30
    assert lexicon.variance == 0.07
    assert ("governor", "總督") in lexicon.cues
    assert ("January", "一月") in lexicon.cues
    assert ("Q.C.", "Q.C.") in lexicon.cues
