"""Lexical cues: paired literal patterns whose occurrence counts should agree.

Each cue i contributes delta_i = w_i - v_i (Chinese minus English count per
bead). Under a match delta_i is modeled as normal with a shared variance, so
unbalanced cue counts add -log 2*(1 - Phi(|delta_i|/sqrt(variance))) nats to
the bead cost and balanced ones add exactly zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources

from .corpus import Bead, Document
from .errors import FormatError
from .length_model import PROB_FLOOR, LengthModelParams, match_cost

_SQRT2 = math.sqrt(2.0)

DEFAULT_CUE_VARIANCE = 0.07


@dataclass(frozen=True)
class CueLexicon:
    """Ordered (english_pattern, chinese_pattern) pairs plus shared variance."""

    cues: tuple[tuple[str, str], ...]
    variance: float = DEFAULT_CUE_VARIANCE

    def __post_init__(self):
        object.__setattr__(self, "cues", tuple((e, c) for e, c in self.cues))
        if self.variance <= 0:
            raise ValueError(f"cue variance must be positive, got {self.variance}")
        for e, c in self.cues:
            if not e or not c:
                raise ValueError("cue patterns must be non-empty")

    def __len__(self) -> int:
        return len(self.cues)


def count_cues(text: str, patterns: list[str]) -> list[int]:
    """Non-overlapping occurrence counts of each literal pattern in text."""
    return [text.count(p) for p in patterns]


def passage_cue_counts(doc: Document, patterns: list[str]) -> list[list[int]]:
    """Per-passage counts, one row per pattern; rows sum to document counts."""
    return [[p.text.count(pat) for p in doc.passages] for pat in patterns]


def cue_mismatch_cost(diff: float, variance: float, floor: float = PROB_FLOOR) -> float:
    """-log of the two-tailed probability of one cue's count difference."""
    p = math.erfc(abs(diff) / math.sqrt(variance) / _SQRT2)
    if p < floor:
        p = floor
    return -math.log(p)


def lexical_cost(
    v: list[int], w: list[int], lexicon: CueLexicon, floor: float = PROB_FLOOR
) -> float:
    """Total cue cost for one bead given per-cue counts v (English), w (Chinese)."""
    if len(v) != len(w) or len(v) != len(lexicon):
        raise ValueError(
            f"count vectors ({len(v)}, {len(w)}) do not match lexicon size {len(lexicon)}"
        )
    cost = 0.0
    for vi, wi in zip(v, w):
        cost += cue_mismatch_cost(wi - vi, lexicon.variance, floor)
    return cost


def bead_cue_counts(
    bead: Bead, doc1: Document, doc2: Document, lexicon: CueLexicon
) -> tuple[list[int], list[int]]:
    """Cue counts (v, w) over the bead's English and Chinese passages."""
    v = [
        sum(doc1.passages[i].text.count(e) for i in bead.eng.ids())
        for e, _ in lexicon.cues
    ]
    w = [
        sum(doc2.passages[j].text.count(c) for j in bead.chi.ids())
        for _, c in lexicon.cues
    ]
    return v, w


def combined_cost(
    bead: Bead,
    doc1: Document,
    doc2: Document,
    params: LengthModelParams,
    lexicon: CueLexicon | None = None,
) -> float:
    """match_cost plus lexical_cost for one bead; the scalar reference path.

    The DP kernel reimplements this arithmetic step for step; any change
    here must be mirrored there.
    """
    l1 = sum(doc1.passages[i].length for i in bead.eng.ids())
    l2 = sum(doc2.passages[j].length for j in bead.chi.ids())
    cost = match_cost(l1, l2, bead.cls, params)
    if lexicon is not None and len(lexicon) > 0:
        v, w = bead_cue_counts(bead, doc1, doc2, lexicon)
        cost += lexical_cost(v, w, lexicon, params.floor)
    return cost


def save_lexicon(lexicon: CueLexicon, path: str) -> None:
    """Write the tab-separated cue lexicon file."""
    lines = [f"variance={lexicon.variance!r}"]
    lines += [f"{e}\t{c}" for e, c in lexicon.cues]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def load_lexicon(path: str) -> CueLexicon:
    """Read a cue lexicon file: english<TAB>chinese lines, # comments,
    optional variance=<real> header."""
    with open(path, encoding="utf-8") as fh:
        return _parse_lexicon(fh.read(), path)


def _parse_lexicon(text: str, path: str) -> CueLexicon:
    cues: list[tuple[str, str]] = []
    variance = DEFAULT_CUE_VARIANCE
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        if line.startswith("variance="):
            try:
                variance = float(line[len("variance="):])
            except ValueError:
                raise FormatError(f"bad variance value {line!r}", path, lineno)
            continue
        english, sep, chinese = line.partition("\t")
        if not sep or not english.strip() or not chinese.strip():
            raise FormatError(f"expected english<TAB>chinese, got {line!r}", path, lineno)
        cues.append((english.strip(), chinese.strip()))
    try:
        return CueLexicon(tuple(cues), variance)
    except ValueError as exc:
        raise FormatError(str(exc), path)


def default_lexicon() -> CueLexicon:
    """The bundled cue lexicon: honorifics, months, weekdays, governor."""
    text = resources.files("bitextalign").joinpath("data/legco_cues.tsv").read_text("utf-8")
    return _parse_lexicon(text, "legco_cues.tsv")


__all__ = [
    "DEFAULT_CUE_VARIANCE",
    "CueLexicon",
    "count_cues",
    "passage_cue_counts",
    "cue_mismatch_cost",
    "lexical_cost",
    "bead_cue_counts",
    "combined_cost",
    "save_lexicon",
    "load_lexicon",
    "default_lexicon",
]
