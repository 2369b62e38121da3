"""Core data model: passages, documents, bead classes, beads, alignments.

All types are immutable after construction. Passage lengths are computed
from the text at construction time so they can never drift out of sync
with the hybrid length metric.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

from .lengths import hybrid_length


class Language(enum.Enum):
    ENGLISH = "english"
    CHINESE = "chinese"


class PassageKind(enum.Enum):
    SENTENCE = "sentence"
    HEADING = "heading"
    LIST_ITEM = "list-item"
    OTHER = "other"


@dataclass(frozen=True)
class Passage:
    """One alignable unit of text (sentence in the generalized sense)."""

    id: int
    text: str
    kind: PassageKind = PassageKind.SENTENCE
    length: int = field(init=False)

    def __post_init__(self):
        if self.id < 0:
            raise ValueError(f"passage id must be non-negative, got {self.id}")
        object.__setattr__(self, "length", hybrid_length(self.text))


@dataclass(frozen=True)
class Document:
    """Ordered passages of one language side plus paragraph structure.

    paragraph_breaks holds the ids of passages that start a paragraph;
    id 0 is always a break when the document is non-empty.
    """

    lang: Language
    passages: tuple[Passage, ...]
    paragraph_breaks: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "passages", tuple(self.passages))
        object.__setattr__(self, "paragraph_breaks", frozenset(self.paragraph_breaks))
        for i, p in enumerate(self.passages):
            if p.id != i:
                raise ValueError(f"passage ids must be contiguous from 0; index {i} has id {p.id}")
        n = len(self.passages)
        for b in self.paragraph_breaks:
            if not 0 <= b < n:
                raise ValueError(f"paragraph break {b} out of range for {n} passages")
        if n > 0 and 0 not in self.paragraph_breaks:
            raise ValueError("passage 0 must start a paragraph")

    def __len__(self) -> int:
        return len(self.passages)

    def lengths(self) -> list[int]:
        return [p.length for p in self.passages]

    def slice(self, start: int, stop: int) -> "Document":
        """Sub-document over passages [start, stop), ids rebased to 0."""
        if not 0 <= start <= stop <= len(self.passages):
            raise ValueError(f"bad slice {start}..{stop} for {len(self.passages)} passages")
        passages = tuple(
            Passage(i, p.text, p.kind) for i, p in enumerate(self.passages[start:stop])
        )
        breaks = {b - start for b in self.paragraph_breaks if start <= b < stop}
        if passages:
            breaks.add(0)
        return Document(self.lang, passages, frozenset(breaks))

    def paragraph_spans(self) -> list[tuple[int, int]]:
        """Paragraphs as (start, stop) passage-id ranges, in order."""
        if not self.passages:
            return []
        starts = sorted(self.paragraph_breaks)
        stops = starts[1:] + [len(self.passages)]
        return list(zip(starts, stops))


@dataclass(frozen=True, order=True)
class BeadClass:
    """An a:b grouping: a English passages aligned to b Chinese passages."""

    a: int
    b: int

    def __post_init__(self):
        if self.a < 0 or self.b < 0 or (self.a == 0 and self.b == 0):
            raise ValueError(f"bad bead class ({self.a},{self.b})")

    @property
    def label(self) -> str:
        return f"{self.a}-{self.b}"

    @classmethod
    def parse(cls, label: str) -> "BeadClass":
        a, sep, b = label.partition("-")
        if not sep or not a.isdigit() or not b.isdigit():
            raise ValueError(f"bad bead class label {label!r}")
        return cls(int(a), int(b))


# The six classes the aligner may produce, in DP tie-break order (earlier wins).
PRODUCIBLE_CLASSES: tuple[BeadClass, ...] = (
    BeadClass(1, 1),
    BeadClass(1, 2),
    BeadClass(2, 1),
    BeadClass(2, 2),
    BeadClass(0, 1),
    BeadClass(1, 0),
)

# Classes gold annotations use that the model cannot produce but must report.
GOLD_ONLY_CLASSES: tuple[BeadClass, ...] = (
    BeadClass(1, 3),
    BeadClass(3, 1),
    BeadClass(3, 3),
)


class Span(NamedTuple):
    """Half-open range [start, stop) of passage ids; empty side is (k, k)."""

    start: int
    stop: int

    @property
    def size(self) -> int:
        return self.stop - self.start

    def ids(self) -> range:
        return range(self.start, self.stop)


@dataclass(frozen=True)
class Bead:
    """One alignment unit: a contiguous English span matched to a Chinese span."""

    cls: BeadClass
    eng: Span
    chi: Span

    def __post_init__(self):
        object.__setattr__(self, "eng", Span(*self.eng))
        object.__setattr__(self, "chi", Span(*self.chi))
        for side, span, count in (("english", self.eng, self.cls.a), ("chinese", self.chi, self.cls.b)):
            if span.start < 0 or span.stop < span.start:
                raise ValueError(f"bad {side} span {span} in bead")
            if span.size != count:
                raise ValueError(
                    f"{side} span {span} holds {span.size} passages, class {self.cls.label} needs {count}"
                )


@dataclass(frozen=True)
class Alignment:
    """A bead sequence covering two documents, plus its total cost in nats."""

    beads: tuple[Bead, ...]
    total_cost: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "beads", tuple(self.beads))

    def __len__(self) -> int:
        return len(self.beads)

    def __iter__(self) -> Iterator[Bead]:
        return iter(self.beads)

    def classes(self) -> list[BeadClass]:
        return [b.cls for b in self.beads]


@dataclass(frozen=True)
class Violation:
    """First structural fault found in an alignment."""

    bead_index: int
    invariant: str

    def __str__(self) -> str:
        return f"bead {self.bead_index}: {self.invariant}"


def validate_alignment(alignment: Alignment, n_english: int, n_chinese: int) -> Violation | None:
    """Check monotone, gap-free, non-overlapping coverage of both sides.

    Returns None when the alignment tiles [0, n_english) x [0, n_chinese)
    exactly, else a Violation naming the first offending bead.
    """
    e = c = 0
    for i, bead in enumerate(alignment.beads):
        if bead.eng.start != e:
            return Violation(i, f"english side resumes at {bead.eng.start}, expected {e}")
        if bead.chi.start != c:
            return Violation(i, f"chinese side resumes at {bead.chi.start}, expected {c}")
        e, c = bead.eng.stop, bead.chi.stop
        if e > n_english:
            return Violation(i, f"english side overruns document of {n_english} passages")
        if c > n_chinese:
            return Violation(i, f"chinese side overruns document of {n_chinese} passages")
    if e != n_english or c != n_chinese:
        return Violation(
            max(len(alignment.beads) - 1, 0),
            f"coverage ends at ({e},{c}), documents have ({n_english},{n_chinese}) passages",
        )
    return None
