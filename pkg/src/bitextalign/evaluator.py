"""Scoring of a produced alignment against a gold reference.

Two rates are reported. The recall-style rate (type1_accuracy) is the
fraction of gold beads reproduced exactly, where exact means same class
and same passage ranges on both sides; partial overlap scores as wrong.
The precision-style rate (type2_precision) is the fraction of output 1-1
beads that are gold beads, the quantity that matters when only 1-1 pairs
are harvested downstream.

An optional region restricts scoring to beads lying wholly inside one
passage-id range, applied to both sides; this supports measuring a
document with its domain-specific front matter discarded.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .corpus import Alignment, Bead, BeadClass
from .errors import MismatchedDocumentsError

ONE_ONE = BeadClass(1, 1)

# Row order for reports: the producible classes first, then the larger
# shapes that occur in hand-made references.
REPORT_CLASSES = (
    BeadClass(1, 1),
    BeadClass(1, 2),
    BeadClass(2, 1),
    BeadClass(2, 2),
    BeadClass(0, 1),
    BeadClass(1, 0),
    BeadClass(1, 3),
    BeadClass(3, 1),
    BeadClass(3, 3),
)


class ClassRow(NamedTuple):
    total: int
    correct: int
    incorrect: int

    @property
    def rate(self) -> float:
        """correct/total; an empty row counts as fully correct."""
        return self.correct / self.total if self.total else 1.0


@dataclass(frozen=True)
class EvalReport:
    type1_accuracy: float
    type2_precision: float
    per_class: dict[BeadClass, ClassRow]
    output_counts: dict[BeadClass, int]
    gold_total: int
    gold_correct: int
    output_one_one: int
    output_one_one_correct: int

    def render(self) -> str:
        """Fixed-width per-class table plus the two summary rates."""
        classes = [cls for cls in REPORT_CLASSES if cls in self.per_class]
        classes += sorted(cls for cls in self.per_class if cls not in REPORT_CLASSES)
        headers = [""] + [cls.label for cls in classes]
        rows = [
            ["Total"] + [str(self.per_class[c].total) for c in classes],
            ["Correct"] + [str(self.per_class[c].correct) for c in classes],
            ["Incorrect"] + [str(self.per_class[c].incorrect) for c in classes],
            ["% Correct"] + [f"{100 * self.per_class[c].rate:.1f}" for c in classes],
        ]
        widths = [
            max(len(r[i]) for r in [headers] + rows) for i in range(len(headers))
        ]
        lines = []
        for r in [headers] + rows:
            cells = [r[0].ljust(widths[0])] + [
                r[i].rjust(widths[i]) for i in range(1, len(r))
            ]
            lines.append("  ".join(cells).rstrip())
        lines.append("")
        lines.append(
            f"Type I  (gold beads reproduced):  {self.gold_correct}/{self.gold_total}"
            f" = {100 * self.type1_accuracy:.1f}%"
        )
        lines.append(
            f"Type II (output 1-1 precision):   "
            f"{self.output_one_one_correct}/{self.output_one_one}"
            f" = {100 * self.type2_precision:.1f}%"
        )
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "type1_accuracy": self.type1_accuracy,
            "type2_precision": self.type2_precision,
            "gold_total": self.gold_total,
            "gold_correct": self.gold_correct,
            "output_one_one": self.output_one_one,
            "output_one_one_correct": self.output_one_one_correct,
            "per_class": {
                cls.label: {
                    "total": row.total,
                    "correct": row.correct,
                    "incorrect": row.incorrect,
                    "rate": row.rate,
                }
                for cls, row in self.per_class.items()
            },
            "output_counts": {
                cls.label: n for cls, n in self.output_counts.items()
            },
        }


def _covered(alignment: Alignment) -> tuple[int, int]:
    n1 = n2 = 0
    for bead in alignment.beads:
        n1 = max(n1, bead.eng.stop)
        n2 = max(n2, bead.chi.stop)
    return n1, n2


def _in_region(bead: Bead, lo: int, hi: int) -> bool:
    for span in (bead.eng, bead.chi):
        if span.size and not (lo <= span.start and span.stop <= hi):
            return False
    return True


def evaluate(
    output: Alignment,
    gold: Alignment,
    region: tuple[int, int] | None = None,
) -> EvalReport:
    """Score output against gold; see the module docstring for the rates.

    region is an end-exclusive passage-id range (lo, hi); beads not wholly
    inside it on both sides are dropped from every count. Raises
    MismatchedDocumentsError when the two alignments do not tile documents
    of the same passage counts.
    """
    if _covered(output) != _covered(gold):
        raise MismatchedDocumentsError(
            f"output covers {_covered(output)} passages but gold covers {_covered(gold)}"
        )
    if region is not None:
        lo, hi = region
        if lo < 0 or hi < lo:
            raise ValueError(f"bad region {region}; need 0 <= lo <= hi")
        gold_beads = [b for b in gold.beads if _in_region(b, lo, hi)]
        out_beads = [b for b in output.beads if _in_region(b, lo, hi)]
    else:
        gold_beads = list(gold.beads)
        out_beads = list(output.beads)

    out_set = frozenset(out_beads)
    per_class: dict[BeadClass, list[int]] = {}
    gold_correct = 0
    for bead in gold_beads:
        row = per_class.setdefault(bead.cls, [0, 0])
        row[0] += 1
        if bead in out_set:
            row[1] += 1
            gold_correct += 1

    output_counts: dict[BeadClass, int] = {}
    for bead in out_beads:
        output_counts[bead.cls] = output_counts.get(bead.cls, 0) + 1
    gold_set = frozenset(gold_beads)
    one_one = [b for b in out_beads if b.cls == ONE_ONE]
    one_one_correct = sum(1 for b in one_one if b in gold_set)

    gold_total = len(gold_beads)
    return EvalReport(
        type1_accuracy=gold_correct / gold_total if gold_total else 1.0,
        type2_precision=one_one_correct / len(one_one) if one_one else 1.0,
        per_class={
            cls: ClassRow(t, c, t - c) for cls, (t, c) in per_class.items()
        },
        output_counts=output_counts,
        gold_total=gold_total,
        gold_correct=gold_correct,
        output_one_one=len(one_one),
        output_one_one_correct=one_one_correct,
    )


__all__ = ["ClassRow", "EvalReport", "REPORT_CLASSES", "evaluate"]
