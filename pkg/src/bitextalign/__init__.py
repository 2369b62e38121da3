"""English-Chinese sentence alignment by length statistics and lexical cues.

The toolkit segments bitext into passages, scores candidate alignment
beads with a length model extended by probabilistic lexical cues, finds
the minimum-cost monotone alignment by dynamic programming, and scores
results against gold references. A synthetic-corpus generator and a
command-line interface round out the package.
"""

from .aligner import (
    align,
    align_anchored,
    align_banded,
    align_bruteforce,
    enumerate_alignments,
)
from .corpus import (
    Alignment,
    Bead,
    BeadClass,
    Document,
    GOLD_ONLY_CLASSES,
    Language,
    PRODUCIBLE_CLASSES,
    Passage,
    PassageKind,
    Span,
    Violation,
    validate_alignment,
)
from .errors import BitextError, FormatError, MarkupError, MismatchedDocumentsError
from .evaluator import ClassRow, EvalReport, evaluate
from .formats import (
    format_alignment,
    load_alignment,
    parse_alignment,
    save_alignment,
)
from .length_model import (
    DEFAULT_C,
    DEFAULT_PRIORS,
    DEFAULT_SIGMA,
    DEFAULT_SIGMA2,
    LengthModelParams,
    delta,
    estimate_params,
    format_params,
    load_params,
    match_cost,
    save_params,
    tail_probability,
)
from .lengths import hybrid_length, is_wide
from .lexical import (
    CueLexicon,
    DEFAULT_CUE_VARIANCE,
    bead_cue_counts,
    combined_cost,
    count_cues,
    cue_mismatch_cost,
    default_lexicon,
    lexical_cost,
    load_lexicon,
    save_lexicon,
)
from .segmenter import (
    SegmentationRules,
    default_rules,
    emit_markup,
    parse_markup,
    segment,
)
from .synth import (
    GenConfig,
    HeaderStretch,
    chinese_filler,
    default_class_mix,
    english_filler,
    generate,
    sample_pairs,
)

__version__ = "0.1.0"

__all__ = [
    "Alignment",
    "Bead",
    "BeadClass",
    "BitextError",
    "ClassRow",
    "CueLexicon",
    "DEFAULT_C",
    "DEFAULT_CUE_VARIANCE",
    "DEFAULT_PRIORS",
    "DEFAULT_SIGMA",
    "DEFAULT_SIGMA2",
    "Document",
    "EvalReport",
    "FormatError",
    "GOLD_ONLY_CLASSES",
    "GenConfig",
    "HeaderStretch",
    "Language",
    "LengthModelParams",
    "MarkupError",
    "MismatchedDocumentsError",
    "PRODUCIBLE_CLASSES",
    "Passage",
    "PassageKind",
    "SegmentationRules",
    "Span",
    "Violation",
    "align",
    "align_anchored",
    "align_banded",
    "align_bruteforce",
    "bead_cue_counts",
    "chinese_filler",
    "combined_cost",
    "count_cues",
    "cue_mismatch_cost",
    "default_class_mix",
    "default_lexicon",
    "default_rules",
    "delta",
    "emit_markup",
    "english_filler",
    "enumerate_alignments",
    "estimate_params",
    "evaluate",
    "format_alignment",
    "format_params",
    "generate",
    "hybrid_length",
    "is_wide",
    "lexical_cost",
    "load_alignment",
    "load_lexicon",
    "load_params",
    "match_cost",
    "parse_alignment",
    "parse_markup",
    "sample_pairs",
    "save_alignment",
    "save_lexicon",
    "save_params",
    "segment",
    "tail_probability",
    "validate_alignment",
]
