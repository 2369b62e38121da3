"""Synthetic parallel corpora drawn from the alignment model itself.

Beads are sampled from a class mix, English passage lengths from a
uniform range, and the Chinese total from the length model's normal
law, so re-estimating parameters from generated gold recovers the
configured values. Passage text is filler of the right width class
(wide ideographs for Chinese, narrow letters for English), with cue
strings optionally reserved inside the target lengths so that every
generated length equals the hybrid length of the generated text.

The header_stretch option builds the known failure case for a pure
length aligner: a run of near-equal-length passages hiding one
translation-omission bead. After the perturbation every passage still
pairs up plausibly with its same-index partner, so the cheapest pure
length tiling slides off the truth by one for the rest of the run;
injected cue pairs make each slid pair expensive and restore it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .corpus import (
    Alignment,
    Bead,
    BeadClass,
    Document,
    Language,
    Passage,
    PassageKind,
    PRODUCIBLE_CLASSES,
    Span,
)
from .length_model import DEFAULT_C, DEFAULT_PRIORS, DEFAULT_SIGMA
from .lengths import hybrid_length
from .lexical import CueLexicon

ONE_ONE = BeadClass(1, 1)

# 'v' is left out so no run of filler can spell the lowercase cue word.
_ENGLISH_POOL = "abcdefghijklmnopqrstuwxyz "
# Common ideographs, none of which occurs in any bundled cue pattern.
_CHINESE_POOL = (
    "的是在了有和人這中大為上個國我以要他時來用們生到作地於出就分對"
    "成會可主發年動同工也能下過子說產種面而方後多定行學法所民得經"
)
_ODD_FILLER = ","


def english_filler(n: int, rng: np.random.Generator) -> str:
    """Narrow-only text of hybrid length exactly n."""
    if n <= 0:
        return ""
    idx = rng.integers(0, len(_ENGLISH_POOL), size=n)
    return "".join(map(_ENGLISH_POOL.__getitem__, idx.tolist()))


def chinese_filler(n: int, rng: np.random.Generator) -> str:
    """Wide-character text of hybrid length exactly n.

    Wide filler comes in steps of two, so an odd target gets one
    trailing narrow character.
    """
    if n <= 0:
        return ""
    idx = rng.integers(0, len(_CHINESE_POOL), size=n // 2)
    text = "".join(map(_CHINESE_POOL.__getitem__, idx.tolist()))
    if n % 2:
        text += _ODD_FILLER
    return text


def default_class_mix() -> dict[BeadClass, float]:
    """The default bead-class priors renormalized to a distribution."""
    total = sum(DEFAULT_PRIORS.values())
    return {cls: DEFAULT_PRIORS[cls] / total for cls in PRODUCIBLE_CLASSES}


@dataclass(frozen=True)
class HeaderStretch:
    """A near-equal-length run with one length-invisible perturbation.

    length counts gold beads in the run; the perturbation sits at the
    middle bead and must be 2-1 or 1-2 (its merged side carries only
    the first partner passage's worth of material, so it looks exactly
    like a 1-1 bead to the length model). passage_length is the base
    length of the equal-side passages.
    """

    length: int = 40
    perturbation: BeadClass = BeadClass(2, 1)
    passage_length: int = 40

    def __post_init__(self):
        if self.length < 3:
            raise ValueError(f"stretch needs at least 3 beads, got {self.length}")
        if self.perturbation not in (BeadClass(2, 1), BeadClass(1, 2)):
            raise ValueError(f"stretch perturbation must be 2-1 or 1-2, got {self.perturbation.label}")
        if self.passage_length < 20:
            raise ValueError(f"stretch passage_length must be >= 20, got {self.passage_length}")


@dataclass(frozen=True)
class GenConfig:
    c: float = DEFAULT_C
    sigma: float = DEFAULT_SIGMA
    class_mix: Mapping[BeadClass, float] | None = None
    n_beads: int = 100
    seed: int = 0
    english_length_range: tuple[int, int] = (20, 200)
    header_stretch: HeaderStretch | None = None
    cue_injection: float = 0.0
    cue_lexicon: CueLexicon | None = None

    def __post_init__(self):
        if self.c <= 0:
            raise ValueError(f"c must be positive, got {self.c}")
        if self.sigma < 0:
            raise ValueError(f"sigma must be non-negative, got {self.sigma}")
        if self.n_beads < 0:
            raise ValueError(f"n_beads must be non-negative, got {self.n_beads}")
        mix = dict(self.class_mix) if self.class_mix is not None else default_class_mix()
        for cls, p in mix.items():
            if cls not in PRODUCIBLE_CLASSES:
                raise ValueError(f"class mix contains non-producible class {cls.label}")
            if p < 0:
                raise ValueError(f"negative probability for {cls.label}")
        if abs(sum(mix.values()) - 1.0) > 1e-9:
            raise ValueError(f"class mix sums to {sum(mix.values())}, not 1")
        object.__setattr__(self, "class_mix", mix)
        lo, hi = self.english_length_range
        if not (1 <= lo <= hi):
            raise ValueError(f"bad english_length_range {self.english_length_range}")
        if not (0.0 <= self.cue_injection <= 1.0):
            raise ValueError(f"cue_injection must be in [0, 1], got {self.cue_injection}")
        if self.cue_injection > 0 and (self.cue_lexicon is None or len(self.cue_lexicon) == 0):
            raise ValueError("cue_injection needs a non-empty cue_lexicon")


def _injectable_cues(lexicon: CueLexicon | None) -> list[tuple[str, str]]:
    """Cue pairs safe to insert: no other cue pattern occurs inside them.

    Some natural lexicons nest (the pattern for the twelfth month
    contains the pattern for the second); injecting the outer one would
    bump the inner count on one side only and unbalance the very bead
    the cue is meant to support.
    """
    if lexicon is None:
        return []
    out = []
    for e, c in lexicon.cues:
        clean = True
        for e2, c2 in lexicon.cues:
            if (e2, c2) == (e, c):
                continue
            if e2 in e or c2 in c:
                clean = False
                break
        if clean:
            out.append((e, c))
    return out


def _inject(cls, e_lens, c_lens, injectable, counter, e_cues, c_cues, e_start=0, c_start=0):
    """Reserve cue pairs for one bead so every passage carries a cue.

    max(a, b) pairs are drawn round-robin and dealt out so that each
    drawn pair occurs exactly once per side. A single shared pair per
    bead is not enough: a merged bead then has a cue-free passage, and
    a tiling that splits the bead there stays fully matched. With one
    cue per passage any split strands a cue on one side.

    Returns the advanced counter, or the original one when some
    passage is too short to hold its share.
    """
    k = max(cls.a, cls.b)
    pairs = [injectable[(counter + j) % len(injectable)] for j in range(k)]
    e_new: dict[int, list[str]] = {}
    c_new: dict[int, list[str]] = {}
    for j, (e_cue, c_cue) in enumerate(pairs):
        e_new.setdefault(j % cls.a, []).append(e_cue)
        c_new.setdefault(j % cls.b, []).append(c_cue)
    for i, cues in e_new.items():
        if sum(hybrid_length(t) for t in cues) > e_lens[i]:
            return counter
    for i, cues in c_new.items():
        if sum(hybrid_length(t) for t in cues) > c_lens[i]:
            return counter
    for i, cues in e_new.items():
        e_cues[e_start + i] = tuple(cues)
    for i, cues in c_new.items():
        c_cues[c_start + i] = tuple(cues)
    return counter + k


def _chinese_total(l1: int, b: int, cfg: GenConfig, rng: np.random.Generator) -> int:
    noise = math.sqrt(l1) * cfg.sigma * float(rng.standard_normal())
    return max(max(b, 1), round(cfg.c * l1 + noise))


def _split_total(total: int, parts: int, rng: np.random.Generator) -> list[int]:
    if parts == 1:
        return [total]
    cuts = np.sort(rng.choice(total - 1, size=parts - 1, replace=False)) + 1
    bounds = [0, *cuts.tolist(), total]
    return [bounds[i + 1] - bounds[i] for i in range(parts)]


def _emit_stretch(cfg, rng, e_specs, c_specs, beads, injectable, counter):
    hs = cfg.header_stretch
    n, m = hs.length, hs.length // 2
    cycle = (0, 2, 4, 2)
    merged_english = hs.perturbation == BeadClass(2, 1)
    ne = n + 1 if merged_english else n
    nc = n if merged_english else n + 1
    e_lens = [hs.passage_length + cycle[i % 4] for i in range(ne)]
    c_lens = [round(cfg.c * e_lens[min(j, ne - 1)]) for j in range(nc)]
    e_off, c_off = len(e_specs), len(c_specs)
    e_cues: dict[int, tuple[str, ...]] = {}
    c_cues: dict[int, tuple[str, ...]] = {}
    for k in range(n):
        if k < m:
            bead = Bead(ONE_ONE, Span(k, k + 1), Span(k, k + 1))
        elif k == m:
            bead = Bead(hs.perturbation, Span(m, m + hs.perturbation.a), Span(m, m + hs.perturbation.b))
        elif merged_english:
            bead = Bead(ONE_ONE, Span(k + 1, k + 2), Span(k, k + 1))
        else:
            bead = Bead(ONE_ONE, Span(k, k + 1), Span(k + 1, k + 2))
        beads.append(
            Bead(
                bead.cls,
                Span(bead.eng.start + e_off, bead.eng.stop + e_off),
                Span(bead.chi.start + c_off, bead.chi.stop + c_off),
            )
        )
        if injectable and rng.random() < cfg.cue_injection:
            counter = _inject(
                bead.cls,
                e_lens[bead.eng.start : bead.eng.stop],
                c_lens[bead.chi.start : bead.chi.stop],
                injectable,
                counter,
                e_cues,
                c_cues,
                e_start=bead.eng.start,
                c_start=bead.chi.start,
            )
    e_specs.extend((L, e_cues.get(i)) for i, L in enumerate(e_lens))
    c_specs.extend((L, c_cues.get(j)) for j, L in enumerate(c_lens))
    return counter


def _emit_regular(cfg, rng, e_specs, c_specs, beads, injectable, counter):
    classes = list(cfg.class_mix)
    probs = np.array([cfg.class_mix[cls] for cls in classes])
    probs = probs / probs.sum()
    lo, hi = cfg.english_length_range
    for _ in range(cfg.n_beads):
        cls = classes[int(rng.choice(len(classes), p=probs))]
        if cls.a == 0:
            # No English side; realize the Chinese length the model would
            # have paired with a typical unseen English passage.
            l1 = int(rng.integers(lo, hi + 1))
            e_lens: list[int] = []
            c_lens = [_chinese_total(l1, 1, cfg, rng)]
        elif cls.b == 0:
            e_lens = [int(x) for x in rng.integers(lo, hi + 1, size=cls.a)]
            c_lens = []
        else:
            e_lens = [int(x) for x in rng.integers(lo, hi + 1, size=cls.a)]
            total = _chinese_total(sum(e_lens), cls.b, cfg, rng)
            c_lens = _split_total(total, cls.b, rng)
        e_start, c_start = len(e_specs), len(c_specs)
        bead = Bead(cls, Span(e_start, e_start + cls.a), Span(c_start, c_start + cls.b))
        beads.append(bead)
        e_cues: dict[int, tuple[str, ...]] = {}
        c_cues: dict[int, tuple[str, ...]] = {}
        if injectable and cls.a > 0 and cls.b > 0 and rng.random() < cfg.cue_injection:
            counter = _inject(cls, e_lens, c_lens, injectable, counter, e_cues, c_cues)
        for i, L in enumerate(e_lens):
            e_specs.append((L, e_cues.get(i)))
        for j, L in enumerate(c_lens):
            c_specs.append((L, c_cues.get(j)))
    return counter


def _realize(lang: Language, specs, rng: np.random.Generator, filler) -> Document:
    passages = []
    for i, (length, cues) in enumerate(specs):
        if cues:
            prefix = "".join(cues)
            text = prefix + filler(length - hybrid_length(prefix), rng)
        else:
            text = filler(length, rng)
        passages.append(Passage(i, text, PassageKind.SENTENCE))
    breaks = frozenset({0}) if passages else frozenset()
    return Document(lang, tuple(passages), breaks)


def generate(cfg: GenConfig) -> tuple[Document, Document, Alignment]:
    """One synthetic bitext and its gold alignment, fixed by cfg.seed."""
    rng = np.random.default_rng(cfg.seed)
    e_specs: list[tuple[int, tuple[str, ...] | None]] = []
    c_specs: list[tuple[int, tuple[str, ...] | None]] = []
    beads: list[Bead] = []
    injectable = _injectable_cues(cfg.cue_lexicon) if cfg.cue_injection > 0 else []
    counter = 0
    if cfg.header_stretch is not None:
        counter = _emit_stretch(cfg, rng, e_specs, c_specs, beads, injectable, counter)
    _emit_regular(cfg, rng, e_specs, c_specs, beads, injectable, counter)
    doc1 = _realize(Language.ENGLISH, e_specs, rng, english_filler)
    doc2 = _realize(Language.CHINESE, c_specs, rng, chinese_filler)
    return doc1, doc2, Alignment(tuple(beads), 0.0)


def sample_pairs(
    n: int,
    c: float = DEFAULT_C,
    sigma: float = DEFAULT_SIGMA,
    seed: int = 0,
    length_range: tuple[int, int] = (20, 200),
) -> list[tuple[int, int]]:
    """n (l1, l2) pairs from the 1-1 generative model, vectorized."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    lo, hi = length_range
    rng = np.random.default_rng(seed)
    l1 = rng.integers(lo, hi + 1, size=n)
    eps = rng.standard_normal(n)
    l2 = np.rint(c * l1 + np.sqrt(l1) * sigma * eps).astype(np.int64)
    np.maximum(l2, 1, out=l2)
    return list(zip(l1.tolist(), l2.tolist()))


__all__ = [
    "GenConfig",
    "HeaderStretch",
    "chinese_filler",
    "default_class_mix",
    "english_filler",
    "generate",
    "sample_pairs",
]
