"""Dynamic-programming bead alignment with an exhaustive oracle.

align() minimizes the summed bead cost over all monotone tilings of the two
documents using the six producible bead classes. The recurrence runs in a
JIT kernel over prefix-sum arrays; the kernel reproduces the scalar cost
arithmetic of length_model.match_cost / lexical.combined_cost operation for
operation, and align_bruteforce checks it against full enumeration built on
the scalar path only.

Ties are broken by the fixed class order (1,1) < (1,2) < (2,1) < (2,2) <
(0,1) < (1,0); applied per cell during the forward pass, which makes the
backtracked alignment the lexicographically smallest by reversed bead-class
sequence among cost-equal optima. The brute force applies the same rule.

Path costs accumulate in double-double arithmetic (an exact hi+lo sum of
the per-bead doubles), in the kernel and the brute force alike. Plain
double sums are not good enough here: two paths whose exact sums differ
by an ulp can round to bit-equal totals, and then the oracle's whole-path
tie-break disagrees with the cell-local decision the DP already froze.
With exact sums, equal means mathematically equal, and the per-cell rule
provably realizes the global reversed-sequence rule.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

from .corpus import (
    Alignment,
    Bead,
    BeadClass,
    Document,
    Passage,
    PassageKind,
    PRODUCIBLE_CLASSES,
    Span,
)
from .length_model import LengthModelParams
from .lexical import CueLexicon, combined_cost, cue_mismatch_cost, passage_cue_counts

_CLS_A = np.array([cls.a for cls in PRODUCIBLE_CLASSES], dtype=np.int64)
_CLS_B = np.array([cls.b for cls in PRODUCIBLE_CLASSES], dtype=np.int64)


def _dd_add(hi: float, lo: float, x: float) -> tuple[float, float]:
    """(hi + lo) + x as a renormalized double-double; error-free for x a double.

    Knuth two-sum followed by a fast renormalization. The kernel inlines
    this exact operation sequence; keep the two in lockstep.
    """
    s = hi + x
    bb = s - hi
    err = (hi - (s - bb)) + (x - bb)
    e = err + lo
    hi2 = s + e
    lo2 = e - (hi2 - s)
    return hi2, lo2


@njit(cache=True)
def _dp_kernel(L1, L2, V, W, lex_table, jlo, jhi, width, cls_a, cls_b, nlp,
               c, sigma2, floor, density):
    """Banded forward pass; row i stores columns jlo[i]..jhi[i]."""
    n1 = L1.shape[0] - 1
    ncues = V.shape[0]
    sq2 = math.sqrt(2.0)
    sq_sigma = math.sqrt(sigma2)
    inv_sq2pi = 1.0 / math.sqrt(2.0 * math.pi)
    inf = np.inf
    cost_hi = np.full((n1 + 1, width), inf)
    cost_lo = np.zeros((n1 + 1, width))
    back = np.full((n1 + 1, width), -1, dtype=np.int8)
    cost_hi[0, 0] = 0.0
    for i in range(n1 + 1):
        lo = jlo[i]
        for j in range(lo, jhi[i] + 1):
            if i == 0 and j == 0:
                continue
            best_hi = inf
            best_lo = 0.0
            bestk = -1
            for k in range(6):
                a = cls_a[k]
                b = cls_b[k]
                pi = i - a
                pj = j - b
                if pi < 0 or pj < 0 or pj < jlo[pi] or pj > jhi[pi]:
                    continue
                prev_hi = cost_hi[pi, pj - jlo[pi]]
                if prev_hi == inf:
                    continue
                prev_lo = cost_lo[pi, pj - jlo[pi]]
                l1 = L1[i] - L1[pi]
                l2 = L2[j] - L2[pj]
                if a == 0:
                    d = (l2 - c) / sq_sigma
                elif b == 0:
                    d = (l1 - c) / sq_sigma
                else:
                    d = (l2 - l1 * c) / math.sqrt(l1 * sigma2)
                if density:
                    p = math.exp(-0.5 * d * d) * inv_sq2pi
                else:
                    p = math.erfc(abs(d) / sq2)
                if p < floor:
                    p = floor
                bead = -math.log(p) + nlp[k]
                lex = 0.0
                for t in range(ncues):
                    dv = (W[t, j] - W[t, pj]) - (V[t, i] - V[t, pi])
                    if dv < 0:
                        dv = -dv
                    lex += lex_table[dv]
                # _dd_add(prev_hi, prev_lo, bead + lex), inlined
                x = bead + lex
                s = prev_hi + x
                bb = s - prev_hi
                err = (prev_hi - (s - bb)) + (x - bb)
                e = err + prev_lo
                cand_hi = s + e
                cand_lo = e - (cand_hi - s)
                if cand_hi < best_hi or (cand_hi == best_hi and cand_lo < best_lo):
                    best_hi = cand_hi
                    best_lo = cand_lo
                    bestk = k
            cost_hi[i, j - lo] = best_hi
            cost_lo[i, j - lo] = best_lo
            back[i, j - lo] = bestk
    return cost_hi, cost_lo, back


def _prefix_lengths(doc: Document) -> np.ndarray:
    out = np.zeros(len(doc.passages) + 1)
    for i, p in enumerate(doc.passages):
        out[i + 1] = out[i] + p.length
    return out


def _cue_arrays(
    doc1: Document, doc2: Document, params: LengthModelParams, lexicon: CueLexicon | None
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-cue count prefix sums plus the |count diff| -> cost lookup."""
    if lexicon is None or len(lexicon) == 0:
        zero = np.zeros((0, 1), dtype=np.int64)
        return zero, zero, np.zeros(1)
    eng_counts = passage_cue_counts(doc1, [e for e, _ in lexicon.cues])
    chi_counts = passage_cue_counts(doc2, [c for _, c in lexicon.cues])
    V = np.zeros((len(lexicon), len(doc1.passages) + 1), dtype=np.int64)
    W = np.zeros((len(lexicon), len(doc2.passages) + 1), dtype=np.int64)
    np.cumsum(np.asarray(eng_counts, dtype=np.int64), axis=1, out=V[:, 1:])
    np.cumsum(np.asarray(chi_counts, dtype=np.int64), axis=1, out=W[:, 1:])
    max_diff = int(max(V[:, -1].max(), W[:, -1].max(), 0))
    table = np.array(
        [cue_mismatch_cost(float(d), lexicon.variance, params.floor) for d in range(max_diff + 1)]
    )
    return V, W, table


def _run_dp(
    doc1: Document,
    doc2: Document,
    params: LengthModelParams,
    lexicon: CueLexicon | None,
    jlo: np.ndarray,
    jhi: np.ndarray,
) -> Alignment | None:
    """Kernel + backtrack; None when the band disconnects the table."""
    n1, n2 = len(doc1.passages), len(doc2.passages)
    if params.sigma2 <= 0:
        raise ValueError("alignment needs a positive sigma2")
    L1 = _prefix_lengths(doc1)
    L2 = _prefix_lengths(doc2)
    V, W, lex_table = _cue_arrays(doc1, doc2, params, lexicon)
    nlp = np.array([-math.log(params.priors[cls]) for cls in PRODUCIBLE_CLASSES])
    width = int((jhi - jlo).max()) + 1
    cost_hi, cost_lo, back = _dp_kernel(
        L1, L2, V, W, lex_table, jlo, jhi, width, _CLS_A, _CLS_B, nlp,
        params.c, params.sigma2, params.floor, params.density,
    )
    if math.isinf(cost_hi[n1, n2 - jlo[n1]]):
        return None
    total = float(cost_hi[n1, n2 - jlo[n1]] + cost_lo[n1, n2 - jlo[n1]])
    beads: list[Bead] = []
    i, j = n1, n2
    while (i, j) != (0, 0):
        k = int(back[i, j - jlo[i]])
        if k < 0:
            return None
        cls = PRODUCIBLE_CLASSES[k]
        beads.append(Bead(cls, Span(i - cls.a, i), Span(j - cls.b, j)))
        i, j = i - cls.a, j - cls.b
    beads.reverse()
    return Alignment(tuple(beads), total)


def align(
    doc1: Document,
    doc2: Document,
    params: LengthModelParams | None = None,
    lexicon: CueLexicon | None = None,
) -> Alignment:
    """Minimum-cost alignment over the full DP table.

    With lexicon=None or an empty lexicon this is the pure length model;
    an empty document side yields all-(0,1) or all-(1,0) beads and two
    empty documents yield the empty alignment at cost 0.
    """
    params = params if params is not None else LengthModelParams()
    n1, n2 = len(doc1.passages), len(doc2.passages)
    if n1 == 0 and n2 == 0:
        return Alignment((), 0.0)
    jlo = np.zeros(n1 + 1, dtype=np.int64)
    jhi = np.full(n1 + 1, n2, dtype=np.int64)
    result = _run_dp(doc1, doc2, params, lexicon, jlo, jhi)
    assert result is not None  # the full table is always connected
    return result


def align_banded(
    doc1: Document,
    doc2: Document,
    params: LengthModelParams | None = None,
    lexicon: CueLexicon | None = None,
    band: int = 20,
) -> Alignment:
    """align restricted to cells with |i*n2/n1 - j| <= band.

    Equal to align whenever the unbanded optimum stays inside the band
    (caller guarantees the band covers the true path's slack). A band that
    covers or disconnects the table falls back to the full DP.
    """
    if band < 1:
        raise ValueError(f"band must be >= 1, got {band}")
    params = params if params is not None else LengthModelParams()
    n1, n2 = len(doc1.passages), len(doc2.passages)
    if n1 == 0 or n2 == 0 or band >= max(n1, n2):
        return align(doc1, doc2, params, lexicon)
    ratio = n2 / n1
    jlo = np.zeros(n1 + 1, dtype=np.int64)
    jhi = np.zeros(n1 + 1, dtype=np.int64)
    for i in range(n1 + 1):
        center = i * ratio
        jlo[i] = max(0, int(math.ceil(center - band)))
        jhi[i] = min(n2, int(math.floor(center + band)))
    jlo[0] = 0
    jhi[n1] = n2
    result = _run_dp(doc1, doc2, params, lexicon, jlo, jhi)
    if result is None:
        return align(doc1, doc2, params, lexicon)
    return result


def enumerate_alignments(n1: int, n2: int):
    """All monotone bead tilings of an (n1, n2) table, forward order."""
    acc: list[Bead] = []

    def rec(i: int, j: int):
        if i == n1 and j == n2:
            yield tuple(acc)
            return
        for cls in PRODUCIBLE_CLASSES:
            ni, nj = i + cls.a, j + cls.b
            if ni <= n1 and nj <= n2:
                acc.append(Bead(cls, Span(i, ni), Span(j, nj)))
                yield from rec(ni, nj)
                acc.pop()

    yield from rec(0, 0)


_CLASS_ORDER = {cls: k for k, cls in enumerate(PRODUCIBLE_CLASSES)}


def align_bruteforce(
    doc1: Document,
    doc2: Document,
    params: LengthModelParams | None = None,
    lexicon: CueLexicon | None = None,
    max_passages: int = 8,
    bead_cost=None,
) -> Alignment:
    """Exact minimum by exhaustive search; oracle for align.

    Path costs accumulate in the same double-double arithmetic as the DP,
    and cost-equal alignments are ordered by the reversed bead-class
    sequence, matching the DP tie-break. bead_cost optionally replaces
    the model cost (used by invariance tests); it must stay non-negative
    or the pruning is unsound. Guarded to small inputs.
    """
    params = params if params is not None else LengthModelParams()
    n1, n2 = len(doc1.passages), len(doc2.passages)
    if n1 > max_passages or n2 > max_passages:
        raise ValueError(f"brute force is guarded to {max_passages} passages per side")
    if bead_cost is None:
        def bead_cost(bead: Bead) -> float:
            return combined_cost(bead, doc1, doc2, params, lexicon)
    cache: dict[tuple[int, int, BeadClass], float] = {}

    def cost_of(i: int, j: int, cls: BeadClass) -> float:
        key = (i, j, cls)
        if key not in cache:
            cache[key] = bead_cost(Bead(cls, Span(i, i + cls.a), Span(j, j + cls.b)))
        return cache[key]

    best_hi = math.inf
    best_lo = 0.0
    best_key: tuple[int, ...] = ()
    best_beads: tuple[Bead, ...] = ()
    acc: list[Bead] = []

    def rec(i: int, j: int, hi: float, lo: float):
        nonlocal best_hi, best_lo, best_key, best_beads
        if hi > best_hi or (hi == best_hi and lo > best_lo):
            return  # bead costs are non-negative, safe to prune
        if i == n1 and j == n2:
            key = tuple(_CLASS_ORDER[b.cls] for b in reversed(acc))
            if (hi, lo, key) < (best_hi, best_lo, best_key):
                best_hi, best_lo, best_key, best_beads = hi, lo, key, tuple(acc)
            return
        for cls in PRODUCIBLE_CLASSES:
            ni, nj = i + cls.a, j + cls.b
            if ni <= n1 and nj <= n2:
                acc.append(Bead(cls, Span(i, ni), Span(j, nj)))
                rec(ni, nj, *_dd_add(hi, lo, cost_of(i, j, cls)))
                acc.pop()

    rec(0, 0, 0.0, 0.0)
    # every table has at least one tiling
    return Alignment(best_beads, best_hi + best_lo)


def align_anchored(
    doc1: Document,
    doc2: Document,
    params: LengthModelParams | None = None,
    lexicon: CueLexicon | None = None,
    paragraph_lexicon: CueLexicon | None = None,
) -> Alignment:
    """Two-pass alignment: anchor paragraphs first, then align inside them.

    Paragraphs are aligned as pseudo-passages (member texts joined by
    newlines, so cue counts stay additive; lengths gain one unit per
    join, which is negligible at paragraph scale). Each paragraph-level
    bead's passage block is then sentence-aligned independently and the
    results concatenated. Off by default in the CLI.
    """
    params = params if params is not None else LengthModelParams()
    p_lex = paragraph_lexicon if paragraph_lexicon is not None else lexicon
    spans1 = doc1.paragraph_spans()
    spans2 = doc2.paragraph_spans()
    if len(spans1) <= 1 and len(spans2) <= 1:
        return align(doc1, doc2, params, lexicon)

    def para_doc(doc: Document, spans: list[tuple[int, int]]) -> Document:
        passages = tuple(
            Passage(k, "\n".join(p.text for p in doc.passages[a:b]), PassageKind.OTHER)
            for k, (a, b) in enumerate(spans)
        )
        return Document(doc.lang, passages, frozenset(range(len(spans))))

    pal = align(para_doc(doc1, spans1), para_doc(doc2, spans2), params, p_lex)
    beads: list[Bead] = []
    total = 0.0
    e_cur = c_cur = 0
    for pbead in pal.beads:
        e_stop = e_cur + sum(spans1[k][1] - spans1[k][0] for k in pbead.eng.ids())
        c_stop = c_cur + sum(spans2[k][1] - spans2[k][0] for k in pbead.chi.ids())
        sub = align(doc1.slice(e_cur, e_stop), doc2.slice(c_cur, c_stop), params, lexicon)
        for bead in sub.beads:
            beads.append(
                Bead(
                    bead.cls,
                    Span(bead.eng.start + e_cur, bead.eng.stop + e_cur),
                    Span(bead.chi.start + c_cur, bead.chi.stop + c_cur),
                )
            )
        total += sub.total_cost
        e_cur, c_cur = e_stop, c_stop
    return Alignment(tuple(beads), total)


__all__ = [
    "align",
    "align_banded",
    "align_bruteforce",
    "align_anchored",
    "enumerate_alignments",
]
