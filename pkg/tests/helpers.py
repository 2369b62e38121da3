"""Shared builders for the test suite.

Everything here is deterministic: generators take explicit seeds and the
document builders are pure functions of their arguments.
"""

from __future__ import annotations

import string

import numpy as np

from bitextalign import CueLexicon, LengthModelParams
from bitextalign.corpus import Document, Language, Passage

# Cue patterns for randomized aligner instances. The English and Chinese
# sides use distinct markers so a match never happens by accident.
ORACLE_CUES = (("January", "JANCUE"), ("Governor", "GOVCUE"), ("Friday", "FRICUE"))


def make_doc(lang: Language, texts: list[str]) -> Document:
    passages = tuple(Passage(i, text) for i, text in enumerate(texts))
    breaks = frozenset({0}) if passages else frozenset()
    return Document(lang, passages, breaks)


def length_doc(lang: Language, lengths: list[int]) -> Document:
    """Document whose passages are runs of 'x' with the given lengths."""
    return make_doc(lang, ["x" * n for n in lengths])


def random_instance(rng: np.random.Generator):
    """One randomized alignment problem: documents, params, optional lexicon.

    Sizes stay small (n1, n2 <= 6) so exhaustive enumeration is cheap.
    """
    n1 = int(rng.integers(0, 7))
    n2 = int(rng.integers(0, 7))
    with_cues = bool(rng.integers(0, 2))
    lex = CueLexicon(ORACLE_CUES, 0.07) if with_cues else None

    def make(lang, n, patterns):
        passages = []
        for i in range(n):
            text = "x" * int(rng.integers(1, 120))
            if patterns is not None:
                for pat in patterns:
                    text += pat * int(rng.integers(0, 3))
            passages.append(Passage(i, text))
        breaks = frozenset({0}) if passages else frozenset()
        return Document(lang, tuple(passages), breaks)

    d1 = make(Language.ENGLISH, n1, [e for e, _ in ORACLE_CUES] if with_cues else None)
    d2 = make(Language.CHINESE, n2, [c for _, c in ORACLE_CUES] if with_cues else None)
    params = LengthModelParams(
        c=float(rng.uniform(0.3, 0.9)),
        sigma2=float(rng.uniform(0.005, 0.09)),
        density=bool(rng.integers(0, 4) == 0),
    )
    if rng.integers(0, 4) == 0:
        params = params.normalized()
    return d1, d2, params, lex


# A short council Q&A exchange where one English sentence pair merges into
# a single Chinese sentence, so the best tiling is 1-1,1-1,1-1,2-1,1-1.
EXCHANGE_ENGLISH = [
    "MR FRED LI (in Cantonese) :",
    "I would like to talk about public assistance.",
    "I notice from your address that under the Public Assistance Scheme, "
    "the basic rate of $825 a month for a single adult will be increased "
    "by 15% to $950 a month.",
    "However, do you know that the revised rate plus all other grants "
    "will give each recipient no more than $2000 a month?",
    "On average, each recipient will receive $1600 to $1700 a month.",
    "In view of Hong Kong's prosperity and high living cost, this figure "
    "is very ironical.",
]

EXCHANGE_CHINESE = [
    "李華明議員問:",
    "我想談及公共援助問題。",
    "施政報告提到提高單身人士的公共援助基本金額, 由每月825元提高至950元, 即加幅是15%。",
    "但你知否經過調整後, 即使加上所有其他津貼, 每名受助者每月所得到的公共援助都不會超過2000元, "
    "平均來說, 他們每月所得的是1600元至1700元左右。",
    "以香港的繁榮和生活水平之高, 這數字根本是一個很大的諷刺。",
]


def sample_exchange() -> tuple[Document, Document]:
    english = make_doc(Language.ENGLISH, EXCHANGE_ENGLISH)
    chinese = make_doc(Language.CHINESE, EXCHANGE_CHINESE)
    return english, chinese


def _big5_wide_pool() -> list[str]:
    """Wide characters that the big5 codec can encode (always two bytes)."""
    pool = []
    for lo, hi in ((0x3000, 0x303F), (0x4E00, 0x9FFF), (0xFF01, 0xFF60)):
        for cp in range(lo, hi + 1):
            ch = chr(cp)
            try:
                raw = ch.encode("big5")
            except UnicodeEncodeError:
                continue
            if len(raw) == 2:
                pool.append(ch)
    return pool


def big5_mixed_strings(n: int, seed: int) -> list[str]:
    """Mixed-script strings drawn from ASCII plus big5-encodable wide chars."""
    rng = np.random.default_rng(seed)
    wide = _big5_wide_pool()
    narrow = string.ascii_letters + string.digits + " ,.!?;:'()-"
    out = []
    for _ in range(n):
        k = int(rng.integers(0, 40))
        chars = []
        for _ in range(k):
            if rng.random() < 0.5:
                chars.append(narrow[int(rng.integers(0, len(narrow)))])
            else:
                chars.append(wide[int(rng.integers(0, len(wide)))])
        out.append("".join(chars))
    return out
