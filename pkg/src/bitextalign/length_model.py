"""Length model: delta statistic, bead priors, match cost, estimation.

delta(l1, l2) = (l2 - l1*c) / sqrt(l1 * sigma2) is standard normal when l2
was generated from l1 under the model. A bead's match cost is
-log P(delta | match) - log prior(class), with P the two-tailed normal
probability 2*(1 - Phi(|delta|)), floored before the log so an
impossible-looking bead stays finitely expensive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .corpus import BeadClass
from .errors import FormatError

_SQRT2 = math.sqrt(2.0)
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)

DEFAULT_C = 0.506
DEFAULT_SIGMA = 0.166
DEFAULT_SIGMA2 = DEFAULT_SIGMA * DEFAULT_SIGMA

# Bead class priors; kept exactly as fitted (they sum to 1.0988, not 1).
DEFAULT_PRIORS: dict[BeadClass, float] = {
    BeadClass(0, 1): 0.0099,
    BeadClass(1, 0): 0.0099,
    BeadClass(1, 1): 0.89,
    BeadClass(1, 2): 0.089,
    BeadClass(2, 1): 0.089,
    BeadClass(2, 2): 0.011,
}

PROB_FLOOR = 1e-30

_PARAM_FILE_KEYS = ("c", "sigma2") + tuple(
    f"prior_{cls.a}_{cls.b}" for cls in sorted(DEFAULT_PRIORS)
)


@dataclass(frozen=True)
class LengthModelParams:
    """Model parameters: length ratio c, per-unit variance sigma2, class priors.

    floor bounds the probability passed to the log; density switches the
    delta score from the two-tailed probability to the normal density
    (experimental alternative, off by default).
    """

    c: float = DEFAULT_C
    sigma2: float = DEFAULT_SIGMA2
    priors: dict[BeadClass, float] = field(default_factory=lambda: dict(DEFAULT_PRIORS))
    floor: float = PROB_FLOOR
    density: bool = False

    def __post_init__(self):
        if self.c <= 0:
            raise ValueError(f"c must be positive, got {self.c}")
        if self.sigma2 < 0:
            raise ValueError(f"sigma2 must be non-negative, got {self.sigma2}")
        if not 0 < self.floor < 1:
            raise ValueError(f"floor must be in (0, 1), got {self.floor}")
        for cls, p in self.priors.items():
            if cls not in DEFAULT_PRIORS:
                raise ValueError(f"prior given for non-producible class {cls.label}")
            if not 0 < p <= 1:
                raise ValueError(f"prior for {cls.label} must be in (0, 1], got {p}")
        missing = [cls.label for cls in DEFAULT_PRIORS if cls not in self.priors]
        if missing:
            raise ValueError(f"missing priors for {', '.join(missing)}")

    def normalized(self) -> "LengthModelParams":
        """Same params with priors rescaled to sum to 1."""
        total = sum(self.priors.values())
        return replace(self, priors={cls: p / total for cls, p in self.priors.items()})


def estimate_params(pairs: list[tuple[float, float]]) -> tuple[float, float]:
    """Estimate (c, sigma2) from matched bead length pairs (l1, l2).

    c is the l1-weighted length ratio sum(l2)/sum(l1); sigma2 the mean of
    squared residuals scaled by 1/l1. Priors are not estimated here.
    """
    if not pairs:
        raise ValueError("cannot estimate parameters from an empty pair list")
    for l1, l2 in pairs:
        if l1 <= 0:
            raise ValueError(f"non-positive English length {l1} in training pair")
    total1 = sum(l1 for l1, _ in pairs)
    total2 = sum(l2 for _, l2 in pairs)
    c = total2 / total1
    sigma2 = sum((l2 - c * l1) ** 2 / l1 for l1, l2 in pairs) / len(pairs)
    return c, sigma2


def delta(l1: float, l2: float, c: float = DEFAULT_C, sigma2: float = DEFAULT_SIGMA2) -> float:
    """Standardized length discrepancy of an (l1, l2) pair."""
    if l1 <= 0:
        raise ValueError(f"delta needs a positive l1, got {l1}")
    if sigma2 <= 0:
        raise ValueError(f"delta needs a positive sigma2, got {sigma2}")
    return (l2 - l1 * c) / math.sqrt(l1 * sigma2)


def tail_probability(z: float) -> float:
    """Two-tailed standard normal probability 2*(1 - Phi(|z|))."""
    return math.erfc(abs(z) / _SQRT2)


def match_cost(l1: float, l2: float, cls: BeadClass, params: LengthModelParams) -> float:
    """-log Pr of one bead under the length model, prior included.

    For (0,1)/(1,0) beads the missing side is clamped to length 1 and the
    existing passage's length takes the l2 role, so long orphans are
    penalized and short ones stay cheap.
    """
    if cls not in params.priors:
        raise ValueError(f"class {cls.label} is not producible by the model")
    if params.sigma2 <= 0:
        raise ValueError("match_cost needs a positive sigma2")
    if cls.a == 0:
        d = (l2 - params.c) / math.sqrt(params.sigma2)
    elif cls.b == 0:
        d = (l1 - params.c) / math.sqrt(params.sigma2)
    else:
        if l1 <= 0:
            raise ValueError(f"bead of class {cls.label} has non-positive English length {l1}")
        d = (l2 - l1 * params.c) / math.sqrt(l1 * params.sigma2)
    if params.density:
        p = math.exp(-0.5 * d * d) * _INV_SQRT_2PI
    else:
        p = math.erfc(abs(d) / _SQRT2)
    if p < params.floor:
        p = params.floor
    return -math.log(p) - math.log(params.priors[cls])


def format_params(params: LengthModelParams) -> str:
    """The flat key-value parameter file as a string."""
    lines = [f"c = {params.c!r}", f"sigma2 = {params.sigma2!r}"]
    for cls in sorted(params.priors):
        lines.append(f"prior_{cls.a}_{cls.b} = {params.priors[cls]!r}")
    return "\n".join(lines) + "\n"


def save_params(params: LengthModelParams, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_params(params))


def load_params(path: str) -> LengthModelParams:
    """Read the parameter file written by save_params."""
    values: dict[str, float] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            key = key.strip()
            if not sep or key not in _PARAM_FILE_KEYS:
                raise FormatError(f"unknown parameter line {line!r}", path, lineno)
            try:
                values[key] = float(value.strip())
            except ValueError:
                raise FormatError(f"bad number for {key}: {value.strip()!r}", path, lineno)
    missing = [k for k in _PARAM_FILE_KEYS if k not in values]
    if missing:
        raise FormatError(f"missing keys: {', '.join(missing)}", path)
    priors = {
        cls: values[f"prior_{cls.a}_{cls.b}"] for cls in DEFAULT_PRIORS
    }
    try:
        return LengthModelParams(c=values["c"], sigma2=values["sigma2"], priors=priors)
    except ValueError as exc:
        raise FormatError(str(exc), path)


__all__ = [
    "DEFAULT_C",
    "DEFAULT_SIGMA",
    "DEFAULT_SIGMA2",
    "DEFAULT_PRIORS",
    "PROB_FLOOR",
    "LengthModelParams",
    "estimate_params",
    "delta",
    "tail_probability",
    "match_cost",
    "save_params",
    "load_params",
]
