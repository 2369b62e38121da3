"""Command-line surface: segment, estimate, align, evaluate, generate, stats.

Data goes to files or standard output; diagnostics go to standard error;
the exit status is nonzero exactly when a command failed. File outputs
are written to a temporary file in the destination directory and renamed
into place, so a failed run never leaves a partial file behind.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import re
import sys
import tempfile

import numpy as np

from . import __version__
from .aligner import align, align_anchored, align_banded
from .corpus import Alignment, BeadClass, Document, Language, validate_alignment
from .errors import BitextError
from .evaluator import evaluate
from .formats import format_alignment, load_alignment
from .length_model import (
    DEFAULT_C,
    DEFAULT_SIGMA,
    LengthModelParams,
    delta,
    estimate_params,
    format_params,
    load_params,
)
from .lexical import default_lexicon, load_lexicon
from .segmenter import emit_markup, parse_markup, segment
from .synth import GenConfig, HeaderStretch, generate

_RANGE_RE = re.compile(r"^(\d+)\.\.(\d+)$")


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=os.path.basename(path) + ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _write_output(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        _atomic_write(path, text)


def _decode(raw: bytes, encoding: str, path: str) -> str:
    try:
        return raw.decode(encoding)
    except LookupError:
        raise BitextError(f"unknown encoding {encoding!r}")
    except UnicodeDecodeError as exc:
        raise BitextError(
            f"{path}: cannot decode as {encoding}: byte offset {exc.start}: {exc.reason}"
        )


def _read_raw(path: str, encoding: str) -> str:
    if path == "-":
        return _decode(sys.stdin.buffer.read(), encoding, "<stdin>")
    with open(path, "rb") as fh:
        return _decode(fh.read(), encoding, path)


def _load_doc(path: str, lang: Language) -> Document:
    return parse_markup(_read_raw(path, "utf-8"), lang)


def _parse_range(text: str, flag: str) -> tuple[int, int]:
    m = _RANGE_RE.match(text)
    if not m:
        raise BitextError(f"{flag} must look like LO..HI, got {text!r}")
    return int(m.group(1)), int(m.group(2))


def _load_model_params(args) -> LengthModelParams:
    params = load_params(args.params) if args.params else LengthModelParams()
    if getattr(args, "normalize_priors", False):
        params = params.normalized()
    updates = {}
    if getattr(args, "floor", None) is not None:
        updates["floor"] = args.floor
    if getattr(args, "density", False):
        updates["density"] = True
    return dataclasses.replace(params, **updates) if updates else params


def _gold_pairs(gold: Alignment, doc1: Document, doc2: Document) -> list[tuple[int, int]]:
    """Per-bead (l1, l2) length pairs for beads with both sides present."""
    violation = validate_alignment(gold, len(doc1), len(doc2))
    if violation is not None:
        raise BitextError(f"gold alignment does not tile the documents: {violation}")
    pairs = []
    for bead in gold.beads:
        if bead.cls.a >= 1 and bead.cls.b >= 1:
            l1 = sum(doc1.passages[i].length for i in bead.eng.ids())
            l2 = sum(doc2.passages[j].length for j in bead.chi.ids())
            pairs.append((l1, l2))
    if not pairs:
        raise BitextError("gold contains no beads with both sides present")
    return pairs


def cmd_segment(args) -> None:
    doc = segment(_read_raw(args.input, args.encoding), Language(args.lang))
    _write_output(args.output, emit_markup(doc))


def cmd_estimate(args) -> None:
    gold = load_alignment(args.gold)
    doc1 = _load_doc(args.english, Language.ENGLISH)
    doc2 = _load_doc(args.chinese, Language.CHINESE)
    c, sigma2 = estimate_params(_gold_pairs(gold, doc1, doc2))
    _write_output(args.output, format_params(LengthModelParams(c=c, sigma2=sigma2)))


def cmd_align(args) -> None:
    if args.band is not None and args.anchor_paragraphs:
        raise BitextError("--band and --anchor-paragraphs are mutually exclusive")
    params = _load_model_params(args)
    lexicon = load_lexicon(args.lexicon) if args.lexicon else None
    doc1 = _load_doc(args.english, Language.ENGLISH)
    doc2 = _load_doc(args.chinese, Language.CHINESE)
    if args.anchor_paragraphs:
        result = align_anchored(doc1, doc2, params, lexicon)
    elif args.band is not None:
        result = align_banded(doc1, doc2, params, lexicon, band=args.band)
    else:
        result = align(doc1, doc2, params, lexicon)
    _write_output(args.output, format_alignment(result))


def cmd_evaluate(args) -> None:
    region = _parse_range(args.region, "--region") if args.region else None
    report = evaluate(
        load_alignment(args.output_file), load_alignment(args.gold_file), region
    )
    if args.json:
        text = json.dumps(report.to_json_dict(), indent=2, sort_keys=True) + "\n"
    else:
        text = report.render()
    _write_output(args.output, text)


def cmd_generate(args) -> None:
    mix = None
    if args.class_mix:
        mix = {}
        for item in args.class_mix.split(","):
            label, sep, prob = item.partition("=")
            if not sep:
                raise BitextError(f"--class-mix items must look like a-b=p, got {item!r}")
            mix[BeadClass.parse(label.strip())] = float(prob)
        total = sum(mix.values())
        if total <= 0:
            raise BitextError("--class-mix probabilities must sum to a positive value")
        mix = {cls: p / total for cls, p in mix.items()}
    lexicon = None
    if args.cue_rate > 0:
        lexicon = load_lexicon(args.lexicon) if args.lexicon else default_lexicon()
    stretch = None
    if args.header_stretch is not None:
        stretch = HeaderStretch(
            length=args.header_stretch,
            perturbation=BeadClass.parse(args.perturbation),
            passage_length=args.stretch_passage_length,
        )
    cfg = GenConfig(
        c=args.c,
        sigma=args.sigma,
        class_mix=mix,
        n_beads=args.n_beads,
        seed=args.seed,
        english_length_range=_parse_range(args.length_range, "--length-range"),
        header_stretch=stretch,
        cue_injection=args.cue_rate,
        cue_lexicon=lexicon,
    )
    doc1, doc2, gold = generate(cfg)
    _atomic_write(args.out_prefix + ".en", emit_markup(doc1))
    _atomic_write(args.out_prefix + ".zh", emit_markup(doc2))
    _atomic_write(args.out_prefix + ".gold", format_alignment(gold))


def cmd_stats(args) -> None:
    params = _load_model_params(args)
    gold = load_alignment(args.gold)
    doc1 = _load_doc(args.english, Language.ENGLISH)
    doc2 = _load_doc(args.chinese, Language.CHINESE)
    pairs = _gold_pairs(gold, doc1, doc2)
    deltas = [delta(l1, l2, params.c, params.sigma2) for l1, l2 in pairs]
    mean = float(np.mean(deltas))
    variance = float(np.var(deltas, ddof=1)) if len(deltas) > 1 else 0.0
    if args.pairs_out:
        _atomic_write(
            args.pairs_out, "".join(f"{l1}\t{l2}\n" for l1, l2 in pairs)
        )
    if args.hist_out:
        counts, edges = np.histogram(deltas, bins=args.bins)
        lines = [
            f"{edges[i]!r}\t{edges[i + 1]!r}\t{int(counts[i])}\n"
            for i in range(len(counts))
        ]
        _atomic_write(args.hist_out, "".join(lines))
    if args.json:
        text = (
            json.dumps(
                {"pairs": len(pairs), "delta_mean": mean, "delta_variance": variance},
                indent=2,
                sort_keys=True,
            )
            + "\n"
        )
    else:
        text = (
            f"pairs: {len(pairs)}\n"
            f"delta mean: {mean:.6f}\n"
            f"delta variance: {variance:.6f}\n"
        )
    _write_output(args.output, text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bitext-align",
        description="Length-based English-Chinese sentence alignment with lexical cues.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("segment", help="split raw text into passage markup")
    p.add_argument("lang", choices=[lang.value for lang in Language])
    p.add_argument("input", nargs="?", default="-", help="raw text file, - for stdin")
    p.add_argument("-o", "--output", default="-", help="marked output file, - for stdout")
    p.add_argument("--encoding", default="utf-8", help="input encoding (default utf-8; big5 supported)")
    p.set_defaults(func=cmd_segment)

    p = sub.add_parser("estimate", help="fit c and sigma2 from a gold alignment")
    p.add_argument("gold", help="gold alignment file")
    p.add_argument("english", help="marked English file")
    p.add_argument("chinese", help="marked Chinese file")
    p.add_argument("-o", "--output", default="-", help="parameter file, - for stdout")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("align", help="align two marked files")
    p.add_argument("english", help="marked English file")
    p.add_argument("chinese", help="marked Chinese file")
    p.add_argument("-o", "--output", default="-", help="alignment file, - for stdout")
    p.add_argument("--params", help="parameter file (default: built-in values)")
    p.add_argument("--lexicon", help="cue lexicon TSV; omit for pure length alignment")
    p.add_argument("--band", type=int, help="restrict the table to a diagonal band this wide")
    p.add_argument("--anchor-paragraphs", action="store_true", help="align paragraphs first, then sentences within")
    p.add_argument("--normalize-priors", action="store_true", help="rescale bead-class priors to sum to 1")
    p.add_argument("--floor", type=float, help="probability floor before taking logs")
    p.add_argument("--density", action="store_true", help="score length match with the normal density instead of the tail probability")
    p.set_defaults(func=cmd_align)

    p = sub.add_parser("evaluate", help="score an alignment against gold")
    p.add_argument("output_file", help="alignment file to score")
    p.add_argument("gold_file", help="gold alignment file")
    p.add_argument("--region", help="score only beads wholly inside passage-id range LO..HI (both sides)")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.add_argument("-o", "--output", default="-", help="report file, - for stdout")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("generate", help="write a synthetic bitext and its gold alignment")
    p.add_argument("out_prefix", help="writes <prefix>.en, <prefix>.zh and <prefix>.gold")
    p.add_argument("--n-beads", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--c", type=float, default=DEFAULT_C, help="length ratio")
    p.add_argument("--sigma", type=float, default=DEFAULT_SIGMA, help="noise scale (0 for noiseless)")
    p.add_argument("--length-range", default="20..200", help="English passage length range LO..HI")
    p.add_argument("--class-mix", help="comma list a-b=p,... ; normalized (default: built-in mix)")
    p.add_argument("--header-stretch", type=int, help="prepend a near-equal-length stretch of this many beads")
    p.add_argument("--perturbation", default="2-1", help="stretch perturbation class (2-1 or 1-2)")
    p.add_argument("--stretch-passage-length", type=int, default=40)
    p.add_argument("--cue-rate", type=float, default=0.0, help="probability per bead of injecting matched cues, one per passage")
    p.add_argument("--lexicon", help="cue lexicon for injection (default: bundled)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("stats", help="emit length pairs and the delta histogram for a gold alignment")
    p.add_argument("gold", help="gold alignment file")
    p.add_argument("english", help="marked English file")
    p.add_argument("chinese", help="marked Chinese file")
    p.add_argument("--params", help="parameter file (default: built-in values)")
    p.add_argument("--pairs-out", help="write l1<TAB>l2 per matched gold bead")
    p.add_argument("--hist-out", help="write bin_lo<TAB>bin_hi<TAB>count per histogram bin")
    p.add_argument("--bins", type=int, default=40)
    p.add_argument("--json", action="store_true", help="machine-readable summary")
    p.add_argument("-o", "--output", default="-", help="summary file, - for stdout")
    p.set_defaults(func=cmd_stats)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except (BitextError, OSError, ValueError) as exc:
        print(f"bitext-align: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
