"""Command-line surface.

Exit codes: 0 success, 1 partial record failures, 2 configuration error.
The default embedding provider can be set via the ``SIMPEVAL_PROVIDER``
environment variable (same syntax as ``--provider``).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from pathlib import Path

from . import corpus, diagnostics, harness
from .embed import ProviderSpec, embeddings_for, greedy_match_score
from .entropy import LogBase, bow_entropy, sup_entropy, sup_match_lengths_indexed
from .errors import SimpevalError, UnknownSourceId
from .ngram import BleuConfig, bleu, rouge_l
from .textcore import load_abbreviations, split_sentences, tokenize

PROVIDER_ENV = "SIMPEVAL_PROVIDER"


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _provider(args: argparse.Namespace) -> ProviderSpec:
    spec = getattr(args, "provider", None) or os.environ.get(PROVIDER_ENV)
    if not spec:
        raise ValueError(
            f"no provider given (use --provider or ${PROVIDER_ENV})"
        )
    return ProviderSpec.parse(spec, timeout=getattr(args, "timeout", 10.0))


def _log_base(args: argparse.Namespace) -> LogBase:
    return LogBase.BASE2 if args.log_base == "2" else LogBase.NATURAL


def _emit(payload, args: argparse.Namespace) -> None:
    print(json.dumps(payload, ensure_ascii=False, indent=2))


def _cmd_tokenize(args: argparse.Namespace) -> int:
    seq = tokenize(_read_text(args.text))
    if args.format == "json":
        _emit([dataclasses.asdict(t) for t in seq], args)
    else:
        for token in seq:
            print(token.surface)
    return 0


def _cmd_entropy(args: argparse.Namespace) -> int:
    seq = tokenize(_read_text(args.text))
    base = _log_base(args)
    profile = sup_match_lengths_indexed(seq)
    _emit(
        {
            "bow_bits": bow_entropy(seq),
            "sup": sup_entropy(profile, base),
            "log_base": base.value,
            "tokens": len(seq),
            "horizon": profile.n,
        },
        args,
    )
    return 0


def _cmd_bleu(args: argparse.Namespace) -> int:
    config = BleuConfig(
        max_order=args.max_order,
        smoothing_epsilon=args.smoothing_epsilon,
        scale=args.scale,
    )
    result = bleu(tokenize(_read_text(args.hypothesis)),
                  tokenize(_read_text(args.reference)), config)
    _emit(
        {
            "score": result.score,
            "precisions": list(result.precisions),
            "brevity_penalty": result.brevity_penalty,
            "degenerate": result.degenerate,
        },
        args,
    )
    return 0


def _cmd_rouge(args: argparse.Namespace) -> int:
    result = rouge_l(
        tokenize(_read_text(args.hypothesis)), tokenize(_read_text(args.reference))
    )
    _emit({"score": result.score, "lcs_length": result.lcs_length}, args)
    return 0


def _cmd_bertscore(args: argparse.Namespace) -> int:
    provider = _provider(args)
    hyp = tokenize(_read_text(args.hypothesis))
    ref = tokenize(_read_text(args.reference))
    result = greedy_match_score(
        embeddings_for(provider, hyp), embeddings_for(provider, ref)
    )
    _emit(dataclasses.asdict(result), args)
    return 0


def _cmd_diagnose(args: argparse.Namespace) -> int:
    output_text = _read_text(args.output)
    source = tokenize(_read_text(args.source))
    output = tokenize(output_text)
    sentences = [seq for _, seq in split_sentences(output_text)]
    report = diagnostics.diagnose(output, source, sentences)
    payload = dataclasses.asdict(report)
    payload["repeated_ngram_rates"] = {
        str(n): rate for n, rate in report.repeated_ngram_rates.items()
    }
    _emit(payload, args)
    return 0


def _cmd_mask(args: argparse.Namespace) -> int:
    abbreviations = (
        load_abbreviations(args.abbreviations) if args.abbreviations else None
    )
    sentences = [
        seq for _, seq in split_sentences(_read_text(args.text), abbreviations)
    ]
    pairs = corpus.generate_masked_pairs(sentences, rate=args.rate, seed=args.seed)
    corpus.export_pairs(pairs, args.out)
    print(f"wrote {len(pairs)} pairs to {args.out}")
    return 0


def _cmd_splits(args: argparse.Namespace) -> int:
    manifest_path = args.manifest or corpus.default_manifest_path()
    manifest = corpus.load_manifest(manifest_path)
    assignment = corpus.assign_splits(
        manifest,
        dev_ids=set(args.dev.split(",")) if args.dev else None,
        test_ids=set(args.test.split(",")) if args.test else None,
    )
    _emit(
        {
            "dev": sorted(assignment.dev_ids),
            "test": sorted(assignment.test_ids),
            "train": sorted(assignment.train_ids),
        },
        args,
    )
    return 0


def _cmd_evaluate(args: argparse.Namespace) -> int:
    provider = _provider(args)
    records = harness.load_eval_records(args.records)
    if args.manifest:
        known = {p.source_id for p in corpus.load_manifest(args.manifest)}
        unknown = sorted({r.source_id for r in records} - known)
        if unknown:
            raise UnknownSourceId(", ".join(unknown))
    config = harness.EvalConfig(log_base=_log_base(args))
    result = harness.evaluate_corpus(records, provider, config)
    rows = [r.row for r in result.per_record if r.row is not None]
    if result.average is not None:
        rows.append(result.average)
    if args.format == "json":
        payload = {
            "records": [
                {
                    "source_id": r.source_id,
                    "row": dataclasses.asdict(r.row) if r.row else None,
                    "error": r.error,
                }
                for r in result.per_record
            ],
            "average": dataclasses.asdict(result.average)
            if result.average
            else None,
        }
        output = json.dumps(payload, ensure_ascii=False, indent=2)
    else:
        output = harness.render_report(rows, format=args.format)
    if args.out:
        Path(args.out).write_text(output, encoding="utf-8")
    else:
        print(output, end="" if output.endswith("\n") else "\n")
    for failed in result.failed:
        print(f"failed: {failed.source_id}: {failed.error}", file=sys.stderr)
    return 1 if result.failed else 0


def _cmd_earlystop(args: argparse.Namespace) -> int:
    if args.scores_file:
        scores = json.loads(Path(args.scores_file).read_text(encoding="utf-8"))
    else:
        scores = [float(s) for s in args.scores.split(",")]
    policy = harness.EarlyStopPolicy(
        max_epochs=args.max_epochs, patience=args.patience
    )
    best, stop = harness.early_stop_select(scores, policy)
    _emit({"best_epoch": best, "stop_epoch": stop}, args)
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    payload = json.loads(Path(args.rows).read_text(encoding="utf-8"))
    rows = [harness.ReportRow(**row) for row in payload]
    print(harness.render_report(rows, format=args.format), end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simpeval",
        description="Text-simplification evaluation toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_log_base(p):
        p.add_argument("--log-base", choices=("2", "e"), default="2")

    def add_provider(p):
        p.add_argument(
            "--provider",
            help="file:PATH | http:URL | det:SEED,DIM "
            f"(default from ${PROVIDER_ENV})",
        )
        p.add_argument("--timeout", type=float, default=10.0)

    p = sub.add_parser("tokenize", help="tokenize a text file ('-' = stdin)")
    p.add_argument("text")
    p.add_argument("--format", choices=("lines", "json"), default="lines")
    p.set_defaults(func=_cmd_tokenize)

    p = sub.add_parser("entropy", help="BOW and SUP entropy of a text")
    p.add_argument("text")
    add_log_base(p)
    p.set_defaults(func=_cmd_entropy)

    p = sub.add_parser("bleu", help="BLEU of hypothesis vs reference")
    p.add_argument("hypothesis")
    p.add_argument("reference")
    p.add_argument("--max-order", type=int, default=4)
    p.add_argument("--smoothing-epsilon", type=float, default=None)
    p.add_argument("--scale", choices=("percent", "unit"), default="percent")
    p.set_defaults(func=_cmd_bleu)

    p = sub.add_parser("rouge", help="ROUGE-L F1 of hypothesis vs reference")
    p.add_argument("hypothesis")
    p.add_argument("reference")
    p.set_defaults(func=_cmd_rouge)

    p = sub.add_parser("bertscore", help="greedy-match score via a provider")
    p.add_argument("hypothesis")
    p.add_argument("reference")
    add_provider(p)
    p.set_defaults(func=_cmd_bertscore)

    p = sub.add_parser("diagnose", help="copy/repetition/truncation report")
    p.add_argument("output")
    p.add_argument("source")
    p.set_defaults(func=_cmd_diagnose)

    p = sub.add_parser("mask", help="sentence-split, shuffle and mask a text")
    p.add_argument("text")
    p.add_argument("--rate", type=float, default=0.15)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--abbreviations", help="abbreviation list file")
    p.set_defaults(func=_cmd_mask)

    p = sub.add_parser("splits", help="dev/test/train assignment")
    p.add_argument("--manifest", help="manifest JSONL (default: shipped)")
    p.add_argument("--dev", help="comma-separated dev source ids")
    p.add_argument("--test", help="comma-separated test source ids")
    p.set_defaults(func=_cmd_splits)

    p = sub.add_parser("evaluate", help="score a JSONL record batch")
    p.add_argument("--records", required=True)
    p.add_argument(
        "--manifest", help="validate record source ids against this manifest"
    )
    add_provider(p)
    add_log_base(p)
    p.add_argument(
        "--format", choices=("csv", "markdown", "json"), default="csv"
    )
    p.add_argument("--out", help="write the report here instead of stdout")
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("earlystop", help="best/stop epoch of a score series")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--scores", help="comma-separated per-epoch scores")
    group.add_argument("--scores-file", help="JSON list of per-epoch scores")
    p.add_argument("--max-epochs", type=int, required=True)
    p.add_argument("--patience", type=int, default=None)
    p.set_defaults(func=_cmd_earlystop)

    p = sub.add_parser("report", help="render score rows as csv/markdown")
    p.add_argument("--rows", required=True, help="JSON list of report rows")
    p.add_argument("--format", choices=("csv", "markdown"), default="csv")
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SimpevalError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
