"""Corpus evaluation, report rendering and the early-stopping rule.

One evaluated record yields the five report columns: greedy-match F1 and
ROUGE-L F1 against the reference, BLEU against the reference, and the two
entropy readings of the hypothesis itself.  Failed records are kept in the
result with their error message instead of aborting the batch.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path

from .embed import ProviderSpec, embeddings_for, greedy_match_score
from .entropy import LogBase, bow_entropy, sup_entropy, sup_match_lengths_indexed
from .errors import EmptyInput, EmptyScores, SimpevalError
from .ngram import BleuConfig, bleu, rouge_l
from .textcore import tokenize

REPORT_COLUMNS = ("BERTscore_F1", "ROUGE-L_F1", "BLEU", "SUP", "BOW")
_DECIMALS = 4


@dataclass(frozen=True)
class EvalRecord:
    source_id: str
    source_text: str
    hypothesis_text: str
    reference_text: str


@dataclass(frozen=True)
class ReportRow:
    label: str
    bertscore_f1: float
    rouge_l_f1: float
    bleu: float
    sup: float
    bow: float

    def values(self) -> tuple[float, float, float, float, float]:
        return (self.bertscore_f1, self.rouge_l_f1, self.bleu, self.sup, self.bow)


@dataclass(frozen=True)
class EarlyStopPolicy:
    """Stop training when the score has not improved for ``patience`` epochs.

    The monitored metric is the greedy-match F1; the policy itself only sees
    the per-epoch score series.
    """

    max_epochs: int
    patience: int | None = None

    def __post_init__(self) -> None:
        if self.max_epochs < 1:
            raise ValueError("max_epochs must be >= 1")
        if self.patience is not None and self.patience < 1:
            raise ValueError("patience must be >= 1 when present")


@dataclass(frozen=True)
class RecordResult:
    source_id: str
    row: ReportRow | None
    error: str | None = None


@dataclass(frozen=True)
class CorpusResult:
    per_record: list[RecordResult]
    average: ReportRow | None

    @property
    def failed(self) -> list[RecordResult]:
        return [r for r in self.per_record if r.error is not None]


@dataclass(frozen=True)
class EvalConfig:
    bleu: BleuConfig = BleuConfig()
    log_base: LogBase = LogBase.BASE2


def load_eval_records(path: str | Path) -> list[EvalRecord]:
    """Read JSONL records {"source_id", "source", "hypothesis", "reference"}."""
    records = []
    for lineno, line in enumerate(
        Path(path).read_text(encoding="utf-8").splitlines(), start=1
    ):
        if not line.strip():
            continue
        payload = json.loads(line)
        records.append(
            EvalRecord(
                source_id=payload["source_id"],
                source_text=payload["source"],
                hypothesis_text=payload["hypothesis"],
                reference_text=payload["reference"],
            )
        )
    return records


def _score_record(
    record: EvalRecord, provider: ProviderSpec, config: EvalConfig
) -> ReportRow:
    hyp = tokenize(record.hypothesis_text)
    ref = tokenize(record.reference_text)
    hyp_emb = embeddings_for(provider, hyp)
    ref_emb = embeddings_for(provider, ref)
    bert = greedy_match_score(hyp_emb, ref_emb)
    profile = sup_match_lengths_indexed(hyp)
    return ReportRow(
        label=record.source_id,
        bertscore_f1=bert.f1,
        rouge_l_f1=rouge_l(hyp, ref).score,
        bleu=bleu(hyp, ref, config.bleu).score,
        sup=sup_entropy(profile, config.log_base),
        bow=bow_entropy(hyp),
    )


def evaluate_corpus(
    records: list[EvalRecord],
    provider: ProviderSpec,
    config: EvalConfig = EvalConfig(),
) -> CorpusResult:
    """Score every record and append the arithmetic-mean row.

    Records whose provider or metric computation fails are marked failed
    and excluded from the average; the batch always completes.
    """
    if not records:
        raise EmptyInput("no records to evaluate")
    results: list[RecordResult] = []
    for record in records:
        try:
            row = _score_record(record, provider, config)
        except SimpevalError as exc:
            results.append(
                RecordResult(source_id=record.source_id, row=None, error=str(exc))
            )
            continue
        results.append(RecordResult(source_id=record.source_id, row=row))
    scored = [r.row for r in results if r.row is not None]
    average = None
    if scored:
        k = len(scored)
        average = ReportRow(
            label="average",
            bertscore_f1=sum(r.bertscore_f1 for r in scored) / k,
            rouge_l_f1=sum(r.rouge_l_f1 for r in scored) / k,
            bleu=sum(r.bleu for r in scored) / k,
            sup=sum(r.sup for r in scored) / k,
            bow=sum(r.bow for r in scored) / k,
        )
    return CorpusResult(per_record=results, average=average)


def early_stop_select(
    scores: list[float], policy: EarlyStopPolicy
) -> tuple[int, int]:
    """(best_epoch, stop_epoch) for a per-epoch score series.

    The best epoch is the first occurrence of the maximum.  With patience p,
    training stops at the first epoch lying p epochs past the best one;
    otherwise it runs to min(len(scores), max_epochs).
    """
    if not scores:
        raise EmptyScores("need at least one score")
    limit = min(len(scores), policy.max_epochs)
    best = 0
    for epoch in range(limit):
        if scores[epoch] > scores[best]:
            best = epoch
        if policy.patience is not None and epoch - best >= policy.patience:
            return best, epoch
    return best, limit


def render_report(rows: list[ReportRow], format: str = "csv") -> str:
    """Render rows with the fixed column order, 4 decimal places."""
    header = ("label",) + REPORT_COLUMNS
    formatted = [
        (row.label,) + tuple(f"{v:.{_DECIMALS}f}" for v in row.values())
        for row in rows
    ]
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(formatted)
        return buf.getvalue()
    if format == "markdown":
        lines = [
            "| " + " | ".join(header) + " |",
            "| " + " | ".join("---" for _ in header) + " |",
        ]
        lines.extend("| " + " | ".join(cells) + " |" for cells in formatted)
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown report format {format!r}")


def parse_report(text: str, format: str = "csv") -> list[ReportRow]:
    """Inverse of :func:`render_report` at the printed precision."""
    if format == "csv":
        reader = csv.reader(io.StringIO(text))
        rows = [r for r in reader if r]
        body = rows[1:]
    elif format == "markdown":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        body = []
        for ln in lines[2:]:  # skip header and separator
            cells = [c.strip() for c in ln.strip().strip("|").split("|")]
            body.append(cells)
    else:
        raise ValueError(f"unknown report format {format!r}")
    return [
        ReportRow(
            label=cells[0],
            bertscore_f1=float(cells[1]),
            rouge_l_f1=float(cells[2]),
            bleu=float(cells[3]),
            sup=float(cells[4]),
            bow=float(cells[5]),
        )
        for cells in body
    ]
