"""simpeval: evaluation toolkit for German text simplification.

Metrics (entropy, BLEU, ROUGE-L, greedy-match scoring), corpus tooling
(manifests, splits, masking) and diagnostics for degenerate generation.
"""

from .corpus import (
    DocumentPair,
    LanguageTag,
    MaskedPair,
    SplitAssignment,
    TaggedRecord,
    assign_splits,
    default_manifest_path,
    export_pairs,
    generate_masked_pairs,
    import_pairs,
    load_manifest,
)
from .diagnostics import (
    DiagnosticsReport,
    compression_ratio,
    copy_rate,
    diagnose,
    repeated_ngram_rate,
    repeated_sentence_report,
)
from .embed import (
    BertScoreResult,
    EmbeddingMatrix,
    ProviderSpec,
    deterministic_embeddings,
    embeddings_for,
    fetch_embeddings_http,
    greedy_match_score,
    load_embeddings_file,
)
from .entropy import (
    BowDistribution,
    EntropyResult,
    LogBase,
    MatchLengthProfile,
    bow_entropy,
    score_entropy,
    sup_entropy,
    sup_match_lengths_indexed,
    sup_match_lengths_naive,
)
from .harness import (
    CorpusResult,
    EarlyStopPolicy,
    EvalConfig,
    EvalRecord,
    ReportRow,
    early_stop_select,
    evaluate_corpus,
    load_eval_records,
    parse_report,
    render_report,
)
from .ngram import BleuConfig, OverlapResult, bleu, rouge_l
from .textcore import (
    SentenceSpan,
    Token,
    TokenSequence,
    load_abbreviations,
    split_sentences,
    tokenize,
)

__version__ = "0.1.0"

__all__ = [
    "BertScoreResult",
    "BleuConfig",
    "BowDistribution",
    "CorpusResult",
    "DiagnosticsReport",
    "DocumentPair",
    "EarlyStopPolicy",
    "EmbeddingMatrix",
    "EntropyResult",
    "EvalConfig",
    "EvalRecord",
    "LanguageTag",
    "LogBase",
    "MaskedPair",
    "MatchLengthProfile",
    "OverlapResult",
    "ProviderSpec",
    "ReportRow",
    "SentenceSpan",
    "SplitAssignment",
    "TaggedRecord",
    "Token",
    "TokenSequence",
    "assign_splits",
    "bleu",
    "bow_entropy",
    "compression_ratio",
    "copy_rate",
    "default_manifest_path",
    "deterministic_embeddings",
    "diagnose",
    "early_stop_select",
    "embeddings_for",
    "evaluate_corpus",
    "export_pairs",
    "fetch_embeddings_http",
    "generate_masked_pairs",
    "greedy_match_score",
    "import_pairs",
    "load_abbreviations",
    "load_embeddings_file",
    "load_eval_records",
    "load_manifest",
    "parse_report",
    "render_report",
    "repeated_ngram_rate",
    "repeated_sentence_report",
    "rouge_l",
    "score_entropy",
    "split_sentences",
    "sup_entropy",
    "sup_match_lengths_indexed",
    "sup_match_lengths_naive",
    "tokenize",
]
