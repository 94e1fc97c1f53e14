"""Paraphrase-pair diversity metrics and corpus-level reports.

Per pair: semantic similarity (embedding cosine), lexical diversity
(1 - BLEU and 1 - intersection/union over token types), and syntactic
diversity (tree edit distance on constituency parses, truncated to three
layers or taken in full).
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, fields

from .ctree import ConstituencyTree
from .ted import ted3, tedf

_TOKEN_RE = re.compile(r"\w+|[^\w\s]")


def tokenize(text: str) -> list[str]:
    """Lowercase and split, with punctuation as standalone tokens."""
    return _TOKEN_RE.findall(text.lower())


def _ngram_counts(tokens: list[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def bleu(candidate: list[str], reference: list[str], max_n: int = 4) -> float:
    """Sentence-level BLEU with add-one smoothing of zero counts for n >= 2.

    Geometric mean of modified n-gram precisions times the brevity
    penalty exp(1 - r/c) when the candidate is shorter than the reference.
    """
    if not candidate:
        return 0.0
    log_sum = 0.0
    for n in range(1, max_n + 1):
        cand = _ngram_counts(candidate, n)
        ref = _ngram_counts(reference, n)
        matched = sum(min(count, ref[g]) for g, count in cand.items())
        total = sum(cand.values())
        if n == 1:
            if matched == 0:
                return 0.0
            p = matched / total
        elif matched == 0:
            p = (matched + 1) / (total + 1)
        else:
            p = matched / total
        log_sum += math.log(p)
    bp = 1.0 if len(candidate) >= len(reference) else math.exp(1 - len(reference) / len(candidate))
    return bp * math.exp(log_sum / max_n)


def bleu_diversity(a: list[str], b: list[str]) -> float:
    return 1.0 - bleu(a, b)


def jaccard_diversity(a: list[str], b: list[str]) -> float:
    """1 - |shared token types| / |all token types|; 0 when both empty."""
    ta, tb = set(a), set(b)
    union = ta | tb
    if not union:
        return 0.0
    return 1.0 - len(ta & tb) / len(union)


def cosine_similarity(u, v) -> float:
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    nu = math.sqrt(sum(x * x for x in u))
    nv = math.sqrt(sum(x * x for x in v))
    if nu == 0.0 or nv == 0.0:
        raise ValueError("cosine similarity undefined for zero vector")
    return sum(x * y for x, y in zip(u, v)) / (nu * nv)


@dataclass
class PairScores:
    """Scores for one (source, paraphrase) pair; None marks an absent input."""

    semantic: float | None = None
    lex_bleu: float | None = None
    lex_jaccard: float | None = None
    ted3: int | None = None
    tedf: int | None = None

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def score_pair(
    source: str,
    paraphrase: str,
    source_tree: ConstituencyTree | None = None,
    paraphrase_tree: ConstituencyTree | None = None,
    source_embedding=None,
    paraphrase_embedding=None,
) -> PairScores:
    """Compute every metric whose inputs are available."""
    a, b = tokenize(paraphrase), tokenize(source)
    scores = PairScores(lex_bleu=bleu_diversity(a, b), lex_jaccard=jaccard_diversity(a, b))
    if source_tree is not None and paraphrase_tree is not None:
        scores.ted3 = ted3(source_tree, paraphrase_tree)
        scores.tedf = tedf(source_tree, paraphrase_tree)
    if source_embedding is not None and paraphrase_embedding is not None:
        scores.semantic = cosine_similarity(source_embedding, paraphrase_embedding)
    return scores


@dataclass
class DiversityReport:
    """Corpus-level summary: counts, lengths, and per-metric means."""

    instances: int = 0
    avg_paraphrases: float = 0.0
    avg_length: float = 0.0
    means: dict = None

    def __post_init__(self):
        if self.means is None:
            self.means = {}


_METRIC_FIELDS = ("semantic", "lex_bleu", "lex_jaccard", "ted3", "tedf")


def corpus_report(records) -> DiversityReport:
    """Aggregate ParaphraseRecords: distinct sources, averages, metric means.

    A metric's mean covers only the records that carry that metric;
    metrics present on no record are absent from ``means``.
    """
    records = list(records)
    if not records:
        return DiversityReport()
    sources = {r.source_id for r in records}
    lengths = [len(tokenize(r.paraphrase)) for r in records]
    report = DiversityReport(
        instances=len(sources),
        avg_paraphrases=len(records) / len(sources),
        avg_length=sum(lengths) / len(lengths),
    )
    for name in _METRIC_FIELDS:
        values = [
            getattr(r.scores, name)
            for r in records
            if r.scores is not None and getattr(r.scores, name) is not None
        ]
        if values:
            report.means[name] = sum(values) / len(values)
    return report


_DISPLAY = {
    "semantic": "Semantic Similarity",
    "lex_bleu": "1 - BLEU",
    "lex_jaccard": "1 - Cap/Cup",
    "ted3": "TED-3",
    "tedf": "TED-F",
}


def format_report(report: DiversityReport, x100: bool = False) -> str:
    """Render a report as an aligned two-column text table."""
    rows = [
        ("Instances", str(report.instances)),
        ("Avg. #Para.", f"{report.avg_paraphrases:.2f}"),
        ("Avg. Len.", f"{report.avg_length:.2f}"),
    ]
    for name in _METRIC_FIELDS:
        if name in report.means:
            value = report.means[name]
            if x100 and name in ("semantic", "lex_bleu", "lex_jaccard"):
                value *= 100
            rows.append((_DISPLAY[name], f"{value:.2f}"))
        else:
            rows.append((_DISPLAY[name], "-"))
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k:<{width}}  {v}" for k, v in rows)
