"""D2 Lexical Quality: label presence, length, word mix, diversity, language."""

from __future__ import annotations

from typing import Iterable, Sequence

from ..ir import IREdge, IRGraph, IRNode
from ..profile import LexicalMeasureGroup
from ..stats import DistributionStats
from .d1 import MeasureResult
from .tokenizer import tokenize

SHORT_MAX_CHARS = 5   # short iff chars < 5 or tokens < 2
SHORT_MIN_TOKENS = 2
LONG_MIN_CHARS = 30   # long iff chars > 30 or tokens > 8
LONG_MAX_TOKENS = 8

MIN_DETECTION_CHARS = 20  # below this, language detection is too noisy


def _attribute_value(element: IRNode | IREdge, attr: str) -> str | None:
    if attr == "name":
        return element.name
    value = element.data.get(attr)
    return value if isinstance(value, str) else None


def _is_eligible(element: IRNode | IREdge, attrs: Sequence[str]) -> bool:
    return any(attr == "name" or attr in element.data for attr in attrs)


def _label_of(element: IRNode | IREdge, attrs: Sequence[str]) -> str | None:
    for attr in attrs:
        value = _attribute_value(element, attr)
        if value is not None and value.strip():
            return value
    return None


def _elements(graph: IRGraph, cfg: LexicalMeasureGroup) -> Iterable[IRNode | IREdge]:
    if cfg.include_nodes:
        yield from graph.nodes
    if cfg.include_edges:
        yield from graph.edges


def extract_labels(graph: IRGraph, cfg: LexicalMeasureGroup) -> tuple[int, list[str]]:
    """(eligible element count, labels of the labeled ones) for one model."""
    eligible = 0
    labels: list[str] = []
    for element in _elements(graph, cfg):
        if not _is_eligible(element, cfg.label_attributes):
            continue
        eligible += 1
        label = _label_of(element, cfg.label_attributes)
        if label is not None:
            labels.append(label)
    return eligible, labels


def d2_m1_label_presence(graphs: Sequence[IRGraph], cfg: LexicalMeasureGroup) -> MeasureResult:
    total_eligible = 0
    total_labeled = 0
    per_model: dict[str, dict] = {}
    for graph in graphs:
        eligible, labels = extract_labels(graph, cfg)
        total_eligible += eligible
        total_labeled += len(labels)
        missing_share = (eligible - len(labels)) / eligible if eligible else None
        per_model[graph.id] = {"missing_share": missing_share}
    presence_share = total_labeled / total_eligible if total_eligible else None
    metrics = {
        "eligible": total_eligible,
        "labeled": total_labeled,
        "missing": total_eligible - total_labeled,
        "presence_share": presence_share,
    }
    score = presence_share * 100.0 if presence_share is not None else None
    return MeasureResult("d2.m1", metrics, score, per_model)


def d2_m2_label_length(graphs: Sequence[IRGraph], cfg: LexicalMeasureGroup) -> MeasureResult:
    per_model: dict[str, dict] = {}
    medians_chars: list[float] = []
    means_chars: list[float] = []
    medians_tokens: list[float] = []
    means_tokens: list[float] = []
    short_shares: list[float] = []
    long_shares: list[float] = []
    for graph in graphs:
        _, labels = extract_labels(graph, cfg)
        if not labels:
            per_model[graph.id] = {
                "n_labels": 0,
                "chars": DistributionStats.from_values([]).to_json_dict(),
                "tokens": DistributionStats.from_values([]).to_json_dict(),
                "short_share": None,
                "long_share": None,
            }
            continue
        char_lengths = [len(label) for label in labels]
        token_counts = [len(tokenize(label, cfg.tokenizer).tokens) for label in labels]
        n_short = sum(
            1
            for c, t in zip(char_lengths, token_counts)
            if c < SHORT_MAX_CHARS or t < SHORT_MIN_TOKENS
        )
        n_long = sum(
            1
            for c, t in zip(char_lengths, token_counts)
            if c > LONG_MIN_CHARS or t > LONG_MAX_TOKENS
        )
        chars_stats = DistributionStats.from_values(char_lengths)
        token_stats = DistributionStats.from_values(token_counts)
        short_share = n_short / len(labels)
        long_share = n_long / len(labels)
        per_model[graph.id] = {
            "n_labels": len(labels),
            "chars": chars_stats.to_json_dict(),
            "tokens": token_stats.to_json_dict(),
            "short_share": short_share,
            "long_share": long_share,
        }
        medians_chars.append(chars_stats.median)
        means_chars.append(chars_stats.mean)
        medians_tokens.append(token_stats.median)
        means_tokens.append(token_stats.mean)
        short_shares.append(short_share)
        long_shares.append(long_share)
    metrics = {
        "chars_median": DistributionStats.from_values(medians_chars).to_json_dict(),
        "chars_mean": DistributionStats.from_values(means_chars).to_json_dict(),
        "tokens_median": DistributionStats.from_values(medians_tokens).to_json_dict(),
        "tokens_mean": DistributionStats.from_values(means_tokens).to_json_dict(),
        "short_share": DistributionStats.from_values(short_shares).to_json_dict(),
        "long_share": DistributionStats.from_values(long_shares).to_json_dict(),
    }
    return MeasureResult("d2.m2", metrics, None, per_model)


def d2_m3_word_mix(graphs: Sequence[IRGraph], cfg: LexicalMeasureGroup) -> MeasureResult:
    per_model: dict[str, dict] = {}
    shares: list[float] = []
    for graph in graphs:
        _, labels = extract_labels(graph, cfg)
        if not labels:
            per_model[graph.id] = {"single_word_share": None}
            continue
        single = sum(1 for label in labels if len(tokenize(label, cfg.tokenizer).tokens) == 1)
        share = single / len(labels)
        per_model[graph.id] = {"single_word_share": share}
        shares.append(share)
    metrics = {"single_word_share": DistributionStats.from_values(shares).to_json_dict()}
    return MeasureResult("d2.m3", metrics, None, per_model)


def d2_m4_lexical_diversity(graphs: Sequence[IRGraph], cfg: LexicalMeasureGroup) -> MeasureResult:
    total_tokens = 0
    vocabulary: set[str] = set()
    for graph in graphs:
        _, labels = extract_labels(graph, cfg)
        for label in labels:
            tokens = tokenize(label, cfg.tokenizer).tokens
            total_tokens += len(tokens)
            vocabulary.update(tokens)
    metrics: dict = {"total_tokens": total_tokens, "vocab_size": len(vocabulary)}
    if total_tokens > 0:
        metrics["ttr"] = len(vocabulary) / total_tokens
    return MeasureResult("d2.m4", metrics, None, {})


def d2_m5_language_usage(graphs: Sequence[IRGraph], cfg: LexicalMeasureGroup, detector) -> MeasureResult:
    per_model: dict[str, dict] = {}
    counts: dict[str, int] = {}
    for graph in graphs:
        _, labels = extract_labels(graph, cfg)
        text = " ".join(labels)
        language = "unknown"
        if len(text) >= MIN_DETECTION_CHARS:
            ranked = detector.detect(text)
            if ranked:
                language = ranked[0][0]
        per_model[graph.id] = {"predominant_language": language}
        counts[language] = counts.get(language, 0) + 1
    detected = {lang: n for lang, n in counts.items() if lang != "unknown"}
    dominant = max(sorted(detected), key=lambda lang: detected[lang]) if detected else None
    metrics = {
        "models_by_language": counts,
        "distinct_languages": len(detected),
        "dominant_language": dominant,
        "dominant_share": (detected[dominant] / len(graphs)) if dominant and graphs else None,
    }
    return MeasureResult("d2.m5", metrics, None, per_model)
