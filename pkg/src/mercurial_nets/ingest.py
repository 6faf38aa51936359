"""Corpus loading and tweet preprocessing.

A tweet goes through four steps: sentence splitting and cleaning, negation
marking, stemming, and hashtag extraction. Everything here is pure, so
records can be preprocessed independently and in any order.
"""

from __future__ import annotations

import json
import re
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .stemming import Stemmer, stem as default_stem

__all__ = [
    "LoadReport",
    "MercurialWarning",
    "PipelineConfig",
    "ProcessedTweet",
    "TweetRecord",
    "load_corpus",
    "load_stopwords",
    "mark_negations",
    "preprocess",
    "tokenize_and_clean",
]

DEFAULT_NEGATION_MARKERS = frozenset({"no", "non", "nessuno"})

_URL_RE = re.compile(r"(?:https?://|www\.)\S+", re.IGNORECASE)
_MENTION_RE = re.compile(r"@\w+")
_SENTENCE_RE = re.compile(r"[.!?]+")
_TOKEN_RE = re.compile(r"#?\w+(?:'\w+)*")
_DROP_TOKENS = frozenset({"rt"})


class MercurialWarning(UserWarning):
    """Non-fatal data problem (skipped row, empty selection, ...)."""


@dataclass(frozen=True)
class TweetRecord:
    id: str
    text: str
    lang: str | None = None


@dataclass(frozen=True)
class ProcessedTweet:
    """A tweet reduced to stems.

    ``surfaces`` mirrors ``sentences`` token by token and keeps the cleaned
    surface forms ('#' stripped) that antonym lookup needs.
    """

    id: str
    hashtags: frozenset[str]
    sentences: tuple[tuple[str, ...], ...]
    negation_targets: frozenset[tuple[int, int]] = frozenset()
    surfaces: tuple[tuple[str, ...], ...] = ()

    def stems(self) -> list[str]:
        return [s for sentence in self.sentences for s in sentence]


@dataclass
class PipelineConfig:
    stopwords: frozenset[str] = frozenset()
    negation_markers: frozenset[str] = DEFAULT_NEGATION_MARKERS
    negation_window: int = 3
    focal_hashtags: list[str] = field(default_factory=list)
    seed: int = 0
    trials: int = 1000
    language: str = "it"

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.negation_window < 1:
            raise ValueError("negation_window must be >= 1")
        if self.seed < 0:
            raise ValueError("seed must be an unsigned integer")
        self.stopwords = frozenset(w.lower() for w in self.stopwords)
        self.negation_markers = frozenset(w.lower() for w in self.negation_markers)
        self.focal_hashtags = [h.lstrip("#").lower() for h in self.focal_hashtags]


@dataclass
class LoadReport:
    lines: int = 0
    loaded: int = 0
    duplicates: int = 0
    dropped_language: int = 0
    malformed: int = 0


def load_stopwords(path: str | Path) -> frozenset[str]:
    """Read one stop-word per line; blank lines and '#' comments are ignored."""
    words = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                words.add(line.lower())
    return frozenset(words)


def _parse_record(line: str) -> TweetRecord:
    obj = json.loads(line)
    if not isinstance(obj, dict):
        raise ValueError("record is not an object")
    rid, text, lang = obj.get("id"), obj.get("text"), obj.get("lang")
    if not isinstance(rid, str) or not rid:
        raise ValueError("missing or non-string id")
    if not isinstance(text, str) or not text.strip():
        raise ValueError("missing or empty text")
    if lang is not None and not isinstance(lang, str):
        raise ValueError("lang must be a string")
    return TweetRecord(rid, text, lang)


def load_corpus(
    path: str | Path, config: PipelineConfig, report: LoadReport | None = None
) -> list[TweetRecord]:
    """Load newline-delimited JSON records.

    Records in another language, repeated texts and repeated ids are dropped
    (first occurrence wins). Malformed lines are skipped with a warning and
    counted in ``report`` when one is given. I/O errors propagate.
    """
    report = report if report is not None else LoadReport()
    records: list[TweetRecord] = []
    seen_text: set[str] = set()
    seen_id: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            report.lines += 1
            try:
                rec = _parse_record(line)
            except (ValueError, json.JSONDecodeError) as exc:
                report.malformed += 1
                warnings.warn(f"{path}:{lineno}: skipped malformed record ({exc})", MercurialWarning)
                continue
            if rec.lang is not None and rec.lang.lower() != config.language.lower():
                report.dropped_language += 1
                continue
            if rec.text in seen_text or rec.id in seen_id:
                report.duplicates += 1
                continue
            seen_text.add(rec.text)
            seen_id.add(rec.id)
            records.append(rec)
    report.loaded = len(records)
    return records


def tokenize_and_clean(text: str, config: PipelineConfig) -> list[list[str]]:
    """Split ``text`` into sentences of lowercase surface tokens.

    URLs, mentions and the retweet marker are removed, as are stop-words.
    Negation markers survive even if listed as stop-words so that
    :func:`mark_negations` can see them. Empty sentences are dropped.
    """
    text = _URL_RE.sub(" ", text.replace("’", "'"))
    text = _MENTION_RE.sub(" ", text)
    sentences = []
    for chunk in _SENTENCE_RE.split(text):
        tokens = []
        for match in _TOKEN_RE.finditer(chunk.lower()):
            tok = match.group()
            if tok in _DROP_TOKENS:
                continue
            if tok in config.stopwords and tok not in config.negation_markers:
                continue
            tokens.append(tok)
        if tokens:
            sentences.append(tokens)
    return sentences


def mark_negations(
    sentences: Iterable[list[str]], config: PipelineConfig
) -> tuple[list[list[str]], set[tuple[int, int]]]:
    """Drop negation markers and record which tokens they govern.

    Each marker governs up to ``negation_window`` following non-marker tokens
    of its own sentence. Returned indices address the marker-free sentences;
    sentences left empty are removed.
    """
    markers = config.negation_markers
    out: list[list[str]] = []
    targets: set[tuple[int, int]] = set()
    for sentence in sentences:
        kept: list[str] = []
        remaining = 0
        sent_idx = len(out)
        for tok in sentence:
            if tok in markers:
                remaining = config.negation_window
                continue
            if remaining:
                targets.add((sent_idx, len(kept)))
                remaining -= 1
            kept.append(tok)
        if kept:
            out.append(kept)
    return out, targets


def preprocess(
    record: TweetRecord, config: PipelineConfig, stemmer: Stemmer = default_stem
) -> ProcessedTweet:
    cleaned, targets = mark_negations(tokenize_and_clean(record.text, config), config)
    hashtags = set()
    surfaces = []
    for sentence in cleaned:
        row = []
        for tok in sentence:
            if tok.startswith("#"):
                tok = tok.lstrip("#")
                hashtags.add(tok)
            row.append(tok)
        surfaces.append(tuple(row))
    return ProcessedTweet(
        id=record.id,
        hashtags=frozenset(hashtags),
        sentences=tuple(tuple(stemmer(t) for t in row) for row in surfaces),
        negation_targets=frozenset(targets),
        surfaces=tuple(surfaces),
    )
