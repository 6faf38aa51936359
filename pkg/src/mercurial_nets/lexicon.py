"""Emotion lexicon, valence/arousal norms and antonym resources.

All three are tab-separated UTF-8 files with optional '#' comment lines:

* emotions: ``word<TAB>emotion<TAB>0|1``
* norms: ``word<TAB>valence<TAB>arousal`` on the raw 1-9 scale
* antonyms: ``word<TAB>antonym``

Scores attached to several words sharing a stem are pooled at the stem
level (union of emotions, mean of valence/arousal).
"""

from __future__ import annotations

import warnings
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

from .ingest import MercurialWarning
from .stemming import Stemmer, stem as default_stem

__all__ = [
    "EMOTIONS",
    "AffectNorms",
    "AntonymLexicon",
    "EmotionLexicon",
    "antonym_of",
    "load_affect_norms",
    "load_antonyms",
    "load_emotion_lexicon",
    "rescale_to_circumplex",
]

EMOTIONS = ("anger", "anticipation", "disgust", "fear", "joy", "sadness", "surprise", "trust")
POLARITIES = ("negative", "positive")


@dataclass
class EmotionLexicon:
    entries: dict[str, frozenset[str]]
    stem_entries: dict[str, frozenset[str]]
    polarity: dict[str, frozenset[str]] = field(default_factory=dict)

    @property
    def vocabulary_size(self) -> int:
        return len(self.entries)

    @classmethod
    def from_entries(
        cls, entries: dict[str, set[str]], stemmer: Stemmer = default_stem, polarity=None
    ) -> "EmotionLexicon":
        frozen = {w: frozenset(e) for w, e in entries.items()}
        for w, emos in frozen.items():
            bad = emos - set(EMOTIONS)
            if bad:
                raise ValueError(f"{w!r}: unknown emotions {sorted(bad)}")
        pooled: dict[str, set[str]] = defaultdict(set)
        for w in sorted(frozen):
            pooled[stemmer(w)] |= frozen[w]
        stems = {s: frozenset(e) for s, e in pooled.items()}
        pol = {w: frozenset(p) for w, p in (polarity or {}).items()}
        return cls(frozen, stems, pol)


@dataclass
class AffectNorms:
    entries: dict[str, tuple[float, float]]
    stem_entries: dict[str, tuple[float, float]]

    @classmethod
    def from_entries(
        cls, entries: dict[str, tuple[float, float]], stemmer: Stemmer = default_stem
    ) -> "AffectNorms":
        groups: dict[str, list[tuple[float, float]]] = defaultdict(list)
        for w in sorted(entries):
            groups[stemmer(w)].append(entries[w])
        stems = {
            s: (sum(v for v, _ in vals) / len(vals), sum(a for _, a in vals) / len(vals))
            for s, vals in groups.items()
        }
        return cls(dict(entries), stems)


@dataclass
class AntonymLexicon:
    entries: dict[str, str]


def _rows(path: str | Path, ncols: int) -> Iterator[tuple[int, list[str]]]:
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = [p.strip() for p in line.split("\t")]
            if len(parts) != ncols or not all(parts):
                warnings.warn(f"{path}:{lineno}: expected {ncols} tab-separated fields", MercurialWarning)
                continue
            yield lineno, parts


def load_emotion_lexicon(path: str | Path, stemmer: Stemmer = default_stem) -> EmotionLexicon:
    """Parse a word/emotion/flag association file.

    Every listed word enters the vocabulary, including words whose flags are
    all 0. Polarity rows are kept aside and never join the emotion sets.
    """
    entries: dict[str, set[str]] = {}
    polarity: dict[str, set[str]] = defaultdict(set)
    for lineno, (word, label, flag) in _rows(path, 3):
        word, label = word.lower(), label.lower()
        if flag not in ("0", "1"):
            warnings.warn(f"{path}:{lineno}: flag must be 0 or 1, got {flag!r}", MercurialWarning)
            continue
        if label in POLARITIES:
            entries.setdefault(word, set())
            if flag == "1":
                polarity[word].add(label)
            continue
        if label not in EMOTIONS:
            warnings.warn(f"{path}:{lineno}: unknown emotion {label!r}", MercurialWarning)
            continue
        entries.setdefault(word, set())
        if flag == "1":
            entries[word].add(label)
    if not entries:
        raise ValueError(f"{path}: emotion lexicon is empty")
    return EmotionLexicon.from_entries(entries, stemmer, polarity)


def load_affect_norms(path: str | Path, stemmer: Stemmer = default_stem) -> AffectNorms:
    entries = {}
    for lineno, (word, val, aro) in _rows(path, 3):
        try:
            v, a = float(val), float(aro)
        except ValueError:
            warnings.warn(f"{path}:{lineno}: non-numeric scores", MercurialWarning)
            continue
        if not (1.0 <= v <= 9.0 and 1.0 <= a <= 9.0):
            warnings.warn(f"{path}:{lineno}: scores outside [1, 9] for {word!r}", MercurialWarning)
            continue
        entries[word.lower()] = (v, a)
    if not entries:
        raise ValueError(f"{path}: norms file is empty")
    return AffectNorms.from_entries(entries, stemmer)


def load_antonyms(path: str | Path, emotions: EmotionLexicon | None = None) -> AntonymLexicon:
    """Read antonym pairs; with ``emotions`` given, warn about pairs whose
    round trip lands on a word of different polarity."""
    ant = AntonymLexicon({w.lower(): a.lower() for _, (w, a) in _rows(path, 2)})
    if emotions is not None:
        for word in sorted(ant.entries):
            back = ant.entries.get(ant.entries[word])
            if back is None or back == word:
                continue
            p0, p1 = emotions.polarity.get(word), emotions.polarity.get(back)
            if p0 is not None and p1 is not None and p0 != p1:
                warnings.warn(
                    f"antonym round trip {word!r} -> {back!r} changes polarity", MercurialWarning
                )
    return ant


def antonym_of(word: str, ant: AntonymLexicon) -> str | None:
    return ant.entries.get(word)


def rescale_to_circumplex(score: tuple[float, float]) -> tuple[float, float]:
    """Map raw (valence, arousal) on [1, 9] to [-1, 1] per axis."""
    v, a = score
    return ((v - 5.0) / 4.0, (a - 5.0) / 4.0)
