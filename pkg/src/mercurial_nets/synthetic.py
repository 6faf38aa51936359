"""Synthetic corpora and lexica with planted emotional signal.

Used for scale checks and for end-to-end tests where the right answer is
known by construction. Words are made-up roots plus an inflection vowel, so
each surface form stems back to its own root.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .lexicon import EMOTIONS
from .stemming import stem

_CONS = "bcdfglmnprstvz"
_VOWS = "aeiou"
STOPWORDS = ("il", "la", "di", "ma", "e", "che", "per", "un", "una", "con")


@dataclass
class SyntheticLexicon:
    words: list[str]
    emotions: dict[str, set[str]]
    norms: dict[str, tuple[float, float]]
    antonyms: dict[str, str]
    fillers: list[str]

    def pool(self, emotion: str, excluding: str | None = None) -> list[str]:
        return [
            w for w in self.words
            if emotion in self.emotions[w] and (excluding is None or excluding not in self.emotions[w])
        ]


def _make_words(rng: np.random.Generator, n: int, taken: set[str]) -> list[str]:
    words = []
    while len(words) < n:
        syll = rng.integers(2, 4)
        root = "".join(rng.choice(list(_CONS)) + rng.choice(list(_VOWS)) for _ in range(syll))
        root += rng.choice(list(_CONS))
        word = root + rng.choice(["o", "a", "e"])
        if root in taken or stem(word) != root or stem(root) != root:
            continue
        taken.add(root)
        words.append(word)
    return words


def make_lexicon(
    n_words: int = 1500, n_fillers: int = 3000, p_emotion: float = 0.15, seed: int = 0
) -> SyntheticLexicon:
    rng = np.random.default_rng(seed)
    taken: set[str] = set(STOPWORDS)
    words = _make_words(rng, n_words, taken)
    fillers = _make_words(rng, n_fillers, taken)
    emotions = {w: {e for e in EMOTIONS if rng.random() < p_emotion} for w in words}
    norms = {
        w: (round(float(rng.uniform(1, 9)), 2), round(float(rng.uniform(1, 9)), 2))
        for w in words + fillers[: n_fillers // 3]
    }
    trust = [w for w in words if "trust" in emotions[w] and "fear" not in emotions[w]]
    fear = [w for w in words if "fear" in emotions[w] and "trust" not in emotions[w]]
    antonyms = {}
    for a, b in zip(trust, fear):
        antonyms[a] = b
        antonyms[b] = a
    return SyntheticLexicon(words, emotions, norms, antonyms, fillers)


def write_lexicon(lex: SyntheticLexicon, directory: Path) -> dict[str, Path]:
    directory.mkdir(parents=True, exist_ok=True)
    paths = {
        "emotions": directory / "emotions.tsv",
        "norms": directory / "norms.tsv",
        "antonyms": directory / "antonyms.tsv",
        "stopwords": directory / "stopwords.txt",
    }
    with open(paths["emotions"], "w", encoding="utf-8") as fh:
        fh.write("# word\temotion\tflag\n")
        for w in lex.words:
            for e in EMOTIONS:
                fh.write(f"{w}\t{e}\t{int(e in lex.emotions[w])}\n")
    with open(paths["norms"], "w", encoding="utf-8") as fh:
        for w, (v, a) in lex.norms.items():
            fh.write(f"{w}\t{v}\t{a}\n")
    with open(paths["antonyms"], "w", encoding="utf-8") as fh:
        for w, a in lex.antonyms.items():
            fh.write(f"{w}\t{a}\n")
    with open(paths["stopwords"], "w", encoding="utf-8") as fh:
        fh.write("# synthetic stop-words\n")
        fh.write("\n".join(STOPWORDS) + "\n")
    return paths


def _sentence(rng, pool, fillers, signal: bool, length: int) -> str:
    toks = []
    for _ in range(length):
        if signal and rng.random() < 0.7:
            toks.append(pool[rng.integers(len(pool))])
        elif rng.random() < 0.5:
            toks.append(fillers[rng.integers(len(fillers))])
        else:
            toks.append(STOPWORDS[rng.integers(len(STOPWORDS))])
    return " ".join(toks)


def planted_corpus(
    lex: SyntheticLexicon,
    n_tweets: int,
    anchor: str = "coronavirus",
    contexts: dict[str, str] | None = None,
    signal_rate: float = 0.7,
    seed: int = 0,
) -> list[dict]:
    """Tweets carrying ``#anchor`` plus one context hashtag.

    ``contexts`` maps each context hashtag to the emotion whose words fill
    its signal tweets (a ``signal_rate`` share of them); other tweets use
    random lexicon and filler words.
    """
    rng = np.random.default_rng(seed)
    contexts = contexts or {"iorestoacasa": "trust", "sciacalli": "fear"}
    opposite = {"trust": "fear", "fear": "trust"}
    pools = {c: lex.pool(e, opposite.get(e)) for c, e in contexts.items()}
    names = sorted(contexts)
    records = []
    for i in range(n_tweets):
        ctx = names[i % len(names)]
        signal = rng.random() < signal_rate
        pool = pools[ctx] if signal else lex.words
        sentences = [
            _sentence(rng, pool, lex.fillers, signal, int(rng.integers(4, 9)))
            for _ in range(int(rng.integers(1, 3)))
        ]
        tags = f"#{anchor} #{ctx}"
        records.append({"id": f"t{i}", "text": ". ".join(sentences) + f". {tags}", "lang": "it"})
    return records


def scale_corpus(
    lex: SyntheticLexicon,
    n_tweets: int,
    focal: tuple[str, ...] = ("iorestoacasa", "sciacalli", "italylockdown"),
    anchor: str = "coronavirus",
    n_hashtags: int = 3000,
    seed: int = 0,
) -> list[dict]:
    """Corpus at realistic scale with Zipf-distributed hashtags and words."""
    rng = np.random.default_rng(seed)
    tag_names = [f"tag{t}" for t in range(n_hashtags)]
    tag_w = 1.0 / np.arange(1, n_hashtags + 1) ** 1.1
    tag_cdf = np.cumsum(tag_w / tag_w.sum())
    vocab = lex.words + lex.fillers
    word_cdf = np.cumsum(1.0 / np.arange(1, len(vocab) + 1))
    word_cdf /= word_cdf[-1]
    records = []
    for i in range(n_tweets):
        tags = {focal[i % len(focal)]}
        if rng.random() < 0.3:
            tags.add(anchor)
        extra = np.searchsorted(tag_cdf, rng.random(int(rng.integers(0, 5))), side="right")
        extra = np.minimum(extra, n_hashtags - 1)
        tags.update(tag_names[j] for j in extra)
        n_sent = int(rng.integers(1, 4))
        parts = []
        for _ in range(n_sent):
            idx = np.searchsorted(word_cdf, rng.random(int(rng.integers(3, 12))), side="right")
            idx = np.minimum(idx, len(vocab) - 1)
            words = [vocab[j] for j in idx]
            if rng.random() < 0.1:
                words.insert(int(rng.integers(len(words))), "non")
            parts.append(" ".join(words))
        text = ". ".join(parts) + ". " + " ".join(f"#{t}" for t in sorted(tags))
        if rng.random() < 0.05:
            text = "RT @utente: " + text + " https://t.co/x" + str(i)
        records.append({"id": f"s{i}", "text": text, "lang": "it"})
    return records


def write_corpus(records: list[dict], path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec, ensure_ascii=False) + "\n")
    return path
