"""Emotional profiling with a random-sampling null model.

Richness ``r(e)`` is the number of distinct lexicon-covered stems that
elicit emotion ``e``. It is compared with ``trials`` uniform samples of
``m`` lexicon stems, ``m`` being the number of covered stems in the
profiled set, through ``z = (r - mean) / sd``; ``|z| > 1.96`` is flagged.
"""

from __future__ import annotations

import math
import warnings
import zlib
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

import numpy as np
from scipy import stats

from .ingest import MercurialWarning, ProcessedTweet
from .lexicon import EMOTIONS, AffectNorms, AntonymLexicon, EmotionLexicon, rescale_to_circumplex
from .metrics import NodeMetrics
from .netbuild import HashtagNetwork, WordNetwork
from .stemming import Stemmer, stem as default_stem

__all__ = [
    "CircumplexDensity",
    "EmotionProfile",
    "EmotionZ",
    "NullModel",
    "ZTestResult",
    "circumplex_density",
    "derive_seed",
    "emotion_profile",
    "null_model",
    "profile_hashtag_network",
    "profile_word_network",
    "segment_hashtag",
    "substitute_negated",
    "z_test",
]

Z_CRITICAL = 1.96
KS_ALPHA = 0.05
_TRIAL_BLOCK_CELLS = 2_000_000


def derive_seed(seed: int, *labels: str) -> int:
    """Named substream seed: stable across runs, platforms and call order."""
    key = tuple(zlib.crc32(label.encode("utf-8")) for label in labels)
    return int(np.random.SeedSequence(seed, spawn_key=key).generate_state(1, np.uint64)[0])


@dataclass
class EmotionProfile:
    words: tuple[str, ...]
    covered: tuple[str, ...]
    r: dict[str, int]
    total_units: int

    @property
    def m(self) -> int:
        return len(self.covered)

    @property
    def normalized(self) -> dict[str, float]:
        return {e: self.r[e] / self.total_units for e in EMOTIONS}


@dataclass
class NullModel:
    r_star: dict[str, float]
    sigma_star: dict[str, float]
    trials: int
    m: int
    seed: int
    ks_pass: dict[str, bool]
    ks_pvalue: dict[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class EmotionZ:
    z: float
    significant: bool
    direction: str  # "above" | "below" | "compatible"

    @property
    def degenerate(self) -> bool:
        return math.isinf(self.z)


@dataclass
class ZTestResult:
    scores: dict[str, EmotionZ]
    null: NullModel | None = None

    def __getitem__(self, emotion: str) -> EmotionZ:
        return self.scores[emotion]


@dataclass
class CircumplexDensity:
    grid: np.ndarray  # grid[i, j]: valence bin i, arousal bin j
    G: int
    neutrality_range: tuple[tuple[float, float], tuple[float, float]]
    covered_words: int
    mean_point: tuple[float, float] | None = None


def substituted_pairs(
    tweet: ProcessedTweet,
    ant: AntonymLexicon | None,
    stemmer: Stemmer = default_stem,
    counter: Counter | None = None,
) -> list[tuple[str, str]]:
    """``(stem, effective stem)`` for every token of ``tweet``.

    Negated tokens whose surface form has an antonym take the antonym's
    stem; the others keep their own and count as misses.
    """
    out = []
    for si, sentence in enumerate(tweet.sentences):
        surf = tweet.surfaces[si] if tweet.surfaces else sentence
        for ti, s in enumerate(sentence):
            eff = s
            if (si, ti) in tweet.negation_targets:
                target = ant.entries.get(surf[ti]) if ant is not None else None
                if target is None:
                    if counter is not None:
                        counter["missed"] += 1
                else:
                    eff = stemmer(target)
                    if counter is not None:
                        counter["substituted"] += 1
            out.append((s, eff))
    return out


def substitute_negated(
    tweet: ProcessedTweet,
    ant: AntonymLexicon,
    stemmer: Stemmer = default_stem,
    counter: Counter | None = None,
) -> list[str]:
    return [eff for _, eff in substituted_pairs(tweet, ant, stemmer, counter)]


def emotion_profile(
    words: Iterable[str], lex: EmotionLexicon, total_units: int | None = None
) -> EmotionProfile:
    distinct = tuple(sorted(set(words)))
    covered = tuple(w for w in distinct if w in lex.stem_entries)
    r = {e: 0 for e in EMOTIONS}
    for w in covered:
        for e in lex.stem_entries[w]:
            r[e] += 1
    if total_units is None:
        total_units = max(len(covered), 1)
    if total_units < 1:
        raise ValueError("total_units must be positive")
    return EmotionProfile(distinct, covered, r, total_units)


def _emotion_matrix(lex: EmotionLexicon) -> np.ndarray:
    units = sorted(lex.stem_entries)
    return np.array(
        [[e in lex.stem_entries[u] for e in EMOTIONS] for u in units], dtype=np.int64
    ).reshape(len(units), len(EMOTIONS))


def sample_richness(B: np.ndarray, m: int, trials: int, seed: int) -> np.ndarray:
    """Richness of ``trials`` uniform ``m``-subsets of the rows of ``B``.

    Each subset is the ``m`` smallest of i.i.d. uniform keys, i.e. a uniform
    draw without replacement.
    """
    V = B.shape[0]
    rng = np.random.default_rng(seed)
    if m == 0:
        return np.zeros((trials, B.shape[1]), dtype=np.int64)
    if m == V:
        return np.tile(B.sum(axis=0), (trials, 1))
    out = np.empty((trials, B.shape[1]), dtype=np.int64)
    block = max(1, _TRIAL_BLOCK_CELLS // V)
    for start in range(0, trials, block):
        b = min(block, trials - start)
        keys = rng.random((b, V))
        idx = np.argpartition(keys, m - 1, axis=1)[:, :m]
        out[start : start + b] = B[idx].sum(axis=1)
    return out


def null_model(m: int, lex: EmotionLexicon, trials: int = 1000, seed: int = 0) -> NullModel:
    """Monte-Carlo richness distribution of ``m`` stems drawn from ``lex``.

    Sampling units are the lexicon stems, the same units profiles count.
    Normality of each emotion's trial values is checked with a two-sided
    Kolmogorov-Smirnov test against the normal of matching mean and sd,
    after spreading every integer count uniformly over its unit bin (a raw
    integer sample never matches a continuous law).
    """
    V = len(lex.stem_entries)
    if m < 0 or m > V:
        raise ValueError(f"sample size {m} outside [0, {V}] lexicon stems")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    R = sample_richness(_emotion_matrix(lex), m, trials, seed)
    mean = R.mean(axis=0)
    sd = R.std(axis=0, ddof=1) if trials > 1 else np.zeros(R.shape[1])
    # counts are integers: spread each over its unit bin before the KS test
    jitter = np.random.default_rng(derive_seed(seed, "ks")).uniform(-0.5, 0.5, R.shape)
    smooth = R + jitter
    r_star, sigma_star, ks_pass, ks_p = {}, {}, {}, {}
    for j, e in enumerate(EMOTIONS):
        r_star[e] = float(mean[j])
        sigma_star[e] = float(sd[j])
        if sd[j] > 0 and trials > 1:
            x = smooth[:, j]
            p = float(stats.kstest(x, "norm", args=(x.mean(), x.std(ddof=1))).pvalue)
        else:
            p = 0.0
        ks_p[e] = p
        ks_pass[e] = p > KS_ALPHA
    return NullModel(r_star, sigma_star, trials, m, seed, ks_pass, ks_p)


def _z(r: float, mean: float, sd: float) -> EmotionZ:
    if sd == 0:
        if r == mean:
            return EmotionZ(0.0, False, "compatible")
        z = math.inf if r > mean else -math.inf
    else:
        z = (r - mean) / sd
    significant = abs(z) > Z_CRITICAL
    direction = "compatible" if not significant else ("above" if z > 0 else "below")
    return EmotionZ(z, significant, direction)


def z_test(profile: EmotionProfile, null: NullModel) -> ZTestResult:
    if profile.m != null.m:
        raise ValueError(f"profile covers {profile.m} stems but the null model samples {null.m}")
    scores = {e: _z(profile.r[e], null.r_star[e], null.sigma_star[e]) for e in EMOTIONS}
    return ZTestResult(scores, null)


def circumplex_density(
    words: Iterable[str], norms: AffectNorms, G: int = 40
) -> CircumplexDensity:
    """Bin covered stems on a ``G x G`` valence/arousal grid over [-1, 1]^2.

    The neutrality range is the interquartile box of the whole norms
    resource, not of the profiled words.
    """
    if G < 2:
        raise ValueError("grid resolution must be >= 2")
    covered = sorted(w for w in set(words) if w in norms.stem_entries)
    pts = np.array([rescale_to_circumplex(norms.stem_entries[w]) for w in covered]).reshape(-1, 2)
    edges = np.linspace(-1.0, 1.0, G + 1)
    grid, _, _ = np.histogram2d(pts[:, 0], pts[:, 1], bins=[edges, edges])
    raw = np.array(list(norms.entries.values()), dtype=float).reshape(-1, 2)
    q = np.percentile(raw, [25, 75], axis=0)
    v_lo, a_lo = rescale_to_circumplex(tuple(q[0]))
    v_hi, a_hi = rescale_to_circumplex(tuple(q[1]))
    if not covered:
        warnings.warn("no profiled word has valence/arousal scores", MercurialWarning)
        mean_point = None
    else:
        mean_point = (float(pts[:, 0].mean()), float(pts[:, 1].mean()))
    return CircumplexDensity(
        grid.astype(np.int64), G, ((v_lo, v_hi), (a_lo, a_hi)), len(covered), mean_point
    )


def segment_hashtag(tag: str, vocabulary: set[str] | frozenset[str]) -> list[str]:
    """Greedy longest-match split of a hashtag into vocabulary words.

    Falls back to the whole hashtag when some position matches no word.
    """
    if tag in vocabulary:
        return [tag]
    longest = max((len(w) for w in vocabulary), default=0)
    words, i = [], 0
    while i < len(tag):
        for j in range(min(len(tag), i + longest), i, -1):
            if tag[i:j] in vocabulary:
                words.append(tag[i:j])
                i = j
                break
        else:
            return [tag]
    return words


class HashtagProfile(NamedTuple):
    profile: EmotionProfile
    ztest: ZTestResult
    density: CircumplexDensity


class WordProfile(NamedTuple):
    profile: EmotionProfile
    ztest: ZTestResult
    word_cloud: dict[str, list[tuple[str, float]]]
    selected: list[str]
    density: CircumplexDensity


def profile_hashtag_network(
    hnet: HashtagNetwork,
    lex: EmotionLexicon,
    norms: AffectNorms,
    trials: int = 1000,
    seed: int = 0,
    G: int = 40,
    stemmer: Stemmer = default_stem,
) -> HashtagProfile:
    """Profile the words hidden in a network's hashtags.

    Hashtags are segmented against the lexicon and norms vocabularies, the
    pieces are stemmed and pooled, and richness is normalized by the number
    of hashtags.
    """
    if hnet.N == 0:
        warnings.warn("empty hashtag network, profile is empty", MercurialWarning)
    vocabulary = set(lex.entries) | set(norms.entries)
    stems = [stemmer(w) for tag in sorted(hnet.adj) for w in segment_hashtag(tag, vocabulary)]
    profile = emotion_profile(stems, lex, total_units=max(hnet.N, 1))
    null = null_model(profile.m, lex, trials, seed)
    return HashtagProfile(profile, z_test(profile, null), circumplex_density(stems, norms, G))


def profile_word_network(
    wnet: WordNetwork,
    metrics: dict[str, NodeMetrics],
    lex: EmotionLexicon,
    norms: AffectNorms,
    trials: int = 1000,
    seed: int = 0,
    G: int = 40,
    tweets: Iterable[ProcessedTweet] | None = None,
    ant: AntonymLexicon | None = None,
    total_units: int | None = None,
    stemmer: Stemmer = default_stem,
    counter: Counter | None = None,
) -> WordProfile:
    """Profile the stems of ``wnet`` whose closeness exceeds the median.

    When the tweets behind the network are given, every occurrence of a
    selected stem that sits under a negation contributes its antonym's stem
    instead. Word-cloud lists give, per emotion, the contributing stems with
    the closeness of the node they came from.
    """
    values = {n: metrics[n].closeness for n in wnet.adj if n in metrics}
    if values:
        median = float(np.median(list(values.values())))
        selected = sorted(n for n, c in values.items() if c > median)
    else:
        selected = []
    if not selected:
        warnings.warn("no word has closeness above the median", MercurialWarning)
    chosen = set(selected)
    weight: dict[str, float] = {}
    if tweets is None:
        weight = {n: values[n] for n in selected}
    else:
        for tw in tweets:
            for s, eff in substituted_pairs(tw, ant, stemmer, counter):
                if s in chosen:
                    weight[eff] = max(weight.get(eff, 0.0), values[s])
    profile = emotion_profile(weight, lex, total_units)
    null = null_model(profile.m, lex, trials, seed)
    cloud = {e: [] for e in EMOTIONS}
    for w in profile.covered:
        for e in lex.stem_entries[w]:
            cloud[e].append((w, weight[w]))
    for e in cloud:
        cloud[e].sort(key=lambda item: (-item[1], item[0]))
    density = circumplex_density(weight, norms, G)
    return WordProfile(profile, z_test(profile, null), cloud, selected, density)
