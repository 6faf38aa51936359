import math
from collections import Counter

import numpy as np
import pytest

from mercurial_nets.ingest import MercurialWarning, PipelineConfig, ProcessedTweet, TweetRecord, preprocess
from mercurial_nets.lexicon import EMOTIONS, AffectNorms, AntonymLexicon, EmotionLexicon
from mercurial_nets.metrics import node_metrics
from mercurial_nets.netbuild import HashtagNetwork, Network, WordNetwork
from mercurial_nets.profiling import (
    NullModel,
    circumplex_density,
    derive_seed,
    emotion_profile,
    null_model,
    profile_hashtag_network,
    profile_word_network,
    segment_hashtag,
    substitute_negated,
    z_test,
)
from oracles import exact_subset_moments

pytestmark = pytest.mark.filterwarnings("ignore:no profiled word has valence")

TOY_WORDS = {
    "paura": {"fear"},
    "fiducia": {"trust"},
    "gioia": {"joy", "trust"},
    "rabbia": {"anger", "disgust"},
    "tristezza": {"sadness"},
    "sorpresa": {"surprise", "joy"},
    "orrore": {"fear", "disgust"},
    "attesa": {"anticipation"},
    "speranza": {"anticipation", "trust", "joy"},
    "tavolo": set(),
}
TOY = EmotionLexicon.from_entries(TOY_WORDS)
NORMS = AffectNorms.from_entries({"pace": (8.0, 3.0), "paura": (2.0, 7.0), "futuro": (6.0, 5.0)})


def _null(r_star, sigma_star, m):
    return NullModel(
        {e: r_star.get(e, 0.0) for e in EMOTIONS},
        {e: sigma_star.get(e, 1.0) for e in EMOTIONS},
        1000, m, 0, {e: True for e in EMOTIONS},
    )


def test_toy_lexicon_has_ten_distinct_stems():
    assert len(TOY.stem_entries) == 10


# --- profiles ---------------------------------------------------------------

def test_empty_profile():
    p = emotion_profile([], TOY)
    assert p.m == 0 and all(v == 0 for v in p.r.values())


def test_single_stem_profile():
    lex = EmotionLexicon({"paura": frozenset({"fear"})}, {"paur": frozenset({"fear"})})
    p = emotion_profile(["paur"], lex)
    assert p.r["fear"] == 1 and sum(p.r.values()) == 1


def test_six_stem_profile_by_enumeration():
    stems = ["paur", "gio", "rabb", "sper", "sper", "nonesist"]
    p = emotion_profile(stems, TOY, total_units=10)
    # hand count over {paur, gio, rabb, sper}
    assert p.m == 4
    assert p.r == {
        "anger": 1, "anticipation": 1, "disgust": 1, "fear": 1,
        "joy": 2, "sadness": 0, "surprise": 0, "trust": 2,
    }
    assert p.normalized["joy"] == 0.2
    assert all(0 <= v <= p.m for v in p.r.values()) and p.m <= len(set(stems))


# --- null model --------------------------------------------------------------

def test_null_model_matches_enumeration():
    units = [TOY.stem_entries[s] for s in sorted(TOY.stem_entries)]
    exact = exact_subset_moments(units, 4, EMOTIONS)
    trials = 1000
    nm = null_model(4, TOY, trials, seed=123)
    for e in EMOTIONS:
        mu, sd, count = exact[e]
        assert count == 210
        assert abs(nm.r_star[e] - mu) <= 3 * sd / math.sqrt(trials) + 1e-12
        assert abs(nm.sigma_star[e] - sd) <= 3 * sd / math.sqrt(2 * (trials - 1)) + 1e-12


def test_null_model_exhaustive_sample():
    nm = null_model(10, TOY, 50, seed=1)
    full = emotion_profile(TOY.stem_entries, TOY)
    for e in EMOTIONS:
        assert nm.sigma_star[e] == 0.0
        assert nm.r_star[e] == full.r[e]


def test_null_model_determinism_and_errors():
    assert null_model(4, TOY, 200, seed=9) == null_model(4, TOY, 200, seed=9)
    assert null_model(4, TOY, 200, seed=9).r_star != null_model(4, TOY, 200, seed=10).r_star
    with pytest.raises(ValueError):
        null_model(11, TOY, 10, 0)
    with pytest.raises(ValueError):
        null_model(3, TOY, 0, 0)


def test_null_model_ks_on_large_lexicon():
    rng = np.random.default_rng(0)
    lex = EmotionLexicon.from_entries(
        {f"parol{i:04d}x": {e for e in EMOTIONS if rng.random() < 0.2} for i in range(800)}
    )
    nm = null_model(80, lex, 1000, seed=3)
    assert sum(nm.ks_pass.values()) >= 6
    assert all(0.0 <= p <= 1.0 for p in nm.ks_pvalue.values())


# --- z-test ------------------------------------------------------------------

def _profile_with(r, m):
    p = emotion_profile([], TOY)
    p.r.update(r)
    p.covered = tuple(f"s{i}" for i in range(m))
    return p


def test_z_examples():
    zt = z_test(_profile_with({"joy": 10}, 5), _null({"joy": 10.0}, {"joy": 2.0}, 5))
    assert zt["joy"].z == 0.0 and zt["joy"].direction == "compatible"
    zt = z_test(_profile_with({"joy": 16}, 5), _null({"joy": 10.0}, {"joy": 2.0}, 5))
    assert zt["joy"].z == 3.0 and zt["joy"].significant and zt["joy"].direction == "above"


def test_z_threshold_semantics():
    # trust richness 2.89 sd above random is flagged; the boundary itself is not
    zt = z_test(_profile_with({"trust": 12.89}, 5), _null({"trust": 10.0}, {"trust": 1.0}, 5))
    assert zt["trust"].z == pytest.approx(2.89) and zt["trust"].significant
    zt = z_test(_profile_with({"fear": 7.65}, 5), _null({"fear": 10.0}, {"fear": 1.0}, 5))
    assert zt["fear"].direction == "below"
    zt = z_test(_profile_with({"fear": 11.96}, 5), _null({"fear": 10.0}, {"fear": 1.0}, 5))
    assert zt["fear"].z == pytest.approx(1.96)
    assert zt["fear"].significant == (abs(zt["fear"].z) > 1.96)


def test_z_degenerate_sigma():
    zt = z_test(_profile_with({"joy": 3}, 5), _null({"joy": 2.0}, {"joy": 0.0}, 5))
    assert zt["joy"].z == math.inf and zt["joy"].degenerate and zt["joy"].direction == "above"
    zt = z_test(_profile_with({"joy": 2}, 5), _null({"joy": 2.0}, {"joy": 0.0}, 5))
    assert zt["joy"].z == 0.0 and not zt["joy"].degenerate


def test_z_m_mismatch():
    with pytest.raises(ValueError):
        z_test(_profile_with({}, 3), _null({}, {}, 4))


# --- negation substitution ---------------------------------------------------

CFG = PipelineConfig()
ANT = AntonymLexicon({"pace": "guerra", "guerra": "pace"})


def test_substitute_negated_examples():
    pt = preprocess(TweetRecord("1", "non pace oggi"), CFG)
    counter = Counter()
    out = substitute_negated(pt, ANT, counter=counter)
    assert "guerr" in out and "pac" not in out
    assert counter["substituted"] == 1 and counter["missed"] == 1  # "oggi" is negated too
    plain = preprocess(TweetRecord("2", "pace oggi"), CFG)
    assert substitute_negated(plain, ANT) == plain.stems()
    lone = preprocess(TweetRecord("3", "non tavolo"), CFG)
    counter = Counter()
    assert substitute_negated(lone, ANT, counter=counter) == ["tavol"]
    assert counter["missed"] == 1


# --- circumplex --------------------------------------------------------------

def test_circumplex_single_midpoint():
    norms = AffectNorms.from_entries({"medio": (5.0, 5.0)})
    dens = circumplex_density(["med"], norms, G=4)
    assert dens.grid.sum() == 1 and dens.grid[2, 2] == 1


def test_circumplex_corners():
    norms = AffectNorms.from_entries({"aaab": (1, 1), "bbbc": (1, 9), "cccd": (9, 1), "dddf": (9, 9)})
    dens = circumplex_density(["aaab", "bbbc", "cccd", "dddf"], norms, G=5)
    assert dens.covered_words == 4
    for i, j in [(0, 0), (0, 4), (4, 0), (4, 4)]:
        assert dens.grid[i, j] == 1


def test_neutrality_range_uniform_norms():
    norms = AffectNorms.from_entries({f"w{i}x": (float(i), float(i)) for i in range(1, 10)})
    with pytest.warns(MercurialWarning):
        dens = circumplex_density([], norms, G=2)
    assert dens.neutrality_range == ((-0.5, 0.5), (-0.5, 0.5))
    assert dens.grid.sum() == 0


def test_circumplex_rejects_tiny_grid():
    with pytest.raises(ValueError):
        circumplex_density([], NORMS, G=1)


# --- hashtag profiles --------------------------------------------------------

def test_segment_hashtag():
    vocab = {"andra", "tutto", "bene", "tut"}
    assert segment_hashtag("andratuttobene", vocab) == ["andra", "tutto", "bene"]
    assert segment_hashtag("futuro", vocab | {"futuro"}) == ["futuro"]
    assert segment_hashtag("xyz", vocab) == ["xyz"]


def test_profile_hashtag_network_segmentation():
    lex = EmotionLexicon.from_entries({"andra": {"anticipation"}, "tutto": set(), "bene": {"joy", "trust"}})
    net = HashtagNetwork(nodes=["andratuttobene"])
    hp = profile_hashtag_network(net, lex, NORMS, trials=50, seed=0)
    assert hp.profile.words == ("andr", "ben", "tutt")
    assert hp.profile.m == 3 and hp.profile.total_units == 1
    assert hp.profile.r["joy"] == 1


def test_profile_hashtag_single_word():
    lex = EmotionLexicon.from_entries({"futuro": {"anticipation"}, "pace": {"trust"}})
    hp = profile_hashtag_network(HashtagNetwork(nodes=["futuro"]), lex, NORMS, trials=20, seed=0)
    assert hp.profile.words == ("futur",)
    assert hp.profile.r["anticipation"] == 1
    assert hp.density.covered_words == 1


def test_profile_empty_hashtag_network():
    with pytest.warns(MercurialWarning):
        hp = profile_hashtag_network(HashtagNetwork(), TOY, NORMS, trials=10)
    assert hp.profile.m == 0


# --- word profiles -----------------------------------------------------------

def test_profile_word_network_path5():
    lex = EmotionLexicon.from_entries({w: {"joy"} for w in ["aaaab", "bbbbc", "ccccd", "ddddf", "eeeeg"]})
    net = WordNetwork(edges=[("aaaab", "bbbbc"), ("bbbbc", "ccccd"), ("ccccd", "ddddf"), ("ddddf", "eeeeg")])
    m = node_metrics(net)
    # closeness: ends 5/10, next 5/7, centre 5/6 -> median 5/7
    assert m["ccccd"].closeness == 5 / 6 and m["bbbbc"].closeness == 5 / 7
    wp = profile_word_network(net, m, lex, NORMS, trials=20, seed=0)
    assert wp.selected == ["ccccd"]
    assert wp.word_cloud["joy"] == [("ccccd", 5 / 6)]


@pytest.mark.parametrize("net", [
    WordNetwork(edges=[(f"v{i}", f"v{(i + 1) % 5}") for i in range(5)]),
    WordNetwork(edges=[("uno", "due")]),
])
def test_profile_word_network_no_selection(net):
    with pytest.warns(MercurialWarning, match="median"):
        wp = profile_word_network(net, node_metrics(net), TOY, NORMS, trials=10)
    assert wp.selected == [] and wp.profile.m == 0


def test_profile_word_network_negation():
    lex = EmotionLexicon.from_entries({"pace": {"trust"}, "guerra": {"fear"}})
    tweets = [preprocess(TweetRecord(str(i), t), CFG) for i, t in enumerate(
        ["non pace mai", "pace ora", "ora sempre"]
    )]
    net = WordNetwork(edges=[("pac", "mai"), ("pac", "ora"), ("ora", "sempr")])
    m = node_metrics(net)
    wp = profile_word_network(net, m, lex, NORMS, trials=10, tweets=tweets, ant=ANT)
    assert "pac" in wp.selected
    # one negated and one plain occurrence of "pace"
    assert set(wp.profile.covered) == {"guerr", "pac"}


def test_derive_seed_stable():
    assert derive_seed(1, "a", "b") == derive_seed(1, "a", "b")
    assert derive_seed(1, "a") != derive_seed(1, "b") != derive_seed(2, "a")
