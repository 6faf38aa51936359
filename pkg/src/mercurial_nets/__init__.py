"""Multi-layer co-occurrence networks for emotional profiling of tweets."""

from .ingest import PipelineConfig, ProcessedTweet, TweetRecord, load_corpus, preprocess
from .lexicon import EMOTIONS, load_affect_norms, load_antonyms, load_emotion_lexicon
from .metrics import node_metrics, rank_by_closeness, rank_combined
from .netbuild import assemble_multilayer, build_hashtag_network, build_word_network
from .pipeline import compare_contexts, run_pipeline

__version__ = "0.1.0"
