"""End-to-end run: corpus and lexica in, report bundle out."""

from __future__ import annotations

import hashlib
import json
import logging
import math
import warnings
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

from .ingest import LoadReport, MercurialWarning, PipelineConfig, ProcessedTweet, load_corpus, preprocess
from .lexicon import EMOTIONS, AffectNorms, AntonymLexicon, EmotionLexicon
from .lexicon import load_affect_norms, load_antonyms, load_emotion_lexicon
from .metrics import (
    node_metrics,
    rank_by_closeness,
    rank_combined,
    spectral_clusters,
    structure_stats,
    write_metrics_table,
)
from .netbuild import (
    Network,
    assemble_multilayer,
    build_hashtag_network,
    largest_component,
)
from .profiling import (
    CircumplexDensity,
    EmotionProfile,
    ZTestResult,
    derive_seed,
    profile_hashtag_network,
    profile_word_network,
)

__all__ = ["PipelineError", "RunPaths", "compare_contexts", "run_pipeline", "SCHEMA_VERSION"]

log = logging.getLogger(__name__)

SCHEMA_VERSION = "mercurial-report/1"


class PipelineError(RuntimeError):
    """Fatal input problem; the run cannot produce a report."""


@dataclass
class RunPaths:
    corpus: Path
    emotions: Path
    norms: Path
    antonyms: Path | None = None
    stopwords: Path | None = None
    out: Path | None = None


@dataclass
class RunOptions:
    anchor: str | None = None
    entropy_mode: str = "normalized"
    grid: int = 40
    clusters: int = 4
    top: int = 20
    edge_nets: int = 5


def _sha256(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def _z_json(z: float) -> float | str:
    if math.isinf(z):
        return "+inf" if z > 0 else "-inf"
    return z


def _profile_json(profile: EmotionProfile, zt: ZTestResult, density: CircumplexDensity) -> dict:
    null = zt.null
    return {
        "m": profile.m,
        "profiled_words": len(profile.words),
        "coverage": profile.m / len(profile.words) if profile.words else 0.0,
        "total_units": profile.total_units,
        "emotions": {
            e: {
                "r": profile.r[e],
                "normalized": profile.normalized[e],
                "r_star": null.r_star[e],
                "sigma_star": null.sigma_star[e],
                "z": _z_json(zt[e].z),
                "significant": zt[e].significant,
                "direction": zt[e].direction,
                "ks_pass": null.ks_pass[e],
                "ks_pvalue": null.ks_pvalue[e],
            }
            for e in EMOTIONS
        },
        "null_model": {"trials": null.trials, "m": null.m, "seed": null.seed},
        "circumplex": {
            "G": density.G,
            "covered_words": density.covered_words,
            "mean_point": list(density.mean_point) if density.mean_point else None,
            "neutrality_range": {
                "valence": list(density.neutrality_range[0]),
                "arousal": list(density.neutrality_range[1]),
            },
            "grid": density.grid.tolist(),
        },
    }


def _network_block(full: Network, exclude: set[str], opts: RunOptions, out: Path | None, stem: str):
    comp = largest_component(full)
    metrics = node_metrics(comp, opts.entropy_mode)
    ranking = rank_by_closeness(comp, exclude, metrics)
    combined = rank_combined(comp, exclude, metrics, opts.entropy_mode)
    block: dict[str, Any] = {
        "full": {"nodes": full.N, "edges": full.number_of_edges()},
        "component": structure_stats(comp, metrics),
        "ranking": [[n, c] for n, c in ranking[: opts.top]],
        "combined_ranking": [[n, c, h] for n, c, h in combined[: opts.top]],
    }
    if out is not None:
        full.write_edge_list(out / "networks" / f"{stem}.tsv")
        order = [n for n, _ in rank_by_closeness(comp, (), metrics)]
        write_metrics_table(out / "metrics" / f"{stem}.tsv", metrics, order)
    return comp, metrics, block


def _clusters(comp: Network, k: int, seed: int) -> list[list[str]]:
    if k < 2 or comp.N < k:
        return []
    return [sorted(g) for g in spectral_clusters(comp, k, seed)]


def _write_cloud(out: Path, stem: str, cloud: dict[str, list[tuple[str, float]]]) -> None:
    for e in EMOTIONS:
        with open(out / "wordclouds" / f"{stem}.{e}.tsv", "w", encoding="utf-8", newline="\n") as fh:
            fh.write("word\tcloseness\n")
            for w, c in cloud[e]:
                fh.write(f"{w}\t{c:.12g}\n")


def _word_context(
    label: str,
    wnet_full: Network,
    tweets: Sequence[ProcessedTweet],
    exclude: set[str],
    lex: EmotionLexicon,
    norms: AffectNorms,
    ant: AntonymLexicon | None,
    config: PipelineConfig,
    opts: RunOptions,
    out: Path | None,
    negation: Counter,
) -> dict:
    comp, metrics, block = _network_block(wnet_full, exclude, opts, out, f"{label}.words")
    wp = profile_word_network(
        comp, metrics, lex, norms, config.trials, derive_seed(config.seed, label, "words"),
        opts.grid, tweets=tweets, ant=ant, counter=negation,
    )
    block["selected_words"] = len(wp.selected)
    block["profile"] = _profile_json(wp.profile, wp.ztest, wp.density)
    block["word_cloud"] = {e: [[w, c] for w, c in wp.word_cloud[e]] for e in EMOTIONS}
    if out is not None:
        _write_cloud(out, f"{label}.words", wp.word_cloud)
    return block


def run_pipeline(
    config: PipelineConfig, paths: RunPaths, opts: RunOptions | None = None
) -> dict:
    """Run the whole analysis and, when ``paths.out`` is set, write the bundle.

    The returned report is a plain JSON-compatible dict. Warnings raised while
    running are collected into ``report["warnings"]``.
    """
    opts = opts or RunOptions()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        report = _run(config, paths, opts)
    report["warnings"] = [str(w.message) for w in caught]
    if paths.out is not None:
        with open(Path(paths.out) / "report.json", "w", encoding="utf-8", newline="\n") as fh:
            json.dump(report, fh, indent=1, sort_keys=True, ensure_ascii=False)
            fh.write("\n")
    return report


def _load_resources(paths: RunPaths, config: PipelineConfig):
    try:
        lex = load_emotion_lexicon(paths.emotions)
        norms = load_affect_norms(paths.norms)
        ant = load_antonyms(paths.antonyms, lex) if paths.antonyms else None
        load = LoadReport()
        records = load_corpus(paths.corpus, config, load)
    except (OSError, ValueError) as exc:
        raise PipelineError(str(exc)) from exc
    if not records:
        raise PipelineError(f"{paths.corpus}: no usable records")
    return lex, norms, ant, load, records


def _run(config: PipelineConfig, paths: RunPaths, opts: RunOptions) -> dict:
    if not config.focal_hashtags:
        raise PipelineError("at least one focal hashtag is required")
    lex, norms, ant, load, records = _load_resources(paths, config)
    out = Path(paths.out) if paths.out is not None else None
    if out is not None:
        for sub in ("networks", "metrics", "wordclouds", "edges"):
            (out / sub).mkdir(parents=True, exist_ok=True)

    log.info("preprocessing %d records", len(records))
    tweets = [preprocess(r, config) for r in records]
    anchor = opts.anchor.lstrip("#").lower() if opts.anchor else None
    focal = list(dict.fromkeys(config.focal_hashtags))
    combos = [(f,) for f in focal]
    if anchor:
        combos += [tuple(sorted({anchor, f})) for f in focal if f != anchor]
    full_hnet = build_hashtag_network(tweets)
    ml = assemble_multilayer(tweets, full_hnet, combos)
    negation: Counter = Counter()

    contexts = {}
    for f in focal:
        log.info("focal hashtag #%s", f)
        sub = [tw for tw in tweets if f in tw.hashtags]
        hnet = build_hashtag_network(sub)
        comp, hmetrics, hblock = _network_block(hnet, {f}, opts, out, f"{f}.hashtags")
        hblock["clusters"] = _clusters(comp, opts.clusters, derive_seed(config.seed, f, "clusters"))
        if comp.N:
            hp = profile_hashtag_network(
                comp, lex, norms, config.trials, derive_seed(config.seed, f, "hashtags"), opts.grid
            )
            hblock["profile"] = _profile_json(hp.profile, hp.ztest, hp.density)
        else:
            hblock["profile"] = None

        edge_nets = {}
        neighbours = [n for n, _ in rank_by_closeness(comp, {f}, hmetrics) if comp.has_edge(f, n)]
        for other in neighbours[: opts.edge_nets]:
            key = tuple(sorted((f, other)))
            wn = ml.edge_word_nets[key]
            edge_nets["+".join(key)] = {"nodes": wn.N, "edges": wn.number_of_edges()}
            if out is not None:
                (out / "edges" / f).mkdir(exist_ok=True)
                wn.write_edge_list(out / "edges" / f / f"{'+'.join(key)}.words.tsv")
        hblock["edge_word_networks"] = edge_nets

        wblock = _word_context(
            f, ml.focal_word_nets[(f,)], sub, {f}, lex, norms, ant, config, opts, out, negation
        )
        contexts[f] = {"tweets": len(sub), "hashtag_network": hblock, "word_network": wblock}

    combinations = {}
    for combo in combos[len(focal):]:
        label = "+".join(combo)
        members = [tw for tw in tweets if tw.hashtags.issuperset(combo)]
        if not members:
            continue
        wblock = _word_context(
            label, ml.focal_word_nets[combo], members, set(combo), lex, norms, ant,
            config, opts, out, negation,
        )
        combinations[label] = {"hashtags": list(combo), "tweets": len(members), "word_network": wblock}

    report = {
        "schema": SCHEMA_VERSION,
        "config": _config_echo(config, paths, opts),
        "corpus": {
            "lines": load.lines,
            "loaded": load.loaded,
            "duplicates": load.duplicates,
            "dropped_language": load.dropped_language,
            "malformed": load.malformed,
            "hashtags": full_hnet.N,
            "negation": {"substituted": negation["substituted"], "missed": negation["missed"]},
        },
        "contexts": contexts,
        "combinations": combinations,
    }
    if anchor:
        report["comparison"] = compare_contexts(anchor, [f for f in focal if f != anchor], report)
    return report


def _config_echo(config: PipelineConfig, paths: RunPaths, opts: RunOptions) -> dict:
    inputs = {}
    for name in ("corpus", "emotions", "norms", "antonyms", "stopwords"):
        p = getattr(paths, name)
        inputs[name] = None if p is None else {"name": Path(p).name, "sha256": _sha256(Path(p))}
    return {
        "inputs": inputs,
        "focal": list(config.focal_hashtags),
        "anchor": opts.anchor,
        "seed": config.seed,
        "trials": config.trials,
        "language": config.language,
        "stopwords": len(config.stopwords),
        "negation_markers": sorted(config.negation_markers),
        "negation_window": config.negation_window,
        "entropy_mode": opts.entropy_mode,
        "grid": opts.grid,
        "clusters": opts.clusters,
        "top": opts.top,
    }


def compare_contexts(anchor: str, contexts: Sequence[str], report: dict) -> dict:
    """Side-by-side z-scores of the anchor's word profile in each context.

    Contexts whose combination with the anchor is missing from the report
    are left out with a warning.
    """
    anchor = anchor.lstrip("#").lower()
    present = []
    for ctx in contexts:
        label = "+".join(sorted({anchor, ctx.lstrip("#").lower()}))
        block = report.get("combinations", {}).get(label)
        if block is None:
            warnings.warn(f"no word network for #{anchor} with #{ctx}", MercurialWarning)
            continue
        present.append((ctx, block["word_network"]["profile"]["emotions"]))
    rows = []
    for e in EMOTIONS:
        row = {"emotion": e}
        for ctx, emos in present:
            row[ctx] = {"z": emos[e]["z"], "direction": emos[e]["direction"]}
        rows.append(row)
    return {"anchor": anchor, "contexts": [c for c, _ in present], "rows": rows}
