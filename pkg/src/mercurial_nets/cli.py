"""Command-line entry point: ``mercurial run`` and ``mercurial synth``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .ingest import PipelineConfig, load_stopwords
from .pipeline import PipelineError, RunOptions, RunPaths, run_pipeline


def _split_tags(value: str) -> list[str]:
    tags = [t.strip().lstrip("#").lower() for t in value.split(",") if t.strip()]
    if not tags:
        raise argparse.ArgumentTypeError("expected at least one hashtag")
    return tags


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mercurial",
        description="Multi-layer co-occurrence networks for emotional profiling.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="analyse a corpus and write a report bundle")
    run.add_argument("--corpus", type=Path, required=True)
    run.add_argument("--focal", type=_split_tags, required=True, help="comma-separated hashtags")
    run.add_argument("--stopwords", type=Path)
    run.add_argument("--emotions", type=Path, required=True)
    run.add_argument("--norms", type=Path, required=True)
    run.add_argument("--antonyms", type=Path)
    run.add_argument("--out", type=Path, required=True)
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--trials", type=int, default=1000)
    run.add_argument("--entropy-mode", choices=("normalized", "verbatim"), default="normalized")
    run.add_argument("--grid", type=int, default=40)
    run.add_argument("--anchor", help="hashtag profiled in combination with each focal hashtag")
    run.add_argument("--language", default="it")
    run.add_argument("--negation-window", type=int, default=3)
    run.add_argument("--clusters", type=int, default=4, help="spectral clusters per hashtag network")
    run.add_argument("--top", type=int, default=20, help="ranking length kept in the report")

    synth = sub.add_parser("synth", help="write a synthetic corpus and lexica")
    synth.add_argument("--out", type=Path, required=True)
    synth.add_argument("--tweets", type=int, default=10_000)
    synth.add_argument("--kind", choices=("planted", "scale"), default="planted")
    synth.add_argument("--seed", type=int, default=0)
    return parser


def _cmd_run(args) -> int:
    if args.seed < 0 or args.seed >= 2**64:
        raise PipelineError("--seed must be an unsigned 64-bit integer")
    try:
        stopwords = load_stopwords(args.stopwords) if args.stopwords else frozenset()
        config = PipelineConfig(
            stopwords=stopwords,
            negation_window=args.negation_window,
            focal_hashtags=args.focal,
            seed=args.seed,
            trials=args.trials,
            language=args.language,
        )
    except (OSError, ValueError) as exc:
        raise PipelineError(str(exc)) from exc
    if args.grid < 2:
        raise PipelineError("--grid must be >= 2")
    args.out.mkdir(parents=True, exist_ok=True)
    paths = RunPaths(args.corpus, args.emotions, args.norms, args.antonyms, args.stopwords, args.out)
    opts = RunOptions(
        anchor=args.anchor,
        entropy_mode=args.entropy_mode,
        grid=args.grid,
        clusters=args.clusters,
        top=args.top,
    )
    report = run_pipeline(config, paths, opts)
    print(f"wrote {args.out / 'report.json'} ({len(report['contexts'])} focal contexts)")
    return 0


def _cmd_synth(args) -> int:
    from . import synthetic

    lex = synthetic.make_lexicon(seed=args.seed)
    paths = synthetic.write_lexicon(lex, args.out)
    if args.kind == "planted":
        records = synthetic.planted_corpus(lex, args.tweets, seed=args.seed)
    else:
        records = synthetic.scale_corpus(lex, args.tweets, seed=args.seed)
    corpus = synthetic.write_corpus(records, args.out / "corpus.jsonl")
    print(corpus)
    for name, p in sorted(paths.items()):
        print(p)
    return 0


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        if args.command == "run":
            return _cmd_run(args)
        return _cmd_synth(args)
    except PipelineError as exc:
        print(f"mercurial: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
