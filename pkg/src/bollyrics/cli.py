"""Command-line entry point: stats | train | generate | kappa | export | render.

All randomness flows from one seeded generator per invocation, so any
subcommand rerun with the same flags and --seed is byte-identical.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import random
import sys
from pathlib import Path

from . import __version__, corpus, evaluate, generator, ngram, rhyme
from .errors import BollyricsError


def _rhyme_index_path(model_path: Path) -> Path:
    # sidecar shares the model stem: model.json -> model.rhyme.json
    return model_path.with_suffix(".rhyme.json")


def _load_rule_table(path: str | None) -> rhyme.RuleTable:
    return rhyme.RuleTable.from_json_file(path) if path else rhyme.default_rule_table()


def _load_norm_table(path: str | None) -> rhyme.NormalizationTable:
    if path:
        return rhyme.NormalizationTable.from_tsv_file(path)
    return rhyme.default_normalization_table()


def cmd_stats(args) -> int:
    stats = corpus.compute_stats(corpus.load_corpus(args.corpus, strict=args.strict))
    if args.histogram:
        with open(args.histogram, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["year", "count"])
            for year, count in sorted(stats.per_year_histogram.items()):
                writer.writerow([year, count])
    if args.json:
        print(json.dumps(stats.as_dict()))
        return 0
    year_range = (
        f"{stats.year_min}-{stats.year_max}" if stats.year_min is not None else "n/a"
    )
    rows = [
        ("songs", f"{stats.song_count}"),
        ("lines", f"{stats.line_count}"),
        ("avg lines per song", f"{stats.avg_lines_per_song:.2f}"),
        ("tokens", f"{stats.token_count}"),
        ("unique tokens", f"{stats.unique_token_count}"),
        ("year range", year_range),
    ]
    width = max(len(name) for name, _ in rows)
    for name, value in rows:
        print(f"{name:<{width}}  {value}")
    return 0


def cmd_train(args) -> int:
    loaded = corpus.load_corpus(args.corpus, strict=args.strict)
    rules = _load_rule_table(args.rules)
    norm = _load_norm_table(args.norm)
    model = ngram.train(loaded, norm)
    index = rhyme.build_index(loaded, rules, norm)
    model_path = Path(args.model_out)
    index_path = _rhyme_index_path(model_path)
    model.save(model_path)
    index.save(index_path)
    trainable = ngram.trainable_line_count(loaded)
    if args.json:
        print(
            json.dumps(
                {
                    "model": str(model_path),
                    "rhyme_index": str(index_path),
                    "vocab_size": len(model.tokens),
                    "trainable_lines": trainable,
                    "rhyme_pairs": index.total_pairs(),
                }
            )
        )
    else:
        print(f"model written to {model_path}")
        print(f"rhyme index written to {index_path}")
        print(f"vocab size: {len(model.tokens)} (start sentinel included)")
        print(f"trainable lines: {trainable}")
        print(f"rhyme pairs: {index.total_pairs()}")
    return 0


def cmd_generate(args) -> int:
    model = ngram.TrigramModel.load(args.model)
    index = rhyme.RhymeIndex.load(_rhyme_index_path(Path(args.model)))
    scheme = generator.parse_scheme(args.scheme)
    cfg = ngram.SamplerConfig(temperature=args.temperature, rng_seed=args.seed)
    rng = random.Random(args.seed)
    song = generator.generate_song(
        model,
        index,
        scheme,
        paragraphs=args.paragraphs,
        cfg=cfg,
        rng=rng,
        max_len=args.max_len,
    )
    if args.json:
        print(json.dumps(song.to_json()))
    else:
        print(generator.render(song, show_start_token=args.show_start))
    return 0


def cmd_kappa(args) -> int:
    matrix = evaluate.load_annotations(args.annotations)
    positive = 0
    if args.positive:
        if args.positive not in matrix.categories:
            raise BollyricsError(
                f"category {args.positive!r} not declared in {args.annotations}"
            )
        positive = matrix.categories.index(args.positive)
    rate = evaluate.makes_sense_rate(matrix, positive)
    try:
        kappa = evaluate.fleiss_kappa(matrix)
    except ValueError as exc:
        raise BollyricsError(str(exc)) from exc
    if args.json:
        print(json.dumps({"kappa": kappa, "makes_sense_rate": rate}))
    else:
        print(f"kappa: {kappa:.4f}")
        print(f"makes-sense rate: {rate:.4f}")
    return 0


def cmd_export(args) -> int:
    if args.context_len < 1:
        raise BollyricsError("--context-len must be >= 1")
    loaded = corpus.load_corpus(args.corpus, strict=args.strict)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    vocab_path = out_dir / "vocab.json"
    seq_path = out_dir / "sequences.jsonl"
    windows = corpus.export_sequences(loaded, vocab_path, seq_path, args.context_len)
    if args.json:
        print(
            json.dumps(
                {"vocab": str(vocab_path), "sequences": str(seq_path), "windows": windows}
            )
        )
    else:
        print(f"vocabulary written to {vocab_path}")
        print(f"sequences written to {seq_path}")
        print(f"windows: {windows}")
    return 0


def cmd_render(args) -> int:
    song = generator.GeneratedSong.load(args.song)
    print(generator.render(song, show_start_token=args.show_start))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit machine-readable JSON")
    common.add_argument(
        "--seed", type=int, default=None, help="RNG seed for reproducible runs"
    )

    parser = argparse.ArgumentParser(
        prog="bollyrics",
        description="Rhyme-scheme constrained lyric generation for romanized Hindi songs.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", parents=[common], help="summarize a corpus file")
    p.add_argument("corpus", help="corpus JSONL file")
    p.add_argument("--strict", action="store_true", help="abort on the first bad record")
    p.add_argument("--histogram", metavar="CSV", help="also write the per-year histogram CSV")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("train", parents=[common], help="train the trigram model")
    p.add_argument("corpus", help="corpus JSONL file")
    p.add_argument("-o", "--model-out", default="model.json", help="model output path")
    p.add_argument("--rules", help="rule-table JSON overriding the built-in ending rules")
    p.add_argument("--norm", help="normalization TSV overriding the bundled seed table")
    p.add_argument("--strict", action="store_true", help="abort on the first bad record")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("generate", parents=[common], help="generate a song")
    p.add_argument("--model", default="model.json", help="trained model path")
    p.add_argument("--scheme", required=True, help="rhyme scheme, e.g. AABB or ABAB")
    p.add_argument("--paragraphs", type=int, default=4, help="paragraph count")
    p.add_argument("--temperature", type=float, default=1.0, help="sampling temperature")
    p.add_argument(
        "--max-len", type=int, default=10, help="token cap per line, seed pair included"
    )
    p.add_argument(
        "--show-start", action="store_true", help="prefix lines with the start sentinel"
    )
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("kappa", parents=[common], help="agreement stats for annotations")
    p.add_argument("annotations", help="annotations CSV file")
    p.add_argument(
        "--positive",
        help="category counted as positive for the makes-sense rate (default: first declared)",
    )
    p.set_defaults(func=cmd_kappa)

    p = sub.add_parser("export", parents=[common], help="export training sequences")
    p.add_argument("corpus", help="corpus JSONL file")
    p.add_argument("--out-dir", default=".", help="directory for vocab.json and sequences.jsonl")
    p.add_argument("--context-len", type=int, default=2, help="context window length")
    p.add_argument("--strict", action="store_true", help="abort on the first bad record")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("render", parents=[common], help="render a song JSON file as text")
    p.add_argument("song", help="song JSON file (generate --json output format)")
    p.add_argument(
        "--show-start", action="store_true", help="prefix lines with the start sentinel"
    )
    p.set_defaults(func=cmd_render)

    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BollyricsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
