"""Command-line entry point: ``reqanaphora {detect,train,eval}``.

Exit codes: 0 success, 1 runtime failure, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .errors import ConfigError, ReqAnaphoraError

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2


def _probability(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="reqanaphora", description="Detect and resolve pronominal anaphora in requirements.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True, metavar="{detect,train,eval}")

    d = sub.add_parser("detect", help="run the pipeline on a specification file")
    d.add_argument("--input", required=True, help="plain-text specification, one requirement per line")
    d.add_argument("--output", help="report CSV (default: input path with .csv)")
    d.add_argument("--config", help="key = value config file")
    d.add_argument("--window", type=int, help="preceding requirements in each context")
    d.add_argument("--threshold", type=_probability, help="resolution acceptance threshold")
    d.add_argument("--tau", type=_probability, help="decision margin between the two best candidates")
    d.add_argument("--resolver", choices=("model", "heuristic"))
    d.add_argument("--workers", type=int)
    d.add_argument("--analyzer", choices=("rule", "fixture"))
    d.add_argument("--golden", help="golden annotation file for --analyzer fixture")
    d.add_argument("--triples-out", help="also write the candidate triples CSV")
    d.add_argument("--figures-dir", help="render summary PNG figures into this directory")

    t = sub.add_parser("train", help="train a triple classifier from a labeled vector CSV")
    t.add_argument("--vectors", required=True, help="CSV: label column then one column per feature")
    t.add_argument("--kind", required=True, choices=("LF", "FE"))
    t.add_argument("--output", required=True, help="artifact directory")
    t.add_argument("--C", type=float, default=1.0, help="inverse regularization strength")
    t.add_argument("--tau", type=_probability, default=0.15)

    e = sub.add_parser("eval", help="score a report against multi-annotator labels")
    e.add_argument("--annotations", required=True, help="CSV annotator_id,triple_id,label")
    e.add_argument("--report", required=True, help="report CSV written by detect")
    e.add_argument("--triples", help="triples CSV written by detect --triples-out (needed for resolution accuracy)")
    e.add_argument("--output", help="write the JSON report here instead of stdout")
    e.add_argument("--figures-dir", help="render a confusion-matrix PNG into this directory")
    return ap


def _detect(args) -> int:
    from .pipeline import PipelineConfig, load_config, run

    config = load_config(args.config) if args.config else PipelineConfig()
    config = config.with_overrides(
        context_window=args.window,
        resolution_threshold=args.threshold,
        tau_margin=args.tau,
        resolver_backend=args.resolver,
        worker_count=args.workers,
        analyzer=args.analyzer,
        golden_path=args.golden,
    )
    output = args.output or str(Path(args.input).with_suffix(".csv"))
    summary = run(args.input, output, config, args.triples_out, args.figures_dir)
    print(
        f"{summary.pronoun_count} pronouns: {summary.ambiguous_count} ambiguous, "
        f"{summary.unambiguous_count} unambiguous; {summary.accepted_resolutions} resolutions accepted, "
        f"{summary.low_confidence_resolutions} low confidence ({summary.wall_time_seconds:.2f}s) -> {output}"
    )
    if summary.degraded:
        print(f"degraded modes: {', '.join(summary.degraded)}", file=sys.stderr)
    for fig in summary.figures:
        print(f"figure: {fig}")
    return EXIT_OK


def read_vector_csv(path: str, kind: str):
    from .features import DEFAULT_REGISTRY, FeatureVector

    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if not header or header[0] != "label":
            raise ConfigError(f"{path}: first column must be 'label'")
        names = tuple(header[1:])
        if kind == "LF" and names != DEFAULT_REGISTRY.names:
            raise ConfigError(f"{path}: LF columns must follow the registry order")
        data = []
        for n, row in enumerate(reader, start=2):
            try:
                vec = FeatureVector(kind, [float(x) for x in row[1:]], names if kind == "LF" else ())
            except ValueError as exc:
                raise ConfigError(f"{path}:{n}: {exc}") from exc
            data.append((vec, row[0]))
    return data


def _train(args) -> int:
    from .detector import train_classifier

    data = read_vector_csv(args.vectors, args.kind)
    clf = train_classifier(data, args.kind, {"C": args.C}, tau=args.tau)
    out = clf.save(args.output)
    print(f"trained {args.kind} classifier on {len(data)} triples -> {out}")
    return EXIT_OK


def _eval(args) -> int:
    from .corpus import read_report
    from .evalkit import aggregate_annotations, evaluate, read_annotations, read_triple_index

    records = read_annotations(Path(args.annotations).read_text(encoding="utf-8"))
    triples = read_triple_index(Path(args.triples).read_text(encoding="utf-8")) if args.triples else None
    gold = aggregate_annotations(records, triples)
    report = evaluate(gold, read_report(Path(args.report).read_text(encoding="utf-8")))
    text = report.to_json()
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if args.figures_dir:
        from .plotting import write_eval_figures

        for fig in write_eval_figures(report, args.figures_dir):
            print(f"figure: {fig}", file=sys.stderr if not args.output else sys.stdout)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    handlers = {"detect": _detect, "train": _train, "eval": _eval}
    try:
        return handlers[args.command](args)
    except ConfigError as exc:
        print(f"{parser.prog}: configuration error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ReqAnaphoraError, OSError, ValueError) as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
