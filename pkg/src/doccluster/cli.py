"""Command-line entry point: ``doccluster {generate,cluster,compare}``.

Exit codes: 0 success, 1 runtime failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import __version__
from .corpus_io import DEFAULT_EXTENSIONS, load_corpus
from .errors import DocClusterError
from .kmeans import KMeansConfig, run_kmeans, write_iteration_log
from .preprocess import load_stem_rules, load_stopwords, preprocess_corpus
from .report import RunReport, Stopwatch, render_comparison, timed, write_manifests, write_report_json
from .similarity import MeasureKind
from .synth import SynthSpec, generate, purity, read_labels
from .vectorize import PAPER_LITERAL, SMOOTH_TF, build_matrix

log = logging.getLogger("doccluster")


def _positive(value: str) -> int:
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {value!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {n}")
    return n


def _nonnegative(value: str) -> int:
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {value!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {n}")
    return n


def _fraction(value: str) -> float:
    try:
        x = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {value!r}") from None
    if not 0.0 <= x <= 1.0:
        raise argparse.ArgumentTypeError(f"must lie in [0, 1], got {x}")
    return x


def _add_pipeline_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, type=Path, help="corpus root directory")
    p.add_argument("--out", required=True, type=Path, help="directory for manifests and report.json")
    p.add_argument("--k", required=True, type=_positive, help="number of clusters")
    p.add_argument("--seed", type=_nonnegative, default=0)
    p.add_argument("--min-df", type=_positive, default=2, help="prune terms in fewer documents (default 2)")
    p.add_argument("--tf-mode", choices=[SMOOTH_TF, PAPER_LITERAL], default=SMOOTH_TF)
    p.add_argument("--init", choices=["firstk", "plusplus"], default="plusplus")
    p.add_argument("--max-iters", type=_positive, default=100)
    p.add_argument("--n-init", type=_positive, default=None,
                   help="k-means++ restarts, best objective kept (default 10)")
    p.add_argument("--stopwords", type=Path, help="stopword file (default: builtin list)")
    p.add_argument("--stem-rules", type=Path, help="stem rule file (default: builtin rules)")
    p.add_argument("--manifest-mode", choices=["file", "folders"], default="file")
    p.add_argument("--link", action="store_true", help="symlink documents instead of copying (folders mode)")
    p.add_argument("--force", action="store_true", help="overwrite existing manifests / ClusterN folders")
    p.add_argument("--labels", type=Path, help="ground-truth labels.tsv; adds a purity row")
    p.add_argument("--ext", action="append", metavar="SUFFIX",
                   help="file suffix to ingest, repeatable (default .txt)")
    p.add_argument("--lossy", action="store_true", help="decode undecodable files with replacement characters")
    p.add_argument("--threads", type=_positive, default=1)
    p.add_argument("--dump-matrix", action="store_true", help="write matrix.tsv with every weighted vector")
    p.add_argument("--iteration-log", action="store_true", help="write iterations.tsv per measure")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="doccluster", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a seeded synthetic corpus plus labels.tsv")
    g.add_argument("--out", required=True, type=Path)
    g.add_argument("--topics", type=_positive, default=5)
    g.add_argument("--docs-per-topic", type=_positive, default=200)
    g.add_argument("--vocab-per-topic", type=_positive, default=150)
    g.add_argument("--shared-vocab", type=_nonnegative, default=100)
    g.add_argument("--doc-length", type=_positive, default=120)
    g.add_argument("--overlap", type=_fraction, default=0.0)
    g.add_argument("--seed", type=_nonnegative, default=0)
    g.add_argument("--uniform", action="store_true", help="uniform instead of Zipf term sampling")

    c = sub.add_parser("cluster", help="cluster a corpus under one similarity measure")
    _add_pipeline_args(c)
    c.add_argument("--measure", choices=["cosine", "fuzzy"], default="cosine")

    m = sub.add_parser("compare", help="cluster with both measures and compare timings")
    _add_pipeline_args(m)
    m.add_argument("--paper-timing", action="store_true",
                   help="time the whole pipeline per measure instead of the clustering phase only")
    return parser


def _validate(parser: argparse.ArgumentParser, args: argparse.Namespace) -> None:
    if args.command == "generate":
        if args.overlap > 0 and args.shared_vocab == 0:
            parser.error("--overlap > 0 needs --shared-vocab >= 1")
        return
    if args.link and args.manifest_mode != "folders":
        parser.error("--link only applies with --manifest-mode folders")
    if args.n_init is not None and args.init == "firstk":
        parser.error("--n-init only applies with --init plusplus")


def cmd_generate(args: argparse.Namespace) -> int:
    spec = SynthSpec(n_topics=args.topics, docs_per_topic=args.docs_per_topic,
                     vocab_per_topic=args.vocab_per_topic, shared_vocab=args.shared_vocab,
                     doc_length=args.doc_length, overlap=args.overlap, seed=args.seed,
                     zipf=not args.uniform)
    out = generate(spec, args.out)
    print(f"wrote {len(out.labels)} documents to {out.docs_dir} and labels to {out.labels_path}")
    return 0


def _prepare(args: argparse.Namespace, phase_ms: dict | None = None):
    stops = load_stopwords(args.stopwords)
    rules = load_stem_rules(args.stem_rules)
    exts = args.ext or DEFAULT_EXTENSIONS
    with Stopwatch() as sw:
        corpus = load_corpus(args.input, exts, lossy=args.lossy, threads=args.threads)
    if phase_ms is not None:
        phase_ms["load"] = sw.elapsed_ms
    with Stopwatch() as sw:
        streams = preprocess_corpus(corpus, stops, rules, threads=args.threads)
    if phase_ms is not None:
        phase_ms["preprocess"] = sw.elapsed_ms
    with Stopwatch() as sw:
        matrix = build_matrix(streams, args.min_df, args.tf_mode, threads=args.threads)
    if phase_ms is not None:
        phase_ms["vectorize"] = sw.elapsed_ms
    return corpus, matrix


def _kmeans_config(args: argparse.Namespace, measure: MeasureKind) -> KMeansConfig:
    return KMeansConfig(k=args.k, measure=measure, seed=args.seed, max_iterations=args.max_iters,
                        init=args.init, threads=args.threads,
                        n_init=args.n_init if args.n_init is not None else 10)


def _run(args: argparse.Namespace, measures: list[MeasureKind], paper_timing: bool = False) -> int:
    labels = read_labels(args.labels) if args.labels else None
    phase_ms: dict[str, int] = {}
    corpus, matrix = _prepare(args, phase_ms)
    if matrix.empty_docs:
        log.warning("%d document(s) have no weighted terms and are not clustered", len(matrix.empty_docs))

    runs = []
    for measure in measures:
        config = _kmeans_config(args, measure)
        with timed(measure) as run:
            if paper_timing:
                corpus, matrix = _prepare(args)
            run.model = run_kmeans(matrix, config)
        if labels is not None:
            run.purity = purity(run.model, labels)
        runs.append(run)

    args.out.mkdir(parents=True, exist_ok=True)
    for run in runs:
        write_manifests(run.model, corpus, args.out / run.measure.value, args.manifest_mode,
                        link=args.link, force=args.force)
        if args.iteration_log:
            with open(args.out / run.measure.value / "iterations.tsv", "w", encoding="utf-8") as fh:
                write_iteration_log(run.model, fh)
    if args.dump_matrix:
        with open(args.out / "matrix.tsv", "w", encoding="utf-8") as fh:
            matrix.dump(fh)

    report = RunReport(
        corpus_root=str(args.input),
        n_docs=len(corpus),
        k=args.k,
        runs=runs,
        empty_docs=list(matrix.empty_docs),
        vocab_size=len(matrix.vocabulary),
        settings={"seed": args.seed, "min_df": args.min_df, "tf_mode": args.tf_mode, "init": args.init,
                  "max_iterations": args.max_iters, "n_init": _kmeans_config(args, measures[0]).n_init,
                  "paper_timing": paper_timing,
                  "stopwords": str(args.stopwords) if args.stopwords else "builtin",
                  "stem_rules": str(args.stem_rules) if args.stem_rules else "builtin"},
        phase_ms=phase_ms,
        threads=args.threads,
        load_warnings=list(corpus.load_warnings),
    )
    write_report_json(report, args.out / "report.json")
    sys.stdout.write(render_comparison(report))
    return 0


def cmd_cluster(args: argparse.Namespace) -> int:
    return _run(args, [MeasureKind.parse(args.measure)])


def cmd_compare(args: argparse.Namespace) -> int:
    return _run(args, [MeasureKind.COSINE, MeasureKind.FUZZY], paper_timing=args.paper_timing)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(parser, args)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="doccluster: %(levelname)s: %(message)s", stream=sys.stderr)
    handler = {"generate": cmd_generate, "cluster": cmd_cluster, "compare": cmd_compare}[args.command]
    try:
        return handler(args)
    except DocClusterError as exc:
        print(f"doccluster: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"doccluster: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
