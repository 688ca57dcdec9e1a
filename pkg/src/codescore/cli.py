"""Command-line surface wiring the toolkit into one pipeline.

Subcommands: ``score`` (corpus scores with confidence intervals),
``compare`` (paired bootstrap verdict for two models), ``aggregate`` (raw
grades to ground-truth grades), ``synth`` (grade-guided synthetic model
grid), ``agree`` (metric-vs-human agreement tables), ``serve`` (grading
survey service).  Every randomized subcommand takes a seed, defaults it to
0, and prints it in the output header: same argv, same files, same seed
means byte-identical output.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from codescore import agreement as agreement_mod
from codescore import annotation, corpus as corpus_mod, grades as grades_mod
from codescore import stats, synthetic
from codescore.corpus import DataError
from codescore.metrics import (
    CONFIG_ENV_VAR,
    METRIC_NAMES,
    REPORT_METRICS,
    ConfigError,
    default_config,
    get_scorer,
    load_config,
)


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DataError, ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="codescore",
        description="Score code-generation outputs and analyze metric reliability.",
    )
    parser.add_argument(
        "--config",
        default=os.environ.get(CONFIG_ENV_VAR),
        help=f"metric config file (JSON); defaults to ${CONFIG_ENV_VAR}",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    score = sub.add_parser("score", help="corpus score and confidence interval")
    score.add_argument("--refs", required=True)
    score.add_argument("--hyp", required=True)
    score.add_argument("--metric", action="append", choices=METRIC_NAMES)
    score.add_argument("--grades", help="aggregated grades (for the human metric)")
    score.add_argument("--samples", type=int, default=1000)
    score.add_argument("--seed", type=int, default=0)
    score.add_argument("--jobs", type=int, default=os.cpu_count())
    score.set_defaults(func=_cmd_score)

    compare = sub.add_parser("compare", help="paired bootstrap verdict for two models")
    compare.add_argument("--refs", required=True)
    compare.add_argument("--hyp-a", required=True)
    compare.add_argument("--hyp-b", required=True)
    compare.add_argument("--metric", default="bleu", choices=METRIC_NAMES)
    compare.add_argument("--grades")
    compare.add_argument("--samples", type=int, default=1000)
    compare.add_argument("--seed", type=int, default=0)
    compare.add_argument("--threshold", type=float, default=0.95)
    compare.add_argument("--jobs", type=int, default=os.cpu_count())
    compare.set_defaults(func=_cmd_compare)

    aggregate = sub.add_parser("aggregate", help="aggregate raw grades")
    aggregate.add_argument("--refs", required=True)
    aggregate.add_argument("--grades", required=True, help="raw grades file")
    aggregate.add_argument(
        "--models", nargs="+", required=True, help="candidate files (known model ids)"
    )
    aggregate.add_argument(
        "--method",
        default="reliability_weighted",
        choices=grades_mod.METHODS,
    )
    aggregate.add_argument("--out", required=True)
    aggregate.set_defaults(func=_cmd_aggregate)

    synth = sub.add_parser("synth", help="build and write the synthetic model grid")
    synth.add_argument("--refs", required=True)
    synth.add_argument("--models", nargs="+", required=True)
    synth.add_argument("--grades", required=True, help="aggregated grades file")
    synth.add_argument(
        "--proportions",
        default=",".join(str(p) for p in synthetic.DEFAULT_PROPORTIONS),
    )
    synth.add_argument("--out-dir", required=True)
    synth.add_argument(
        "--grades-out",
        help="write grades extended to the synthetic models here "
        "(default: OUT_DIR.grades.jsonl, beside the grid directory)",
    )
    synth.set_defaults(func=_cmd_synth)

    agree = sub.add_parser("agree", help="metric-vs-human agreement tables")
    agree.add_argument("--refs", required=True)
    agree.add_argument("--models-dir", required=True)
    agree.add_argument("--grades", required=True, help="aggregated grades file")
    agree.add_argument("--metric", action="append", choices=METRIC_NAMES)
    agree.add_argument("--bins", default=None, help="comma-separated edges, e.g. 0,2,5,10,100")
    agree.add_argument("--samples", type=int, default=1000)
    agree.add_argument("--seed", type=int, default=0)
    agree.add_argument("--threshold", type=float, default=0.95)
    agree.add_argument("--view", default="mismatch", choices=agreement_mod.VIEWS)
    agree.add_argument("--format", default="plain", choices=agreement_mod.FORMATS)
    agree.add_argument("--average-bins", action="store_true",
                       help="average per-bin mismatch rates instead of pooling counts")
    agree.add_argument("--out")
    agree.add_argument("--jobs", type=int, default=os.cpu_count())
    agree.set_defaults(func=_cmd_agree)

    serve = sub.add_parser("serve", help="run the grading survey service")
    serve.add_argument("--port", type=int, default=8008)
    serve.add_argument("--corpus", required=True)
    serve.add_argument("--models-dir", required=True)
    serve.add_argument("--store", required=True)
    serve.add_argument("--seed", type=int, default=0)
    serve.add_argument("--ui-dir", help="static files for the grading front-end")
    serve.set_defaults(func=_cmd_serve)
    return parser


def _load_metric_config(args):
    return load_config(args.config) if args.config else default_config()


def _load_models_dir(directory: str, corpus) -> list:
    paths = sorted(Path(directory).glob("*.jsonl"))
    if not paths:
        raise DataError(f"no candidate files (*.jsonl) in {directory}")
    return [corpus_mod.load_candidates(path, corpus) for path in paths]


def _scorer_for(name: str, config, grades_path):
    grades = grades_mod.load_aggregated(grades_path) if grades_path else None
    return get_scorer(name, config, grades)


def _cmd_score(args) -> int:
    config = _load_metric_config(args)
    corpus = corpus_mod.load_corpus(args.refs)
    candidates = corpus_mod.load_candidates(args.hyp, corpus)
    metric_names = args.metric or list(REPORT_METRICS)
    grades = grades_mod.load_aggregated(args.grades) if args.grades else None
    print(f"# codescore score seed={args.seed} samples={args.samples} model={candidates.model_id}")
    for name in metric_names:
        scorer = get_scorer(name, config, grades)
        ci = stats.confidence_interval(corpus, candidates, scorer, args.samples, args.seed)
        print(f"{name}: {ci.point:.2f} +{ci.plus:.2f} -{ci.minus:.2f}")
    return 0


def _cmd_compare(args) -> int:
    config = _load_metric_config(args)
    corpus = corpus_mod.load_corpus(args.refs)
    cand_a = corpus_mod.load_candidates(args.hyp_a, corpus)
    cand_b = corpus_mod.load_candidates(args.hyp_b, corpus)
    grades = grades_mod.load_aggregated(args.grades) if args.grades else None
    scorer = get_scorer(args.metric, config, grades)
    result = stats.paired_bootstrap(corpus, cand_a, cand_b, scorer, args.samples, args.seed)
    decision = stats.verdict(result, args.threshold)
    print(
        f"# codescore compare metric={args.metric} seed={args.seed} "
        f"samples={args.samples} threshold={args.threshold}"
    )
    print(f"a={cand_a.model_id} point_a={result.point_a:.4f}")
    print(f"b={cand_b.model_id} point_b={result.point_b:.4f}")
    print(
        f"win_a={result.win_rate_a:.4f} win_b={result.win_rate_b:.4f} "
        f"tie={result.tie_rate:.4f}"
    )
    print(f"verdict={decision.verdict.value}")
    return 0


def _cmd_aggregate(args) -> int:
    corpus = corpus_mod.load_corpus(args.refs)
    models = [corpus_mod.load_candidates(path, corpus) for path in args.models]
    records = corpus_mod.load_grades(
        args.grades, corpus, [m.model_id for m in models]
    )
    aggregated = grades_mod.aggregate_grades(records, method=args.method)
    grades_mod.write_aggregated(aggregated, args.out)
    print(f"aggregated {len(aggregated.grades)} snippet grades -> {args.out}")
    return 0


def _cmd_synth(args) -> int:
    corpus = corpus_mod.load_corpus(args.refs)
    models = [corpus_mod.load_candidates(path, corpus) for path in args.models]
    aggregated = grades_mod.load_aggregated(args.grades)
    proportions = tuple(float(p) for p in args.proportions.split(","))
    grid = synthetic.build_grid(models, aggregated, proportions)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    original_ids = {m.model_id for m in models}
    written = 0
    for model in grid:
        if model.model_id in original_ids:
            continue
        corpus_mod.write_candidates(model, out_dir / f"{model.model_id}.jsonl")
        written += 1
    extended = synthetic.extend_grades(grid, aggregated)
    # sibling of the grid directory so the grid stays pure candidate files
    grades_out = args.grades_out or out_dir.parent / f"{out_dir.name}.grades.jsonl"
    grades_mod.write_aggregated(extended, grades_out)
    print(
        f"grid of {len(grid)} models ({written} synthetic) -> {out_dir}; "
        f"extended grades -> {grades_out}"
    )
    return 0


def _cmd_agree(args) -> int:
    config = _load_metric_config(args)
    corpus = corpus_mod.load_corpus(args.refs)
    models = _load_models_dir(args.models_dir, corpus)
    aggregated = grades_mod.load_aggregated(args.grades)
    metric_names = args.metric or list(REPORT_METRICS)
    scorers = {name: get_scorer(name, config, aggregated) for name in metric_names}
    bins = (
        agreement_mod.BinSpec(tuple(float(e) for e in args.bins.split(",")))
        if args.bins
        else agreement_mod.BinSpec()
    )
    tables = agreement_mod.run_agreement(
        models,
        corpus,
        aggregated,
        scorers,
        bins=bins,
        n=args.samples,
        seed=args.seed,
        threshold=args.threshold,
        jobs=args.jobs,
    )
    header = (
        f"# codescore agree seed={args.seed} samples={args.samples} "
        f"threshold={args.threshold} models={len(models)} view={args.view}\n"
    )
    report = header + agreement_mod.render_report(
        tables, fmt=args.format, view=args.view, average_bins=args.average_bins
    )
    if args.out:
        Path(args.out).write_text(report, encoding="utf-8")
        print(f"wrote {args.out}")
    else:
        print(report, end="")
    return 0


def _cmd_serve(args) -> int:
    corpus = corpus_mod.load_corpus(args.corpus)
    models = _load_models_dir(args.models_dir, corpus)
    store = annotation.GradeStore(args.store)
    service = annotation.AnnotationService(corpus, models, store, seed=args.seed)
    ui_dir = Path(args.ui_dir) if args.ui_dir else None
    server = annotation.serve(service, args.port, ui_dir)
    print(
        f"serving {len(service.pool)} items on http://127.0.0.1:{args.port} "
        f"(store: {args.store})"
    )
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
