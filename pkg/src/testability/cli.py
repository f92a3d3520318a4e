"""Command-line front end: reproducible extraction/analysis runs.

Commands: extract, label, correlate, train, evaluate, rank, predict,
pipeline. Configuration comes from an optional key=value file plus
command-line overrides (overrides win); every analysis run writes a
manifest whose hash is embedded in each emitted report, and all output is
written atomically.

Exit codes: 0 success, 2 input error, 3 labeling degeneracy, 4 training
failure, 5 prediction schema mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from dataclasses import dataclass, field, fields, replace

import numpy as np

from . import classfile, dataset, javasrc, reports
from .correlation import DegenerateInput, correlation_table
from .dataset import (
    DegenerateSplit,
    IngestError,
    MissingColumn,
    TooFewValues,
    ingest_csv,
    label_by_quartiles,
    to_feature_matrix,
)
from .learn import (
    EvalReport,
    FoldTrainingError,
    ForestParams,
    MLPParams,
    ModelKind,
    NonFiniteLoss,
    SingleClassInput,
    TooFewPerClass,
    TreeParams,
    dump_model,
    evaluate,
    load_model,
    train_decision_tree,
    train_mlp,
    train_random_forest,
)
from .learn.serialize import ModelFormatError
from .metrics import INDEPENDENT_VARIABLES, MetricId, metric_for_column
from .ranking import RankingAlgorithm, rank_features
from .records import EffectivenessLabel, LabeledDataset

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_LABELING = 3
EXIT_TRAINING = 4
EXIT_PREDICT = 5


class CliError(Exception):
    def __init__(self, exit_code: int, message: str):
        self.exit_code = exit_code
        super().__init__(message)


@dataclass
class RunConfig:
    src: list[str] = field(default_factory=list)
    classes: list[str] = field(default_factory=list)
    dataset: str | None = None
    pairs: str | None = None
    out: str = "."
    seed: int | None = None
    q1: float | None = None
    q3: float | None = None
    features: list[str] = field(default_factory=list)  # canonical column names
    classifier: str = "all"
    k: int = 10
    threshold: float = 0.5
    population: str = "raw"
    # classifier hyperparameters
    min_leaf: int = 2
    max_depth: int | None = None
    trees: int = 100
    features_per_split: int | None = None
    forest_min_leaf: int = 1
    hidden: int | None = None
    learning_rate: float = 0.3
    momentum: float = 0.2
    epochs: int = 500

    def feature_ids(self) -> tuple[MetricId, ...]:
        if not self.features:
            return INDEPENDENT_VARIABLES
        out = []
        for name in self.features:
            metric = metric_for_column(name)
            if metric is None:
                raise CliError(EXIT_INPUT, f"unknown metric column {name!r}")
            out.append(metric)
        return tuple(out)

    def thresholds_override(self) -> tuple[float, float] | None:
        if self.q1 is None and self.q3 is None:
            return None
        if self.q1 is None or self.q3 is None:
            raise CliError(EXIT_INPUT, "q1 and q3 must be overridden together")
        return (self.q1, self.q3)

    def tree_params(self) -> TreeParams:
        return TreeParams(min_leaf=self.min_leaf, max_depth=self.max_depth)

    def forest_params(self) -> ForestParams:
        return ForestParams(
            trees=self.trees,
            features_per_split=self.features_per_split,
            min_leaf=self.forest_min_leaf,
        )

    def mlp_params(self) -> MLPParams:
        return MLPParams(
            hidden=self.hidden,
            learning_rate=self.learning_rate,
            momentum=self.momentum,
            epochs=self.epochs,
        )


_LIST_KEYS = {"src", "classes", "features"}
_INT_KEYS = {"seed", "k", "min_leaf", "trees", "forest_min_leaf", "epochs"}
_OPT_INT_KEYS = {"max_depth", "features_per_split", "hidden"}
_FLOAT_KEYS = {"threshold", "learning_rate", "momentum"}
_OPT_FLOAT_KEYS = {"q1", "q3"}


def load_config_file(path: str) -> dict[str, object]:
    """Line-oriented key=value file; '#' starts a comment."""
    values: dict[str, object] = {}
    names = {f.name for f in fields(RunConfig)}
    with open(path, "r", encoding="utf-8") as handle:
        for line_no, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise CliError(EXIT_INPUT, f"{path}:{line_no}: expected key=value")
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if key not in names:
                raise CliError(EXIT_INPUT, f"{path}:{line_no}: unknown key {key!r}")
            values[key] = _coerce(key, value)
    return values


def _coerce(key: str, value: str) -> object:
    if key in _LIST_KEYS:
        return [v.strip() for v in value.split(",") if v.strip()]
    if key in _INT_KEYS:
        return int(value)
    if key in _OPT_INT_KEYS:
        return None if value.lower() in ("none", "auto") else int(value)
    if key in _FLOAT_KEYS:
        return float(value)
    if key in _OPT_FLOAT_KEYS:
        return None if value.lower() == "none" else float(value)
    return value


def build_config(args: argparse.Namespace) -> RunConfig:
    values: dict[str, object] = {}
    if getattr(args, "config", None):
        values.update(load_config_file(args.config))
    for f in fields(RunConfig):
        arg = getattr(args, f.name, None)
        if arg is not None:
            values[f.name] = _coerce(f.name, arg) if isinstance(arg, str) and (
                f.name in _LIST_KEYS | _INT_KEYS | _OPT_INT_KEYS | _FLOAT_KEYS | _OPT_FLOAT_KEYS
            ) else arg
    return RunConfig(**values)


# ---- shared pipeline stages ------------------------------------------------


def _ingest(config: RunConfig, require_target: bool = True):
    if not config.dataset:
        raise CliError(EXIT_INPUT, "no dataset CSV given (--dataset)")
    require = list(config.feature_ids())
    if require_target:
        require.append(MetricId.M)
    try:
        with open(config.dataset, "r", encoding="utf-8", newline="") as handle:
            return ingest_csv(handle, require=require, provenance=config.dataset)
    except OSError as exc:
        raise CliError(EXIT_INPUT, f"cannot read dataset: {exc}")
    except IngestError as exc:
        raise CliError(EXIT_INPUT, f"bad dataset: {exc}")


def _label(config: RunConfig, raw) -> LabeledDataset:
    try:
        return label_by_quartiles(raw, thresholds=config.thresholds_override())
    except DegenerateSplit as exc:
        raise CliError(EXIT_LABELING, f"labeling degenerate: {exc}")
    except TooFewValues as exc:
        raise CliError(EXIT_INPUT, f"cannot label: {exc}")


def _require_seed(config: RunConfig) -> int:
    if config.seed is None:
        raise CliError(EXIT_INPUT, "a --seed is mandatory for train/evaluate runs")
    return config.seed


def _classifier_kinds(config: RunConfig) -> list[ModelKind]:
    if config.classifier == "all":
        return [ModelKind.DECISION_TREE, ModelKind.RANDOM_FOREST,
                ModelKind.MULTILAYER_PERCEPTRON]
    by_name = {
        "tree": ModelKind.DECISION_TREE,
        "decisiontree": ModelKind.DECISION_TREE,
        "forest": ModelKind.RANDOM_FOREST,
        "randomforest": ModelKind.RANDOM_FOREST,
        "mlp": ModelKind.MULTILAYER_PERCEPTRON,
        "multilayerperceptron": ModelKind.MULTILAYER_PERCEPTRON,
    }
    kind = by_name.get(config.classifier.lower())
    if kind is None:
        raise CliError(EXIT_INPUT, f"unknown classifier {config.classifier!r}")
    return [kind]


def _params_for(config: RunConfig, kind: ModelKind):
    if kind is ModelKind.DECISION_TREE:
        return config.tree_params()
    if kind is ModelKind.RANDOM_FOREST:
        return config.forest_params()
    return config.mlp_params()


def _params_echo(config: RunConfig) -> list[tuple[str, str]]:
    tp, fp, mp = config.tree_params(), config.forest_params(), config.mlp_params()
    return [
        ("tree_params", f"min_leaf={tp.min_leaf} max_depth={tp.max_depth}"),
        ("forest_params",
         f"trees={fp.trees} features_per_split={fp.features_per_split} "
         f"min_leaf={fp.min_leaf}"),
        ("mlp_params",
         f"hidden={mp.hidden} learning_rate={mp.learning_rate!r} "
         f"momentum={mp.momentum!r} epochs={mp.epochs}"),
    ]


# ---- commands -----------------------------------------------------------------


def cmd_extract(config: RunConfig) -> int:
    if not config.src:
        raise CliError(EXIT_INPUT, "no source directories given (--src)")
    files = javasrc.find_java_files(config.src)
    if not files:
        raise CliError(EXIT_INPUT, "no classes found")
    trees = []
    failures = []
    for path in files:
        try:
            with open(path, "r", encoding="utf-8") as handle:
                trees.append(javasrc.parse_source(handle.read(), path))
        except (OSError, javasrc.ParseError) as exc:
            failures.append(str(exc))
    if failures:
        for failure in failures:
            print(f"error: {failure}", file=sys.stderr)
        raise CliError(EXIT_INPUT, f"{len(failures)} source file(s) failed to parse")
    try:
        index = javasrc.build_corpus_index(trees)
    except (javasrc.DuplicateClass, javasrc.CyclicHierarchy) as exc:
        raise CliError(EXIT_INPUT, str(exc))
    if not index.class_names():
        raise CliError(EXIT_INPUT, "no classes found")
    explicit = None
    if config.pairs:
        try:
            explicit = javasrc.read_pairing_file(config.pairs)
        except (OSError, javasrc.PairingError) as exc:
            raise CliError(EXIT_INPUT, f"bad pairing file: {exc}")
    try:
        pairs = javasrc.pair_classes(index, explicit)
    except javasrc.PairingError as exc:
        raise CliError(EXIT_INPUT, str(exc))
    if not pairs:
        raise CliError(EXIT_INPUT, "no paired (class, test class) combinations found")
    nbi = None
    if config.classes:
        try:
            nbi = classfile.nbi_for_paths(config.classes)
        except (OSError, classfile.MalformedClassFile,
                classfile.UnsupportedMajorVersion) as exc:
            raise CliError(EXIT_INPUT, f"bad class files: {exc}")
    corpus = javasrc.ParsedCorpus(trees=trees, index=index)
    records = javasrc.extract_records(corpus, pairs, nbi_by_class=nbi)
    columns = [m for m in INDEPENDENT_VARIABLES
               if m is not MetricId.NBI or nbi is not None]
    buffer = io.StringIO()
    dataset.write_records_csv(buffer, records, columns)
    out_path = config.out if config.out.endswith(".csv") else os.path.join(
        config.out, "metrics.csv")
    reports.write_text_atomic(out_path, buffer.getvalue())
    print(f"extracted {len(records)} paired classes -> {out_path}")
    return EXIT_OK


def _manifest_common(config: RunConfig, command: str, raw, labeled) -> list[tuple[str, str]]:
    eff = sum(1 for _, l in labeled.records if l is EffectivenessLabel.EFFECTIVE)
    non = len(labeled) - eff
    return [
        ("command", command),
        ("dataset", config.dataset or ""),
        ("seed", str(config.seed)),
        ("records_ingested", str(len(raw))),
        ("q1_threshold", repr(labeled.q1_threshold)),
        ("q3_threshold", repr(labeled.q3_threshold)),
        ("records_labeled", str(len(labeled))),
        ("records_discarded", str(labeled.discarded_count)),
        ("effective", str(eff)),
        ("non_effective", str(non)),
        ("features", ",".join(m.column for m in config.feature_ids())),
        ("correlation_population", config.population),
        ("correlation_threshold", repr(config.threshold)),
        ("k", str(config.k)),
    ] + _params_echo(config)


def _write_manifest(config: RunConfig, entries: list[tuple[str, str]]) -> str:
    text = reports.manifest_text(entries)
    run_hash = reports.manifest_hash(text)
    reports.write_text_atomic(
        os.path.join(config.out, "manifest.txt"),
        text + f"manifest_hash: {run_hash}\n",
    )
    return run_hash


def cmd_label(config: RunConfig) -> int:
    raw = _ingest(config)
    labeled = _label(config, raw)
    columns = [m for m in INDEPENDENT_VARIABLES
               if all(m in r.metrics for r, _ in labeled.records)] + [MetricId.M]
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["class_id", "test_id"] + [m.column for m in columns] + ["label"])
    for record, label in labeled.records:
        writer.writerow(
            dataset.record_to_row(record, columns)
            + ["Effective" if label is EffectivenessLabel.EFFECTIVE else "NonEffective"]
        )
    out_path = os.path.join(config.out, "labeled.csv")
    reports.write_text_atomic(out_path, buffer.getvalue())
    print(
        f"ingested {len(raw)}, labeled {len(labeled)} "
        f"(thresholds {labeled.q1_threshold:g}/{labeled.q3_threshold:g}, "
        f"discarded {labeled.discarded_count}) -> {out_path}"
    )
    return EXIT_OK


def _correlation_population(config: RunConfig, raw, labeled):
    return labeled if config.population == "labeled" else raw


def cmd_correlate(config: RunConfig) -> int:
    raw = _ingest(config)
    labeled = _label(config, raw)
    try:
        report = correlation_table(
            _correlation_population(config, raw, labeled),
            threshold=config.threshold,
            features=config.feature_ids(),
        )
    except DegenerateInput as exc:
        raise CliError(EXIT_INPUT, str(exc))
    run_hash = _write_manifest(config, _manifest_common(config, "correlate", raw, labeled))
    reports.write_text_atomic(
        os.path.join(config.out, "correlations.csv"),
        reports.correlation_csv(report, run_hash),
    )
    reports.write_text_atomic(
        os.path.join(config.out, "correlations.md"),
        reports.correlation_md(report, run_hash),
    )
    print(f"correlations over {report.population} {report.population_kind} records; "
          f"{len(report.entries)} metrics above |rho| >= {config.threshold:g}")
    return EXIT_OK


def cmd_train(config: RunConfig) -> int:
    seed = _require_seed(config)
    kinds = _classifier_kinds(config)
    if len(kinds) != 1:
        raise CliError(EXIT_INPUT, "train needs exactly one --classifier")
    raw = _ingest(config)
    labeled = _label(config, raw)
    matrix = to_feature_matrix(labeled, config.feature_ids())
    kind = kinds[0]
    try:
        if kind is ModelKind.DECISION_TREE:
            model = train_decision_tree(matrix, config.tree_params(), seed=seed)
        elif kind is ModelKind.RANDOM_FOREST:
            model = train_random_forest(matrix, config.forest_params(), seed=seed)
        else:
            model = train_mlp(matrix, config.mlp_params(), seed=seed)
    except (SingleClassInput, NonFiniteLoss) as exc:
        raise CliError(EXIT_TRAINING, f"training failed: {exc}")
    out_path = config.out if config.out.endswith(".txt") else os.path.join(
        config.out, "model.txt")
    reports.write_text_atomic(out_path, dump_model(model))
    print(f"trained {kind.value} on {matrix.n_rows} records -> {out_path}")
    return EXIT_OK


def _evaluate_all(config: RunConfig, matrix, kinds) -> list[EvalReport]:
    seed = _require_seed(config)
    out = []
    for kind in kinds:
        try:
            out.append(
                evaluate(matrix, kind, _params_for(config, kind), k=config.k, seed=seed)
            )
        except (FoldTrainingError, SingleClassInput, TooFewPerClass, NonFiniteLoss) as exc:
            raise CliError(EXIT_TRAINING, f"{kind.value}: {exc}")
    return out


def cmd_evaluate(config: RunConfig) -> int:
    raw = _ingest(config)
    labeled = _label(config, raw)
    matrix = to_feature_matrix(labeled, config.feature_ids())
    results = _evaluate_all(config, matrix, _classifier_kinds(config))
    run_hash = _write_manifest(config, _manifest_common(config, "evaluate", raw, labeled))
    reports.write_text_atomic(
        os.path.join(config.out, "classification.csv"),
        reports.classification_csv(results, run_hash),
    )
    reports.write_text_atomic(
        os.path.join(config.out, "classification.md"),
        reports.classification_md(results, run_hash),
    )
    for r in results:
        print(f"{r.classifier.value}: accuracy={r.accuracy:.3f} auc={r.auc:.3f}")
    return EXIT_OK


_ALL_RANKERS = (
    RankingAlgorithm.GAIN_RATIO,
    RankingAlgorithm.INFO_GAIN,
    RankingAlgorithm.SYMMETRIC_UNCERTAINTY,
    RankingAlgorithm.ONE_R,
)


def cmd_rank(config: RunConfig) -> int:
    raw = _ingest(config)
    labeled = _label(config, raw)
    matrix = to_feature_matrix(labeled, config.feature_ids())
    tables = [rank_features(matrix, algorithm) for algorithm in _ALL_RANKERS]
    run_hash = _write_manifest(config, _manifest_common(config, "rank", raw, labeled))
    reports.write_text_atomic(
        os.path.join(config.out, "ranking.csv"), reports.ranking_csv(tables, run_hash)
    )
    reports.write_text_atomic(
        os.path.join(config.out, "ranking.md"), reports.ranking_md(tables, run_hash)
    )
    top = ", ".join(
        f"{t.algorithm.value}: {t.entries[0][0].column}" for t in tables if t.entries
    )
    print(f"rank-1 features -> {top}")
    return EXIT_OK


def cmd_predict(config: RunConfig, model_path: str) -> int:
    try:
        with open(model_path, "r", encoding="utf-8") as handle:
            model = load_model(handle.read())
    except OSError as exc:
        raise CliError(EXIT_INPUT, f"cannot read model: {exc}")
    except ModelFormatError as exc:
        raise CliError(EXIT_INPUT, f"bad model file: {exc}")
    if not config.dataset:
        raise CliError(EXIT_INPUT, "no metrics CSV given (--dataset)")
    try:
        with open(config.dataset, "r", encoding="utf-8", newline="") as handle:
            data = ingest_csv(handle, require=model.feature_ids)
    except MissingColumn as exc:
        raise CliError(
            EXIT_PREDICT, f"metrics CSV lacks model features: {', '.join(exc.columns)}"
        )
    except OSError as exc:
        raise CliError(EXIT_INPUT, f"cannot read metrics CSV: {exc}")
    except IngestError as exc:
        raise CliError(EXIT_INPUT, f"bad metrics CSV: {exc}")
    rows = np.array(
        [[r[m] for m in model.feature_ids] for r in data.records], dtype=np.float64
    )
    scores = model.predict_scores(rows) if len(data) else np.empty(0)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["class_id", "score", "label"])
    counts = {"Effective": 0, "NonEffective": 0}
    for record, score in zip(data.records, scores):
        label = "Effective" if score >= 0.5 else "NonEffective"
        counts[label] += 1
        writer.writerow([record.class_id, repr(float(score)), label])
    out_path = config.out if config.out.endswith(".csv") else os.path.join(
        config.out, "predictions.csv")
    reports.write_text_atomic(out_path, buffer.getvalue())
    print(
        f"predicted {len(data)} rows: {counts['Effective']} Effective, "
        f"{counts['NonEffective']} NonEffective -> {out_path}"
    )
    return EXIT_OK


def cmd_pipeline(config: RunConfig) -> int:
    raw = _ingest(config)
    labeled = _label(config, raw)
    matrix = to_feature_matrix(labeled, config.feature_ids())
    try:
        correlation = correlation_table(
            _correlation_population(config, raw, labeled),
            threshold=config.threshold,
            features=config.feature_ids(),
        )
    except DegenerateInput as exc:
        raise CliError(EXIT_INPUT, str(exc))
    results = _evaluate_all(config, matrix, _classifier_kinds(config))
    tables = [rank_features(matrix, algorithm) for algorithm in _ALL_RANKERS]
    run_hash = _write_manifest(config, _manifest_common(config, "pipeline", raw, labeled))
    out = config.out
    reports.write_text_atomic(
        os.path.join(out, "correlations.csv"), reports.correlation_csv(correlation, run_hash))
    reports.write_text_atomic(
        os.path.join(out, "correlations.md"), reports.correlation_md(correlation, run_hash))
    reports.write_text_atomic(
        os.path.join(out, "classification.csv"), reports.classification_csv(results, run_hash))
    reports.write_text_atomic(
        os.path.join(out, "classification.md"), reports.classification_md(results, run_hash))
    reports.write_text_atomic(
        os.path.join(out, "ranking.csv"), reports.ranking_csv(tables, run_hash))
    reports.write_text_atomic(
        os.path.join(out, "ranking.md"), reports.ranking_md(tables, run_hash))
    print(
        f"pipeline: {len(raw)} ingested, {len(labeled)} labeled "
        f"(thresholds {labeled.q1_threshold:g}/{labeled.q3_threshold:g}); "
        f"reports in {out} (manifest {run_hash[:12]})"
    )
    return EXIT_OK


# ---- argument parsing ------------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="key=value configuration file")
    parser.add_argument("--seed", help="master RNG seed")
    parser.add_argument("--dataset", help="metrics dataset CSV")
    parser.add_argument("--src", help="comma-separated Java source roots")
    parser.add_argument("--classes", help="comma-separated class file / jar paths")
    parser.add_argument("--pairs", help="explicit production,test pairing file")
    parser.add_argument("--out", help="output directory (or file for single outputs)")
    parser.add_argument("--features", help="comma-separated feature columns")
    parser.add_argument("--classifier", help="tree | forest | mlp | all")
    parser.add_argument("--k", help="cross-validation folds")
    parser.add_argument("--threshold", help="correlation reporting threshold")
    parser.add_argument("--population", choices=["raw", "labeled"],
                        help="correlation population")
    parser.add_argument("--q1", help="override lower mutation-score threshold")
    parser.add_argument("--q3", help="override upper mutation-score threshold")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="testability",
        description="Static OO metrics and mutation-score test-effectiveness analysis",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("extract", "parse Java sources and emit the metrics CSV"),
        ("label", "quartile-label a dataset by mutation score"),
        ("correlate", "Spearman correlation of every metric with mutation score"),
        ("train", "train one classifier on the labeled dataset"),
        ("evaluate", "k-fold cross-validated evaluation of classifiers"),
        ("rank", "rank features by the four ranking algorithms"),
        ("predict", "predict effectiveness for a metrics CSV with a saved model"),
        ("pipeline", "full run: label, correlate, evaluate, rank"),
    ]:
        p = sub.add_parser(name, help=help_text)
        if name == "predict":
            p.add_argument("model", help="model file from `train`")
        _add_common(p)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        config = build_config(args)
        handler = {
            "extract": cmd_extract,
            "label": cmd_label,
            "correlate": cmd_correlate,
            "train": cmd_train,
            "evaluate": cmd_evaluate,
            "rank": cmd_rank,
            "pipeline": cmd_pipeline,
        }
        if args.command == "predict":
            return cmd_predict(config, args.model)
        return handler[args.command](config)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
