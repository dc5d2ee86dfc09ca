"""Command-line surface tying the pipeline together.

Exit codes: 0 success, 2 user/input error, 3 internal invariant violation.
"""

from __future__ import annotations

import functools
import os
import sys

import click

from . import __version__
from .cohort import default_spec, full_support_spec, generate_cohort, load_spec
from .csv_io import (
    ACTIVITY_COLUMNS,
    FEATURE_COLUMNS,
    LABEL_COLUMN,
    parse_activity,
    parse_response,
    read_rows,
    read_survey_csv,
    write_rows,
    write_survey_csv,
)
from .encoding import encode, infer_schema
from .errors import ActivriskError, UnknownCategory
from .evaluation import EvalReport, cross_validate
from .model_io import load_model, save_model
from .network import TrainingConfig, predict, train
from .risk import classify_activity
from .survey import RiskLabel


def pipeline_command(fn):
    """Map expected failures to exit 2 and anything else to exit 3."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (ActivriskError, ValueError, OSError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)
        except Exception as exc:
            click.echo(f"internal error: {exc!r}", err=True)
            sys.exit(3)

    return wrapper


def training_options(fn):
    options = [
        click.option("--epochs", default=500, show_default=True,
                     type=click.IntRange(min=0), help="Training cycles."),
        click.option("--lr0", default=0.2, show_default=True, type=float,
                     help="Initial learning rate."),
        click.option("--decay", default=1.0, show_default=True, type=float,
                     help="Learning-rate decay strength (0 keeps lr constant)."),
        click.option("--momentum", default=0.0, show_default=True, type=float,
                     help="Momentum coefficient in [0, 1)."),
        click.option("--hidden", default=None, type=click.IntRange(min=1),
                     help="Hidden nodes [default: (inputs + outputs) // 2]."),
        click.option("--seed", default=0, show_default=True, type=int,
                     help="Seed for initialization and shuffling."),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def _training_config(epochs, lr0, decay, momentum, hidden, seed) -> TrainingConfig:
    return TrainingConfig(epochs=epochs, lr0=lr0, decay=decay,
                          momentum=momentum, seed=seed, hidden=hidden)


@click.group()
@click.version_option(version=__version__, prog_name="activrisk")
def main():
    """Identify physically inactive individuals at health risk.

    Pipeline: generate or ingest survey CSVs, label them from the weekly
    activity log, train a sigmoid neural classifier, evaluate it with
    stratified cross-validation, and score new records.
    """


@main.command()
@click.option("--n", required=True, type=click.IntRange(min=0),
              help="Number of records to generate.")
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--spec", "spec_source", default="default", show_default=True,
              help="'default', 'full_support', or a JSON cohort-spec file.")
@click.option("--out", "out_path", required=True,
              type=click.Path(dir_okay=False), help="Output CSV path.")
@pipeline_command
def synth(n, seed, spec_source, out_path):
    """Generate a labeled synthetic cohort CSV."""
    if spec_source == "default":
        spec = default_spec()
    elif spec_source in ("full_support", "full-support"):
        spec = full_support_spec()
    else:
        spec = load_spec(spec_source)
    records = generate_cohort(spec, n, seed)
    write_survey_csv(out_path, records)
    click.echo(f"wrote {len(records)} records to {out_path}")


@main.command()
@click.option("--in", "in_path", required=True, type=click.Path(dir_okay=False),
              help="Input CSV with the four activity columns.")
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
@pipeline_command
def label(in_path, out_path):
    """Add or overwrite the risk label computed from each activity log."""
    header, rows = read_rows(in_path, required=ACTIVITY_COLUMNS)
    if LABEL_COLUMN not in header:
        header = header + [LABEL_COLUMN]
    out_rows = []
    for line, row in rows:
        log = parse_activity(row, line)
        row[LABEL_COLUMN] = classify_activity(log).token
        out_rows.append(row)
    write_rows(out_path, header, out_rows)
    click.echo(f"labeled {len(out_rows)} rows -> {out_path}")


@main.command(name="train")
@click.option("--in", "in_path", required=True, type=click.Path(dir_okay=False),
              help="Labeled training CSV.")
@training_options
@click.option("--model", "model_path", required=True,
              type=click.Path(dir_okay=False), help="Output model file.")
@pipeline_command
def train_cmd(in_path, epochs, lr0, decay, momentum, hidden, seed, model_path):
    """Train a risk classifier and write a versioned model file."""
    records = read_survey_csv(in_path, need_label=True)
    schema = infer_schema(records)
    samples = [(encode(r, schema), r.label) for r in records]
    config = _training_config(epochs, lr0, decay, momentum, hidden, seed)
    net = train(samples, config)
    correct = sum(1 for x, lab in samples if predict(net, x)[0] is lab)
    accuracy = correct / len(samples)
    save_model(model_path, net, schema, config, metadata={
        "generator": f"activrisk {__version__}",
        "n_examples": len(samples),
        "train_accuracy": accuracy,
    })
    click.echo(f"trained on {len(samples)} examples "
               f"(inputs={net.n_in}, hidden={net.layer_sizes[1]})")
    click.echo(f"final training accuracy: {accuracy:.4f}")
    click.echo(f"model written to {model_path}")


def _report_text(report: EvalReport) -> str:
    c = report.counts
    lines = [
        f"examples:   {c.total}",
        f"confusion:  tp={c.tp}  tn={c.tn}  fp={c.fp}  fn={c.fn}",
        f"accuracy:   {report.accuracy:.4f}",
        f"tp_rate:    {report.tp_rate:.4f}  (at-risk correctly flagged)",
        f"tn_rate:    {report.tn_rate:.4f}  (not-at-risk correctly cleared)",
        f"fp_rate:    {report.fp_rate:.4f}",
        f"fn_rate:    {report.fn_rate:.4f}",
    ]
    if report.degenerate:
        lines.append("warning: one class is absent; its rates report as 0")
    return "\n".join(lines)


def _report_kv(report: EvalReport) -> str:
    c = report.counts
    pairs = [
        ("n", c.total), ("tp", c.tp), ("tn", c.tn), ("fp", c.fp), ("fn", c.fn),
        ("accuracy", repr(report.accuracy)),
        ("tp_rate", repr(report.tp_rate)),
        ("tn_rate", repr(report.tn_rate)),
        ("fp_rate", repr(report.fp_rate)),
        ("fn_rate", repr(report.fn_rate)),
        ("degenerate", "true" if report.degenerate else "false"),
    ]
    return "\n".join(f"{key}={value}" for key, value in pairs)


@main.command()
@click.option("--in", "in_path", required=True, type=click.Path(dir_okay=False),
              help="Labeled CSV to cross-validate on.")
@click.option("--k", default=5, show_default=True, type=click.IntRange(min=2),
              help="Number of folds.")
@training_options
@click.option("--figdir", default=None, type=click.Path(file_okay=False),
              help="Also write report.kv plus confusion/rate/fold figures here.")
@pipeline_command
def cv(in_path, k, epochs, lr0, decay, momentum, hidden, seed, figdir):
    """Stratified k-fold cross-validation; prints the pooled report."""
    records = read_survey_csv(in_path, need_label=True)
    config = _training_config(epochs, lr0, decay, momentum, hidden, seed)
    report = cross_validate(records, k, config)
    click.echo(_report_text(report))
    click.echo("")
    click.echo(_report_kv(report))
    if figdir:
        from . import figures  # matplotlib import deferred until needed

        os.makedirs(figdir, exist_ok=True)
        with open(os.path.join(figdir, "report.kv"), "w", encoding="utf-8") as fh:
            fh.write(_report_kv(report) + "\n")
        figures.save_confusion_matrix(report, os.path.join(figdir, "confusion_matrix.png"))
        figures.save_rate_bars(report, os.path.join(figdir, "rates.png"))
        figures.save_fold_accuracy(report, os.path.join(figdir, "fold_accuracy.png"))
        click.echo(f"report and figures written to {figdir}")


@main.command(name="predict")
@click.option("--model", "model_path", required=True,
              type=click.Path(dir_okay=False), help="Model file from 'train'.")
@click.option("--in", "in_path", required=True, type=click.Path(dir_okay=False))
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
@pipeline_command
def predict_cmd(model_path, in_path, out_path):
    """Score records; adds predicted_label, score columns, and warnings."""
    net, schema, _, _ = load_model(model_path)
    header, rows = read_rows(in_path, required=FEATURE_COLUMNS)
    extra = ["predicted_label", "score_at_risk", "score_not_at_risk", "warning"]
    out_header = header + [column for column in extra if column not in header]
    warnings = 0
    out_rows = []
    for line, row in rows:
        response = parse_response(row, line, need_label=False)
        try:
            prediction, scores = predict(net, encode(response, schema))
            row["score_at_risk"] = repr(float(scores[0]))
            row["score_not_at_risk"] = repr(float(scores[1]))
            row["warning"] = ""
        except UnknownCategory as exc:
            prediction = RiskLabel.AT_RISK
            row["score_at_risk"] = ""
            row["score_not_at_risk"] = ""
            row["warning"] = str(exc)
            warnings += 1
        row["predicted_label"] = prediction.token
        out_rows.append(row)
    write_rows(out_path, out_header, out_rows)
    click.echo(f"predicted {len(out_rows)} rows -> {out_path}")
    if warnings:
        click.echo(f"warnings: {warnings} rows had unencodable values "
                   "and were flagged at_risk", err=True)


if __name__ == "__main__":
    main()
