"""Command-line interface.

A thin dispatch layer over the library: every subcommand parses flags, calls
one core function, and emits machine-readable JSON (stdout or --out) while
progress and tables go to stderr. Exit codes: 0 success, 1 runtime error,
2 usage error, 3 when `monitor` raised at least one alert.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from . import __version__, binning, drift, experiments, monitoring, selectk, textvec
from .corpus import synthetic_text_corpus
from .datasets import dataset_summary, load_dataset, save_dataset
from .errors import DriftScopeError

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_ALERTS = 3


def _envelope(args: argparse.Namespace, result: dict | list) -> dict:
    config = {
        k: v
        for k, v in sorted(vars(args).items())
        if k not in {"func"} and not k.startswith("_")
    }
    out: dict = {
        "version": 1,
        "tool": {"name": "driftscope", "version": __version__},
        "command": args.command,
        "config": config,
    }
    if not args.deterministic:
        out["created_at"] = datetime.now(timezone.utc).isoformat()
    out["result"] = result
    return out


def _emit_json(obj: dict, out: Optional[str]) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _emit_rows(rows: list[list], header: list[str], out: Optional[str]) -> None:
    fh = open(out, "w", encoding="utf-8", newline="") if out else sys.stdout
    try:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    finally:
        if out:
            fh.close()


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr)


def _parse_floats(text: str) -> list[float]:
    return [float(t) for t in text.split(",") if t.strip() != ""]


def _parse_ints(text: str) -> list[int]:
    values: list[int] = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        if "-" in token[1:]:
            lo, hi = token.split("-", 1)
            values.extend(range(int(lo), int(hi) + 1))
        else:
            values.append(int(token))
    return values


def cmd_fit(args: argparse.Namespace) -> int:
    ds = load_dataset(args.data)
    _progress(f"fit: {len(ds)} records, dim {ds.dim}, k={args.k}, seed={args.seed}")
    model = binning.initialize_clusters(
        ds, k=args.k, seed=args.seed, normalize=args.normalize,
        max_iter=args.max_iter, tol=args.tol,
    )
    payload = binning.model_to_dict(model)
    if args.out:
        binning.save_model(model, args.out)
        _progress(f"fit: wrote model to {args.out}")
    else:
        _emit_json(payload, None)
    return EXIT_OK


def cmd_drift(args: argparse.Namespace) -> int:
    model = binning.load_model(args.model)
    ds = load_dataset(args.data)
    report = drift.compute_drift_with_model(model, ds, metric=args.metric)
    _progress(f"drift: {args.metric}={report.value:.6f} over k={report.k} bins")
    _emit_json(_envelope(args, report.to_dict()), args.out)
    return EXIT_OK


def cmd_select_k(args: argparse.Namespace) -> int:
    ds = load_dataset(args.data)
    result = selectk.select_k(
        ds, m_min=args.m_min, k_min=args.k_min, k_max=args.k_max,
        seed=args.seed, normalize=args.normalize,
    )
    _progress(f"select-k: chose k={result.k} (m_min={args.m_min})")
    _progress("  k  min_count  feasible")
    for ev in result.evaluations:
        _progress(f"{ev.k:>3}  {ev.min_count:>9}  {str(ev.feasible).lower()}")
    if args.model_out:
        binning.save_model(result.model, args.model_out)
        _progress(f"select-k: wrote model to {args.model_out}")
    payload = {
        "k": result.k,
        "used_fallback": result.used_fallback,
        "evaluations": [
            {"k": e.k, "min_count": e.min_count, "feasible": e.feasible}
            for e in result.evaluations
        ],
    }
    _emit_json(_envelope(args, payload), args.out)
    return EXIT_OK


def cmd_monitor(args: argparse.Namespace) -> int:
    model = binning.load_model(args.model)
    events = load_dataset(args.events)
    window_seconds = int(args.window_hours * 3600)
    series = monitoring.window_drift(
        model, events, window_seconds, metric=args.metric, threads=args.threads
    )
    policy = monitoring.AlertPolicy(threshold=args.threshold, min_events=args.min_events)
    alerts = monitoring.check_alerts(series, policy)
    _progress(
        f"monitor: {len(series.points)} windows, {len(alerts)} alert(s) "
        f"above threshold {args.threshold}"
    )
    payload = {
        "series": series.to_dict(),
        "alerts": [a.to_dict() for a in alerts],
        "policy": {"threshold": policy.threshold, "min_events": policy.min_events},
    }
    _emit_json(_envelope(args, payload), args.out)
    if args.plot_csv:
        rows = [
            [p.window_start, p.n, p.report.value if p.report else ""]
            for p in series.points
        ]
        _emit_rows(rows, ["window_start", "n", args.metric], args.plot_csv)
        _progress(f"monitor: wrote plot rows to {args.plot_csv}")
    return EXIT_ALERTS if alerts else EXIT_OK


def cmd_summarize(args: argparse.Namespace) -> int:
    model = binning.load_model(args.model)
    ds = load_dataset(args.data)
    stopwords = set(args.stopwords.split(",")) if args.stopwords else None
    summaries = textvec.cluster_summary(
        model, ds, top_n=args.top_n, r=args.reps, stopwords=stopwords
    )
    _emit_json(_envelope(args, [s.to_dict() for s in summaries]), args.out)
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    ds = load_dataset(args.data)
    summary = dataset_summary(ds)
    _progress(f"validate: {summary['n']} records, dim {summary['dim']}")
    _emit_json(_envelope(args, summary), args.out)
    return EXIT_OK


def cmd_vectorize(args: argparse.Namespace) -> int:
    rows = textvec.load_text_records(args.data)
    stopwords = set(args.stopwords.split(",")) if args.stopwords else None
    vec = textvec.fit_tfidf(
        [r["text"] for r in rows], max_vocab=args.max_vocab, stopwords=stopwords
    )
    ds = textvec.vectorize_text_records(vec, rows, name=Path(args.data).stem, stopwords=stopwords)
    save_dataset(ds, args.out)
    _progress(
        f"vectorize: {len(ds)} records embedded at dim {ds.dim} -> {args.out}"
    )
    return EXIT_OK


def cmd_corpus(args: argparse.Namespace) -> int:
    rows = synthetic_text_corpus(n=args.n, seed=args.seed)
    textvec.save_text_records(rows, args.out)
    _progress(f"corpus: wrote {len(rows)} labeled documents to {args.out}")
    return EXIT_OK


def _sweep_output(args: argparse.Namespace, result: experiments.SweepResult) -> None:
    if args.format == "csv":
        rows = [
            [x, name, point.mean, point.std]
            for name, points in result.series.items()
            for x, point in zip(result.x, points)
        ]
        _emit_rows(rows, ["x", "series", "mean", "std"], args.out)
    else:
        _emit_json(_envelope(args, result.to_dict()), args.out)


def cmd_experiment_sensitivity(args: argparse.Namespace) -> int:
    base = load_dataset(args.base)
    pool = load_dataset(args.pool)
    result = experiments.sensitivity_curve(
        base, pool, label=args.label, fractions=_parse_floats(args.fractions),
        n=args.n, k=args.k, seed=args.seed, metric=args.metric,
        normalize=args.normalize, threads=args.threads,
    )
    _sweep_output(args, result)
    return EXIT_OK


def cmd_experiment_cluster_sweep(args: argparse.Namespace) -> int:
    base = load_dataset(args.base)
    prod = load_dataset(args.prod)
    result = experiments.cluster_sweep(
        base, prod, ks=_parse_ints(args.ks), seed=args.seed,
        metric=args.metric, normalize=args.normalize, threads=args.threads,
    )
    _sweep_output(args, result)
    return EXIT_OK


def cmd_experiment_dim_sweep(args: argparse.Namespace) -> int:
    base = load_dataset(args.base)
    prod = load_dataset(args.prod)
    result = experiments.dim_sweep(
        base, prod, dims=_parse_ints(args.dims), repeats=args.repeats,
        k=args.k, seed=args.seed, metric=args.metric,
        normalize=args.normalize, threads=args.threads,
    )
    _sweep_output(args, result)
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return EXIT_OK


def _add_common(parser: argparse.ArgumentParser, seed: bool = True) -> None:
    parser.add_argument("--out", help="write output to this path instead of stdout")
    parser.add_argument("--format", choices=["json", "csv"], default="json")
    parser.add_argument("--threads", type=int, default=None, help="cap internal parallelism")
    parser.add_argument(
        "--deterministic", action="store_true",
        help="omit wall-clock fields so identical runs are byte-identical",
    )
    if seed:
        parser.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="driftscope",
        description="Embedding drift monitoring via density-based binning",
    )
    parser.add_argument("--version", action="version", version=f"driftscope {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fit", help="fit a baseline binning model")
    p.add_argument("--data", required=True, help="baseline vectors (ndjson or csv)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--normalize", action="store_true", help="L2-normalize vectors first")
    p.add_argument("--max-iter", type=int, default=300)
    p.add_argument("--tol", type=float, default=1e-6)
    _add_common(p)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("drift", help="drift report of a dataset against a model")
    p.add_argument("--model", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--metric", choices=list(drift.METRICS), default="jsd")
    _add_common(p)
    p.set_defaults(func=cmd_drift)

    p = sub.add_parser("select-k", help="largest k with enough evidence per bin")
    p.add_argument("--data", required=True)
    p.add_argument("--m-min", type=int, default=selectk.DEFAULT_M_MIN)
    p.add_argument("--k-min", type=int, default=selectk.DEFAULT_K_MIN)
    p.add_argument("--k-max", type=int, default=selectk.DEFAULT_K_MAX)
    p.add_argument("--normalize", action="store_true")
    p.add_argument("--model-out", help="also persist the chosen model here")
    _add_common(p)
    p.set_defaults(func=cmd_select_k)

    p = sub.add_parser("monitor", help="windowed drift series with alerts")
    p.add_argument("--model", required=True)
    p.add_argument("--events", required=True, help="timestamped vectors (ndjson or csv)")
    p.add_argument("--window-hours", type=float, default=24.0)
    p.add_argument("--threshold", type=float, default=0.1)
    p.add_argument("--min-events", type=int, default=monitoring.DEFAULT_MIN_EVENTS)
    p.add_argument("--metric", choices=list(drift.METRICS), default="jsd")
    p.add_argument("--plot-csv", help="also write window_start,n,value rows here")
    _add_common(p)
    p.set_defaults(func=cmd_monitor)

    p = sub.add_parser("summarize", help="top terms and representatives per bin")
    p.add_argument("--model", required=True)
    p.add_argument("--data", required=True, help="vectors with text fields")
    p.add_argument("--top-n", type=int, default=10)
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--stopwords", help="comma-separated stopword list")
    _add_common(p)
    p.set_defaults(func=cmd_summarize)

    p = sub.add_parser("validate", help="parse and check a vector file")
    p.add_argument("--data", required=True)
    _add_common(p, seed=False)
    p.set_defaults(func=cmd_validate, seed=None)

    p = sub.add_parser("vectorize", help="TF-IDF embed a text ndjson file")
    p.add_argument("--data", required=True, help="ndjson of {id, text, label?}")
    p.add_argument("--max-vocab", type=int, default=textvec.DEFAULT_MAX_VOCAB)
    p.add_argument("--stopwords", help="comma-separated stopword list")
    _add_common(p, seed=False)
    p.set_defaults(func=cmd_vectorize, seed=None)

    p = sub.add_parser("corpus", help="generate the bundled synthetic labeled corpus")
    p.add_argument("--n", type=int, default=2000)
    _add_common(p)
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("experiment", help="synthetic-drift sweep harnesses")
    esub = p.add_subparsers(dest="experiment", required=True)

    e = esub.add_parser("sensitivity", help="drift vs. injected label share")
    e.add_argument("--base", required=True)
    e.add_argument("--pool", required=True)
    e.add_argument("--label", required=True)
    e.add_argument("--fractions", required=True, help="comma-separated shares in [0,1]")
    e.add_argument("--n", type=int, required=True, help="records per scenario")
    e.add_argument("--k", type=int, required=True)
    e.add_argument("--metric", choices=list(drift.METRICS), default="jsd")
    e.add_argument("--normalize", action="store_true")
    _add_common(e)
    e.set_defaults(func=cmd_experiment_sensitivity)

    e = esub.add_parser("cluster-sweep", help="drift vs. number of bins")
    e.add_argument("--base", required=True)
    e.add_argument("--prod", required=True)
    e.add_argument("--ks", required=True, help="e.g. 2-20 or 2,5,10")
    e.add_argument("--metric", choices=list(drift.METRICS), default="jsd")
    e.add_argument("--normalize", action="store_true")
    _add_common(e)
    e.set_defaults(func=cmd_experiment_cluster_sweep)

    e = esub.add_parser("dim-sweep", help="drift vs. sampled component count")
    e.add_argument("--base", required=True)
    e.add_argument("--prod", required=True)
    e.add_argument("--dims", required=True, help="e.g. 8,32,128,256")
    e.add_argument("--repeats", type=int, default=5)
    e.add_argument("--k", type=int, required=True)
    e.add_argument("--metric", choices=list(drift.METRICS), default="jsd")
    e.add_argument("--normalize", action="store_true")
    _add_common(e)
    e.set_defaults(func=cmd_experiment_dim_sweep)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    _add_common(p, seed=False)
    p.set_defaults(func=cmd_serve, seed=None)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DriftScopeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
