"""Command-line surface over files.

Subcommands: ``features``, ``test``, ``plot``, ``dist``, ``outliers``,
``mds``, ``simulate``.  Exit codes: 0 success, 2 for input/validation
problems (including bad flags), 1 for unexpected internal errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import graphics, io, mining, svg
from .association import MEASURE_FUNCTIONS
from .dispersion import chebycheff_dispersion, entropy, gini_index
from .inference import cohens_kappa_test, cramers_v_test, holm_adjust
from .series import Alphabet, CategoricalSeries, lag_tables, marginal_probabilities
from .simulate import corpus_spec_from_dict, generate_corpus
from .spectral import spectral_envelope

_DISPERSION = {"gini": gini_index, "entropy": entropy, "chebycheff": chebycheff_dispersion}


def _alphabet_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--alphabet", help="ordered comma-separated category labels")
    parser.add_argument("--infer-alphabet", action="store_true",
                        help="use the sorted set of symbols found in the file")
    parser.add_argument("--format", choices=("auto", "csv", "fasta"), default="auto")


def _input_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", required=True, help="corpus file (symbol-csv or fasta-like)")
    _alphabet_args(parser)


def _load_corpus(args) -> io.Corpus:
    alphabet = Alphabet(tuple(args.alphabet.split(","))) if args.alphabet else None
    return io.parse_corpus(args.input, alphabet, args.format, args.infer_alphabet)


def _pick_series(corpus: io.Corpus, index: int) -> CategoricalSeries:
    if not 1 <= index <= len(corpus.series):
        raise ValueError(f"series index {index} outside 1..{len(corpus.series)}")
    return corpus.series[index - 1]


def _parse_lags(text: str) -> list[int]:
    lags = sorted({int(part) for part in text.split(",")})
    if any(l < 1 for l in lags):
        raise ValueError("lags must be positive")
    return lags


def _series_features(series: CategoricalSeries, measures, lags, expand: bool):
    values: list[float] = []
    schema: list[str] = []
    symbols = series.alphabet.symbols
    p = marginal_probabilities(series)
    for name in measures:
        if name in _DISPERSION:
            values.append(_DISPERSION[name](p))
            schema.append(name)
        elif name == "marginals":
            values.extend(p)
            schema.extend(f"p.{s}" for s in symbols)
        elif name in MEASURE_FUNCTIONS:
            for lag in lags:
                result = MEASURE_FUNCTIONS[name](lag_tables(series, lag))
                if expand and result.components is not None:
                    values.extend(result.components)
                    schema.extend(
                        f"{name}.l{lag}.{_relabel(lab, symbols)}" for lab in result.component_labels
                    )
                else:
                    values.append(result.value)
                    schema.append(f"{name}.l{lag}")
        else:
            known = sorted([*_DISPERSION, "marginals", *MEASURE_FUNCTIONS])
            raise ValueError(f"unknown measure {name!r}; expected one of {known}")
    return values, schema


def _relabel(index_label: str, symbols) -> str:
    # "i=2,j=1" -> "b_a"; "j=3" -> "c"
    parts = dict(item.split("=") for item in index_label.split(","))
    if "i" in parts:
        return f"{symbols[int(parts['i']) - 1]}_{symbols[int(parts['j']) - 1]}"
    return symbols[int(parts["j"]) - 1]


def _cmd_features(args) -> int:
    corpus = _load_corpus(args)
    measures = [m.strip() for m in args.measures.split(",") if m.strip()]
    if not measures:
        raise ValueError("no measures selected")
    lags = _parse_lags(args.lags)

    def one(series):
        return _series_features(series, measures, lags, args.expand)

    workers = _worker_count(args)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, corpus.series))
    else:
        results = [one(s) for s in corpus.series]
    schema = results[0][1]
    for idx, (_, s) in enumerate(results):
        if s != schema:
            raise ValueError(f"series {idx + 1} produced a different feature layout")
    matrix = [values for values, _ in results]
    io.write_features_csv(args.out, corpus.ids, schema, matrix, corpus.labels, args.bitexact)
    return 0


def _cmd_test(args) -> int:
    corpus = _load_corpus(args)
    series = _pick_series(corpus, args.index)
    if args.family in ("cramers_v", "v"):
        report = cramers_v_test(series, args.max_lag, args.alpha)
    elif args.family in ("kappa", "cohens_kappa"):
        report = cohens_kappa_test(series, args.max_lag, args.alpha)
    else:
        raise ValueError(f"unknown test family {args.family!r}")
    payload = {
        "family": report.family,
        "alpha": report.alpha,
        "max_lag": report.max_lag,
        "series_id": corpus.ids[args.index - 1],
        "series_length": len(series),
        "n_categories": series.alphabet.size,
        "lower_critical": report.lower_critical,
        "upper_critical": report.upper_critical,
        "rows": [
            {
                "lag": int(lag),
                "estimate": est,
                "statistic": stat,
                "p_value": p,
            }
            for lag, est, stat, p in zip(report.lags, report.estimates, report.statistics, report.p_values)
        ],
    }
    if args.holm:
        payload["holm_adjusted_p_values"] = list(holm_adjust(report.p_values))
    io.write_json_report(args.out, payload, args.bitexact)
    return 0


def _cmd_dist(args) -> int:
    corpus = _load_corpus(args)
    dm = mining.distance_matrix(corpus.series, args.metric, args.max_lag, corpus.ids, _worker_count(args))
    io.write_distance_csv(args.out, dm, args.bitexact)
    return 0


def _cmd_mds(args) -> int:
    dm = io.read_distance_csv(args.dist)
    embedding = mining.two_dimensional_scaling(dm)
    io.write_coordinates_csv(args.out, dm.ids, embedding.coordinates, args.bitexact)
    return 0


def _cmd_outliers(args) -> int:
    dm = io.read_distance_csv(args.dist)
    scores, order = mining.outlier_scores(dm)
    box = mining.boxplot_outlier_count(scores, args.range_factor)
    payload = {
        "n": int(scores.size),
        "range_factor": args.range_factor,
        "q1": box.q1,
        "q3": box.q3,
        "threshold": box.threshold,
        "outlier_count": box.count,
        "flagged_ids": [dm.ids[i] for i in box.indices],
        "ranking": [dm.ids[i] for i in order],
        "scores": {dm.ids[i]: scores[i] for i in range(scores.size)},
    }
    io.write_json_report(args.out, payload, args.bitexact)
    return 0


def _cmd_simulate(args) -> int:
    with open(args.spec, "r", encoding="utf-8") as handle:
        spec = corpus_spec_from_dict(json.load(handle))
    corpus, labels = generate_corpus(spec)
    io.write_corpus(args.out, corpus, labels)
    return 0


def _plot_table_rows(data) -> tuple[list[str], list[list]]:
    if isinstance(data, CategoricalSeries):
        symbols = data.alphabet.symbols
        return ["t", "code", "symbol"], [
            [t + 1, int(c), symbols[c - 1]] for t, c in enumerate(data.codes)
        ]
    if isinstance(data, graphics.RateEvolution):
        header = ["t", *[f"count_{s}" for s in data.labels]]
        return header, [[t + 1, *row] for t, row in enumerate(data.counts)]
    if isinstance(data, graphics.PatternHistogram):
        return ["length", "count"], [[k, v] for k, v in data.counts.items()]
    if isinstance(data, graphics.FractalSeries):
        return ["t", "x", "y"], [[t + 1, x, y] for t, (x, y) in enumerate(data.points)]
    if isinstance(data, graphics.DependenceTable):
        header = ["lag", "estimate", "lower_critical", "upper_critical"]
        lower = "" if data.lower is None else data.lower
        return header, [[int(l), e, lower, data.upper] for l, e in zip(data.lags, data.estimates)]
    if isinstance(data, graphics.ControlChart):
        stats = data.statistics if data.statistics.ndim == 2 else data.statistics[:, None]
        header = ["t", *[f"T_{lab}" for lab in data.labels]]
        return header, [[int(t), *row] for t, row in zip(data.times, stats)]
    # spectral envelope
    header = ["frequency", "envelope", *[f"gamma_{i + 1}" for i in range(data.scalings.shape[1])]]
    return header, [
        [f, e, *g] for f, e, g in zip(data.frequencies, data.envelope, data.scalings)
    ]


def _write_plot_table(path, data, bitexact: bool) -> None:
    header, rows = _plot_table_rows(data)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([c if isinstance(c, (str, int)) else io.format_number(c, bitexact) for c in row])


def _cmd_plot(args) -> int:
    corpus = _load_corpus(args)
    series = _pick_series(corpus, args.index)
    window = None
    if args.kind == "series":
        data = series if args.limit is None else CategoricalSeries(series.codes[: args.limit], series.alphabet)
    elif args.kind == "rate":
        data = graphics.rate_evolution(series)
    elif args.kind == "pattern":
        _, data = graphics.cycle_lengths(series, args.category)
    elif args.kind == "ifs":
        data = graphics.ifs_circle_transform(series, args.alpha, args.beta, tuple(args.f0))
        if args.window:
            window = tuple(float(v) for v in args.window.split(","))
            if len(window) != 4:
                raise ValueError("--window expects x0,x1,y0,y1")
    elif args.kind == "dependence":
        data = graphics.dependence_plot_data(series, args.family, args.max_lag, args.alpha)
    elif args.kind == "cycle-chart":
        data = graphics.cycle_length_chart(series, args.category, args.alpha, args.p)
    elif args.kind == "ewma-chart":
        c = np.asarray([float(v) for v in args.c.split(",")]) if args.c else None
        data = graphics.ewma_marginal_chart(series, args.lam, c, args.k, args.collapse)
    elif args.kind == "envelope":
        data = spectral_envelope(series, args.window_length)
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(f"unknown plot kind {args.kind!r}")
    document = svg.render_svg(data, title=args.title, window=window)
    with open(args.out, "w", encoding="utf-8", newline="") as handle:
        handle.write(document)
    if args.table:
        _write_plot_table(args.table, data, args.bitexact)
    return 0


def _worker_count(args) -> int:
    if getattr(args, "workers", None):
        return max(1, args.workers)
    env = os.environ.get("CATSERIES_WORKERS")
    return max(1, int(env)) if env else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="catseries",
        description="Statistical feature extraction, dependence tests, charts, distances "
        "and simulators for nominal categorical time series.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("features", help="per-series feature matrix as CSV")
    _input_args(p)
    p.add_argument("--measures", required=True,
                   help="comma list: gini, entropy, chebycheff, marginals, gk_tau, gk_lambda, "
                        "uncertainty, pearson, phi2, sakoda, cramers_v, cohens_kappa, total_correlation")
    p.add_argument("--lags", "--lag", default="1", help="comma list of positive lags (default 1)")
    p.add_argument("--expand", action="store_true", help="emit per-component columns where defined")
    p.add_argument("--workers", type=int, default=1, help="worker threads for per-series extraction")
    p.add_argument("--out", required=True)
    p.add_argument("--bitexact", action="store_true")
    p.set_defaults(func=_cmd_features)

    p = sub.add_parser("test", help="serial-independence tests as JSON")
    _input_args(p)
    p.add_argument("--index", type=int, default=1, help="1-based series index in the corpus")
    p.add_argument("--family", default="cramers_v", help="cramers_v or kappa")
    p.add_argument("--max-lag", type=int, default=10)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--holm", action="store_true", help="also report Holm-adjusted p-values")
    p.add_argument("--out", required=True)
    p.add_argument("--bitexact", action="store_true")
    p.set_defaults(func=_cmd_test)

    p = sub.add_parser("dist", help="pairwise dissimilarity matrix as CSV")
    _input_args(p)
    p.add_argument("--metric", choices=("dcc", "db"), default="db")
    p.add_argument("--max-lag", type=int, default=1)
    p.add_argument("--workers", type=int, default=1, help="worker threads for per-series extraction")
    p.add_argument("--out", required=True)
    p.add_argument("--bitexact", action="store_true")
    p.set_defaults(func=_cmd_dist)

    p = sub.add_parser("mds", help="2-D scaling coordinates from a distance CSV")
    p.add_argument("--dist", required=True, help="distance CSV produced by the dist command")
    p.add_argument("--out", required=True)
    p.add_argument("--bitexact", action="store_true")
    p.set_defaults(func=_cmd_mds)

    p = sub.add_parser("outliers", help="distance-sum outlier scores as JSON")
    p.add_argument("--dist", required=True, help="distance CSV produced by the dist command")
    p.add_argument("--range-factor", type=float, default=1.0)
    p.add_argument("--out", required=True)
    p.add_argument("--bitexact", action="store_true")
    p.set_defaults(func=_cmd_outliers)

    p = sub.add_parser("simulate", help="generate a corpus from a JSON spec")
    p.add_argument("--spec", required=True, help="corpus spec JSON file")
    p.add_argument("--out", required=True, help="output symbol-csv corpus")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("plot", help="render a chart to SVG")
    plot_sub = p.add_subparsers(dest="kind", required=True)

    def plot_parser(kind, **extra_help):
        q = plot_sub.add_parser(kind, **extra_help)
        _input_args(q)
        q.add_argument("--index", type=int, default=1)
        q.add_argument("--title")
        q.add_argument("--out", required=True)
        q.add_argument("--table", help="also write the plotted data as CSV")
        q.add_argument("--bitexact", action="store_true")
        q.set_defaults(func=_cmd_plot, kind=kind)
        return q

    q = plot_parser("series", help="step plot of the coded series")
    q.add_argument("--limit", type=int, help="plot only the first N observations")
    plot_parser("rate", help="rate evolution graph")
    q = plot_parser("pattern", help="cycle-length histogram of one category")
    q.add_argument("--category", required=True)
    q = plot_parser("ifs", help="IFS circle transformation scatter")
    q.add_argument("--alpha", type=float, required=True)
    q.add_argument("--beta", type=float, required=True)
    q.add_argument("--f0", type=float, nargs=2, default=(0.0, 0.0))
    q.add_argument("--window", help="x0,x1,y0,y1 zoom window")
    q = plot_parser("dependence", help="serial dependence plot with critical values")
    q.add_argument("--family", default="cramers_v")
    q.add_argument("--max-lag", type=int, default=10)
    q.add_argument("--alpha", type=float, default=0.05)
    q = plot_parser("cycle-chart", help="cycle-length control chart")
    q.add_argument("--category", required=True)
    q.add_argument("--alpha", type=float, default=0.01)
    q.add_argument("--p", type=float, help="hypothesized in-control probability (default: estimated)")
    q = plot_parser("ewma-chart", help="EWMA chart of the marginal distribution")
    q.add_argument("--lambda", dest="lam", type=float, default=0.9)
    q.add_argument("--k", type=float, default=3.0)
    q.add_argument("--c", help="comma list: hypothesized in-control marginal (default: estimated)")
    q.add_argument("--collapse", action="store_true", help="plot only min/max statistics")
    q = plot_parser("envelope", help="spectral envelope over frequency")
    q.add_argument("--window-length", type=int, help="odd smoothing span (default about sqrt(T))")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except Exception as err:
        print(f"internal error: {err}", file=sys.stderr)
        return 1


def console_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_entry()
