"""Command line entry points.

Exit codes: 0 success, 1 usage problems, 2 data problems (bad CSV, unknown
labels, unreadable models, refused workloads), 3 anything unexpected.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bench import (
    DEFAULT_NODE_BUDGET,
    BudgetError,
    SynthSpec,
    compare_methods,
    scaling_run,
)
from .dataset import DataError, column_specs_from_json, encode_with_schema, load_csv, preprocess
from .metrics import evaluate, report_json, series_csv
from .model import BuildConfig, ModelFormatError, deserialize, serialize, build
from .session import Session, run_batch

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3

DEFAULT_LISTEN = "127.0.0.1:8760"


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; this contract reserves 2 for data
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _nonneg_float(text: str) -> float:
    x = float(text)
    if x < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return x


def _pos_float(text: str) -> float:
    x = float(text)
    if x <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return x


def _nonneg_int(text: str) -> int:
    k = int(text)
    if k < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return k


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fpqm", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("train", help="build a model from a training CSV")
    p.add_argument("--input", required=True, help="training CSV")
    p.add_argument("--output", required=True, help="where to write the model JSON")
    p.add_argument("--preprocess", help="JSON column spec for cleanup and binning")
    p.add_argument("--aggregation", choices=("squared", "linear"), default="squared")
    p.add_argument("--min-support", type=_nonneg_int, default=1)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("evaluate", help="score a model against a test CSV")
    p.add_argument("--model", required=True)
    p.add_argument("--test", required=True)
    p.add_argument("--sigma", type=_nonneg_float, default=0.8)
    p.add_argument("--beta", type=_pos_float, default=0.5)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", help="write here instead of stdout")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("investigate", help="run one interactive interview")
    p.add_argument("--model", required=True)
    p.add_argument("--sigma", type=_nonneg_float, default=0.8)
    p.set_defaults(func=cmd_investigate)

    p = sub.add_parser("bench", help="run synthetic scaling workloads")
    p.add_argument("--spec", help="JSON list of workload recipes")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sigma", type=_nonneg_float, default=0.8)
    p.add_argument("--beta", type=_pos_float, default=0.5)
    p.add_argument("--node-budget", type=_nonneg_int, default=DEFAULT_NODE_BUDGET)
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.add_argument("--output", help="write here instead of stdout")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("compare", help="influence tree vs per-attribute forest")
    p.add_argument("--train", required=True)
    p.add_argument("--test", required=True)
    p.add_argument("--sigma", type=_nonneg_float, default=0.8)
    p.add_argument("--beta", type=_pos_float, default=0.5)
    p.add_argument("--aggregation", choices=("squared", "linear"), default="squared")
    p.add_argument("--min-support", type=_nonneg_int, default=1)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--listen", default=DEFAULT_LISTEN, help="host:port")
    p.add_argument("--data-dir", help="model storage root (default $FPQM_DATA_DIR)")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("inspect", help="describe a stored model")
    p.add_argument("--model", required=True)
    p.set_defaults(func=cmd_inspect)
    return parser


def _write_out(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _load_model(path: str):
    return deserialize(Path(path).read_text(encoding="utf-8"))


def cmd_train(args) -> int:
    raw = load_csv(args.input)
    specs = None
    if args.preprocess:
        specs = column_specs_from_json(Path(args.preprocess).read_text(encoding="utf-8"))
    ds = preprocess(raw, specs)
    config = BuildConfig(aggregation_mode=args.aggregation, min_support=args.min_support)
    model = build(ds, config)
    Path(args.output).write_text(serialize(model), encoding="utf-8")
    root_name = model.schema[model.root.attribute].name
    print(
        f"wrote {args.output}: root={root_name} depth={model.depth} "
        f"rules={model.rule_count} rows={ds.n_rows}"
    )
    return EXIT_OK


def cmd_evaluate(args) -> int:
    model = _load_model(args.model)
    ds = encode_with_schema(load_csv(args.test), model.schema)
    results = [run_batch(model, [int(v) for v in row], args.sigma) for row in ds.rows]
    report = evaluate(results, ds, args.beta)
    text = report_json(report) if args.format == "json" else series_csv(report)
    _write_out(text, args.output)
    return EXIT_OK


def cmd_investigate(args) -> int:
    model = _load_model(args.model)
    session = Session(model, args.sigma)
    schema = model.schema

    def show(step) -> None:
        name = schema[step.attribute].name
        label = schema[step.attribute].domain[step.value]
        print(f"  = {name}: {label} (C* {step.confidence:.3f})")

    while not session.finished:
        attr = schema[session.pending]
        prompt = f"? {attr.name} ({'/'.join(attr.domain)}): "
        sys.stdout.write(prompt)
        sys.stdout.flush()
        line = sys.stdin.readline()
        if not line:
            print("\ninput ended before the interview finished", file=sys.stderr)
            return EXIT_DATA
        label = line.strip()
        try:
            value = attr.label_index(label)
        except DataError as exc:
            print(f"  {exc}", file=sys.stderr)
            continue
        for step in session.submit_answer(session.pending, value):
            if hasattr(step, "confidence"):
                show(step)
    result = session.result()
    asked = len(result.indicators) - sum(result.indicators)
    print(f"finished: {asked} asked, {sum(result.indicators)} predicted")
    print(" ".join(
        f"{schema[j].name}={schema[j].domain[v]}" for j, v in enumerate(result.final_values)
    ))
    return EXIT_OK


def _default_grid(seed: int) -> list[SynthSpec]:
    specs = []
    for i, n in enumerate((4, 6, 8)):
        plan = tuple((j, j + 1, 0.9) for j in range(n - 1))
        specs.append(
            SynthSpec(n=n, domain_sizes=(3,) * n, m=200, dependency_plan=plan, seed=seed + i)
        )
    return specs


def cmd_bench(args) -> int:
    if args.spec:
        doc = json.loads(Path(args.spec).read_text(encoding="utf-8"))
        if not isinstance(doc, list):
            raise DataError("workload spec must be a JSON list")
        specs = []
        for i, entry in enumerate(doc):
            specs.append(
                SynthSpec(
                    n=entry["n"],
                    domain_sizes=tuple(entry["domain_sizes"]),
                    m=entry["m"],
                    dependency_plan=tuple(tuple(e) for e in entry.get("dependency_plan", [])),
                    seed=entry.get("seed", args.seed + i),
                )
            )
    else:
        specs = _default_grid(args.seed)
    report = scaling_run(
        specs, sigma=args.sigma, beta=args.beta, node_budget=args.node_budget
    )
    text = report.to_json() if args.format == "json" else report.to_csv()
    _write_out(text, args.output)
    return EXIT_OK


def cmd_compare(args) -> int:
    train_ds = preprocess(load_csv(args.train))
    test_ds = encode_with_schema(load_csv(args.test), train_ds.schema)
    config = BuildConfig(aggregation_mode=args.aggregation, min_support=args.min_support)
    report = compare_methods(train_ds, test_ds, args.sigma, args.beta, config)

    def brief(r) -> dict:
        return {"aar": r.aar, "sar": r.sar, "arr": r.arr, "srr": r.srr, "af": r.af, "sf": r.sf}

    doc = {
        "sigma": report.sigma,
        "beta": report.beta,
        "fpqm": brief(report.fpqm),
        "baseline": brief(report.baseline),
    }
    print(json.dumps(doc, sort_keys=True, separators=(",", ":")))
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    host, _, port_text = args.listen.rpartition(":")
    if not host or not port_text.isdigit():
        raise DataError(f"--listen expects host:port, got {args.listen!r}")
    app = create_app(data_dir=args.data_dir)
    uvicorn.run(app, host=host, port=int(port_text), log_level="warning")
    return EXIT_OK


def cmd_inspect(args) -> int:
    model = _load_model(args.model)
    doc = {
        "root_attribute": model.schema[model.root.attribute].name,
        "depth": model.depth,
        "rule_count": model.rule_count,
        "schema_digest": model.schema_digest,
        "aggregation_mode": model.config.aggregation_mode,
        "min_support": model.config.min_support,
        "attributes": [a.name for a in model.schema],
    }
    print(json.dumps(doc, sort_keys=True, separators=(",", ":")))
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit:
        raise
    except (DataError, ModelFormatError, BudgetError, FileNotFoundError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except KeyboardInterrupt:
        return EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001  anything else is a bug, not bad data
        print(f"internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
