"""Command-line front end.

    rankbounds test DATA [DATA2] --method location-scale --alpha 0.05
    rankbounds test --example hcv --labels hepatitis cirrhosis
    rankbounds simulate --preset mcar_sweep --seed 1 --out mcar.csv
    rankbounds oracle-check --max-n 8

Exit status is 0 on success (including an insufficient-evidence decision),
2 for invalid input and 3 for internal failures.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .combined import Method, TestReport, run_test
from .core import PartialSample, break_ties_jitter, validate_distinct
from .exceptions import DegenerateVariance, InvalidInput, LabelError, ParseError, RankBoundsError, TieError

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INTERNAL = 3

DEFAULT_TOKEN = "NA"
EXAMPLES = {"hcv": ("hcv_chol.csv", "*")}


# ----------------------------------------------------------------------------
# dataset ingestion


def example_path(name: str):
    if name not in EXAMPLES:
        raise InvalidInput(f"unknown example {name!r}; available: {', '.join(sorted(EXAMPLES))}")
    return resources.files("rankbounds") / "data" / EXAMPLES[name][0]


def _split(line: str) -> list[str]:
    if "," in line:
        return [f.strip() for f in next(csv.reader([line]))]
    if "\t" in line:
        return [f.strip() for f in line.split("\t")]
    return line.split()


def _parse_value(text: str, token: str, lineno: int) -> Optional[float]:
    if text == token:
        return None
    try:
        v = float(text)
    except ValueError:
        raise ParseError(f"cannot parse {text!r} as a number or the missing token {token!r}", lineno) from None
    if not math.isfinite(v):
        raise ParseError(f"non-finite value {text!r}", lineno)
    return v


def _rows(text: str, width: int, token: str):
    """Yield ``(lineno, fields)`` for data rows; a non-numeric first row is a header."""
    seen_data = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = _split(line)
        if len(fields) != width:
            raise ParseError(f"expected {width} field(s), found {len(fields)}", lineno)
        if not seen_data:
            seen_data = True
            value = fields[-1]
            if value != token:
                try:
                    float(value)
                except ValueError:
                    continue  # header
        yield lineno, fields


def read_table(text: str, missing_token: str = DEFAULT_TOKEN) -> dict[str, list]:
    """Two-column ``label,value`` table as ``{label: [value or None, ...]}``."""
    groups: dict[str, list] = {}
    for lineno, (label, value) in _rows(text, 2, missing_token):
        groups.setdefault(label, []).append(_parse_value(value, missing_token, lineno))
    return groups


def read_column(text: str, missing_token: str = DEFAULT_TOKEN) -> list:
    return [_parse_value(f[0], missing_token, lineno) for lineno, f in _rows(text, 1, missing_token)]


def _to_partial(values: list) -> PartialSample:
    return PartialSample([v for v in values if v is not None], len(values))


def _read_text(path) -> str:
    if hasattr(path, "read_text"):
        return path.read_text()
    return Path(path).read_text()


def parse_dataset(
    paths,
    missing_token: str = DEFAULT_TOKEN,
    labels: Optional[Sequence[str]] = None,
    jitter: Optional[float] = None,
    seed: int = 0,
) -> tuple[PartialSample, PartialSample]:
    """Read two partially observed samples from disk.

    ``paths`` is either one two-column ``label,value`` table or a pair of
    one-column files.  In the table form the first label (or the first of
    ``labels``) becomes X.  Ties between observed values raise
    :class:`TieError` unless ``jitter`` is given.
    """
    if isinstance(paths, (str, Path)) or hasattr(paths, "read_text"):
        paths = [paths]
    paths = list(paths)
    if len(paths) == 2:
        x, y = (read_column(_read_text(p), missing_token) for p in paths)
    elif len(paths) == 1:
        groups = read_table(_read_text(paths[0]), missing_token)
        found = list(groups)
        if labels is None:
            if len(found) != 2:
                raise LabelError(
                    f"expected exactly two sample labels, found {len(found)}: {', '.join(found)}; "
                    "pick two with --labels"
                )
            labels = found
        labels = list(labels)
        if len(labels) != 2 or labels[0] == labels[1]:
            raise LabelError(f"need two different labels, got {labels}")
        for lab in labels:
            if lab not in groups:
                raise LabelError(f"label {lab!r} not in dataset (found: {', '.join(found)})")
        x, y = groups[labels[0]], groups[labels[1]]
    else:
        raise InvalidInput(f"expected one table or two column files, got {len(paths)} paths")
    X, Y = _to_partial(x), _to_partial(y)
    if X.total_size == 0 or Y.total_size == 0:
        raise InvalidInput("both samples need at least one row")
    pooled = np.concatenate([X.observed, Y.observed])
    if jitter is not None:
        pooled = break_ties_jitter(pooled, jitter, seed)
        X = PartialSample(pooled[: X.n_observed], X.total_size)
        Y = PartialSample(pooled[X.n_observed:], Y.total_size)
    else:
        try:
            validate_distinct(pooled)
        except TieError as exc:
            raise TieError(exc.value, f"{exc}; rerun with --jitter SCALE --seed K to break ties") from None
    return X, Y


# ----------------------------------------------------------------------------
# output

REPORT_CSV_COLUMNS = (
    "method", "component", "n", "n_observed", "m", "m_observed", "stat_min", "stat_max",
    "null_mean", "null_var", "p_min", "p_max", "alpha", "decision",
)


def report_to_csv(report: TestReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(REPORT_CSV_COLUMNS)

    def row(d, component):
        cells = [d["method"], component] + [d[k] for k in REPORT_CSV_COLUMNS[2:]]
        writer.writerow(["" if c is None else (repr(c) if isinstance(c, float) else c) for c in cells])

    d = report.to_dict()
    row(d, "")
    for name, comp in d["components"].items():
        row(comp, name)
    return buf.getvalue()


# ----------------------------------------------------------------------------
# commands


def _cmd_test(args) -> int:
    if args.example:
        if args.data:
            raise InvalidInput("give either data files or --example, not both")
        paths = [example_path(args.example)]
        token = args.missing_token if args.missing_token is not None else EXAMPLES[args.example][1]
    else:
        if not args.data:
            raise InvalidInput("no data given: pass DATA [DATA2] or --example")
        if len(args.data) > 2:
            raise InvalidInput("at most two data files")
        paths = args.data
        token = args.missing_token if args.missing_token is not None else DEFAULT_TOKEN
    if args.jitter is not None and args.seed is None:
        raise InvalidInput("--jitter requires --seed")
    if not 0 < args.alpha < 1:
        raise InvalidInput(f"--alpha must lie in (0, 1), got {args.alpha}")
    X, Y = parse_dataset(paths, token, labels=args.labels, jitter=args.jitter, seed=args.seed or 0)
    report = run_test(Method(args.method), X, Y, args.alpha)
    if args.out == "json":
        sys.stdout.write(report.to_json() + "\n")
    else:
        sys.stdout.write(report_to_csv(report))
    return EXIT_OK


def _cmd_simulate(args) -> int:
    from dataclasses import replace

    from .sim import expand_config, list_presets, load_config, preset, results_to_csv, run_cells

    if args.list_presets:
        sys.stdout.write("\n".join(list_presets()) + "\n")
        return EXIT_OK
    if (args.config is None) == (args.preset is None):
        raise InvalidInput("give exactly one of --config FILE or --preset NAME")
    try:
        doc = load_config(args.config) if args.config else preset(args.preset)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"--config: invalid JSON ({exc})") from None
    cells = expand_config(doc, seed=args.seed)
    if args.only:
        cells = [c for c in cells if c.config_id in set(args.only)]
        if not cells:
            raise InvalidInput("--only matched no experiment ids")
    if args.trials is not None:
        if args.trials < 1:
            raise InvalidInput("--trials must be positive")
        cells = [replace(c, trials=args.trials) for c in cells]

    def progress(res):
        if args.progress:
            c = res.config
            print(f"{c.config_id} s={c.s} n={c.n} {c.strategy.value}: {res.rate:.3f}", file=sys.stderr)

    text = results_to_csv(run_cells(cells, n_jobs=args.n_jobs, progress=progress))
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text)
    return EXIT_OK


def _cmd_oracle_check(args) -> int:
    from .oracle import oracle_check

    if args.max_n < 2 or args.max_n > 12:
        raise InvalidInput("--max-n must lie in [2, 12]")
    summary = oracle_check(args.max_n, draws=args.draws, seed=args.seed, moment_max=args.moment_max)
    print(summary.describe())
    return EXIT_OK if summary.ok else EXIT_INTERNAL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rankbounds", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("test", help="run a scale, location or location-scale test on a dataset")
    p.add_argument("data", nargs="*", help="label,value table, or two one-column files")
    p.add_argument("--example", choices=sorted(EXAMPLES), help="use a bundled dataset instead of DATA")
    p.add_argument("--labels", nargs=2, metavar=("X", "Y"), help="sample labels to compare (table form)")
    p.add_argument("--method", choices=[m.value for m in Method], default=Method.LOCATION_SCALE.value)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--missing-token", default=None, help=f"marker of a missing value (default {DEFAULT_TOKEN!r})")
    p.add_argument("--jitter", type=float, default=None, metavar="SCALE", help="break ties by perturbations below SCALE")
    p.add_argument("--seed", type=int, default=None, help="seed for --jitter")
    p.add_argument("--out", choices=["json", "csv"], default="json")
    p.set_defaults(func=_cmd_test)

    p = sub.add_parser("simulate", help="run Monte-Carlo experiments and write a CSV")
    p.add_argument("--config", help="JSON experiment file")
    p.add_argument("--preset", help="bundled experiment file (see --list-presets)")
    p.add_argument("--list-presets", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="-", help="output CSV path, '-' for stdout")
    p.add_argument("--trials", type=int, default=None, help="override the trial count of every cell")
    p.add_argument("--only", nargs="+", metavar="ID", help="run only these experiment ids")
    p.add_argument("--n-jobs", type=int, default=1)
    p.add_argument("--progress", action="store_true", help="report each finished cell on stderr")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("oracle-check", help="compare closed-form bounds and moments with brute force")
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--draws", type=int, default=20, help="random draws per sample shape")
    p.add_argument("--moment-max", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_oracle_check)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InvalidInput, DegenerateVariance, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except RankBoundsError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001 - map anything unexpected to exit 3
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
