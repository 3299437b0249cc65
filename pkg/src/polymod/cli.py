"""Command-line interface.

Five subcommands: ``forward`` (weight vector to shape), ``invert`` (shape
pair to weight vector), ``complex`` (glued-complex reports), ``verify``
(randomized invariant suites), and ``sweep`` (CSV batch of forward maps).

stdout carries data (JSON documents or CSV), stderr carries diagnostics.
Every JSON document has ``schema`` and ``version`` fields and floats at 17
significant digits.  Exit codes: 0 success, 1 verification failures, 2 input
error, 3 the recovery circles do not intersect, 4 inconsistent shape pair,
5 an equal-weight precondition was violated.

The environment variable POLYMOD_CONFIG may point to a JSON file providing
defaults for ``tol``, ``tol_sum``, ``tol_ideal``, ``samples``, ``seed``,
``format``, and ``jobs``; explicit flags override it.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, replace

from .combinatorics import as_word, validate_weight
from .complexes import (
    build_complex,
    cusp_classes,
    euler_characteristic,
    singular_edges,
)
from .errors import OutOfRange, PolymodError
from .fiber import inversion_report
from .jsonio import csv_row, dumps_canonical, parse_label, parse_shape, parse_theta
from .moduli import (
    HexahedronShape,
    PentagonShape,
    classify_hexahedron,
    pentagon_side_lengths,
    psi5,
    psi6,
)
from .verify import SUITES, run_suite

IDENTITY = {5: (1, 2, 3, 4, 5), 6: (1, 2, 3, 4, 5, 6)}

_CONFIG_ENV = "POLYMOD_CONFIG"


@dataclass(frozen=True)
class RunConfig:
    """Tolerances, sampling, and parallelism shared by the subcommands."""

    tol: float = 1e-9
    tol_sum: float = 1e-12
    tol_ideal: float = 1e-9
    samples: int = 1000
    seed: int = 0
    format: str = "json"
    jobs: int = 1

    def __post_init__(self):
        for name in ("tol", "tol_sum", "tol_ideal"):
            if not getattr(self, name) > 0.0:
                raise OutOfRange(f"{name} must be positive, got {getattr(self, name)!r}")
        if self.samples < 1:
            raise OutOfRange(f"samples must be >= 1, got {self.samples!r}")
        if self.jobs < 1:
            raise OutOfRange(f"jobs must be >= 1, got {self.jobs!r}")
        if self.format not in ("json", "csv"):
            raise OutOfRange(f"format must be 'json' or 'csv', got {self.format!r}")


_CONFIG_TYPES = {
    "tol": float,
    "tol_sum": float,
    "tol_ideal": float,
    "samples": int,
    "seed": int,
    "format": str,
    "jobs": int,
}


def load_config(environ=None) -> RunConfig:
    """RunConfig from the optional POLYMOD_CONFIG JSON file."""
    env = os.environ if environ is None else environ
    path = env.get(_CONFIG_ENV)
    if not path:
        return RunConfig()
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, ValueError) as exc:
        raise OutOfRange(f"cannot read config file {path!r}: {exc}") from exc
    if not isinstance(raw, dict):
        raise OutOfRange(f"config file {path!r} must hold a JSON object")
    fields = {}
    for key, value in raw.items():
        if key not in _CONFIG_TYPES:
            raise OutOfRange(
                f"unknown config key {key!r}; known keys: "
                f"{', '.join(sorted(_CONFIG_TYPES))}"
            )
        try:
            fields[key] = _CONFIG_TYPES[key](value)
        except (TypeError, ValueError) as exc:
            raise OutOfRange(f"bad config value for {key!r}: {value!r}") from exc
    return RunConfig(**fields)


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    config = load_config()
    overrides = {
        key: getattr(args, key)
        for key in _CONFIG_TYPES
        if getattr(args, key, None) is not None
    }
    return replace(config, **overrides) if overrides else config


def _emit(doc: dict) -> None:
    sys.stdout.write(dumps_canonical(doc) + "\n")


def _parse_weight(spec: str, n: int):
    theta = validate_weight(parse_theta(spec))
    if theta.n != n:
        raise OutOfRange(f"--theta has {theta.n} angles but --n is {n}")
    return theta


def _parse_word(spec: str | None, n: int) -> tuple[int, ...]:
    if spec is None:
        return IDENTITY[n]
    return as_word(parse_label(spec))


# --------------------------------------------------------------------------- #
# subcommands
# --------------------------------------------------------------------------- #

def cmd_forward(args: argparse.Namespace, config: RunConfig) -> int:
    theta = _parse_weight(args.theta, args.n)
    word = _parse_word(args.label, args.n)
    if len(word) != args.n:
        raise OutOfRange(f"--label has {len(word)} marks but --n is {args.n}")
    doc = {
        "schema": "polymod-forward/1",
        "version": 1,
        "n": args.n,
        "theta": list(theta.theta),
        "label": "".join(str(m) for m in word),
    }
    if args.n == 5:
        shape = psi5(theta, word)
        sides = pentagon_side_lengths(shape)
        doc["shape"] = {"P": shape.P, "Q": shape.Q}
        doc["facet_order"] = list(sides.facet_order)
        doc["side_lengths"] = list(sides.lengths)
    else:
        shape = psi6(theta, word)
        doc["shape"] = {"P": shape.P, "Q": shape.Q, "R": shape.R}
        doc["classification"] = classify_hexahedron(shape)
    _emit(doc)
    return 0


def cmd_invert(args: argparse.Namespace, config: RunConfig) -> int:
    if args.n == 5:
        s1 = PentagonShape(*parse_shape(args.shape1, 5))
        s2 = PentagonShape(*parse_shape(args.shape2, 5))
    else:
        s1 = HexahedronShape(*parse_shape(args.shape1, 6))
        s2 = HexahedronShape(*parse_shape(args.shape2, 6))
    report = inversion_report(args.n, s1, s2, config.tol)
    _emit(
        {
            "schema": "polymod-invert/1",
            "version": 1,
            "n": args.n,
            "shape1": list(s1.params if args.n == 6 else (s1.P, s1.Q)),
            "shape2": list(s2.params if args.n == 6 else (s2.P, s2.Q)),
            "w": list(report["w"].as_pair),
            "theta": list(report["theta"].theta),
            "residual": report["residual"],
        }
    )
    return 0


def cmd_complex(args: argparse.Namespace, config: RunConfig) -> int:
    theta = _parse_weight(args.theta, args.n) if args.theta else None
    complex_ = build_complex(args.n, theta)
    doc = {
        "schema": "polymod-complex/1",
        "version": 1,
        "n": args.n,
        "theta": list(complex_.theta.theta),
        "report": args.report,
    }
    if args.report == "euler":
        doc.update(
            {
                "V": len(complex_.vertex_classes or ()),
                "E": complex_.num_pairings,
                "F": complex_.num_cells,
                "chi": euler_characteristic(complex_),
            }
        )
    elif args.report == "cusps":
        doc.update(cusp_classes(complex_))
    elif args.report == "pairings":
        doc["rows"] = complex_.num_pairings
        doc["pairings"] = [
            {
                "cell": p.cell_a,
                "face": p.face_a,
                "other_cell": p.cell_b,
                "other_face": p.face_b,
                "config": p.config.render(),
            }
            for p in complex_.pairings
        ]
    else:  # singular
        doc.update(singular_edges(complex_))
    _emit(doc)
    return 0


def cmd_verify(args: argparse.Namespace, config: RunConfig) -> int:
    report = run_suite(
        args.suite,
        args.n,
        samples=config.samples,
        seed=config.seed,
        tol=config.tol,
        jobs=config.jobs,
    )
    _emit(report)
    return 0 if report["pass"] else 1


def cmd_sweep(args: argparse.Namespace, config: RunConfig) -> int:
    word = _parse_word(args.label, args.n)
    if len(word) != args.n:
        raise OutOfRange(f"--label has {len(word)} marks but --n is {args.n}")
    try:
        with open(args.input, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise OutOfRange(f"cannot read input file {args.input!r}: {exc}") from exc

    if args.n == 5:
        header = [f"theta{i}" for i in range(1, 6)] + ["P", "Q"]
    else:
        header = (
            [f"theta{i}" for i in range(1, 7)]
            + ["P", "Q", "R", "type", "sign_P", "sign_Q", "sign_R"]
        )
    out_lines = [",".join(header)]

    for row_number, line in enumerate(lines, start=1):
        text = line.strip()
        if not text:
            continue
        if row_number == 1 and _looks_like_header(text):
            continue
        try:
            theta = _parse_weight(text, args.n)
            if args.n == 5:
                shape = psi5(theta, word)
                cells = list(theta.theta) + [shape.P, shape.Q]
            else:
                shape = psi6(theta, word)
                cells = (
                    list(theta.theta)
                    + [shape.P, shape.Q, shape.R]
                    + [classify_hexahedron(shape)["type"]]
                    + list(shape.signs)
                )
        except PolymodError as exc:
            sys.stderr.write(f"row {row_number}: {type(exc).__name__}: {exc}\n")
            continue
        out_lines.append(csv_row(cells))

    data = "\n".join(out_lines) + "\n"
    if args.out == "-":
        sys.stdout.write(data)
    else:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(data)
        except OSError as exc:
            raise OutOfRange(f"cannot write output file {args.out!r}: {exc}") from exc
    return 0


def _looks_like_header(line: str) -> bool:
    """True when no cell of the first row parses as an angle token."""
    for cell in line.split(","):
        try:
            parse_theta(cell)
        except PolymodError:
            continue
        return False
    return True


# --------------------------------------------------------------------------- #
# parser
# --------------------------------------------------------------------------- #

def _add_config_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--tol", type=float, default=None, help="verification tolerance")
    sub.add_argument("--samples", type=int, default=None, help="number of random trials")
    sub.add_argument("--seed", type=int, default=None, help="base RNG seed")
    sub.add_argument("--jobs", type=int, default=None, help="worker processes")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polymod",
        description="Shapes of weighted point configurations: forward and "
        "inverse maps, glued complexes, and verification suites.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    forward = sub.add_parser("forward", help="weight vector to shape parameters")
    forward.add_argument("--n", type=int, required=True, choices=(5, 6))
    forward.add_argument("--theta", required=True, help="angles, e.g. '5x2pi/5'")
    forward.add_argument("--label", default=None, help="label word, e.g. 21435")
    _add_config_flags(forward)
    forward.set_defaults(func=cmd_forward)

    invert = sub.add_parser("invert", help="designated shape pair to weight vector")
    invert.add_argument("--n", type=int, required=True, choices=(5, 6))
    invert.add_argument("--shape1", required=True, help="'P,Q' or 'P,Q,R'")
    invert.add_argument("--shape2", required=True, help="'P,Q' or 'P,Q,R'")
    _add_config_flags(invert)
    invert.set_defaults(func=cmd_invert)

    complex_ = sub.add_parser("complex", help="glued-complex reports")
    complex_.add_argument("--n", type=int, required=True, choices=(5, 6))
    complex_.add_argument("--theta", default=None, help="defaults to equal weight")
    complex_.add_argument(
        "--report",
        required=True,
        choices=("euler", "cusps", "pairings", "singular"),
    )
    _add_config_flags(complex_)
    complex_.set_defaults(func=cmd_complex)

    verify = sub.add_parser("verify", help="randomized verification suites")
    verify.add_argument("--suite", required=True, choices=SUITES)
    verify.add_argument("--n", type=int, required=True, choices=(5, 6))
    _add_config_flags(verify)
    verify.set_defaults(func=cmd_verify)

    sweep = sub.add_parser("sweep", help="batch forward maps over a CSV of angles")
    sweep.add_argument("--n", type=int, required=True, choices=(5, 6))
    sweep.add_argument("--input", required=True, help="CSV file, one theta per row")
    sweep.add_argument("--label", default=None, help="label word for every row")
    sweep.add_argument("--out", required=True, help="output CSV path ('-' = stdout)")
    _add_config_flags(sweep)
    sweep.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = _resolve_config(args)
        return args.func(args, config)
    except PolymodError as exc:
        _emit(
            {
                "schema": "polymod-error/1",
                "version": 1,
                "error": type(exc).__name__,
                "message": str(exc),
            }
        )
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
