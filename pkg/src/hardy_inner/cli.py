"""Command-line front end: construct, verify, recover, scan, compare.

Exit codes
----------
0  success (``verify``: verdict Inner)
1  bad input (malformed JSON, invalid weight/spec, zero function, radius > 1)
2  ill-conditioned Gram or moment system
3  ``verify``: verdict NotInner
4  ``verify``: verdict Inconclusive
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path
from typing import Any

import numpy as np

from . import __version__
from .blaschke import (
    BlaschkeSpec,
    classical_blaschke,
    classify_zeros,
    compare_to_oracle,
    construct_blaschke_analogue,
)
from .divisor import DEFAULT_M_POLY, inner_from_kernel
from .errors import HardyInnerError, IllConditionedGram, OutsideDomain
from .innercheck import DEFAULT_M, Verdict, inner_report
from .series import DEFAULT_N, SeriesFn, evaluate
from .weights import make_weight

SCHEMA_VERSION = 1
BOUNDARY_RADIUS = 0.999

log = logging.getLogger("hardy_inner")

VERDICT_EXIT = {Verdict.INNER: 0, Verdict.NOT_INNER: 3, Verdict.INCONCLUSIVE: 4}


class InputError(ValueError):
    pass


def _load_json(value: str, what: str) -> Any:
    """Parse ``value`` as a path to a JSON file, or failing that as inline JSON."""
    path = Path(value)
    try:
        if path.exists():
            with path.open("r", encoding="utf-8") as handle:
                return json.load(handle)
        return json.loads(value)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what}: malformed JSON ({exc.msg} at line {exc.lineno})") from exc


def _load_weight(value: str):
    path = Path(value)
    if not path.exists() and not value.lstrip().startswith("{"):
        return make_weight(value)
    return make_weight(_load_json(value, "--weight"))


def _load_series(value: str, what: str) -> SeriesFn:
    try:
        return SeriesFn.from_json(_load_json(value, what))
    except (ValueError, KeyError) as exc:
        raise InputError(f"{what}: {exc}") from exc


def _load_spec(value: str) -> BlaschkeSpec:
    try:
        return BlaschkeSpec.from_json(_load_json(value, "--spec"))
    except InputError:
        raise
    except ValueError as exc:
        raise InputError(f"--spec: {exc}") from exc


def _out_dir(path: Path) -> Path:
    path.mkdir(parents=True, exist_ok=True)
    return path


def _write_json(path: Path, payload: dict) -> None:
    with path.open("w", encoding="utf-8") as handle:
        json.dump(payload, handle, indent=2, sort_keys=True)
        handle.write("\n")


def _write_csv(path: Path, header: list[str], rows, kind: str) -> None:
    with path.open("w", encoding="utf-8", newline="") as handle:
        handle.write(f"# hardy_inner {kind} schema_version={SCHEMA_VERSION}\n")
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([f"{x:.17g}" if isinstance(x, float) else x for x in row])


def _complex_json(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _zero_rows(zeros) -> list:
    return [(float(z.z.real), float(z.z.imag), z.kind) for z in zeros]


def _zeros_json(zeros) -> list:
    return [{"z": _complex_json(z.z), "multiplicity": z.multiplicity, "kind": z.kind} for z in zeros]


def _boundary_rows(f: SeriesFn, n: int) -> list:
    theta = np.linspace(0.0, 2 * np.pi, n, endpoint=False)
    vals = np.abs(evaluate(f, BOUNDARY_RADIUS * np.exp(1j * theta)))
    return [(float(t), float(v)) for t, v in zip(theta, vals)]


# commands ---------------------------------------------------------------


def cmd_construct(args) -> int:
    w = _load_weight(args.weight)
    spec = _load_spec(args.spec)
    out = _out_dir(args.out)
    res = construct_blaschke_analogue(w, spec, args.N)
    rep = inner_report(res.B, M=args.M_ortho, seed=args.seed)
    zeros = classify_zeros(res.B, spec, args.radius)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "construct",
        "weight": w.descriptor(),
        "spec": spec.to_json(),
        "N": args.N,
        "gram_condition": res.gram_condition,
        "inner_report": rep.to_json(),
        "zeros": _zeros_json(zeros),
        "flags": list(res.flags),
    }
    if w.kind == "hardy":
        cmp = compare_to_oracle(res.B, classical_blaschke(spec, args.N))
        report["oracle"] = {
            "max_deviation": cmp.max_deviation,
            "fitted_phase": _complex_json(cmp.fitted_phase),
        }
    _write_json(out / "B.json", res.B.to_json())
    _write_json(out / "report.json", report)
    _write_csv(out / "zeros.csv", ["re", "im", "kind"], _zero_rows(zeros), "zeros")
    _write_csv(out / "boundary.csv", ["theta", "modulus"], _boundary_rows(res.B, args.grid), "boundary")
    print(f"verdict={rep.verdict.value} gram_condition={res.gram_condition:.3e} out={out}")
    return 0


def cmd_verify(args) -> int:
    f = _load_series(args.series, "--series")
    out = _out_dir(args.out)
    rep = inner_report(f, M=args.M_ortho, seed=args.seed)
    _write_json(
        out / "report.json",
        {"schema_version": SCHEMA_VERSION, "command": "verify", "inner_report": rep.to_json()},
    )
    print(f"verdict={rep.verdict.value} norm_dev={rep.norm_dev:.3e} ortho_defect={rep.ortho_defect:.3e}")
    return VERDICT_EXIT[rep.verdict]


def cmd_recover(args) -> int:
    b = _load_series(args.b, "--b")
    out = _out_dir(args.out)
    rec = inner_from_kernel(b, args.M_poly)
    rep = inner_report(rec.u, M=args.M_ortho, seed=args.seed)
    residuals = {
        "reproducing_defect": float(np.max(np.abs(rec.kernel.residuals))),
        "moment_condition": rec.kernel.condition,
        "M_poly": rec.M_poly,
        "norm_dev": rep.norm_dev,
        "ortho_defect": rep.ortho_defect,
    }
    _write_json(out / "u.json", rec.u.to_json())
    _write_json(
        out / "report.json",
        {
            "schema_version": SCHEMA_VERSION,
            "command": "recover",
            "b": b.to_json(),
            "R0": rec.kernel.R0.to_json(),
            "u": rec.u.to_json(),
            "residuals": residuals,
            "inner_report": rep.to_json(),
        },
    )
    print(f"verdict={rep.verdict.value} M_poly={rec.M_poly} out={out}")
    return 0


def cmd_scan(args) -> int:
    if args.radius > 1.0:
        raise OutsideDomain(f"--radius {args.radius} exceeds 1")
    f = _load_series(args.series, "--series")
    spec = _load_spec(args.spec) if args.spec else None
    out = _out_dir(args.out)
    zeros = classify_zeros(f, spec, args.radius)
    _write_csv(out / "zeros.csv", ["re", "im", "kind"], _zero_rows(zeros), "zeros")
    n_extra = sum(z.kind == "extraneous" for z in zeros)
    print(f"zeros={len(zeros)} extraneous={n_extra} out={out}")
    return 0


def cmd_compare(args) -> int:
    f = _load_series(args.series, "--series")
    g = _load_series(args.oracle, "--oracle")
    out = _out_dir(args.out)
    cmp = compare_to_oracle(f, g)
    _write_json(
        out / "compare.json",
        {
            "schema_version": SCHEMA_VERSION,
            "command": "compare",
            "max_deviation": cmp.max_deviation,
            "fitted_phase": _complex_json(cmp.fitted_phase),
        },
    )
    print(f"max_deviation={cmp.max_deviation:.3e}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hardy-inner", description="Inner functions in weighted Hardy spaces."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, weight=False):
        if weight:
            p.add_argument("--weight", default="hardy", help="builtin name, JSON descriptor or file")
        p.add_argument("--M-ortho", dest="M_ortho", type=int, default=DEFAULT_M)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", type=Path, default=Path("out"))

    p = sub.add_parser("construct", help="build the analogue of a finite Blaschke product")
    common(p, weight=True)
    p.add_argument("--spec", required=True, help='e.g. {"d0":1,"zeros":[{"z":[0.5,0],"mult":2}]}')
    p.add_argument("--N", type=int, default=DEFAULT_N)
    p.add_argument("--radius", type=float, default=0.999)
    p.add_argument("--grid", type=int, default=360, help="boundary samples")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="test whether a series is inner")
    common(p)
    p.add_argument("--series", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("recover", help="inner factor u = b R0 / ||b R0||")
    common(p)
    p.add_argument("--b", required=True)
    p.add_argument("--M-poly", dest="M_poly", type=int, default=DEFAULT_M_POLY)
    p.set_defaults(func=cmd_recover)

    p = sub.add_parser("scan", help="zeros of a series inside a disk")
    p.add_argument("--series", required=True)
    p.add_argument("--spec", default=None)
    p.add_argument("--radius", type=float, default=0.999)
    p.add_argument("--out", type=Path, default=Path("out"))
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("compare", help="max deviation up to a unimodular constant")
    p.add_argument("--series", required=True)
    p.add_argument("--oracle", required=True)
    p.add_argument("--out", type=Path, default=Path("out"))
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except IllConditionedGram as exc:
        print(
            f"error: {exc}. Try moving zeros away from the circle or from each other, "
            "lowering multiplicities, or reducing --N / --M-poly.",
            file=sys.stderr,
        )
        return 2
    except (InputError, HardyInnerError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
