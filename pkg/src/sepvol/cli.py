"""Command-line front end and the on-disk file formats.

State files are JSON with explicit real/imaginary pairs::

    {"dims": [2, 2], "matrix": [[[re, im], ...], ...]}

Exit codes: 0 success, 2 usage or parse error, 3 invalid state,
4 output I/O error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import Sequence

import numpy as np

from .certificates import (
    CertificateResult,
    Verdict,
    certify_all,
    certify_entangled_ball,
    certify_mixed_ball,
    entangled_ball_radius,
    mixed_ball_radius,
    purity_threshold,
    spin_matrix,
)
from .sampling import Measure, SeedSpec
from .tensor import DensityMatrix, StateValidationError, validate_density
from .volume import (
    CSV_COLUMNS,
    estimate_fractions,
    sandwich_report,
    separable_volume_lower_bound,
    separable_volume_upper_bound,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INVALID_STATE = 3
EXIT_IO = 4


class StateFileError(ValueError):
    """The file is not a well-formed state file (distinct from a
    well-formed file holding an invalid state)."""


def read_state_file(path: str, dims_override: tuple[int, ...] | None = None) -> DensityMatrix:
    """Parse and validate a state file.

    Raises :class:`StateFileError` on malformed input and
    :class:`StateValidationError` when the matrix is not a state. A dims
    override reinterprets the subsystem split; its product must match the
    matrix size.
    """
    try:
        with open(path) as fh:
            payload = json.load(fh)
    except OSError as exc:
        raise StateFileError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise StateFileError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(payload, dict) or "dims" not in payload or "matrix" not in payload:
        raise StateFileError(f"{path}: expected an object with 'dims' and 'matrix'")
    dims = payload["dims"]
    raw = payload["matrix"]
    try:
        arr = np.asarray(raw, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise StateFileError(f"{path}: matrix entries must be [re, im] pairs") from exc
    if arr.ndim != 3 or arr.shape[2] != 2 or arr.shape[0] != arr.shape[1]:
        raise StateFileError(
            f"{path}: matrix must be square with [re, im] entries, got shape {arr.shape}"
        )
    matrix = arr[..., 0] + 1j * arr[..., 1]
    if dims_override is not None:
        n = int(np.prod(dims_override))
        if n != matrix.shape[0]:
            raise StateFileError(
                f"--dims {dims_override} implies size {n}, file matrix is {matrix.shape[0]}x{matrix.shape[0]}"
            )
        dims = dims_override
    return validate_density(matrix, tuple(int(d) for d in dims))


def write_state_file(path: str, rho: DensityMatrix) -> None:
    payload = {
        "dims": list(rho.dims.dims),
        "matrix": [[[z.real, z.imag] for z in row] for row in rho.matrix],
    }
    with open(path, "w") as fh:
        json.dump(payload, fh)
        fh.write("\n")


def _parse_range(text: str) -> range:
    """'2:5' -> range(2, 6); '4' -> range(4, 5)."""
    lo, _, hi = text.partition(":")
    start = int(lo)
    stop = int(hi) if hi else start
    if stop < start:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(start, stop + 1)


def _parse_dims(text: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"dims must be comma-separated integers, got {text!r}")
    if not dims or any(d < 1 for d in dims):
        raise argparse.ArgumentTypeError(f"dims must be positive, got {text!r}")
    return dims


def _bounds_tables(n_range: range, d_range: range) -> tuple[list[dict], list[dict]]:
    mixed = [
        {
            "N": n,
            "purity_threshold": purity_threshold(n),
            "mixed_ball_radius": mixed_ball_radius(n),
            "volume_lower_bound": separable_volume_lower_bound(n),
        }
        for n in n_range
    ]
    entangled = [
        {
            "d": d,
            "entangled_ball_radius": entangled_ball_radius(d),
            "volume_upper_bound": separable_volume_upper_bound(d),
        }
        for d in d_range
    ]
    return mixed, entangled


def cmd_bounds(args) -> int:
    if args.n.start < 2 or args.d.start < 2:
        print("error: N and d must be >= 2", file=sys.stderr)
        return EXIT_USAGE
    mixed, entangled = _bounds_tables(args.n, args.d)
    print("separable-side thresholds")
    print(f"  {'N':>3}  {'purity_threshold':>16}  {'mixed_ball_radius':>17}  {'volume_lower_bound':>18}")
    for row in mixed:
        print(
            f"  {row['N']:>3}  {row['purity_threshold']:>16.6g}  "
            f"{row['mixed_ball_radius']:>17.6g}  {row['volume_lower_bound']:>18.6g}"
        )
    print("entangled-side thresholds (two qudits, N = d^2)")
    print(f"  {'d':>3}  {'entangled_ball_radius':>21}  {'volume_upper_bound':>18}")
    for row in entangled:
        print(
            f"  {row['d']:>3}  {row['entangled_ball_radius']:>21.6g}  "
            f"{row['volume_upper_bound']:>18.6g}"
        )
    if args.out:
        payload = {"separable_side": mixed, "entangled_side": entangled}
        return _write_output(args.out, args.format, payload, csv_rows=mixed + entangled)
    return EXIT_OK


def _result_lines(results: Sequence[CertificateResult]) -> list[str]:
    lines = [f"  {'certificate':<14} {'verdict':<13} {'witness':>12}  {'threshold':>12}  {'margin':>12}"]
    for r in results:
        lines.append(
            f"  {r.certificate:<14} {r.verdict.value:<13} {r.witness:>12.6g}  "
            f"{r.threshold:>12.6g}  {r.margin:>12.6g}"
        )
    return lines


def _summary(results: Sequence[CertificateResult]) -> str:
    verdicts = {r.verdict for r in results}
    if Verdict.ENTANGLED in verdicts:
        return "ENTANGLED"
    if Verdict.SEPARABLE in verdicts:
        return "SEPARABLE"
    return "INCONCLUSIVE"


def cmd_certify(args) -> int:
    try:
        rho = read_state_file(args.state_file, args.dims)
    except StateFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except StateValidationError as exc:
        print(f"invalid state: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID_STATE

    results = certify_all(rho)
    print(f"state: {args.state_file}  dims: {'x'.join(str(d) for d in rho.dims.dims)}")
    print("\n".join(_result_lines(results)))

    ball_results: list[CertificateResult] = []
    if args.epsilon is not None:
        # the ball certificates classify mixtures built *from* the file
        # state, not the state itself, so they stay out of the summary
        ball_results.append(certify_mixed_ball(rho, args.epsilon))
        dims = rho.dims.dims
        if len(dims) == 2 and dims[0] == dims[1] and dims[0] >= 2:
            res, _ = certify_entangled_ball(rho, args.epsilon, dims[0])
            ball_results.append(res)
        print(f"ball certificates for mixtures at epsilon={args.epsilon:g} (state as rho'):")
        print("\n".join(_result_lines(ball_results)))

    summary = _summary(results)
    print(summary)
    if args.out:
        payload = {
            "state_file": args.state_file,
            "dims": list(rho.dims.dims),
            "results": [
                {
                    "certificate": r.certificate,
                    "verdict": r.verdict.value,
                    "witness": r.witness,
                    "threshold": r.threshold,
                    "margin": r.margin,
                }
                for r in results
            ],
            "ball_results": [
                {
                    "certificate": r.certificate,
                    "verdict": r.verdict.value,
                    "witness": r.witness,
                    "threshold": r.threshold,
                    "margin": r.margin,
                }
                for r in ball_results
            ],
            "summary": summary,
        }
        return _write_output(args.out, "json", payload)
    return EXIT_OK


def cmd_volume(args) -> int:
    if args.samples < 1:
        print("error: --samples must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    if args.workers < 1:
        print("error: --workers must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    if (args.dims is None) == (args.d is None):
        print("error: give exactly one of --dims or --d", file=sys.stderr)
        return EXIT_USAGE
    seed = SeedSpec(args.seed)
    ci = "clopper-pearson" if args.exact_ci else "wilson"
    if args.d is not None:
        if args.d < 2:
            print("error: --d must be >= 2", file=sys.stderr)
            return EXIT_USAGE
        report = sandwich_report(args.d, args.measure, args.samples, seed, args.workers, ci)
        payload = report.to_json_dict()
        csv_rows = report.estimate.to_csv_rows()
        flags = f"lower_ok={report.lower_ok} upper_ok={report.upper_ok}"
        print(
            f"ppt fraction ({report.ppt_fraction_label}): {report.ppt_fraction:.6g} "
            f"in ({report.lower_bound:.6g}, {report.upper_bound:.6g})?  {flags}"
        )
    else:
        est = estimate_fractions(args.dims, args.measure, args.samples, seed, args.workers, ci)
        payload = est.to_json_dict()
        csv_rows = est.to_csv_rows()
        for name, t in est.tallies.items():
            print(
                f"{name:<14} fraction[{t.fraction_kind}]={t.fraction:.6g} "
                f"ci95=({t.ci95[0]:.6g}, {t.ci95[1]:.6g}) "
                f"sep/ent/inc={t.separable}/{t.entangled}/{t.inconclusive}"
            )
    if args.out:
        return _write_output(args.out, args.format, payload, csv_rows=csv_rows)
    if args.format == "json":
        json.dump(payload, sys.stdout, indent=2)
        print()
    return EXIT_OK


def _grid(matrix: np.ndarray) -> str:
    rows = [
        "  [" + ", ".join(f"[{z.real:.12g},{z.imag:.12g}]" for z in row) + "]"
        for row in matrix
    ]
    return "\n".join(rows)


def cmd_basis(args) -> int:
    if args.d < 1:
        print("error: --d must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    if (args.j is None) != (args.l is None):
        print("error: give both --j and --l, or neither", file=sys.stderr)
        return EXIT_USAGE
    if args.j is not None:
        if not (0 <= args.j < args.d and 0 <= args.l < args.d):
            print(f"error: indices must lie in [0, {args.d})", file=sys.stderr)
            return EXIT_USAGE
        pairs = [(args.j, args.l)]
    else:
        pairs = [(j, l) for j in range(args.d) for l in range(args.d)]
    for j, l in pairs:
        print(f"S(j={j}, l={l}):")
        print(_grid(spin_matrix(args.d, j, l)))
    return EXIT_OK


def _write_output(path: str, fmt: str, payload: dict, csv_rows: list[dict] | None = None) -> int:
    try:
        with open(path, "w", newline="") as fh:
            if fmt == "json" or csv_rows is None:
                json.dump(payload, fh, indent=2)
                fh.write("\n")
            else:
                writer = csv.DictWriter(fh, fieldnames=sorted({k for r in csv_rows for k in r}))
                if csv_rows and set(csv_rows[0]) == set(CSV_COLUMNS):
                    writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
                writer.writeheader()
                writer.writerows(csv_rows)
    except OSError as exc:
        print(f"error: cannot write {path}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sepvol",
        description="Certify quantum states as separable or entangled and "
        "estimate the volume of separable states by Monte Carlo.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_bounds = sub.add_parser("bounds", help="print the analytic threshold and bound tables")
    p_bounds.add_argument("--n", type=_parse_range, default=range(2, 10),
                          help="composite dimension range, e.g. 2:9")
    p_bounds.add_argument("--d", type=_parse_range, default=range(2, 5),
                          help="local qudit dimension range, e.g. 2:4")
    p_bounds.add_argument("--out", help="write the tables to this path")
    p_bounds.add_argument("--format", choices=("json", "csv"), default="json")
    p_bounds.set_defaults(func=cmd_bounds)

    p_cert = sub.add_parser("certify", help="run every certificate on a state file")
    p_cert.add_argument("state_file")
    p_cert.add_argument("--dims", type=_parse_dims,
                        help="override the subsystem split, e.g. 2,2 (product must match)")
    p_cert.add_argument("--epsilon", type=float,
                        help="also certify the identity/max-entangled mixtures at this weight")
    p_cert.add_argument("--out", help="write the JSON report to this path")
    p_cert.set_defaults(func=cmd_certify)

    p_vol = sub.add_parser("volume", help="Monte Carlo separable-fraction estimate")
    p_vol.add_argument("--dims", type=_parse_dims, help="subsystem dimensions, e.g. 2,2")
    p_vol.add_argument("--d", type=int, help="two-qudit sandwich mode on dims (d, d)")
    p_vol.add_argument("--measure", choices=[m.value for m in Measure], default="natural")
    p_vol.add_argument("--samples", type=int, required=True)
    p_vol.add_argument("--seed", type=int, required=True,
                       help="root seed (required; there is no silent entropy seeding)")
    p_vol.add_argument("--workers", type=int, default=1)
    p_vol.add_argument("--exact-ci", action="store_true",
                       help="Clopper-Pearson intervals instead of Wilson")
    p_vol.add_argument("--out", help="write the estimate to this path")
    p_vol.add_argument("--format", choices=("json", "csv"), default="json")
    p_vol.set_defaults(func=cmd_volume)

    p_basis = sub.add_parser("basis", help="dump spin-basis matrices as [re,im] grids")
    p_basis.add_argument("--d", type=int, required=True)
    p_basis.add_argument("--j", type=int)
    p_basis.add_argument("--l", type=int)
    p_basis.set_defaults(func=cmd_basis)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
