"""Command-line front end.

Subcommands: ``classify`` (semi-normality report for a matrix file),
``numrange`` (numerical range boundary as CSV and/or SVG), ``volterra``
(the integration-operator demonstration), ``stampfli`` (metric-equality
equivalence scan).

Matrix files are JSON documents ``{"n": ..., "entries": [[re, im], ...]}``
with ``n^2`` row-major complex entries serialized as [re, im] pairs.
Reports are JSON with a stable key order; identical inputs, flags and seed
produce byte-identical output.  Exit codes: 0 success, 1 usage, 2 parse
error, 3 dimension error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys

import numpy as np

from seminormal.classify import (
    classify,
    kernel_equals_m0_check,
    stampfli_equivalence_scan,
)
from seminormal.core import DEFAULT_TOL
from seminormal.numrange import numerical_range_boundary
from seminormal.volterra import (
    GAMMA,
    canonical_pair,
    commutator_kernel_galerkin,
    commutator_spectrum_report,
    e_v_membership,
    l_phi_basis,
    phi_from_vector,
    volterra_galerkin,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_DIMENSION = 3
EXIT_IO = 4

SEED_ENV_VAR = "SEMINORMAL_SEED"


class CliError(Exception):
    def __init__(self, exit_code: int, message: str):
        super().__init__(message)
        self.exit_code = exit_code
        self.message = message


class _Parser(argparse.ArgumentParser):
    """argparse with the usage exit code remapped to 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_input(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot read {path}: {exc}")


def load_matrix(path: str) -> tuple[np.ndarray, str]:
    """Parse a matrix file, returning the matrix and the input digest."""
    raw = _read_input(path)
    digest = hashlib.sha256(raw).hexdigest()
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_PARSE, f"parse error in {path}: {exc}")
    if not isinstance(doc, dict):
        raise CliError(EXIT_PARSE, f"parse error in {path}: top level must be an object")
    for key in ("n", "entries"):
        if key not in doc:
            raise CliError(EXIT_PARSE, f"parse error in {path}: missing field '{key}'")
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise CliError(EXIT_PARSE, f"parse error in {path}: field 'n' must be an integer")
    if n < 1:
        raise CliError(EXIT_DIMENSION, f"dimension error in {path}: field 'n' must be >= 1")
    entries = doc["entries"]
    if not isinstance(entries, list):
        raise CliError(EXIT_PARSE, f"parse error in {path}: field 'entries' must be an array")
    if len(entries) != n * n:
        raise CliError(
            EXIT_DIMENSION,
            f"dimension error in {path}: field 'entries' must hold n^2 = {n * n} "
            f"pairs, got {len(entries)}",
        )
    matrix = np.empty((n, n), dtype=complex)
    for k, entry in enumerate(entries):
        row, col = divmod(k, n)
        where = f"entries[{k}] (row {row}, column {col})"
        if (
            not isinstance(entry, list)
            or len(entry) != 2
            or not all(isinstance(part, (int, float)) and not isinstance(part, bool)
                       for part in entry)
        ):
            raise CliError(
                EXIT_PARSE,
                f"parse error in {path}: {where} must be a [re, im] pair of numbers",
            )
        re, im = float(entry[0]), float(entry[1])
        if not (math.isfinite(re) and math.isfinite(im)):
            raise CliError(EXIT_PARSE, f"parse error in {path}: {where} must be finite")
        matrix[row, col] = complex(re, im)
    return matrix, digest


def matrix_document(matrix: np.ndarray) -> dict:
    n = matrix.shape[0]
    entries = [[float(z.real), float(z.imag)] for z in matrix.ravel()]
    return {"n": n, "entries": entries}


def _complex_pairs(values) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in np.asarray(values).ravel()]


def _finite_or_none(value: float):
    return float(value) if math.isfinite(value) else None


def _write_text(path: str, text: str):
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot write {path}: {exc}")


def _emit(report: dict):
    print(json.dumps(report, indent=2))


# ---------------------------------------------------------------------------
# numerical range exports

def boundary_csv(boundary) -> str:
    lines = ["theta,support,re,im"]
    for s in boundary.samples:
        lines.append(f"{s.theta!r},{s.support!r},{s.point.real!r},{s.point.imag!r}")
    return "\n".join(lines) + "\n"


def boundary_svg(boundary) -> str:
    """Fixed 800x800 drawing of the hull polygon, axes, vertices and origin."""
    hull = np.asarray(boundary.hull, dtype=complex).ravel()
    xs, ys = hull.real, hull.imag
    cx, cy = 0.5 * (xs.min() + xs.max()), 0.5 * (ys.min() + ys.max())
    extent = max(np.ptp(xs), np.ptp(ys), 1e-6)
    half = 0.55 * extent  # bounding box plus a 10% margin
    scale = 400.0 / half

    def px(x):
        return 400.0 + (x - cx) * scale

    def py(y):
        return 400.0 - (y - cy) * scale

    parts = [
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 800 800">',
        '<rect x="0" y="0" width="800" height="800" fill="white"/>',
    ]
    if cx - half <= 0.0 <= cx + half:
        parts.append(
            f'<line x1="{px(0):.3f}" y1="0" x2="{px(0):.3f}" y2="800" '
            'stroke="#999" stroke-width="1"/>'
        )
    if cy - half <= 0.0 <= cy + half:
        parts.append(
            f'<line x1="0" y1="{py(0):.3f}" x2="800" y2="{py(0):.3f}" '
            'stroke="#999" stroke-width="1"/>'
        )
    coords = [f"{px(z.real):.3f},{py(z.imag):.3f}" for z in hull]
    if hull.size >= 3:
        parts.append(
            f'<polygon points="{" ".join(coords)}" fill="none" '
            'stroke="black" stroke-width="2"/>'
        )
    elif hull.size == 2:
        parts.append(
            f'<line x1="{px(hull[0].real):.3f}" y1="{py(hull[0].imag):.3f}" '
            f'x2="{px(hull[1].real):.3f}" y2="{py(hull[1].imag):.3f}" '
            'stroke="black" stroke-width="2"/>'
        )
    for z in hull:
        parts.append(
            f'<circle cx="{px(z.real):.3f}" cy="{py(z.imag):.3f}" r="4" fill="red"/>'
        )
    if cx - half <= 0.0 <= cx + half and cy - half <= 0.0 <= cy + half:
        parts.append(
            f'<circle cx="{px(0):.3f}" cy="{py(0):.3f}" r="3" fill="none" '
            'stroke="blue" stroke-width="1.5"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# ---------------------------------------------------------------------------
# subcommands

def cmd_classify(args, seed: int) -> int:
    matrix, digest = load_matrix(args.path)
    report = classify(matrix, args.tol)
    kernel = kernel_equals_m0_check(matrix, args.tol)
    _emit({
        "command": "classify",
        "input": args.path,
        "input_sha256": digest,
        "tol": args.tol,
        "seed": seed,
        "classification": {
            "class": report.seminormal_class.value,
            "c_interval": [report.c_interval.a, report.c_interval.b],
            "zero_is_extreme": report.zero_is_extreme,
            "product_ab": report.product_ab,
            "tol_used": report.tol_used,
        },
        "kernel_m0": {
            "equal": kernel.equal,
            "reducing": kernel.reducing,
            "b_range_distance": _finite_or_none(kernel.b_range_distance),
        },
    })
    return EXIT_OK


def cmd_numrange(args, seed: int) -> int:
    matrix, digest = load_matrix(args.path)
    boundary = numerical_range_boundary(matrix, args.angles)
    if args.csv:
        _write_text(args.csv, boundary_csv(boundary))
    if args.svg:
        _write_text(args.svg, boundary_svg(boundary))
    supports = [s.support for s in boundary.samples]
    _emit({
        "command": "numrange",
        "input": args.path,
        "input_sha256": digest,
        "angles": args.angles,
        "tol": args.tol,
        "seed": seed,
        "hull_vertices": _complex_pairs(boundary.hull),
        "support_range": [min(supports), max(supports)],
        "csv": args.csv,
        "svg": args.svg,
    })
    return EXIT_OK


def cmd_volterra(args, seed: int) -> int:
    n = args.n
    galerkin = volterra_galerkin(n)
    v = galerkin.op
    rank_one = np.zeros((n, n))
    rank_one[0, 0] = 1.0
    rank_one_residual = float(np.max(np.abs(v + v.conj().T - rank_one)))

    pair = canonical_pair(n)
    kernel = commutator_kernel_galerkin(n).matrix
    recon = pair.gamma * (
        np.outer(pair.u1, pair.u1.conj()) - np.outer(pair.u2, pair.u2.conj())
    )
    recon_residual = float(np.linalg.norm(kernel - recon))

    spectra = commutator_spectrum_report(n, args.midpoint_m)

    e1 = np.zeros(n, dtype=complex)
    e1[0] = 1.0
    norm_v1 = float(np.linalg.norm(v @ e1))
    norm_vstar1 = float(np.linalg.norm(v.conj().T @ e1))

    rng = np.random.default_rng(seed)
    perp_results = []
    for _ in range(args.phi_samples):
        f = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        f[0] = 0.0
        perp_results.append(bool(e_v_membership(f, pair, args.tol)))

    phi_results = []
    for _ in range(args.phi_samples):
        phi = float(rng.uniform(0.0, 2.0 * math.pi))
        basis = l_phi_basis(phi, n)
        defects = []
        residuals = []
        for vec in basis:
            defects.append(
                abs(abs(np.vdot(pair.u1, vec)) ** 2 - abs(np.vdot(pair.u2, vec)) ** 2)
            )
            recovered = phi_from_vector(vec, pair, args.tol)
            if recovered is None:
                residuals.append(0.0)
            else:
                g = pair.u1 - np.exp(1j * recovered) * pair.u2
                residuals.append(abs(np.vdot(g, vec)))
        phi_results.append({
            "phi": phi,
            "all_pass": all(d <= args.tol for d in defects),
            "max_membership_defect": float(max(defects)),
            "max_recovery_residual": float(max(residuals)),
        })

    def _spectrum_summary(vals):
        vals = np.asarray(vals, dtype=float)
        return {
            "min": float(vals[0]),
            "max": float(vals[-1]),
            "near_zero_count": int(np.count_nonzero(np.abs(vals) <= 1e-10)),
        }

    report = {
        "command": "volterra",
        "n": n,
        "phi_samples": args.phi_samples,
        "midpoint_m": args.midpoint_m,
        "tol": args.tol,
        "seed": seed,
        "rank_one_residual": rank_one_residual,
        "canonical_reconstruction_residual": recon_residual,
        "gamma": GAMMA,
        "spectra": {
            "kernel": _spectrum_summary(spectra.kernel_spectrum),
            "truncated_galerkin": _spectrum_summary(spectra.truncated_spectrum),
            "midpoint": _spectrum_summary(spectra.midpoint_spectrum),
        },
        "canonical_extreme": spectra.canonical_extreme,
        "quoted_extreme": spectra.quoted_extreme,
        "quoted_extreme_consistent": spectra.quoted_extreme_consistent,
        "norm_v1": norm_v1,
        "norm_vstar1": norm_vstar1,
        "e_set_checks": {
            "e1": bool(e_v_membership(e1, pair, args.tol)),
            "random_perp_all": all(perp_results),
            "random_perp_count": len(perp_results),
        },
        "l_phi_checks": phi_results,
        "export_matrix": args.export_matrix,
    }
    if args.export_matrix:
        _write_text(
            args.export_matrix,
            json.dumps(matrix_document(v), indent=2) + "\n",
        )
    _emit(report)
    return EXIT_OK


def cmd_stampfli(args, seed: int) -> int:
    matrix, digest = load_matrix(args.path)
    scan = stampfli_equivalence_scan(matrix, args.tol)
    report = {
        "command": "stampfli",
        "input": args.path,
        "input_sha256": digest,
        "tol": args.tol,
        "seed": seed,
        "verdict": "EquivalenceHolds" if scan.holds else "Witness",
        "witness": None if scan.holds else _complex_pairs(scan.witness),
        "witness_form_value": scan.witness_form_value,
        "witness_image_norm": scan.witness_image_norm,
    }
    _emit(report)
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> _Parser:
    parser = _Parser(
        prog="seminormal",
        description="Semi-normality diagnostics for dense complex matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_common(p):
        p.add_argument("--tol", type=float, default=DEFAULT_TOL,
                       help="relative tolerance (default 1e-9)")
        p.add_argument("--seed", type=int, default=42,
                       help=f"RNG seed; ${SEED_ENV_VAR} overrides (default 42)")

    p = sub.add_parser("classify", help="semi-normality report for a matrix file")
    p.add_argument("path", help="matrix file, or - for stdin")
    add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("numrange", help="numerical range boundary exports")
    p.add_argument("path", help="matrix file, or - for stdin")
    p.add_argument("--angles", type=int, default=256,
                   help="number of support directions (default 256)")
    p.add_argument("--csv", default=None, help="write boundary samples as CSV")
    p.add_argument("--svg", default=None, help="write hull drawing as SVG")
    add_common(p)
    p.set_defaults(func=cmd_numrange)

    p = sub.add_parser("volterra", help="integration-operator demonstration")
    p.add_argument("--n", type=int, default=16,
                   help="Galerkin truncation dimension (default 16)")
    p.add_argument("--phi-samples", type=int, default=8,
                   help="random samples for the hyperplane checks (default 8)")
    p.add_argument("--midpoint-m", type=int, default=256,
                   help="midpoint discretization size (default 256)")
    p.add_argument("--export-matrix", default=None,
                   help="write the Galerkin matrix as a matrix file")
    add_common(p)
    p.set_defaults(func=cmd_volterra)

    p = sub.add_parser("stampfli", help="metric-equality equivalence scan")
    p.add_argument("path", help="matrix file, or - for stdin")
    add_common(p)
    p.set_defaults(func=cmd_stampfli)

    return parser


def _resolve_seed(args) -> int:
    env = os.environ.get(SEED_ENV_VAR)
    if env is None:
        return args.seed
    try:
        return int(env)
    except ValueError:
        raise CliError(EXIT_USAGE, f"{SEED_ENV_VAR} must be an integer, got {env!r}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.tol <= 0:
        parser.error("--tol must be positive")
    if args.command == "numrange" and args.angles < 3:
        parser.error("--angles must be at least 3")
    if args.command == "volterra":
        if args.n < 4:
            parser.error("--n must be at least 4")
        if args.phi_samples < 0:
            parser.error("--phi-samples must be nonnegative")
        if args.midpoint_m < 2:
            parser.error("--midpoint-m must be at least 2")
    try:
        return args.func(args, _resolve_seed(args))
    except CliError as exc:
        print(f"seminormal: {exc.message}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
