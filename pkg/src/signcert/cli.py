"""``signcert`` command line.

Exit codes: 0 success (certify: bound known), 1 input error,
2 unsupported dimension, 3 certify returned "unknown".
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import descartes, oracle
from .certifier import CertificateError, certify, check_certificate
from .formats import ParseError, dumps_json, dumps_text, load_signomial, load_simplex, validate_certificate
from .geometry import SimplexError, SimplexWitness, normalize_to_standard
from .separation import LP_TOL, PARTITION_CAP
from .signomial import AffineMap, monomial_transform

EXIT_OK, EXIT_INPUT, EXIT_DIM, EXIT_UNKNOWN = 0, 1, 2, 3


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # usage mistakes are input errors, not dimension errors
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _floats(text: str, what: str) -> list[float]:
    try:
        return [float(t) for t in text.replace(";", ",").split(",") if t.strip()]
    except ValueError:
        raise InputError(f"{what}: expected comma-separated numbers, got {text!r}") from None


def _parse_box(text: str | None, n: int, res: int) -> oracle.LogBox:
    if text is None:
        return oracle.LogBox.cube(-3.0, 3.0, n, res)
    vals = _floats(text, "--box")
    if len(vals) == 2:
        vals = vals * n
    if len(vals) != 2 * n:
        raise InputError(f"--box needs 2 or {2 * n} numbers for n={n}, got {len(vals)}")
    try:
        return oracle.LogBox(vals[0::2], vals[1::2], (res,) * n)
    except ValueError as exc:
        raise InputError(f"--box: {exc}") from None


def cmd_certify(args) -> int:
    f = load_signomial(args.input)
    simplex = load_simplex(args.simplex) if args.simplex else None
    cert = certify(f, args.target, simplex=simplex, tol_lp=args.tol_lp, partition_cap=args.partition_cap)
    if not check_certificate(f, cert):
        raise RuntimeError("certificate failed revalidation")
    d = cert.to_dict()
    validate_certificate(d)
    text = json.dumps(d, indent=2)
    if args.json_out:
        with open(args.json_out, "w") as fh:
            fh.write(text + "\n")
        print(f"{cert.target}: bound {cert.bound} ({cert.rule})")
    else:
        print(text)
    return EXIT_OK if cert.known else EXIT_UNKNOWN


def cmd_oracle(args) -> int:
    f = load_signomial(args.input)
    if f.n > oracle.MAX_DIM:
        print(f"error: grid oracle supports at most {oracle.MAX_DIM} variables, input has {f.n}", file=sys.stderr)
        return EXIT_DIM
    res = args.res if args.res else (512 if f.n <= 2 else 64)
    box = _parse_box(args.box, f.n, res)
    ladder = sorted({max(2, res // 4), max(2, res // 2), res})
    if len(ladder) < 2:
        ladder = [res, 2 * res]
    signs = ["negative", "positive"] if args.target == "both" else [args.target]
    for sign in signs:
        r = oracle.stability_check(f, box, ladder, sign, args.sign_band)
        print(f"{sign}: {r.counts[-1]} ({r.verdict()})")
        touching = sum(r.boundary)
        if touching:
            print(f"  {touching} of {r.counts[-1]} touch the box boundary")
    if args.raster or args.csv:
        g = oracle.grid_labeling(f, box, band=args.sign_band)
        if args.raster:
            oracle.write_ppm(g, args.raster)
        if args.csv:
            oracle.write_csv(g, args.csv)
    return EXIT_OK


def cmd_descartes(args) -> int:
    f = load_signomial(args.input)
    if f.n != 1:
        print(f"error: descartes needs one variable, input has {f.n}", file=sys.stderr)
        return EXIT_DIM
    signs = [1 if c > 0 else -1 for c in f.coefficients]
    rho = descartes.sign_changes(signs)
    b = descartes.component_bounds(signs)
    pos, neg = descartes.sign_bounds(signs)
    print("signs: " + "".join("+" if s > 0 else "-" for s in signs))
    print(f"sign changes: {rho}")
    print(f"components: <= {b.max_components}")
    print(f"positive: <= {pos}")
    print(f"negative: <= {neg}")
    return EXIT_OK


def cmd_transform(args) -> int:
    f = load_signomial(args.input)
    if args.simplex:
        try:
            T = normalize_to_standard(SimplexWitness.from_vertices(load_simplex(args.simplex)))
        except SimplexError as exc:
            raise InputError(f"--simplex: {exc}") from None
    else:
        if not args.matrix:
            raise InputError("transform needs --matrix or --simplex")
        M = np.array(_floats(args.matrix, "--matrix"))
        if M.size != f.n * f.n:
            raise InputError(f"--matrix needs {f.n * f.n} entries (row-major), got {M.size}")
        shift = np.array(_floats(args.shift, "--shift")) if args.shift else np.zeros(f.n)
        if shift.size != f.n:
            raise InputError(f"--shift needs {f.n} entries")
        try:
            T = AffineMap(M.reshape(f.n, f.n), shift)
        except ValueError as exc:
            raise InputError(f"--matrix: {exc}") from None
    g = monomial_transform(f, T)
    out = dumps_json(g) + "\n" if args.format == "json" else dumps_text(g)
    if args.json_out:
        with open(args.json_out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="signcert",
        description="Bound the sign components of a signomial on the positive orthant.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    sub = p.add_subparsers(dest="command", required=True)
    fmt = argparse.ArgumentDefaultsHelpFormatter

    c = sub.add_parser("certify", help="emit a component-count certificate", formatter_class=fmt)
    c.add_argument("input", help=".sig text or .json signomial")
    c.add_argument("--target", choices=["negative", "positive"], default="negative")
    c.add_argument("--simplex", metavar="FILE", help="JSON list of n+1 vertices to validate and use")
    c.add_argument("--tol-lp", type=float, default=LP_TOL, help="LP slack threshold for strictness")
    c.add_argument("--partition-cap", type=int, default=PARTITION_CAP, help="max points for exhaustive enclosing search")
    c.add_argument("--json-out", metavar="FILE", help="write the certificate here instead of stdout")
    c.set_defaults(func=cmd_certify)

    o = sub.add_parser("oracle", help="count sign components on a log grid", formatter_class=fmt)
    o.add_argument("input")
    o.add_argument("--target", choices=["negative", "positive", "both"], default="both")
    o.add_argument("--box", metavar="lo1,hi1,...", help="log-coordinate box, written --box=lo,hi or --box=lo1,hi1,... (default -3,3 per axis)")
    o.add_argument("--res", type=int, default=None, help="cells per axis (default 512, 64 for n=3)")
    o.add_argument("--sign-band", type=float, default=oracle.SIGN_BAND, help="relative dead band around zero")
    o.add_argument("--raster", metavar="FILE.ppm", help="write a PPM image of the signs (n <= 2)")
    o.add_argument("--csv", metavar="FILE", help="write cell signs as CSV")
    o.set_defaults(func=cmd_oracle)

    d = sub.add_parser("descartes", help="sign-rule bounds for one variable", formatter_class=fmt)
    d.add_argument("input")
    d.set_defaults(func=cmd_descartes)

    t = sub.add_parser("transform", help="apply a monomial change of variables", formatter_class=fmt)
    t.add_argument("input")
    t.add_argument("--matrix", help="n*n entries, row-major, e.g. '0.5,0.5;0.5,0'")
    t.add_argument("--shift", help="n entries")
    t.add_argument("--simplex", metavar="FILE", help="map this simplex onto the standard simplex")
    t.add_argument("--format", choices=["text", "json"], default="text")
    t.add_argument("--json-out", metavar="FILE", help="write output here instead of stdout")
    t.set_defaults(func=cmd_transform)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "simplex", None) and args.command not in ("certify", "transform"):
        print("error: --simplex only applies to certify and transform", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (ParseError, InputError, CertificateError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
