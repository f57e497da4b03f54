"""Command-line front end: ``drycert {cones,check-dry,realize,verify,census}``.

Results go to stdout (or ``--out``) as JSON, or CSV for ``census``.
Diagnostics go to stderr. Exit codes: 0 success (negative verdicts included),
2 malformed input, 3 unsupported ``(N, base)``.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence

from . import atlas, dry
from .dry import CandidateClass
from .errors import DryCertError, UnsupportedCase
from .picard import BaseSurface, DivClass
from .witness import Witness, audit_witness, case_table, realize, verdict_to_json

EXIT_OK = 0
EXIT_MALFORMED = 2
EXIT_UNSUPPORTED = 3


class Malformed(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise Malformed(message)


def _base(spec: str) -> BaseSurface:
    try:
        return BaseSurface.parse(spec)
    except ValueError as exc:
        raise Malformed(str(exc)) from None


def _phi(text: str | None, base: BaseSurface) -> DivClass:
    if text is None:
        raise Malformed("--phi is required")
    try:
        coeffs = [int(part) for part in text.split(",")]
    except ValueError:
        raise Malformed(f"--phi must be comma-separated integers, got {text!r}") from None
    if len(coeffs) != base.picard_rank:
        raise Malformed(f"{base.name} needs {base.picard_rank} coefficients in --phi, got {len(coeffs)}")
    return DivClass(tuple(coeffs))


def _candidate(args, base: BaseSurface) -> CandidateClass:
    phi = _phi(args.phi, base)
    if args.omega is None or args.N is None:
        raise Malformed("--omega and --N are required")
    if args.N < 1:
        raise Malformed("--N must be >= 1")
    return CandidateClass(phi, args.omega, args.N)


def _json_bytes(data) -> bytes:
    return (json.dumps(data, indent=2) + "\n").encode()


def _require_json(args) -> None:
    if args.format != "json":
        raise Malformed(f"{args.command} only supports --format json")


def cmd_cones(args) -> tuple[bytes, int]:
    _require_json(args)
    base = _base(args.base)
    data = {
        "base": base.name,
        "basis": list(base.basis_names),
        "gram": [list(row) for row in base.gram],
        "signature": list(base.signature()),
        "c1": base.c1.to_json(),
        "c1_squared": int(base.square(base.c1)),
        "mori_generators": [g.to_json() for g in base.mori_gens],
        "effective_generators": [g.to_json() for g in base.eff_gens],
    }
    return _json_bytes(data), EXIT_OK


def cmd_check_dry(args) -> tuple[bytes, int]:
    _require_json(args)
    base = _base(args.base)
    c = _candidate(args, base)
    data = {"base": base.name, "candidate": c.to_json(), **dry.evaluate(c, base).to_json()}
    return _json_bytes(data), EXIT_OK


def cmd_realize(args) -> tuple[bytes, int]:
    _require_json(args)
    base = _base(args.base)
    c = _candidate(args, base)
    verdict = realize(c, base)
    code = EXIT_OK
    if not case_table(c.N, base):
        print(f"drycert: no construction for N={c.N} on {base.name}", file=sys.stderr)
        code = EXIT_UNSUPPORTED
    return _json_bytes(verdict_to_json(verdict, c, base)), code


def cmd_verify(args) -> tuple[bytes, int]:
    """Re-audit a certificate: a realize output, or ``{"base", "candidate", "witness"}``."""
    _require_json(args)
    try:
        with open(args.file, "rb") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise Malformed(f"cannot read {args.file}: {exc.strerror}") from None
    except ValueError as exc:
        raise Malformed(f"{args.file} is not valid JSON: {exc}") from None
    try:
        base = _base(data["base"])
        c = CandidateClass.from_json(data["candidate"])
        w = Witness.from_json(data["witness"])
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise Malformed(f"{args.file} does not hold a witness certificate ({type(exc).__name__}: {exc})") from None
    if len(c.phi) != base.picard_rank:
        raise Malformed(f"candidate class has the wrong length for {base.name}")
    failures = audit_witness(w, c, base)
    out = {"base": base.name, "candidate": c.to_json(), "valid": not failures, "failures": failures}
    return _json_bytes(out), EXIT_OK


def cmd_census(args) -> tuple[bytes, int]:
    base = _base(args.base)
    if args.N is None or args.N < 1:
        raise Malformed("--N is required and must be >= 1")
    if args.bound is not None and args.bound < 0:
        raise Malformed("--bound must be >= 0")
    report = atlas.exception_census(args.N, base, bound=args.bound)
    if not report.complete:
        print(f"drycert: census for N={args.N} on {base.name} is not certified complete", file=sys.stderr)
    return atlas.emit(report, args.format), EXIT_OK


COMMANDS = {
    "cones": cmd_cones,
    "check-dry": cmd_check_dry,
    "realize": cmd_realize,
    "verify": cmd_verify,
    "census": cmd_census,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="drycert", description="Exact certification of DRY classes on elliptic threefolds.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        if name == "verify":
            p.add_argument("file", help="certificate JSON (as printed by realize)")
        else:
            p.add_argument("base", help="P2, F0, F1 or dP0..dP8")
        if name in ("check-dry", "realize"):
            p.add_argument("--phi", help="comma-separated coefficients in the standard basis")
            p.add_argument("--omega", type=int)
        if name in ("check-dry", "realize", "census"):
            p.add_argument("--N", type=int)
        if name == "census":
            p.add_argument("--bound", type=int, help="override the phi.c1 bound of the sweep region")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", help="write output to this file instead of stdout")
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        payload, code = COMMANDS[args.command](args)
    except Malformed as exc:
        print(f"drycert: error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except UnsupportedCase as exc:
        print(f"drycert: unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (DryCertError, ValueError) as exc:
        print(f"drycert: error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()
    return code


def main() -> None:
    sys.exit(run())
