"""Command-line front end: ``nnrank {emit,verify,bounds,claims,nmf}``.

Exit codes: 0 success / valid, 1 a verification or claim came out false,
2 usage, parse or dimension errors.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import constructions as cons
from .bounds import nnr_bracket
from .certificates import (
    Certificate,
    CertificateError,
    cert_A,
    cert_B,
    cert_M1,
    cert_trivial_rows,
    deserialize,
    serialize,
    verify,
)
from .claims import DEFAULT_SEED, run_claims
from .field import QUADRATIC2, RATIONALS, FieldError, parse_scalar
from .matrix import ExactMatrix, MatrixError, identity
from .nmf_numeric import NmfConfig, run_nmf

EXIT_OK, EXIT_FALSE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _parse_params(text: str | None) -> list:
    if not text:
        return []
    out = []
    for tok in text.split(","):
        field = QUADRATIC2 if "sqrt" in tok else RATIONALS
        out.append(parse_scalar(tok, field))
    return out


def construct(name: str, params: list) -> ExactMatrix:
    """Build one of the named matrices."""
    if name == "A":
        return cons.build_A()
    if name == "V":
        return cons.build_V()
    if name in ("M1", "M2", "M3", "M4"):
        return getattr(cons, name)()
    if name == "B":
        if not params:
            raise UsageError("B needs --params a1,...,an")
        return cons.build_B(*params)
    if name == "C":
        if len(params) != 5:
            raise UsageError("C needs --params a1,a2,b,c,d")
        return cons.build_C(*params)
    m = re.fullmatch(r"ones(\d+)x(\d+)", name)
    if m:
        return ExactMatrix([[1] * int(m.group(2)) for _ in range(int(m.group(1)))])
    m = re.fullmatch(r"(?:identity|eye)(\d+)", name)
    if m:
        return identity(int(m.group(1)))
    raise UsageError(f"unknown matrix name {name!r}")


def certificate_for(name: str, params: list) -> Certificate:
    if name == "A":
        return cert_A()
    if name == "M1":
        return cert_M1()
    if name in ("M2", "M3", "M4", "B"):
        M = construct(name, params)
        return cert_B(*M.row(1)[:M.cols - 4], label=name)
    if name == "V":
        return cert_trivial_rows(cons.build_V(), label="V")
    raise UsageError(f"no built-in certificate for {name!r}")


def load_target(spec: str, params: list | None = None) -> ExactMatrix:
    """A target is either a matrix name or a path to matrix JSON / CSV."""
    path = Path(spec)
    if path.suffix in (".json", ".csv") or path.exists():
        try:
            text = path.read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {spec}: {exc}") from exc
        if path.suffix == ".csv":
            return ExactMatrix.from_csv(text)
        return ExactMatrix.from_json(text)
    return construct(spec, params or [])


def _dump(obj, pretty: bool) -> str:
    return json.dumps(obj, indent=2 if pretty else None)


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


# -- subcommands ---------------------------------------------------------------

def cmd_emit(args) -> int:
    params = _parse_params(args.params)
    if args.cert:
        text = serialize(certificate_for(args.name, params), indent=2 if args.pretty else None).decode()
        _write(text, args.output)
        return EXIT_OK
    M = construct(args.name, params)
    if args.format == "csv":
        text = M.to_csv()
    else:
        text = M.to_json(indent=2 if args.pretty else None)
    _write(text, args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        cert = deserialize(Path(args.cert).read_bytes())
    except OSError as exc:
        raise UsageError(f"cannot read {args.cert}: {exc}") from exc
    target = load_target(args.target)
    report = verify(cert, target)
    obj = report.to_json_obj()
    obj["summary"] = report.summary()
    print(_dump(obj, args.pretty))
    return EXIT_OK if report.valid else EXIT_FALSE


def cmd_bounds(args) -> int:
    target = load_target(args.target, _parse_params(args.params))
    cert = None
    if args.cert:
        try:
            cert = deserialize(Path(args.cert).read_bytes())
        except OSError as exc:
            raise UsageError(f"cannot read {args.cert}: {exc}") from exc
    report = nnr_bracket(target, cert)
    print(_dump(report.to_json_obj(with_cover=args.cover), args.pretty))
    return EXIT_OK


def cmd_claims(args) -> int:
    try:
        results = run_claims(args.filter, seed=args.seed)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from exc
    if args.pretty:
        for r in results:
            print(f"{r.status:8} {r.id:40} {r.description}")
            for d in r.details:
                print(f"{'':9}{d}")
    else:
        print(_dump([r.to_json_obj() for r in results], False))
    # SKIPPED rows document out-of-scope statements and do not fail the run
    return EXIT_FALSE if any(r.status == "FAIL" for r in results) else EXIT_OK


def cmd_nmf(args) -> int:
    target = load_target(args.target, _parse_params(args.params))
    try:
        cfg = NmfConfig(k=args.k, max_iters=args.max_iters, restarts=args.restarts,
                        seed=args.seed, target=args.tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    result = run_nmf(target, cfg)
    if args.csv:
        Path(args.csv).write_text(result.table_csv())
    print(_dump({
        "k": args.k,
        "residual": result.residual,
        "best_restart": result.best_restart,
        "iterations": result.iterations,
        "restarts_run": len(result.restarts),
        "monotone": all(r.is_monotone() for r in result.restarts),
    }, args.pretty))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="nnrank", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("emit", help="serialize a construction (or its certificate)")
    e.add_argument("name", help="A, V, B, C, M1..M4, onesMxN or identityN")
    e.add_argument("--params", help="comma-separated scalars, e.g. 1,1/2 or 1+1/2*sqrt(2)")
    e.add_argument("--format", choices=("json", "csv"), default="json")
    e.add_argument("--cert", action="store_true", help="emit the built-in certificate instead of the matrix")
    e.add_argument("-o", "--output")
    e.add_argument("--pretty", action="store_true")
    e.set_defaults(func=cmd_emit)

    v = sub.add_parser("verify", help="exactly verify a certificate against a target")
    v.add_argument("cert")
    v.add_argument("target", help="matrix name or path to matrix JSON/CSV")
    v.add_argument("--pretty", action="store_true")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bounds", help="bracket the nonnegative rank")
    b.add_argument("target")
    b.add_argument("--params")
    b.add_argument("--cert")
    b.add_argument("--cover", action="store_true", help="include a minimum rectangle cover")
    b.add_argument("--pretty", action="store_true")
    b.set_defaults(func=cmd_bounds)

    c = sub.add_parser("claims", help="re-check every claim")
    c.add_argument("--filter")
    c.add_argument("--seed", type=int, default=DEFAULT_SEED)
    c.add_argument("--pretty", action="store_true")
    c.set_defaults(func=cmd_claims)

    n = sub.add_parser("nmf", help="numeric multiplicative-update NMF probe")
    n.add_argument("target")
    n.add_argument("--params")
    n.add_argument("--k", type=int, required=True)
    n.add_argument("--restarts", type=int, default=1)
    n.add_argument("--seed", type=int, default=7)
    n.add_argument("--max-iters", type=int, default=20000)
    n.add_argument("--tol", type=float, default=0.0, help="stop once the relative residual reaches this")
    n.add_argument("--csv", help="write the residual-per-restart table here")
    n.add_argument("--pretty", action="store_true")
    n.set_defaults(func=cmd_nmf)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (UsageError, FieldError, MatrixError, CertificateError, ValueError) as exc:
        print(f"nnrank: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
