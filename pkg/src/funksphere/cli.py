"""Command-line front end.  Every command prints one JSON document."""

from __future__ import annotations

import argparse
import json
import sys

import mpmath

from .config import ENV_PRECISION, resolve_precision
from .funk import (
    EVEN,
    ODD,
    ZERO_PARITY,
    SpherePolynomial,
    dual_at_distance,
    dual_transform,
    funk_transform,
    invert_even_m_detailed,
    invert_general_detailed,
    transform_report,
)
from .oracle import oracle_precision, oracle_region_integral, spectral_reference_inverter
from .parser import ParseError, parse_polynomial
from .pizzetti import KINDS, SECTION_KINDS, RegionSpec, integrate
from .polycore import RationalPoint, to_text
from .scalar import ExactScalar, to_rational
from .verify import VerifyConfig, run_suites

EXIT_OK, EXIT_DOMAIN, EXIT_PARSE = 0, 1, 2


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        _emit_error(f"usage error: {message}")
        sys.exit(EXIT_PARSE)


def _emit_error(message: str, **extra):
    doc = {"error": message, **extra}
    sys.stderr.write(json.dumps(doc, ensure_ascii=False) + "\n")


def _rational_list(text: str):
    return [to_rational(part) for part in text.split(",")]


def _approx_list(text: str):
    return [mpmath.mpf(part.strip()) for part in text.split(",")]


def build_parser() -> argparse.ArgumentParser:
    ap = _ArgumentParser(prog="funksphere", description="Exact sphere-region integrals and Funk transforms.")
    ap.add_argument("--precision", type=int, default=None,
                    help=f"significant digits for numeric renderings (env {ENV_PRECISION})")
    ap.add_argument("--json-indent", type=int, default=2)
    ap.add_argument("--output", default=None, help="write JSON here instead of stdout")
    sub = ap.add_subparsers(dest="verb", required=True, parser_class=_ArgumentParser)

    def poly_cmd(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--dim", type=int, required=True)
        p.add_argument("--poly", required=True)
        return p

    p = poly_cmd("integrate", "integrate a polynomial over a region")
    p.add_argument("--region", choices=KINDS, required=True)
    p.add_argument("--omega", default=None, help="comma-separated unit vector, e.g. 3/5,4/5,0")
    p.add_argument("--p", default=None, help="hyperplane offset, -1 < p < 1")
    p.add_argument("--r", default="1", help="radius for sphere/ball")
    p.add_argument("--approx", action="store_true",
                   help="accept decimal omega/p and use only the numeric oracle")

    poly_cmd("funk", "Funk transform")
    poly_cmd("dual", "dual transform")
    p = poly_cmd("dual-at", "average over subspheres at distance r (p = sin r)")
    p.add_argument("--p", required=True)

    p = poly_cmd("invert", "recover f from its Funk transform")
    p.add_argument("--method", choices=("even-m", "general", "spectral"), required=True)
    p.add_argument("--pi-half", type=int, default=0, help="fhat = pi^(h/2) * sqrt(q) * poly")
    p.add_argument("--sqrt-arg", default="1")
    p.add_argument("--roundtrip", action="store_true", help="treat --poly as f and invert funk(f)")

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", default="small")
    p.add_argument("--dim-max", type=int, default=4)
    p.add_argument("--deg-max", type=int, default=4)
    p.add_argument("--jobs", type=int, default=1)

    poly_cmd("parse", "parse and canonicalise a polynomial")
    return ap


def _check_dim(dim: int):
    if dim < 2:
        raise ValueError("--dim must be >= 2")


def _poly(args):
    _check_dim(args.dim)
    return parse_polynomial(args.poly, args.dim)


def _scalar_json(s: ExactScalar, prec: int) -> dict:
    return {k: v for k, v in s.to_json(prec).items() if k != "numeric"}


def cmd_integrate(args, prec: int) -> dict:
    P = _poly(args)
    inputs = {"dim": args.dim, "poly": to_text(P), "region": args.region}
    if args.approx:
        if args.region not in SECTION_KINDS:
            raise ValueError("--approx only applies to section regions")
        with mpmath.workdps(oracle_precision(prec)):
            omega = _approx_list(args.omega or "")
            if len(omega) != args.dim:
                raise ValueError("omega dimension does not match --dim")
            norm = mpmath.sqrt(mpmath.fsum(c * c for c in omega))
            omega = [c / norm for c in omega]
            region = _ApproxRegion(args.region, args.dim, tuple(omega), mpmath.mpf(args.p or "0"))
        val = oracle_region_integral(P, region, prec)
        inputs.update({"omega": [mpmath.nstr(c, prec) for c in omega], "p": mpmath.nstr(region.p, prec),
                       "approx": True})
        return {"command": "integrate", "inputs": inputs, "exact": None,
                "numeric": mpmath.nstr(val.value, prec), "route": "oracle"}
    omega = None if args.omega is None else RationalPoint(tuple(_rational_list(args.omega)))
    p = None if args.p is None else to_rational(args.p)
    region = RegionSpec(args.region, args.dim, omega, p, to_rational(args.r))
    res = integrate(P, region, prec)
    inputs["region"] = region.to_json()
    doc = {"command": "integrate", "inputs": inputs}
    doc.update(res.to_json())
    return doc


class _ApproxRegion:
    def __init__(self, kind, dim, omega, p):
        if not -1 < p < 1:
            raise ValueError("p must satisfy -1 < p < 1")
        self.kind, self.dim, self.omega, self.p = kind, dim, omega, p


def _note(f: SpherePolynomial) -> str | None:
    if f.parity == ODD:
        return "odd input: kernel"
    return None


def cmd_transform(args, prec: int) -> dict:
    P = _poly(args)
    f = SpherePolynomial(P)
    if args.verb == "funk":
        out = funk_transform(f)
    elif args.verb == "dual":
        out = dual_transform(f)
    else:
        out = dual_at_distance(f, to_rational(args.p))
    doc = transform_report(args.verb, f, out, args.dim)
    doc["input_text"] = to_text(P)
    doc["output"]["numeric_scale"] = mpmath.nstr(out.scale.numeric(prec), prec)
    if args.verb == "dual-at":
        doc["p"] = str(to_rational(args.p))
    note = _note(SpherePolynomial(P))
    if note and args.verb != "dual-at":
        doc["note"] = note
    return doc


def cmd_invert(args, prec: int) -> dict:
    P = _poly(args)
    if args.roundtrip:
        f_in = SpherePolynomial(P)
        fhat = funk_transform(f_in)
    else:
        fhat = SpherePolynomial(P, ExactScalar(1, args.pi_half, to_rational(args.sqrt_arg)))
    if fhat.parity not in (EVEN, ZERO_PARITY):
        raise ValueError("inversion needs an even input (odd parts lie in the kernel)")
    constants = {}
    if args.method == "even-m":
        rep = invert_even_m_detailed(fhat)
        result = rep.result
        constants = {"p_polynomial_roots": list(rep.factors),
                     "inversion_constant": _scalar_json(rep.constant, prec)}
    elif args.method == "general":
        rep = invert_general_detailed(fhat)
        result = rep.result
        constants = {"final_constant": _scalar_json(rep.final_constant, prec),
                     "component_factors": {str(2 * k): _scalar_json(v, prec)
                                           for k, v in sorted(rep.component_factors.items())},
                     "F": rep.F.to_json()}
    else:
        result = spectral_reference_inverter(fhat)
    doc = transform_report(f"invert:{args.method}", fhat, result, args.dim, constants)
    if args.roundtrip:
        doc["roundtrip_ok"] = result == f_in
    return doc


def cmd_verify(args, prec: int) -> dict:
    cfg = VerifyConfig(dim_max=args.dim_max, deg_max=args.deg_max, precision=prec)
    return run_suites(args.suite, cfg, jobs=max(1, args.jobs))


def cmd_parse(args, prec: int) -> dict:
    P = _poly(args)
    terms = [{"exponents": list(e), "coeff": str(c)} for e, c in P.items()]
    return {"command": "parse", "dim": args.dim, "canonical": to_text(P), "terms": terms}


_COMMANDS = {
    "integrate": cmd_integrate,
    "funk": cmd_transform,
    "dual": cmd_transform,
    "dual-at": cmd_transform,
    "invert": cmd_invert,
    "verify": cmd_verify,
    "parse": cmd_parse,
}


def render(doc: dict, indent: int | None) -> str:
    text = json.dumps(doc, indent=indent if indent and indent > 0 else None, ensure_ascii=False)
    return text + "\n"


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        prec = resolve_precision(args.precision)
        doc = _COMMANDS[args.verb](args, prec)
    except ParseError as exc:
        _emit_error(exc.message, offset=exc.offset)
        return EXIT_PARSE
    except (ValueError, ZeroDivisionError, ArithmeticError) as exc:
        _emit_error(str(exc))
        return EXIT_DOMAIN
    data = render(doc, args.json_indent).encode("utf-8")
    if args.output:
        with open(args.output, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    if args.verb == "verify" and not doc["pass"]:
        return EXIT_DOMAIN
    return EXIT_OK


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
