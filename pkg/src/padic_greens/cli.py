"""Command-line front end.

Exit codes: 0 success, 1 property failure, 2 bad input, 3 not a morphism.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import dynamics as dyn
from .corpus import corpus_map
from .errors import NotAMorphism, PadicError, ParseError
from .harness import SUITES, verify
from .morphism import HomogeneousMap, macaulay_resultant_valuation, parse_map
from .padic import INFINITY, LogValue, PrimeContext, format_rational, parse_rational
from .projective import chordal_distance, delta_float, make_point

EXIT_OK, EXIT_PROPERTY, EXIT_PARSE, EXIT_MORPHISM = 0, 1, 2, 3


def load_map(ref: str) -> HomogeneousMap:
    """A JSON map file, or ``corpus:NAME@p`` for a bundled map."""
    if ref.startswith("corpus:"):
        try:
            return corpus_map(ref[len("corpus:"):])
        except KeyError as exc:
            raise ParseError(str(exc)) from exc
    try:
        spec = json.loads(Path(ref).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read map {ref}: {exc}") from exc
    return parse_map(spec)


def parse_coords(text: str) -> list[Fraction]:
    try:
        return [parse_rational(t) for t in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad point {text!r}: {exc}") from exc


def _points(args, phi: HomogeneousMap):
    if not args.point:
        raise ParseError("at least one --point is required")
    return [make_point(parse_coords(t), phi.p) for t in args.point]


def _one_or_many(items):
    return items[0] if len(items) == 1 else items


def _depth(args, phi):
    if args.tol_n is not None:
        return args.tol_n
    if args.tol is not None:
        return dyn.depth_for_tolerance(phi, LogValue(parse_rational(args.tol), phi.p))
    return None


def cmd_resultant(args):
    phi = load_map(args.map)
    out = macaulay_resultant_valuation(phi).to_json()
    out["map"] = str(phi)
    return out, EXIT_OK


def cmd_distance(args):
    if args.map:
        p = load_map(args.map).p
    elif args.p is not None:
        p = PrimeContext(args.p).p
    else:
        raise ParseError("distance needs --p or --map")
    if not args.point or len(args.point) != 2:
        raise ParseError("distance needs exactly two --point arguments")
    P, Q = (make_point(parse_coords(t), p) for t in args.point)
    w = chordal_distance(P, Q)
    out = {"zero": True} if w == INFINITY else {"w": w}
    out["delta_approx"] = delta_float(w, p)
    return out, EXIT_OK


def cmd_green(args):
    phi = load_map(args.map)
    n = _depth(args, phi)
    if not args.point:
        raise ParseError("at least one --point is required")
    out = []
    for text in args.point:
        coords = parse_coords(text)
        if args.homogeneous:
            est = dyn.green_homogeneous(phi, coords, n=n, method=args.method)
        else:
            est = dyn.green_hat(phi, make_point(coords, phi.p), n=n, method=args.method)
        out.append({"point": text, **est.to_json()})
    return _one_or_many(out), EXIT_OK


def cmd_classify(args):
    phi = load_map(args.map)
    out = []
    for P in _points(args, phi):
        out.append({"point": str(P), **dyn.classify_orbit(phi, P).to_json()})
    return _one_or_many(out), EXIT_OK


def cmd_certify(args):
    phi = load_map(args.map)
    out = []
    for P in _points(args, phi):
        out.append({"point": str(P), **dyn.certify_fatou(phi, P).to_json()})
    return _one_or_many(out), EXIT_OK


def cmd_orbit(args):
    phi = load_map(args.map)
    out = []
    for P in _points(args, phi):
        pts = dyn.iterate(phi, P, args.n)
        steps = []
        for k, Q in enumerate(pts):
            entry = {"k": k, "point": [str(c) for c in Q.lift]}
            if k < args.n:
                entry["g"] = dyn.g(phi, Q).to_json()
                entry["good_reduction"] = dyn.good_reduction_at(phi, Q)
            steps.append(entry)
        out.append({"start": str(P), "orbit": steps})
    return _one_or_many(out), EXIT_OK


def cmd_verify(args):
    phi = load_map(args.map)
    report = verify(phi, samples=args.samples, seed=args.seed, threads=args.threads, only=args.only)
    return report.to_json(), EXIT_OK if report.ok else EXIT_PROPERTY


def cmd_holder(args):
    phi = load_map(args.map)
    out = dyn.holder_constants(phi).to_json()
    out["lipschitz_log"] = dyn.lipschitz_constant(phi).to_json()
    out["local_constancy_radius_valuation"] = dyn.local_constancy_radius(phi)
    return out, EXIT_OK


def cmd_lemma_min(args):
    res = dyn.min_bound_lemma(args.D, args.a, args.b, k_max=args.k_max)
    return res.to_json(), EXIT_OK if res.holds else EXIT_PROPERTY


def _text(obj, indent=0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if set(obj) == {"coeff", "p", "approx"}:
            return f"{obj['coeff']}*log({obj['p']}) ~ {obj['approx']}"
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and not (isinstance(v, dict) and set(v) == {"coeff", "p", "approx"}):
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_text(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        if all(not isinstance(v, (dict, list)) for v in obj):
            return pad + ", ".join(str(v) for v in obj)
        return "\n".join(_text(v, indent) + ("\n" + pad + "--" if i < len(obj) - 1 else "") for i, v in enumerate(obj))
    return str(obj)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="padic-greens", description=__doc__.splitlines()[0])
    parser.add_argument("--text", action="store_true", help="human-readable output instead of JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_map(name, func, help, points=True):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--map", required=True, help="map JSON file or corpus:NAME@p")
        if points:
            sp.add_argument("--point", action="append", help="comma-separated coordinates, e.g. 0,1 or 1/2,3")
        sp.add_argument("--text", action="store_true", default=argparse.SUPPRESS)
        sp.set_defaults(func=func)
        return sp

    with_map("resultant", cmd_resultant, "valuation of the minimal resultant", points=False)

    sp = sub.add_parser("distance", help="chordal distance between two points")
    sp.add_argument("--map")
    sp.add_argument("--p", type=int)
    sp.add_argument("--point", action="append")
    sp.add_argument("--text", action="store_true", default=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_distance)

    sp = with_map("green", cmd_green, "certified bracket for the Green function")
    sp.add_argument("--tol-n", type=int, help="truncation depth n")
    sp.add_argument("--tol", help="tolerance as a rational multiple of log p")
    sp.add_argument("--method", choices=("fixed", "exact"), default="fixed")
    sp.add_argument("--homogeneous", action="store_true", help="treat points as vectors and return G_Phi(x)")

    with_map("classify", cmd_classify, "orbital good reduction via the residue orbit")
    with_map("certify", cmd_certify, "Fatou-membership certificate")
    sp = with_map("orbit", cmd_orbit, "exact forward orbit with per-step g values")
    sp.add_argument("--n", type=int, default=5)

    sp = with_map("verify", cmd_verify, "run every property suite against a map", points=False)
    sp.add_argument("--samples", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--threads", type=int, help="worker threads (default: $PADIC_GREENS_THREADS or 1)")
    sp.add_argument("--only", action="append", choices=sorted(SUITES))

    with_map("holder", cmd_holder, "Hölder, Lipschitz and local-constancy constants", points=False)

    sp = sub.add_parser("lemma-min", help="brute-force check of min_k D a^k + b^-k <= 2a D^(log b/log ab)")
    sp.add_argument("--D", type=float, required=True)
    sp.add_argument("--a", type=float, required=True)
    sp.add_argument("--b", type=float, required=True)
    sp.add_argument("--k-max", type=int)
    sp.add_argument("--text", action="store_true", default=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_lemma_min)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out, code = args.func(args)
    except NotAMorphism as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MORPHISM
    except PadicError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if args.text:
        print(_text(out))
    else:
        print(json.dumps(out, indent=2))
    return code


if __name__ == "__main__":
    sys.exit(main())
