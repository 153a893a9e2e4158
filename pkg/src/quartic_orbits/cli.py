"""Command-line front end: classify, sample, mesh, verify.

Exit codes: 0 success, 2 parse/usage error, 3 boundary-uncertain
classification, 4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import charts, export
from .classify import classify
from .errors import BoundaryUncertainError, ZeroFormError
from .forms import QuarticForm, q_value
from .roots import ConjugatePair, InfiniteRoot, RealRoot, from_roots, roots_of
from .scalars import format_scalar, is_exact, parse_scalar
from .verify import DEFAULT_PARAMS, run_all

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_BOUNDARY = 3
EXIT_VERIFY = 4

_COMPLEX_RE = re.compile(
    r"^(?P<re>[+-]?[\d./]*)?(?P<im>[+-][\d./]*)i$|^(?P<imonly>[+-]?[\d./]*)i$"
)


class InputError(ValueError):
    pass


def _parse_coeffs(text: str, mode: str) -> QuarticForm:
    parts = [p for p in text.split(",")]
    if len(parts) != 5:
        raise InputError("need exactly 5 coefficients a4,a3,a2,a1,a0")
    try:
        return QuarticForm(*(parse_scalar(p, mode) for p in parts))
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _parse_one_root(token: str, mode: str):
    token = token.strip()
    if token in ("inf", "+inf", "oo", "∞"):
        return "inf", None
    m = _COMPLEX_RE.match(token.replace(" ", ""))
    if m:
        if m.group("imonly") is not None:
            re_part, im_part = "0", m.group("imonly") or "1"
        else:
            re_part = m.group("re") or "0"
            im_part = m.group("im")
        if im_part in ("+", "-"):
            im_part += "1"
        re_v = parse_scalar(re_part or "0", mode)
        im_v = parse_scalar(im_part, mode)
        if im_v == 0:
            return "real", re_v
        return "pair", (re_v, abs(im_v))
    return "real", parse_scalar(token, mode)


def _parse_roots(text: str, mode: str) -> QuarticForm:
    """Roots as comma-separated reals, "inf", or a+bi (conjugate auto-added)."""
    tallies: dict = {}
    order: list = []
    total = 0
    for token in text.split(","):
        try:
            kind, value = _parse_one_root(token, mode)
        except ValueError as exc:
            raise InputError(f"bad root {token!r}: {exc}") from exc
        key = (kind, value if kind != "pair" else (value[0], value[1]))
        if key not in tallies:
            tallies[key] = 0
            order.append(key)
        tallies[key] += 1
        total += 2 if kind == "pair" else 1
    if total != 4:
        raise InputError(
            f"root multiplicities must sum to 4 (pairs count twice), got {total}"
        )
    entries = []
    for kind, value in order:
        mult = tallies[(kind, value)]
        if kind == "inf":
            entries.append(InfiniteRoot(mult))
        elif kind == "real":
            entries.append(RealRoot(value, mult))
        else:
            re_v, im_v = value
            entries.append(ConjugatePair(re_v, im_v, None, mult))
    return from_roots(entries)


def _input_form(args) -> QuarticForm:
    if bool(args.coeffs) == bool(args.roots):
        raise InputError("provide exactly one of --coeffs or --roots")
    if args.coeffs:
        return _parse_coeffs(args.coeffs, args.mode)
    return _parse_roots(args.roots, args.mode)


def _scalar_doc(x):
    return format_scalar(x) if is_exact(x) else float(x)


def _root_doc(rs):
    out = []
    for e in rs.entries:
        if isinstance(e, InfiniteRoot):
            out.append({"root": "inf", "mult": e.mult})
        elif isinstance(e, RealRoot):
            out.append({"root": _scalar_doc(e.value), "mult": e.mult})
        else:
            out.append(
                {
                    "root": {"re": _scalar_doc(e.re), "im": _scalar_doc(e.im)},
                    "mult": e.mult,
                }
            )
    return out


def build_report(f: QuarticForm, descriptor, tol: float) -> dict:
    from .forms import gram_matrix
    from .classify import orbit_tangent_basis

    tangent = orbit_tangent_basis(f)
    gram = gram_matrix(list(tangent))
    return {
        "document": "quartic-orbits classification report",
        "input": {
            "coeffs": [_scalar_doc(c) for c in f.coeffs],
            "mode": "exact" if f.is_exact() else "float",
            "tol": tol,
        },
        "q": _scalar_doc(q_value(f)),
        "region": descriptor.region.value,
        "stratum": descriptor.stratum.value,
        "root_structure": descriptor.structure.value,
        "roots": _root_doc(roots_of(f)),
        "dim": descriptor.dim,
        "signature": list(descriptor.signature),
        "parameter": {
            "kind": descriptor.parameter.kind.value,
            "value": None
            if descriptor.parameter.value is None
            else _scalar_doc(descriptor.parameter.value),
            "exact_key": None
            if descriptor.parameter.exact_key is None
            else _scalar_doc(descriptor.parameter.exact_key),
        },
        "canonical_form": [_scalar_doc(c) for c in descriptor.canonical_form.coeffs],
        "normalizer": [_scalar_doc(e) for e in descriptor.normalizer.entries()],
        "diagnostics": {
            "tangent_gram": [[_scalar_doc(v) for v in row] for row in gram],
        },
    }


def _print_summary(report: dict) -> None:
    sig = tuple(report["signature"])
    print(f"region     : {report['region']}")
    print(f"stratum    : {report['stratum']}")
    print(f"structure  : {report['root_structure']}")
    print(f"dim        : {report['dim']}")
    print(f"signature  : (neg, pos, rad) = {sig}")
    print(f"q          : {report['q']}")
    par = report["parameter"]
    if par["kind"] != "none":
        print(f"parameter  : {par['kind']} = {par['value']}")
    print(f"canonical  : {report['canonical_form']}")


def cmd_classify(args) -> int:
    f = _input_form(args)
    descriptor = classify(f, mode=args.mode, tol=args.tol)
    report = build_report(f, descriptor, args.tol)
    if args.format == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        _print_summary(report)
    if args.out:
        Path(args.out).write_text(
            json.dumps(report, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
    return EXIT_OK


def cmd_verify(args) -> int:
    params = list(DEFAULT_PARAMS)
    if args.params:
        for item in args.params.split(","):
            item = item.split("=", 1)[-1]
            params.append(Fraction(item))
    results = run_all(params=params)
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return EXIT_OK if not failed else EXIT_VERIFY


def _parse_range(text: str):
    lo, _, hi = text.partition(":")
    try:
        return (Fraction(lo), Fraction(hi))
    except ValueError as exc:
        raise InputError(f"bad range {text!r}, expected lo:hi") from exc


def cmd_mesh(args) -> int:
    rng = _parse_range(args.range)
    if not rng[0] < rng[1]:
        raise InputError("range must satisfy lo < hi")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    curve = charts.sample_quadruple_curve(rng, n=args.n)
    surface = charts.sample_triple_surface(rng, rng, n=args.n, m=args.m)
    if args.diagonal_check:
        us = [rng[0] + (rng[1] - rng[0]) * k / (args.n - 1) for k in range(args.n)]
        for u in us:
            if charts.triple_chart_point(u, u) != charts.quadruple_chart_point(u):
                print("diagonal check failed", file=sys.stderr)
                return 1
        print("diagonal check passed: surface(u,u) lies on the curve")
    ext = args.format
    files = [
        export.write_geometry(curve, out / f"curve.{ext}", ext),
        export.write_geometry(surface, out / f"surface.{ext}", ext),
    ]
    figure = export.render_views(
        [surface, curve],
        out / "views.png",
        title="quadruple-root curve (red) and its tangent surface (green)",
    )
    for path in files + [figure]:
        print(f"wrote {path}")
    return EXIT_OK


def cmd_sample(args) -> int:
    f = _input_form(args)
    cloud = charts.sample_orbit(
        f, count=args.count, seed=args.seed, radius=args.radius, tol=args.tol
    )
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    path = export.write_geometry(cloud, out, args.format)
    print(f"wrote {path}  (kept {cloud.metadata['kept']}, "
          f"dropped {cloud.metadata['dropped_out_of_chart']})")
    figure = export.render_views([cloud], out.with_suffix(".png"), title="orbit samples")
    print(f"wrote {figure}")
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quartic-orbits",
        description="Classify projective binary quartics under the Mobius action "
        "and export orbit geometry.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p):
        p.add_argument("--coeffs", help="a4,a3,a2,a1,a0 (rationals p/q or decimals)")
        p.add_argument("--roots", help='roots, e.g. "0,1,1/4,inf" or "0,inf,1+2i"')
        p.add_argument("--mode", choices=("exact", "float"), default="exact")
        p.add_argument("--tol", type=float, default=1e-9)

    p = sub.add_parser("classify", help="orbit descriptor of one projective point")
    add_input(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", help="also write the JSON report here")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("verify", help="run the built-in verification suite")
    p.add_argument("--params", help="extra rational parameters, e.g. r=1/3,2/5")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("mesh", help="export the curve and tangent surface")
    p.add_argument("--range", default="-3/2:3/2", help="parameter range lo:hi")
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--m", type=int, default=200)
    p.add_argument("--out", default="mesh_out", help="output directory")
    p.add_argument("--format", choices=("csv", "obj", "json"), default="csv")
    p.add_argument("--diagonal-check", action="store_true")
    p.set_defaults(fn=cmd_mesh)

    p = sub.add_parser("sample", help="random orbit point cloud with audits")
    add_input(p)
    p.add_argument("--count", type=int, default=500)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--out", default="orbit_cloud.csv")
    p.add_argument("--format", choices=("csv", "obj", "json"), default="csv")
    p.set_defaults(fn=cmd_sample)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses exit code 2 for usage errors
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except (InputError, ZeroFormError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BoundaryUncertainError as exc:
        print(f"boundary-uncertain: {exc}", file=sys.stderr)
        return EXIT_BOUNDARY
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
