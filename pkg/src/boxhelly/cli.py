"""Command line interface.

Every subcommand prints a JSON report to stdout and a one-line summary to
stderr. Randomized subcommands require ``--seed``.

Exit codes: 0 completed (the verdict is in the report), 1 usage error,
2 input error, 3 search cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .clustering import ClusterInstance, calibrate_gamma, cluster_test, cover_check, gen_cluster_instance
from .constructions import (
    VARIANTS,
    LowerBoundSystem,
    gen_interval_tight,
    gen_lowerbound_2piercing,
    witness_from_tables,
)
from .core import contains_point, rational
from .errors import BoxHellyError, CapExceeded, WitnessError
from .helly import (
    check_colorful_helly,
    check_helly,
    fraction_pierceable,
    max_pierceable_subfamily,
)
from .io import DocumentError, InstanceDocument, document, dumps, parse, report, serialize
from .piercing import ColorSystem, Family, is_pierceable, pierce_n
from .svg import render_svg

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> InstanceDocument:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise DocumentError(str(exc), path) from None
    return parse(text)


def _expect(doc: InstanceDocument, *kinds: str) -> None:
    if doc.kind not in kinds:
        raise DocumentError(f"expected a {' or '.join(kinds)} document, got {doc.kind}", "$.kind")


def _family_of(doc: InstanceDocument) -> Family:
    _expect(doc, "family", "color-system")
    return doc.payload if doc.kind == "family" else doc.payload.flatten()


def _lower_bound_of(doc: InstanceDocument) -> LowerBoundSystem:
    _expect(doc, "color-system")
    for variant in VARIANTS:
        candidate = gen_lowerbound_2piercing(doc.dim, variant)
        if candidate.system == doc.payload:
            return candidate
    raise DocumentError("color system is not a generated lower-bound system", "$.classes")


def _ints(text: str, what: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise UsageError(f"{what} must be comma separated integers") from None


def _params(text: Optional[str]) -> dict[str, str]:
    out: dict[str, str] = {}
    if not text:
        return out
    for item in text.split(","):
        if "=" not in item:
            raise UsageError(f"--params entries look like key=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _pt(p) -> str:
    return "(" + ", ".join(map(str, p)) + ")"


def _emit(out: dict, summary: str) -> None:
    sys.stdout.write(dumps(out))
    sys.stderr.write(summary + "\n")


def cmd_pierce(args) -> None:
    fam = _family_of(_read(args.input))
    cert = pierce_n(fam, args.n, method=args.method)
    if cert.pierceable:
        assert all(any(contains_point(b, p) for p in cert.witness) for b in fam)
    else:
        assert not is_pierceable(fam.subfamily(cert.violation), args.n)
    _emit(
        report("pierce", {"n": args.n, "method": args.method, "boxes": len(fam)}, cert),
        f"{cert.verdict} with n={args.n}",
    )


def cmd_helly(args) -> None:
    fam = _family_of(_read(args.input))
    rep = check_helly(fam, args.h, args.n)
    _emit(
        report("helly", {"h": args.h, "n": args.n, "boxes": len(fam)}, rep),
        f"premise {'holds' if rep.premise_holds else 'fails'}, "
        f"conclusion {'holds' if rep.conclusion_holds else 'fails'}",
    )


def cmd_colorful(args) -> None:
    doc = _read(args.input)
    _expect(doc, "color-system")
    rep = check_colorful_helly(doc.payload, args.n, strong=args.strong)
    if rep.conclusion_certificate is not None:
        cert = rep.conclusion_certificate
        ext = list(doc.payload.classes[cert.class_index])
        ext += [doc.payload.classes[k][i] for k, i in cert.representatives.items()]
        assert all(any(contains_point(b, p) for p in cert.witness) for b in ext)
    _emit(
        report("colorful", {"n": args.n, "strong": args.strong, "classes": len(doc.payload)}, rep),
        f"premise {'ok' if rep.premise_holds else 'violated'}; "
        + (f"class {rep.weak_class} is {args.n}-pierceable" if rep.weak_class is not None else f"no class {args.n}-pierceable"),
    )


def cmd_fraction(args) -> None:
    fam = _family_of(_read(args.input))
    if args.samples is not None and args.seed is None:
        raise UsageError("--samples requires --seed")
    res = fraction_pierceable(fam, args.t, args.n, samples=args.samples, seed=args.seed)
    alpha = res if isinstance(res, Fraction) else res.estimate
    result = {"alpha": alpha, "exhaustive": args.samples is None}
    if args.samples is not None:
        result["hits"] = res.hits
        result["samples"] = res.samples
    if args.with_beta:
        sub, witness = max_pierceable_subfamily(fam, args.n)
        result["beta"] = Fraction(len(sub), len(fam))
        result["beta_subfamily"] = list(sub)
        result["beta_witness"] = witness
    _emit(
        report("fraction", {"t": args.t, "n": args.n, "samples": args.samples, "seed": args.seed}, result),
        f"alpha = {alpha}" + (f", beta = {result['beta']}" if args.with_beta else ""),
    )


def cmd_gen(args) -> None:
    p = _params(args.params)
    meta = {"generator": args.kind, "params": p}
    try:
        if args.kind == "lowerbound2":
            d = int(p.get("d", "2"))
            variant = p.get("variant", "paper")
            doc = document(gen_lowerbound_2piercing(d, variant).system, meta)
        elif args.kind == "interval-tight":
            doc = document(gen_interval_tight(int(p.get("n", "2"))), meta)
        else:
            if args.seed is None:
                raise UsageError("gen --kind cluster requires --seed")
            kind = p.get("kind", "coverable")
            extents = p["extents"].split(";") if "extents" in p else None
            inst = gen_cluster_instance(
                kind,
                int(p.get("d", "1")),
                int(p.get("n", "2")),
                int(p.get("m", "100")),
                args.seed,
                epsilon=p.get("epsilon"),
                extents=extents,
                delta=p.get("delta", "1/10"),
            )
            meta["seed"] = args.seed
            doc = document(inst, meta)
    except (KeyError, ValueError) as exc:
        if isinstance(exc, BoxHellyError):
            raise
        raise UsageError(f"bad --params: {exc}") from None
    sys.stdout.write(serialize(doc))
    sys.stderr.write(f"generated {doc.kind} (dim {doc.dim})\n")


def cmd_witness_tables(args) -> None:
    doc = _read(args.input)
    lb = _lower_bound_of(doc)
    choice = _ints(args.tuple, "--tuple")
    readings = [args.reading] if args.reading != "auto" else ["axis", "literal"]
    failures = {}
    for reading in readings:
        try:
            x, y = witness_from_tables(lb, choice, reading=reading)
        except WitnessError as exc:
            failures[reading] = str(exc)
            continue
        result = {"X": x, "Y": y, "reading": reading, "failed_readings": failures, "variant": lb.variant}
        _emit(report("witness-tables", {"tuple": choice, "reading": args.reading}, result), f"X={_pt(x)} Y={_pt(y)} ({reading})")
        return
    result = {"X": None, "Y": None, "reading": None, "failed_readings": failures, "variant": lb.variant}
    _emit(report("witness-tables", {"tuple": choice, "reading": args.reading}, result), "no table reading validates")


def _cluster_doc(path: str) -> ClusterInstance:
    doc = _read(path)
    _expect(doc, "cluster-instance")
    return doc.payload


def cmd_cluster_test(args) -> None:
    inst = _cluster_doc(args.input)
    gamma = args.gamma if args.gamma is not None else inst.gamma
    if gamma is None:
        raise UsageError("cluster-test needs --gamma (or a document carrying gamma); see `calibrate`")
    if args.delta is not None:
        inst = ClusterInstance(inst.points, inst.base, inst.n, inst.epsilon, rational(args.delta), inst.gamma)
    rep = cluster_test(inst, args.seed, gamma=rational(gamma))
    if rep.verdict == "reject":
        assert not cover_check(rep.witness, inst.base, inst.n).coverable
    params = {"gamma": rational(gamma), "delta": inst.delta, "seed": args.seed, "n": inst.n, "m": inst.m}
    _emit(report("cluster-test", params, rep), f"{rep.verdict} after {rep.trials_run}/{rep.trials_planned} trials")


def cmd_calibrate(args) -> None:
    inst = _cluster_doc(args.input)
    gamma = calibrate_gamma(inst, args.samples, args.seed)
    _emit(
        report("calibrate", {"samples": args.samples, "seed": args.seed, "n": inst.n, "m": inst.m}, {"gamma": gamma}),
        f"gamma ~ {gamma} ({float(gamma):.4f})",
    )


def cmd_render(args) -> None:
    doc = _read(args.input)
    _expect(doc, "family", "color-system")
    if doc.dim != 2:
        raise DocumentError("render needs a 2-dimensional document", "$.dim")
    witness = None
    if args.tuple:
        lb = _lower_bound_of(doc)
        witness = list(witness_from_tables(lb, _ints(args.tuple, "--tuple")))
    svg = render_svg(doc, witness=witness, title=doc.meta.get("name") if isinstance(doc.meta, dict) else None)
    Path(args.out).write_text(svg)
    _emit(report("render", {"out": args.out, "tuple": args.tuple}, {"bytes": len(svg.encode())}), f"wrote {args.out}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="boxhelly", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"boxhelly {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("pierce", help="decide n-piercability of a family")
    p.add_argument("--input", default="-")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=("auto", "grid"), default="auto")
    p.set_defaults(func=cmd_pierce)

    p = sub.add_parser("helly", help="check the h-wise premise and the global conclusion")
    p.add_argument("--input", default="-")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_helly)

    p = sub.add_parser("colorful", help="colorful Helly check on a color system")
    p.add_argument("--input", default="-")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--strong", action="store_true")
    p.set_defaults(func=cmd_colorful)

    p = sub.add_parser("fraction", help="fraction of n-pierceable t-subsets")
    p.add_argument("--input", default="-")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--with-beta", action="store_true", help="also report the largest n-pierceable subfamily")
    p.set_defaults(func=cmd_fraction)

    p = sub.add_parser("gen", help="generate an instance document")
    p.add_argument("--kind", choices=("lowerbound2", "interval-tight", "cluster"), required=True)
    p.add_argument("--params", help="comma separated key=value pairs")
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("witness-tables", help="table-driven 2-piercing witness for a colorful tuple")
    p.add_argument("--input", default="-")
    p.add_argument("--tuple", required=True, help="0-based box index per class, comma separated")
    p.add_argument("--reading", choices=("axis", "literal", "auto"), default="auto")
    p.set_defaults(func=cmd_witness_tables)

    p = sub.add_parser("cluster-test", help="run the randomized clusterability tester")
    p.add_argument("--input", default="-")
    p.add_argument("--gamma")
    p.add_argument("--delta")
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_cluster_test)

    p = sub.add_parser("calibrate", help="estimate gamma by sampling")
    p.add_argument("--input", default="-")
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("render", help="write an SVG picture of a planar document")
    p.add_argument("--input", default="-")
    p.add_argument("--out", required=True)
    p.add_argument("--tuple", help="overlay the table witness of this colorful tuple")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with warnings.catch_warnings():
            # notes already travel in the report
            warnings.simplefilter("ignore")
            args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"boxhelly: usage error: {exc}\n")
        return EXIT_USAGE
    except CapExceeded as exc:
        sys.stderr.write(f"boxhelly: {exc}\n")
        return EXIT_CAP
    except (DocumentError, BoxHellyError, ValueError, TypeError) as exc:
        sys.stderr.write(f"boxhelly: input error: {exc}\n")
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
