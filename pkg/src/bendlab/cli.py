"""Command-line surface.

Subcommands: ``validate``, ``cohomology``, ``branched-system``, ``bend``,
``borromean``. Every command accepts ``--output PATH`` and writes one JSON
document there; stdout always mirrors it. Exit codes: 0 success, 1 check
failure, 2 input error. BENDLAB_FLOAT_TOL overrides the float rank tolerance.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import fixtures
from .acceptance import COEFFICIENT_KINDS, run_fixture_suite
from .bending import (BendingDatum, CentralizerError, centralizer_generator,
                      hnn_first_order, tangent_cocycle, trace_derivative_matrix)
from .cohomology import (CocycleSpace, class_span_dim, h1_report,
                         peripheral_invariant_dims)
from .complexes import BendingComplex, bending_dimension
from .linalg import DEFAULT_FLOAT_TOLERANCE, rref_rank
from .modules import build_module
from .reps import Representation, validate_representation
from .words import Presentation, parse_word

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2


class InputError(Exception):
    pass


def _float_tolerance() -> float:
    raw = os.environ.get("BENDLAB_FLOAT_TOL")
    if raw is None:
        return DEFAULT_FLOAT_TOLERANCE
    try:
        tol = float(raw)
    except ValueError as exc:
        raise InputError(f"BENDLAB_FLOAT_TOL is not a number: {raw!r}") from exc
    if tol <= 0:
        raise InputError("BENDLAB_FLOAT_TOL must be positive")
    return tol


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _load_presentation(path: str | None) -> Presentation:
    if path is None:
        return fixtures.load_presentation()
    try:
        return Presentation.from_json(_load_json(path))
    except (KeyError, ValueError) as exc:
        raise InputError(f"bad presentation file {path}: {exc}") from exc


def _load_representation(path: str | None, pres: Presentation) -> Representation:
    if path is None:
        try:
            return fixtures.load_representation(pres)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    try:
        return Representation.from_json(_load_json(path), pres)
    except (KeyError, ValueError) as exc:
        raise InputError(f"bad representation file {path}: {exc}") from exc


def _emit(document: dict, output: str | None) -> None:
    text = json.dumps(document, indent=2)
    if output:
        with open(output, "w") as fh:
            fh.write(text + "\n")
    print(text)


def cmd_validate(args) -> int:
    pres = _load_presentation(args.presentation)
    rep = _load_representation(args.rep, pres)
    report = validate_representation(rep)
    _emit(report.to_json(), args.output)
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


def cmd_cohomology(args) -> int:
    pres = _load_presentation(args.presentation)
    rep = _load_representation(args.rep, pres)
    validation = validate_representation(rep)
    if not validation.ok:
        bad = [c.relator for c in validation.relator_checks if not c.is_identity]
        raise InputError("representation failed validation"
                         + (f"; relators not killed: {[str(r) for r in bad]}"
                            if bad else " (form or determinant)"))
    kind = COEFFICIENT_KINDS[args.coefficients]
    mode = {"per-element": "per_element", "per-subgroup": "per_subgroup",
            "none": "none"}[args.parabolic]
    module = build_module(rep, kind)
    space = CocycleSpace(pres, module)
    report = h1_report(pres, module, mode=mode, space=space)
    consistency = {
        "h1_equals_z1_minus_b1": report.dim_h1 == report.dim_z1 - report.dim_b1,
        "b1_equals_d_minus_h0": report.dim_b1 == module.dimension - report.dim_h0,
        "rank_nullity": space.jacobian.cols ==
            rref_rank(space.jacobian)[1] + len(space.z1_basis),
        "b1_inside_z1": all(space.is_cocycle(b) for b in space.b1_basis),
    }
    if report.dim_ph1 is not None:
        consistency["ph1_equals_pz1_minus_b1"] = (
            report.dim_ph1 == report.dim_pz1 - report.dim_b1)
        peri = peripheral_invariant_dims(pres, module)
        consistency["restriction_identity"] = (
            report.dim_h1 - report.dim_ph1 == sum(peri))
    doc = report.to_json()
    doc["coefficients"] = args.coefficients
    doc["consistency"] = consistency
    _emit(doc, args.output)
    return EXIT_OK if all(consistency.values()) else EXIT_CHECK_FAILED


def cmd_branched_system(args) -> int:
    try:
        cx = BendingComplex.from_json(_load_json(args.complex))
    except (KeyError, ValueError) as exc:
        raise InputError(f"bad complex file {args.complex}: {exc}") from exc
    tol = _float_tolerance()
    report = bending_dimension(cx, args.geometry, tol)
    doc = report.to_json()
    if not report.exact:
        doc["rank_tolerance"] = tol
    _emit(doc, args.output)
    return EXIT_OK


def cmd_bend(args) -> int:
    pres = _load_presentation(args.presentation)
    rep = _load_representation(args.rep, pres)
    geometry = "sl" if args.geometry == "sl" else "so_ext"
    try:
        data = [BendingDatum.from_json(entry, pres, geometry)
                for entry in _load_json(args.pants)]
    except (KeyError, ValueError) as exc:
        raise InputError(f"bad pants file {args.pants}: {exc}") from exc
    words = []
    if args.words:
        try:
            with open(args.words) as fh:
                words = [parse_word(ln.strip(), pres.generators)
                         for ln in fh if ln.strip()]
        except OSError as exc:
            raise InputError(f"cannot read {args.words}: {exc}") from exc
    kind = "nu" if geometry == "sl" else "standard"
    module = build_module(rep, kind)
    space = CocycleSpace(pres, module)
    entries = []
    cocycles = []
    for datum in data:
        entry = {"name": datum.name}
        try:
            v = centralizer_generator(rep, datum)
        except (CentralizerError, ValueError) as exc:
            entry["error"] = str(exc)
            entries.append(entry)
            continue
        entry["v"] = v.v.to_json()
        fo = hnn_first_order(rep, datum, v)
        try:
            c = tangent_cocycle(fo, module)
            entry["cocycle"] = [str(x) for x in c]
            entry["valid_first_order"] = True
            cocycles.append(c)
        except ValueError as exc:
            entry["valid_first_order"] = False
            entry["error"] = str(exc)
        entries.append(entry)
    doc = {"geometry": args.geometry, "coefficients": kind, "pants": entries,
           "class_span": class_span_dim(space, cocycles) if cocycles else 0}
    if geometry == "sl" and words:
        f = trace_derivative_matrix(rep, data, words)
        doc["trace_derivative_matrix"] = f.to_json()
        doc["trace_matrix_rank"] = rref_rank(f)[1]
    _emit(doc, args.output)
    return EXIT_OK


def cmd_borromean(args) -> int:
    if args.presentation or args.rep:
        # overridden fixture: run validation first, abort with a diagnostic
        pres = _load_presentation(args.presentation)
        rep = _load_representation(args.rep, pres)
        validation = validate_representation(rep)
        if not validation.ok:
            bad = [str(c.relator) for c in validation.relator_checks
                   if not c.is_identity]
            raise InputError("fixture override failed validation; "
                             f"relators not killed: {bad}")
    checks = run_fixture_suite(coefficients=args.coefficients, cases=args.cases)
    for c in checks:
        print(c.line(), file=sys.stderr)
    doc = {"checks": [c.to_json() for c in checks],
           "passed": sum(c.passed for c in checks),
           "failed": sum(not c.passed for c in checks)}
    _emit(doc, args.output)
    return EXIT_OK if doc["failed"] == 0 else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bendlab",
        description="Exact twisted cohomology and branched bending computations")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a representation file")
    p.add_argument("--presentation", help="presentation JSON (default: bundled)")
    p.add_argument("--rep", help="representation JSON (default: bundled)")
    p.add_argument("--output")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("cohomology", help="cohomology dimensions")
    p.add_argument("--presentation")
    p.add_argument("--rep")
    p.add_argument("--coefficients", choices=sorted(COEFFICIENT_KINDS),
                   default="r31")
    p.add_argument("--parabolic", choices=["per-element", "per-subgroup", "none"],
                   default="per-subgroup")
    p.add_argument("--output")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("branched-system", help="per-binding closure system")
    p.add_argument("complex", help="bending complex JSON")
    p.add_argument("--geometry", choices=["so", "sl"], required=True)
    p.add_argument("--output")
    p.set_defaults(func=cmd_branched_system)

    p = sub.add_parser("bend", help="bending generators, cocycles, trace matrix")
    p.add_argument("--presentation")
    p.add_argument("--rep")
    p.add_argument("--pants", required=True, help="wall subgroup table JSON")
    p.add_argument("--words", help="file of words, one per line")
    p.add_argument("--geometry", choices=["sl", "so"], default="sl")
    p.add_argument("--output")
    p.set_defaults(func=cmd_bend)

    p = sub.add_parser("borromean", help="run the bundled fixture suite")
    p.add_argument("--coefficients", choices=sorted(COEFFICIENT_KINDS))
    p.add_argument("--cases", type=int, default=1000,
                   help="cases per randomized property suite")
    p.add_argument("--presentation", help="override the bundled presentation")
    p.add_argument("--rep", help="override the bundled representation")
    p.add_argument("--output")
    p.set_defaults(func=cmd_borromean)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
