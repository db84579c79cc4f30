"""Command-line front end.

One command per invocation; the result is a single JSON report on stdout:

    {"status": "pass" | "fail" | "error", "command": ..., "payload": ..., "diagnostics": [...]}

Exit codes: 0 pass, 1 a mathematical check failed (with witnesses in the
payload), 2 unreadable input, schema violation or unmet precondition.
Reports carry exact rational strings and no timestamps, so identical inputs
produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import fileio
from .algebra import validate, yau_twist
from .cohomology import complex_report
from .deformation import (
    TruncatedDeformation,
    check_deformation,
    extend_one_order,
    trivialize,
)
from .errors import InputError, MathCheckError, PreconditionError
from .extension import central_extension, t_star_theta_extension, t_theta_extension
from .genderiv import space_of_kind
from .representation import (
    adjoint,
    coadjoint,
    dual,
    semidirect,
    validate_representation,
)

PASS, FAIL, ERROR = 0, 1, 2

_KIND_NAMES = {
    "der": "Der",
    "qder": "QDer",
    "gder": "GDer",
    "sgder": "SGDer",
    "cent": "Centroid",
    "qcent": "QuasiCentroid",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bihomalt",
        description="Exact computations on BiHom-alternative algebras given by rational structure constants.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("validate", help="check the defining identities of an algebra file")
    p.add_argument("algebra")

    p = sub.add_parser("rep", help="representation operations")
    p.add_argument("subverb", choices=["validate", "dual", "coadjoint", "semidirect"])
    p.add_argument("algebra")
    p.add_argument("representation", nargs="?")

    p = sub.add_parser("cohomology", help="cocycle/coboundary/cohomology dimensions")
    p.add_argument("--degree", type=int, choices=[2, 3], required=True)
    p.add_argument("algebra")
    p.add_argument("representation", nargs="?")

    p = sub.add_parser("deform", help="formal deformation checks")
    p.add_argument("subverb", choices=["check", "extend", "trivialize"])
    p.add_argument("deformation")
    p.add_argument("--max-order", type=int, default=None)

    p = sub.add_parser("extend", help="central / T / T* extensions")
    p.add_argument("subverb", choices=["central", "ttheta", "tstar"])
    p.add_argument("algebra")
    p.add_argument("cocycle")
    p.add_argument("representation", nargs="?")

    p = sub.add_parser("derivations", help="derivation-type operator spaces")
    p.add_argument("--kind", choices=sorted(_KIND_NAMES), required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("algebra")

    return parser


def _rep_or_adjoint(alg, path):
    if path is None:
        return adjoint(alg)
    return fileio.load_representation(path)


def _cmd_validate(args):
    alg = fileio.load_algebra(args.algebra)
    report = validate(alg)
    diagnostics = [
        f"{name} at {tuple(w)}" for name, w in sorted(report.witnesses.items())
    ]
    status = "pass" if report.ok else "fail"
    return status, {"report": report.as_dict()}, diagnostics


def _cmd_rep(args):
    alg = fileio.load_algebra(args.algebra)
    if args.subverb == "validate":
        rep = _rep_or_adjoint(alg, args.representation)
        report = validate_representation(alg, rep)
        diagnostics = [f"{name} at {tuple(w)}" for name, w in sorted(report.witnesses.items())]
        return ("pass" if report.ok else "fail"), {"report": report.as_dict()}, diagnostics
    if args.subverb == "dual":
        rep = _rep_or_adjoint(alg, args.representation)
        out = dual(alg, rep)
        return "pass", {"representation": fileio.representation_to_json(out)}, []
    if args.subverb == "coadjoint":
        out = coadjoint(alg)
        return "pass", {"representation": fileio.representation_to_json(out)}, []
    rep = _rep_or_adjoint(alg, args.representation)
    product = semidirect(alg, rep)
    report = validate(product)
    payload = {"algebra": fileio.algebra_to_json(product), "report": report.as_dict()}
    return ("pass" if report.ok else "fail"), payload, []


def _cmd_cohomology(args):
    alg = fileio.load_algebra(args.algebra)
    rep = _rep_or_adjoint(alg, args.representation)
    report = complex_report(alg, rep, args.degree)
    return "pass", report.as_dict(), []


def _cmd_deform(args):
    defm = fileio.load_deformation(args.deformation)
    if args.subverb == "check":
        report = check_deformation(defm)
        diagnostics = [
            f"order {k} fails at {tuple(w)}" for k, w in sorted(report.witnesses.items())
        ]
        return ("pass" if report.ok else "fail"), {"report": report.as_dict()}, diagnostics
    if args.subverb == "extend":
        term = extend_one_order(defm)
        if term is None:
            return "fail", {"extended": False}, ["obstruction class is nonzero"]
        extended = TruncatedDeformation(defm.alg, [*defm.terms, term])
        payload = {
            "extended": True,
            "deformation": fileio.deformation_to_json(extended),
        }
        return "pass", payload, []
    max_order = args.max_order if args.max_order is not None else max(defm.order, 1)
    iso = trivialize(defm, max_order)
    if iso is None:
        return "fail", {"trivial": False, "max_order": max_order}, [
            "a nonzero term is not a degree-2 coboundary"
        ]
    payload = {
        "trivial": True,
        "max_order": max_order,
        "isomorphism": fileio.isomorphism_to_json(iso),
    }
    return "pass", payload, []


def _cmd_extend(args):
    alg = fileio.load_algebra(args.algebra)
    cochain, target = fileio.load_cochain(args.cocycle)
    if cochain.degree != 2:
        raise InputError(f"{args.cocycle}: extension cocycles must have degree 2")
    try:
        if args.subverb == "central":
            product = central_extension(alg, cochain.mod_dim, cochain)
        elif args.subverb == "ttheta":
            rep = _rep_or_adjoint(alg, args.representation)
            product = t_theta_extension(alg, rep, cochain)
        else:
            rep = _rep_or_adjoint(alg, args.representation)
            if target != "dual":
                raise InputError(f"{args.cocycle}: T* extension expects a cocycle with target 'dual'")
            product = t_star_theta_extension(alg, rep, cochain)
    except MathCheckError as exc:
        payload = {
            "accepted": False,
            "condition": exc.condition,
            "witness": list(exc.witness) if exc.witness is not None else None,
        }
        return "fail", payload, [str(exc)]
    report = validate(product)
    payload = {
        "accepted": True,
        "algebra": fileio.algebra_to_json(product),
        "report": report.as_dict(),
    }
    return ("pass" if report.ok else "fail"), payload, []


def _cmd_derivations(args):
    alg = fileio.load_algebra(args.algebra)
    space = space_of_kind(alg, _KIND_NAMES[args.kind], args.k, args.l)
    payload = {
        "kind": space.kind,
        "k": args.k,
        "l": args.l,
        "dim": space.dim,
        "basis": [fileio.matrix_to_json(m) for m in space.basis],
    }
    return "pass", payload, []


_COMMANDS = {
    "validate": _cmd_validate,
    "rep": _cmd_rep,
    "cohomology": _cmd_cohomology,
    "deform": _cmd_deform,
    "extend": _cmd_extend,
    "derivations": _cmd_derivations,
}


def run(argv) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    command = args.verb if not hasattr(args, "subverb") else f"{args.verb} {args.subverb}"
    try:
        status, payload, diagnostics = _COMMANDS[args.verb](args)
    except (InputError, PreconditionError) as exc:
        report = {
            "status": "error",
            "command": command,
            "payload": {},
            "diagnostics": [str(exc)],
        }
        print(json.dumps(report, indent=2))
        return ERROR
    except MathCheckError as exc:
        payload = {
            "accepted": False,
            "condition": exc.condition,
            "witness": list(exc.witness) if isinstance(exc.witness, (tuple, list)) else exc.witness,
        }
        report = {
            "status": "fail",
            "command": command,
            "payload": payload,
            "diagnostics": [str(exc)],
        }
        print(json.dumps(report, indent=2))
        return FAIL
    report = {
        "status": status,
        "command": command,
        "payload": payload,
        "diagnostics": diagnostics,
    }
    print(json.dumps(report, indent=2))
    return PASS if status == "pass" else FAIL


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
