"""Command line interface: ``contactkit <command> FILE``.

Every command prints one JSON document.  Exit codes: 0 success or
affirmative verdict, 1 well-posed negative verdict, 2 input error,
3 precision exhausted (cannot certify).
"""

import argparse
import json
import sys

from contactkit.contact import (
    icct_check,
    membership,
    realizability_check,
    solve_theta_inverse,
    structurally_smooth_origin,
    contact_defect,
    tangency_check,
    theta,
    vanishing_order_corollary,
)
from contactkit.errors import (
    DegenerateGerm,
    MembershipFailure,
    PrecisionExhausted,
    PreconditionError,
    RingMismatch,
)
from contactkit.io import (
    ProblemError,
    field_to_json,
    form_to_json,
    load_problem,
    series_to_json,
)

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_PRECISION = 0, 1, 2, 3


def _certificate_json(cert):
    out = {
        "verdict": "yes" if cert.verdict else "no",
        "certified_precision": cert.certified_precision,
    }
    if cert.verdict:
        out["gamma"] = form_to_json(cert.gamma) if cert.gamma is not None else None
    else:
        out["failing_m"] = cert.failing_m
        out["witness"] = {"monomial": list(cert.witness)}
        out["failing_component"] = list(cert.failing_component)
        out["numerator_m"] = cert.numerator_m
    return out


def cmd_defect(problem):
    germ = problem.germ()
    H = contact_defect(germ.omega)
    return EXIT_OK, {
        "command": "defect",
        "certified_precision": H.precision,
        "series": series_to_json(H),
        "classification": structurally_smooth_origin(H).value,
    }


def cmd_realizable(problem):
    result = realizability_check(problem.germ())
    return (EXIT_OK if result else EXIT_NO), {
        "command": "realizable",
        "verdict": "yes" if result else "no",
        "cond1": result.cond1,
        "cond2": result.cond2,
        "certified_precision": result.precision,
    }


def cmd_member(problem):
    cert = membership(problem.germ(), problem.function())
    out = {"command": "member", **_certificate_json(cert)}
    return (EXIT_OK if cert else EXIT_NO), out


def cmd_invert(problem):
    germ = problem.germ()
    f = problem.function()
    try:
        inv = solve_theta_inverse(germ, f)
    except MembershipFailure as exc:
        return EXIT_NO, {"command": "invert", **_certificate_json(exc.certificate)}
    X = inv.field
    tangency = tangency_check(germ, X)
    return EXIT_OK, {
        "command": "invert",
        "verdict": "yes",
        "certified_precision": X.precision,
        "field": field_to_json(X),
        "h": series_to_json(inv.h),
        "tangent": tangency.tangent,
        "has_martinet": tangency.has_martinet,
        "round_trip": theta(germ, X).agrees(f),
    }


def cmd_theta(problem):
    value = theta(problem.germ(), problem.field())
    return EXIT_OK, {
        "command": "theta",
        "certified_precision": value.precision,
        "series": series_to_json(value),
    }


def cmd_icct(problem):
    result = icct_check(problem.germ(), problem.field())
    out = {
        "command": "icct",
        "verdict": "yes" if result else "no",
        "certified_precision": result.precision,
    }
    if result:
        out["h"] = series_to_json(result.h)
    else:
        idx, coeff = result.witness
        out["witness"] = {"component": list(idx), "series": series_to_json(coeff)}
    return (EXIT_OK if result else EXIT_NO), out


def cmd_order(problem):
    germ = problem.germ()
    f = problem.function()
    try:
        report = vanishing_order_corollary(germ, f)
    except MembershipFailure as exc:
        return EXIT_NO, {"command": "order", **_certificate_json(exc.certificate)}
    order = report.order
    return EXIT_OK, {
        "command": "order",
        "verdict": "yes",
        "order": None if order == float("inf") else order,
        "certified_precision": report.field.precision,
        "field": field_to_json(report.field),
        "field_vanishes_on_S": report.field_vanishes_on_S,
        "nonvanishing_components": list(report.nonvanishing),
    }


HELP = {
    "defect": "contact defect H of omega and its classification at 0",
    "realizable": "both realizability conditions on S",
    "member": "is f a contact Hamiltonian (certificate with gamma or witness)",
    "invert": "the contact transformation X with omega(X) = f",
    "theta": "omega(X) for the supplied X",
    "icct": "is X an infinitesimal contact transformation",
    "order": "vanishing order report for an image element vanishing on S",
}

COMMANDS = {
    "defect": cmd_defect,
    "realizable": cmd_realizable,
    "member": cmd_member,
    "invert": cmd_invert,
    "theta": cmd_theta,
    "icct": cmd_icct,
    "order": cmd_order,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="contactkit",
        description="Contact Hamiltonians of singular contact germs dz + alpha + z beta.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, help=HELP[name])
        p.add_argument("file", help="problem file (JSON)")
    sub.add_parser("selftest", help="run the acceptance suite and print a table")
    return parser


def run_cli(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if args.command == "selftest":
        from contactkit.acceptance import run_all

        results = run_all(out=out)
        return EXIT_OK if all(r.passed for r in results) else EXIT_NO
    try:
        problem = load_problem(args.file)
        code, doc = COMMANDS[args.command](problem)
    except (ProblemError, PreconditionError, RingMismatch, DegenerateGerm) as exc:
        code, doc = EXIT_INPUT, {"command": args.command, "error": str(exc)}
    except PrecisionExhausted as exc:
        code, doc = EXIT_PRECISION, {"command": args.command, "error": str(exc)}
    json.dump(doc, out, indent=2)
    out.write("\n")
    return code


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
