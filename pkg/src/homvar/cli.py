"""Command line surface.

Exit codes: 0 on success or an all-pass verification, 1 when a check
fails, 2 on usage or parse errors.  The default output style is plain
text; set it with --style or the HOMVAR_STYLE environment variable.
"""

from __future__ import annotations

import argparse
import os
import sys

from .symexpr import Scalar, scalar_equals
from .forms import exterior_d
from .parser import ParseError, parse_map, parse_scalar
from .render import render
from .suite import run_suite
from .variational import (
    Lagrangian,
    check_homogeneity,
    determinant_fixture,
    euler_lagrange,
    fundamental_form,
    hilbert_forms,
    projectability,
    prolong_pullback,
    section4_fixture,
    section4_mixed_partial,
    section4_mixed_partial_closed_form,
)
from .calculus_ops import max_field


class CliError(Exception):
    pass


def load_lagrangian(text: str) -> Lagrangian:
    """Fixture names det:<a>,<b> and paper-s4, or a scalar expression."""
    text = text.strip()
    if text == "paper-s4":
        return section4_fixture()
    if text.startswith("det:"):
        try:
            a, b = (int(x) for x in text[4:].split(","))
        except ValueError:
            raise CliError(f"malformed determinant fixture name {text!r}") from None
        return determinant_fixture(a, b)
    value = parse_scalar(text)
    if value.max_order() > 2:
        raise CliError("Lagrangians must have jet order <= 2")
    return Lagrangian(value, max(1, max_field(value)))


def _style(args) -> str:
    return args.style or os.environ.get("HOMVAR_STYLE", "plain")


def cmd_homogeneity(args) -> int:
    L = load_lagrangian(args.lagrangian)
    rep = check_homogeneity(L)
    style = _style(args)
    for (i, j), defect in sorted(rep.first_order_defects.items()):
        print(f"d^{i}_{j} L - delta^{i}_{j} L = {render(defect, style)}")
    for (ik, j), defect in sorted(rep.second_order_defects.items()):
        print(f"d^{ik[0]}{ik[1]}_{j} L = {render(defect, style)}")
    print(f"homogeneous: {rep.homogeneous}")
    return 0 if rep.homogeneous else 1


def cmd_hilbert(args) -> int:
    L = load_lagrangian(args.lagrangian)
    th1, th2 = hilbert_forms(L)
    style = _style(args)
    print(f"th^1 = {render(th1, style)}")
    print(f"th^2 = {render(th2, style)}")
    return 0


def cmd_euler_lagrange(args) -> int:
    L = load_lagrangian(args.lagrangian)
    eps = euler_lagrange(L)
    print(render(eps, _style(args)))
    return 0


def cmd_fundamental(args) -> int:
    L = load_lagrangian(args.lagrangian)
    print(render(fundamental_form(L), _style(args)))
    return 0


def cmd_obstructions(args) -> int:
    L = load_lagrangian(args.lagrangian)
    rep = check_homogeneity(L)
    if not rep.homogeneous:
        print("input is not homogeneous; obstruction analysis skipped", file=sys.stderr)
        return 1
    pr = projectability(L)
    style = _style(args)
    print(f"covector order: {pr.covector_order}")
    print(f"coefficient order: {pr.coefficient_order}")
    print(f"horizontal over second order: {pr.horizontal}")
    print(f"projectable to fourth order: {pr.frame_projectable}")
    print(f"contact projectable: {pr.contact_projectable}")
    if pr.witness is not None:
        kind, idx, l = pr.witness
        label = f"{kind}^{''.join(str(x) for x in idx)}_{l} Theta"
        print(f"witness: {label} = {render(pr.contact_obstructions[pr.witness], style)}")
    residual_bad = [k for k, v in pr.lie_closed_form_residuals.items() if not v.is_zero()]
    print(f"third-order Lie closed form matches: {not residual_bad}")
    return 0


def cmd_verify(args) -> int:
    L = load_lagrangian(args.lagrangian)
    report = run_suite(
        L,
        level=args.suite,
        seed=args.seed,
        cases=args.cases,
        target=args.lagrangian,
    )
    if args.json or _style(args) == "json":
        print(report.to_json())
    else:
        print(f"seed: {report.seed}  cases: {report.cases}")
        for c in report.checks:
            line = f"[{c.status:^7}] {c.name:32s} {c.anchor}"
            if c.detail:
                line += f"  ({c.detail})"
            line += f"  [{c.ms:.0f} ms]"
            print(line)
        print("result:", "pass" if report.passed else "FAIL")
    return 0 if report.passed else 1


def cmd_paper_example(args) -> int:
    style = _style(args)
    L = section4_fixture()
    rep = check_homogeneity(L)
    mixed = section4_mixed_partial()
    closed = section4_mixed_partial_closed_form()
    print(f"L homogeneous: {rep.homogeneous}")
    print("d2L/du1_11 du2_12 - d2L/du2_11 du1_12 =")
    print(render(mixed, style))
    match = scalar_equals(mixed, closed)
    print(f"matches 4*u2_2*u3_2*D34/(D12)^3: {match}")
    ok = rep.homogeneous and match and not mixed.is_zero()
    return 0 if ok else 1


def cmd_pullback(args) -> int:
    L = load_lagrangian(args.lagrangian)
    phi = parse_map(args.map)
    if len(phi) < L.n_fields:
        raise CliError(
            f"map has {len(phi)} components but the Lagrangian uses {L.n_fields} fields"
        )
    try:
        t1s, t2s = args.at.split(",")
        from fractions import Fraction

        point = (Fraction(t1s.strip()), Fraction(t2s.strip()))
    except ValueError:
        raise CliError(f"malformed evaluation point {args.at!r}") from None
    theta = fundamental_form(L)
    pulled = prolong_pullback(phi, theta, point)
    coeff = pulled[0][1]
    lvalue = prolong_pullback(phi, L.value, point)
    print(f"pullback of Theta: {coeff} * dt1^dt2")
    print(f"L along the prolonged map: {lvalue}")
    match = coeff == lvalue
    print(f"equal: {match}")
    return 0 if match else 1


def build_arg_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="homvar",
        description=(
            "Exact calculus for second-order homogeneous Lagrangians in two "
            "independent variables: Hilbert forms, the Euler-Lagrange form, "
            "the fundamental 2-form, and their identity suites."
        ),
    )
    ap.add_argument(
        "--style",
        choices=("plain", "latex", "json"),
        default=None,
        help="output style (default: HOMVAR_STYLE or plain)",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def lagrangian_cmd(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("lagrangian", help="expression, det:<a>,<b>, or paper-s4")
        p.set_defaults(fn=fn)
        return p

    lagrangian_cmd("homogeneity", cmd_homogeneity, "homogeneity defects of a Lagrangian")
    lagrangian_cmd("hilbert", cmd_hilbert, "the two Hilbert 1-forms")
    lagrangian_cmd("euler-lagrange", cmd_euler_lagrange, "the Euler-Lagrange form")
    lagrangian_cmd("fundamental", cmd_fundamental, "the fundamental 2-form")
    lagrangian_cmd("obstructions", cmd_obstructions, "projectability diagnostics")

    v = lagrangian_cmd("verify", cmd_verify, "run the identity suite")
    v.add_argument("--suite", choices=("core", "extended"), default="core")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--cases", type=int, default=100)
    v.add_argument("--json", action="store_true", help="emit the report as JSON")

    p = sub.add_parser("paper-example", help="the R^4 example: homogeneity and the mixed-partial value")
    p.set_defaults(fn=cmd_paper_example)

    pb = lagrangian_cmd("pullback", cmd_pullback, "pull the fundamental form back along a map")
    pb.add_argument("--map", required=True, help="comma-separated polynomials in t1, t2")
    pb.add_argument("--at", required=True, help="evaluation point t1,t2 (rationals)")
    return ap


def main(argv=None) -> int:
    ap = build_arg_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.fn(args)
    except (ParseError, CliError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
