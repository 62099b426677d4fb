"""Command-line front end: ``padic-so3 <command> [options]``.

Exit codes: 0 success, 1 bad input, 2 the requested decomposition does not
exist (a witness is printed), 3 working precision was exhausted.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import sys
from dataclasses import dataclass

from .decompose import (
    ALL_ORDERS,
    FeasibilityReport,
    counterexample_euler,
    counterexample_p2,
    counterexample_xzy,
    decompose,
    feasibility_check,
    is_euler,
    normalise_order,
)
from .errors import (
    BudgetExceeded,
    DecompositionInfeasible,
    PadicError,
    ParseError,
    PrecisionExhausted,
)
from .io import (
    format_matrix,
    matrix_to_json,
    parse_form,
    parse_matrix,
    parse_point,
    parse_vector,
    split_items,
)
from .padic import PadicContext, hilbert_symbol, parse_literal
from .projection import enumerate_so2_mod, enumerate_so3_mod
from .quadforms import (
    DiagonalQuadraticForm,
    classify_definite_2d,
    invariants,
    kappa_from_label,
    represents_zero,
)
from .so2 import compose2, matrix2, rotation2
from .so3 import Rotation3, axis_of, axis_residual, is_member, random_element, rotation_about

SCHEMA_VERSION = 1
EXIT_OK, EXIT_INPUT, EXIT_INFEASIBLE, EXIT_PRECISION = 0, 1, 2, 3


@dataclass(frozen=True)
class CommandConfig:
    prime: int | None
    precision: int
    guard: int
    seed: int
    output_format: str
    budget: int

    def context(self) -> PadicContext:
        if self.prime is None:
            raise ValueError("--p is required for this command")
        return PadicContext(self.prime, self.precision, self.guard)


class _Emitter:
    def __init__(self, fmt: str, out):
        self.fmt = fmt
        self.out = out

    def emit(self, payload: dict, text: str | None = None) -> None:
        if self.fmt == "json":
            body = {"schema_version": SCHEMA_VERSION, **payload}
            self.out.write(json.dumps(body, indent=2) + "\n")
        else:
            self.out.write((text if text is not None else _as_text(payload)) + "\n")


def _as_text(payload: dict, indent: str = "") -> str:
    lines = []
    for k, v in payload.items():
        if isinstance(v, dict):
            lines.append(f"{indent}{k}:")
            lines.append(_as_text(v, indent + "  "))
        elif isinstance(v, list) and v and isinstance(v[0], list):
            lines.append(f"{indent}{k}:")
            lines.extend(f"{indent}  " + "; ".join(map(str, row)) for row in v)
        else:
            lines.append(f"{indent}{k}: {v}")
    return "\n".join(lines)


def _read_matrix(ctx: PadicContext, spec: str, stdin) -> tuple:
    text = stdin.read() if spec == "-" else spec
    return parse_matrix(ctx, text)


# -- commands ----------------------------------------------------------------


def cmd_classify(args, cfg: CommandConfig, em: _Emitter, stdin) -> int:
    if args.form:
        ctx, coeffs = parse_form(args.form, cfg.precision, cfg.guard)
    else:
        ctx = cfg.context()
        coeffs = [parse_literal(ctx, s) for s in split_items(args.coeffs)]
    q = DiagonalQuadraticForm(ctx, tuple(coeffs))
    inv = invariants(q)
    definite = not represents_zero(q)
    payload = {
        "p": ctx.p,
        "rank": inv.rank,
        "disc_class": inv.discriminant.label,
        "hasse": inv.hasse,
        "definite": definite,
    }
    if inv.rank == 2 and definite:
        payload["kappa"] = classify_definite_2d(q).label
    em.emit(payload)
    return EXIT_OK


def cmd_hilbert(args, cfg, em, stdin) -> int:
    ctx = cfg.context()
    a, b = parse_literal(ctx, args.a), parse_literal(ctx, args.b)
    em.emit({"p": ctx.p, "a": str(a), "b": str(b), "symbol": hilbert_symbol(a, b)})
    return EXIT_OK


def cmd_so2(args, cfg, em, stdin) -> int:
    ctx = cfg.context()
    kappa = kappa_from_label(ctx, args.kappa)
    r = rotation2(kappa, parse_point(ctx, args.sigma))
    if args.action == "compose":
        r = compose2(r, rotation2(kappa, parse_point(ctx, args.tau)))
    m = matrix2(r)
    em.emit(
        {"p": ctx.p, "kappa": kappa.label, "point": str(r.point), "matrix": matrix_to_json(m)},
        f"point: {r.point}\n{format_matrix(m)}",
    )
    return EXIT_OK


def cmd_so3(args, cfg, em, stdin) -> int:
    ctx = cfg.context()
    if args.action == "member":
        rows = _read_matrix(ctx, args.matrix, stdin)
        em.emit({"p": ctx.p, "member": is_member(rows, ctx)})
        return EXIT_OK
    if args.action == "axis":
        rot = Rotation3(ctx, _read_matrix(ctx, args.matrix, stdin))
        if not is_member(rot):
            raise ValueError("matrix is not an element of SO(3)_p")
        ax = axis_of(rot)
        res = axis_residual(rot, ax.n)
        em.emit(
            {
                "p": ctx.p,
                "axis": [str(x) for x in ax.n],
                "q_class": ax.q_class.label,
                "residual_valuation": _num(res),
            }
        )
        return EXIT_OK
    if args.action == "rotate":
        rot = rotation_about(parse_vector(ctx, args.axis), parse_point(ctx, args.sigma))
    else:
        rot = random_element(ctx, cfg.seed)
    em.emit({"p": ctx.p, "matrix": matrix_to_json(rot.entries)}, format_matrix(rot.entries))
    return EXIT_OK


def _num(x):
    return "inf" if x == float("inf") else int(x)


def _report_dict(r: FeasibilityReport) -> dict:
    return {
        "order": r.order,
        "feasible": r.feasible,
        "witness": None if r.witness is None else str(r.witness),
        "witness_class": None if r.witness_class is None else r.witness_class.label,
    }


def cmd_decompose(args, cfg, em, stdin) -> int:
    ctx = cfg.context()
    rot = Rotation3(ctx, _read_matrix(ctx, args.matrix, stdin))
    try:
        d1, d2 = decompose(rot, args.order)
    except DecompositionInfeasible as exc:
        em.emit({"p": ctx.p, "feasible": False, **_report_dict(exc.report)})
        return EXIT_INFEASIBLE
    resid = rot.agreement(d1.matrix(ctx))
    em.emit(
        {
            "p": ctx.p,
            "order": d1.order,
            "feasible": True,
            "params": [str(x) for x in d1.params],
            "twin": [str(x) for x in d2.params],
            "residual_valuation": _num(resid),
        }
    )
    return EXIT_OK


def cmd_feasibility(args, cfg, em, stdin) -> int:
    ctx = cfg.context()
    rot = Rotation3(ctx, _read_matrix(ctx, args.matrix, stdin))
    orders = ALL_ORDERS if args.all_orders or not args.order else (args.order,)
    reports = [_report_dict(feasibility_check(rot, o)) for o in orders]
    em.emit(
        {"p": ctx.p, "reports": reports},
        "\n".join(
            f"{r['order']}: {'feasible' if r['feasible'] else 'infeasible'}"
            + ("" if r["feasible"] else f" witness {r['witness']} class {r['witness_class']}")
            for r in reports
        ),
    )
    return EXIT_OK


def cmd_counterexample(args, cfg, em, stdin) -> int:
    kind = args.kind.lower()
    if kind == "p2":
        ctx = PadicContext(2, cfg.precision, cfg.guard)
        rot = counterexample_p2(ctx)
        target = ALL_ORDERS
    else:
        ctx = cfg.context()
        if kind == "xzy":
            rot = counterexample_xzy(ctx)
            target = ("XZY",)
        elif kind.startswith("euler-"):
            order = normalise_order(kind[len("euler-") :])
            if not is_euler(order):
                raise ValueError(f"{order} is not an Euler order")
            rot = counterexample_euler(ctx, order)
            target = (order,)
        else:
            raise ValueError(f"unknown counterexample kind {args.kind!r}")
    payload = {"p": ctx.p, "kind": kind, "matrix": matrix_to_json(rot.entries)}
    text = format_matrix(rot.entries)
    if args.verify:
        payload["member"] = is_member(rot)
        reports = [_report_dict(feasibility_check(rot, o)) for o in target]
        payload["reports"] = reports
        text += f"\nmember: {payload['member']}"
        for r in reports:
            text += (
                f"\n{r['order']}: "
                + ("feasible" if r["feasible"] else f"infeasible, witness {r['witness']} "
                   f"(class {r['witness_class']})")
            )
    em.emit(payload, text)
    return EXIT_OK


def cmd_enumerate(args, cfg, em, stdin) -> int:
    if cfg.prime is None:
        raise ValueError("--p is required for this command")
    if args.group == "so2":
        if not args.kappa:
            raise ValueError("--kappa is required for --group so2")
        rep, _ = enumerate_so2_mod(cfg.prime, args.kappa, args.k, cfg.budget)
    else:
        rep, _ = enumerate_so3_mod(cfg.prime, args.k, cfg.budget)
    d = rep.as_dict()
    if cfg.output_format == "csv":
        buf = _io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(d), lineterminator="\n")
        w.writeheader()
        w.writerow(d)
        em.out.write(buf.getvalue())
    else:
        em.emit(d)
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def _common(formats=("json", "text")) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, help="the prime")
    common.add_argument("--precision", type=int, default=48, help="significant digits N")
    common.add_argument("--guard", type=int, default=8, help="comparison slack digits g")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", dest="output_format", choices=formats, default="json")
    common.add_argument("--budget", type=int, default=10**6, help="enumeration budget")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="padic-so3", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="invariants of a diagonal form")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--form", help="qf p=<p> [a1,a2,...]")
    g.add_argument("--coeffs", help="coefficients, used with --p")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("hilbert", parents=[common], help="Hilbert symbol (a, b)_p")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("so2", help="planar rotation groups")
    s2 = p.add_subparsers(dest="action", required=True)
    for name in ("compose", "matrix"):
        q = s2.add_parser(name, parents=[common])
        q.add_argument("--kappa", required=True, help="kappa label; write --kappa=-v for -v")
        q.add_argument("--sigma", required=True, help="sigma, s:t or inf")
        if name == "compose":
            q.add_argument("--tau", required=True)
        q.set_defaults(func=cmd_so2)

    p = sub.add_parser("so3", help="the group SO(3)_p")
    s3 = p.add_subparsers(dest="action", required=True)
    for name in ("member", "axis"):
        q = s3.add_parser(name, parents=[common])
        q.add_argument("--matrix", required=True, help="I, JSON, 9 literals, or - for stdin")
        q.set_defaults(func=cmd_so3)
    q = s3.add_parser("rotate", parents=[common])
    q.add_argument("--axis", required=True, help="nx,ny,nz")
    q.add_argument("--sigma", required=True)
    q.set_defaults(func=cmd_so3)
    q = s3.add_parser("random", parents=[common])
    q.set_defaults(func=cmd_so3)

    p = sub.add_parser("decompose", parents=[common], help="decompose in a given axis order")
    p.add_argument("--order", required=True)
    p.add_argument("--matrix", required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("feasibility", parents=[common], help="square-test certificates")
    p.add_argument("--matrix", required=True)
    p.add_argument("--order")
    p.add_argument("--all-orders", action="store_true")
    p.set_defaults(func=cmd_feasibility)

    p = sub.add_parser("counterexample", parents=[common], help="matrices with no decomposition")
    p.add_argument("--kind", required=True, help="xzy, euler-<order> or p2")
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("enumerate", parents=[_common(("json", "text", "csv"))], help="finite quotients mod p^k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--group", choices=("so2", "so3"), default="so3")
    p.add_argument("--kappa")
    p.set_defaults(func=cmd_enumerate)
    return parser


def run(argv=None, stdout=None, stderr=None, stdin=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    stdin = stdin or sys.stdin
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    cfg = CommandConfig(
        args.p, args.precision, args.guard, args.seed, args.output_format, args.budget
    )
    em = _Emitter(cfg.output_format if cfg.output_format != "csv" else "json", stdout)
    try:
        return args.func(args, cfg, em, stdin)
    except ParseError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except PrecisionExhausted as exc:
        stderr.write(f"error: {exc}\nhint: retry with a larger --precision\n")
        return EXIT_PRECISION
    except (PadicError, ValueError, BudgetExceeded) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
