"""Command-line interface: ``cliffordkit <subcommand> [options]``.

Exit codes: 0 success, 1 a verification failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import re
import sys
from fractions import Fraction

from .clifford import CLIFFORD, EXTERIOR, Multivector, QuadraticSpace, blade_indices, blade_product, graded_lex_masks, parse_multivector
from .endo import decompose_endo
from .errors import BadMatrixFile, CliffordError, DimensionMismatch, DimensionTooLarge
from .operators import OperatorMatrix
from .scalars import GaussianRational, format_rational, parse_scalar, scalar_from_json
from .spin import PiMultiple, clifford_exp
from .spinor import build_twisted, chirality, gamma_matrices, spinor_context
from .verify import SUITES, run_suite

__all__ = ["main", "build_parser"]

MAX_TABLE_N = 10


class UsageError(Exception):
    pass


def _seed_default() -> int:
    raw = os.environ.get("CLIFFORDKIT_SEED")
    if raw is None or raw == "":
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"CLIFFORDKIT_SEED must be an integer, got {raw!r}") from None


def _space(args) -> QuadraticSpace:
    if not args.signature:
        raise UsageError("--signature is required for this command")
    return QuadraticSpace.parse(args.signature)


# -- table ----------------------------------------------------------------------


def _blade_name(mask: int) -> str:
    idx = blade_indices(mask)
    if not idx:
        return "1"
    return "e" + "".join(str(i) if i < 10 else f"_{i}" for i in idx)


def cmd_table(args) -> tuple:
    space = _space(args)
    if space.n > MAX_TABLE_N:
        raise DimensionTooLarge(f"tables are limited to n <= {MAX_TABLE_N}, got n={space.n}")
    masks = graded_lex_masks(space.n)
    rows = []
    for a in masks:
        row = []
        for b in masks:
            coeff, k = blade_product(space, a, b, args.algebra)
            row.append((coeff, k))
        rows.append(row)
    payload = {
        "signature": space.spec(),
        "algebra": args.algebra,
        "basis": [list(blade_indices(m)) for m in masks],
        "table": [[{"coeff": format_rational(c), "blade": list(blade_indices(k)) if c else []} for c, k in row] for row in rows],
    }

    def text():
        names = [_blade_name(m) for m in masks]

        def cell(c, k):
            if c == 0:
                return "0"
            name = _blade_name(k)
            if c == 1:
                return name
            if c == -1:
                return "-" + name
            return f"{c}*{name}" if k else f"{c}"

        cells = [[cell(c, k) for c, k in row] for row in rows]
        width = max(len(x) for x in names + [c for r in cells for c in r])
        op = "*" if args.algebra == CLIFFORD else "^"
        lines = [f"{op:>{width}} | " + " ".join(f"{x:>{width}}" for x in names)]
        lines.append("-" * len(lines[0]))
        for name, r in zip(names, cells):
            lines.append(f"{name:>{width}} | " + " ".join(f"{x:>{width}}" for x in r))
        return "\n".join(lines)

    return payload, text, 0


# -- verify ----------------------------------------------------------------------


def cmd_verify(args) -> tuple:
    space = _space(args)
    if args.trials < 1:
        raise UsageError("--trials must be positive")
    report = run_suite(space, args.suite, args.seed, args.trials)
    print(f"wall time: {report.wall_time:.3f}s", file=sys.stderr)
    return report.to_json(), report.to_text, 0 if report.ok else 1


# -- gamma -----------------------------------------------------------------------


def cmd_gamma(args) -> tuple:
    if args.signature and QuadraticSpace.parse(args.signature) != QuadraticSpace((1, -1, -1, -1)):
        raise UsageError("gamma matrices are defined for the signature s:+--- only")
    ctx = spinor_context(QuadraticSpace((1, -1, -1, -1)))
    gm = gamma_matrices(ctx)
    basis = ctx.basis_indices()
    adj = gm.adjointness()
    labels = {1: "selfadjoint", -1: "anti-selfadjoint", 0: "neither"}
    payload = {
        "signature": ctx.base.spec(),
        "spinor_basis": basis,
        "gamma": [g.to_json(basis) for g in gm.gammas],
        "gamma5": gm.gamma5.to_json(basis),
        "chirality_order": list(gm.order),
        "block_change": gm.T.to_json([list(b) for b in gm.basis]),
        "block_form": {
            **{f"gamma{mu}": gm.block_form(mu).to_json() for mu in range(4)},
            "gamma5": gm.block_form(5).to_json(),
        },
        "adjointness": {k: labels[v] for k, v in adj.items()},
    }

    def text():
        lines = ["spinor basis (graded-lex blades of V+): " + " ".join(_fmt_idx(b) for b in basis)]
        for mu, g in enumerate(gm.gammas):
            lines.append(f"gamma^{mu} ({labels[adj[f'gamma{mu}']]}):")
            lines.extend("  " + r for r in _matrix_lines(g))
        lines.append(f"gamma_5 ({labels[adj['gamma5']]}):")
        lines.extend("  " + r for r in _matrix_lines(gm.gamma5))
        lines.append("chirality order: " + " ".join(_fmt_idx(basis[i]) for i in gm.order))
        lines.append("block change T (gamma_block = T^-1 gamma T in chirality order):")
        lines.extend("  " + r for r in _matrix_lines(gm.T))
        for mu in range(4):
            lines.append(f"gamma^{mu} in block form:")
            lines.extend("  " + r for r in _matrix_lines(gm.block_form(mu)))
        return "\n".join(lines)

    return payload, text, 0


def _fmt_idx(idx) -> str:
    return "{" + ",".join(str(i) for i in idx) + "}"


def _matrix_lines(A: OperatorMatrix) -> list:
    cells = [[str(x) for x in row] for row in A.rows()]
    w = max(len(c) for r in cells for c in r)
    return ["[" + " ".join(f"{c:>{w}}" for c in r) + "]" for r in cells]


# -- exp -------------------------------------------------------------------------


_PI = re.compile(r"^\s*(?P<s>[-+])?\s*(?:(?P<a>[0-9]+(?:/[0-9]+)?)\s*\*?\s*)?pi\s*(?:/\s*(?P<b>[0-9]+))?\s*$")


def parse_parameter(text: str):
    """``"pi"``, ``"3*pi/4"``, ``"1/2"`` or a decimal."""
    m = _PI.match(text)
    if m:
        c = Fraction(m.group("a") or 1)
        if m.group("s") == "-":
            c = -c
        if m.group("b"):
            c /= int(m.group("b"))
        return PiMultiple(c)
    try:
        return Fraction(text.strip())
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"cannot parse parameter {text!r}") from None


def cmd_exp(args) -> tuple:
    space = _space(args)
    if not args.element:
        raise UsageError("--element is required")
    try:
        a = parse_multivector(space, args.element)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    t = parse_parameter(args.t)
    g = clifford_exp(a, t, max_degree=args.max_degree, tolerance=args.tolerance, mode=args.mode)
    payload = {
        "signature": space.spec(),
        "element": a.to_json(),
        "t": repr(t) if isinstance(t, PiMultiple) else (format_rational(t) if isinstance(t, Fraction) else repr(t)),
        "result": g.element.to_json(),
        "provenance": g.provenance,
        "exact": g.exact,
        "unitarity_defect": g.unitarity_defect(),
    }

    def text():
        return "\n".join(
            [
                f"exp({t} * ({a!r})) = {g.element!r}",
                f"provenance: {g.provenance}, exact: {g.exact}",
                f"|g g* - 1| = {g.unitarity_defect():.3e}",
            ]
        )

    return payload, text, 0


# -- decompose -------------------------------------------------------------------


def _parse_entry(x):
    if isinstance(x, dict):
        return scalar_from_json(x)
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, str):
        return parse_scalar(x)
    raise BadMatrixFile(f"unsupported matrix entry {x!r}")


def load_matrix(path: str) -> list:
    """Rows of exact scalars from a JSON file.

    Accepts ``{"entries": [[...]]}`` as written by the other commands, or a
    bare list of rows; entries are ``{"re": "p/q", "im": "p/q"}`` objects,
    integers, or strings like ``"1/2-3i"``.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise BadMatrixFile(f"cannot read matrix file {path!r}: {exc}") from None
    rows = obj.get("entries") if isinstance(obj, dict) else obj
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise BadMatrixFile("matrix file must hold a non-empty list of rows")
    try:
        out = [[_parse_entry(x) for x in r] for r in rows]
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise BadMatrixFile(f"bad matrix entry: {exc}") from None
    for x in (x for r in out for x in r):
        if not isinstance(x, (Fraction, GaussianRational)):
            raise BadMatrixFile("matrix entries must be exact rationals or Gaussian rationals")
    if any(len(r) != len(out) for r in out):
        raise BadMatrixFile("matrix must be square")
    return out


def _parse_grading(text):
    if text is None:
        return None
    try:
        plus, minus = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"--grading expects 'd_plus,d_minus', got {text!r}") from None
    return plus, minus


def cmd_decompose(args) -> tuple:
    space = _space(args)
    ctx = spinor_context(space)
    module = build_twisted(ctx, args.dw, _parse_grading(args.grading))
    if args.matrix and args.random:
        raise UsageError("use either --matrix or --random")
    if args.matrix:
        rows = load_matrix(args.matrix)
        if len(rows) != module.dim:
            raise DimensionMismatch(f"matrix is {len(rows)}x{len(rows)}, module has dimension {module.dim}")
        b = OperatorMatrix(rows, module.grading)
    elif args.random:
        rng = random.Random(args.seed)

        def rnd():
            return Fraction(rng.randint(-9, 9), rng.randint(1, 5))

        b = OperatorMatrix(
            [[GaussianRational(rnd(), rnd()) for _ in range(module.dim)] for _ in range(module.dim)], module.grading
        )
    else:
        raise UsageError("decompose needs --matrix PATH or --random")
    result = decompose_endo(module, b)
    payload = result.to_json()
    payload["signature"] = space.spec()
    payload["d_W"] = args.dw
    payload["input"] = b.to_json()

    def text():
        lines = [f"module W (x) S with dim W = {args.dw}, dim E = {module.dim}"]
        for idx, X in result.terms:
            lines.append(f"component {_fmt_idx(idx)} ({X.parity_label()}):")
            lines.extend("  " + r for r in _matrix_lines(X))
        lines.append(f"residual zero: {result.residual_zero}")
        lines.append(f"components supercommute with the action: {result.supercommuting}")
        return "\n".join(lines)

    code = 0 if (result.residual_zero and result.supercommuting) else 1
    return payload, text, code


# -- spinor ----------------------------------------------------------------------


def cmd_spinor(args) -> tuple:
    space = _space(args)
    ctx = spinor_context(space)
    basis = ctx.basis_indices()
    gamma, G = chirality(ctx)
    payload = {
        "signature": space.spec(),
        "dim": ctx.dim,
        "basis": basis,
        "grading": list(ctx.grading),
        "rescaled_generators": list(ctx.cx.rescaled),
        "generators": [ctx.generator(j).to_json(basis) for j in range(1, ctx.n + 1)],
        "chirality": {"element": gamma.to_json(), "matrix": G.to_json(basis)},
    }

    def text():
        lines = [
            f"spinor module of {space.spec()}: dim S = {ctx.dim}",
            "basis: " + " ".join(_fmt_idx(b) for b in basis),
            "grading: " + " ".join("+" if g == 1 else "-" for g in ctx.grading),
        ]
        if ctx.cx.rescaled:
            lines.append("generators rescaled by i: " + ", ".join(str(j) for j in ctx.cx.rescaled))
        for j in range(1, ctx.n + 1):
            lines.append(f"c(e{j}):")
            lines.extend("  " + r for r in _matrix_lines(ctx.generator(j)))
        lines.append(f"Gamma = {gamma!r}, c(Gamma):")
        lines.extend("  " + r for r in _matrix_lines(G))
        return "\n".join(lines)

    return payload, text, 0


# -- entry point -------------------------------------------------------------------


COMMANDS = {
    "table": cmd_table,
    "verify": cmd_verify,
    "gamma": cmd_gamma,
    "exp": cmd_exp,
    "decompose": cmd_decompose,
    "spinor": cmd_spinor,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--signature", help='quadratic form, e.g. "s:+---" or "q:1,-1,-1,-1"')
    common.add_argument("--seed", type=int, default=None, help="random seed (default: $CLIFFORDKIT_SEED or 0)")
    common.add_argument("--trials", type=int, default=100, help="random trials per identity")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--out", help="write output to this file instead of stdout")

    parser = argparse.ArgumentParser(prog="cliffordkit", description="Exact Clifford algebra and spinor computations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[common], help="blade multiplication table")
    p.add_argument("--algebra", choices=(CLIFFORD, EXTERIOR), default=CLIFFORD)

    p = sub.add_parser("verify", parents=[common], help="run seeded identity suites")
    p.add_argument("--suite", choices=("all",) + SUITES, default="all")

    sub.add_parser("gamma", parents=[common], help="Dirac matrices for signature (+,-,-,-)")

    p = sub.add_parser("exp", parents=[common], help="exponential of an even element")
    p.add_argument("--element", help='e.g. "e12" or "1/2*e12 - e34"')
    p.add_argument("--t", default="1", help='scale factor: "pi/2", "3/4", "0.25"')
    p.add_argument("--mode", choices=("auto", "closed", "series"), default="auto")
    p.add_argument("--max-degree", type=int, default=40)
    p.add_argument("--tolerance", type=float, default=1e-12)

    p = sub.add_parser("decompose", parents=[common], help="split an operator on W (x) S")
    p.add_argument("--dw", type=int, default=1, help="dimension of the twisting space W")
    p.add_argument("--grading", help="split of W as 'd_plus,d_minus'")
    p.add_argument("--matrix", help="JSON file with the operator entries")
    p.add_argument("--random", action="store_true", help="decompose a seeded random operator")

    sub.add_parser("spinor", parents=[common], help="spinor module matrices and chirality")
    return parser


def _emit(payload, text, fmt: str, out):
    body = json.dumps(payload, sort_keys=True, indent=2) + "\n" if fmt == "json" else text() + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.seed is None:
            args.seed = _seed_default()
        payload, text, code = COMMANDS[args.command](args)
    except (UsageError, CliffordError) as exc:
        print(f"cliffordkit {args.command}: {exc}", file=sys.stderr)
        return 2
    _emit(payload, text, args.format, args.out)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
