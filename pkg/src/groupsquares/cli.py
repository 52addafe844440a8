"""groupsquares command line.

Exit codes: 0 computed / true, 1 false or no root exists, 2 usage error,
3 the brute-force oracle disagreed with the fast path.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import mat2, squares, width
from .perm import Parity, Permutation, PermutationParseError, parity

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_ORACLE = 0, 1, 2, 3
SCHEMA = 1
ORACLE_MAX_ORDER = 20000


class UsageError(Exception):
    pass


class OracleMismatch(Exception):
    pass


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps({"schema": SCHEMA, **payload}, sort_keys=True, ensure_ascii=False))
    else:
        print("\n".join(lines))


def _perm(args) -> Permutation:
    try:
        return Permutation.parse(args.permutation, args.degree)
    except PermutationParseError as exc:
        raise UsageError(f"bad permutation: {exc}") from exc
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _mat(args) -> mat2.Mat2:
    try:
        return mat2.parse_matrix(args.matrix, args.prime)
    except mat2.MatrixParseError as exc:
        raise UsageError(f"bad matrix: {exc}") from exc
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _need_brute_force_degree(g: Permutation) -> None:
    if g.degree > squares.BRUTE_FORCE_MAX_DEGREE:
        raise UsageError(f"--oracle needs degree <= {squares.BRUTE_FORCE_MAX_DEGREE}")


def _perm_oracle(g: Permutation, report: squares.RootReport) -> None:
    _need_brute_force_degree(g)
    roots = squares.enumerate_roots(g, "brute_force")
    in_sn = bool(roots)
    in_an = any(parity(r) is Parity.EVEN for r in roots)
    if (in_sn, in_an) != (report.exists_in_sn, report.exists_in_an):
        raise OracleMismatch(f"{g}: criterion says sn={report.exists_in_sn} an={report.exists_in_an}, "
                             f"brute force says sn={in_sn} an={in_an}")
    if report.witness is not None and report.witness not in roots:
        raise OracleMismatch(f"{g}: witness {report.witness} is not a root")


def cmd_perm_is_square(args) -> int:
    g = _perm(args)
    ambient = squares.Ambient(args.group)
    report = squares.sqrt_permutation(g, ambient)
    if args.oracle:
        _perm_oracle(g, report)
    ok = report.exists_in_an if ambient is squares.Ambient.AN else report.exists_in_sn
    lines = [f"{str(ok).lower()}  ({g} in {ambient.value.upper()}{g.degree}, cycle type {report.to_json()['cycle_type']})"]
    if report.obstruction:
        lines.append(f"obstruction: {report.obstruction.value}")
    _emit(args, {"command": "perm is-square", "ambient": ambient.value, "square": ok, **report.to_json()}, lines)
    return EXIT_OK if ok else EXIT_FALSE


def cmd_perm_sqrt(args) -> int:
    g = _perm(args)
    ambient = squares.Ambient(args.group)
    report = squares.sqrt_permutation(g, ambient)
    if args.oracle:
        _perm_oracle(g, report)
    w = report.witness
    lines = [str(w) if w is not None else f"no square root in {ambient.value.upper()}{g.degree}"]
    _emit(args, {"command": "perm sqrt", "ambient": ambient.value, **report.to_json()}, lines)
    return EXIT_OK if w is not None else EXIT_FALSE


def cmd_perm_roots(args) -> int:
    g = _perm(args)
    roots = squares.enumerate_roots(g, "constructive")
    if args.oracle:
        _need_brute_force_degree(g)
        brute = squares.enumerate_roots(g, "brute_force")
        if brute != roots:
            raise OracleMismatch(f"{g}: constructive {len(roots)} roots, brute force {len(brute)}")
    ordered = sorted(roots)
    if args.group == "an":
        ordered = [r for r in ordered if parity(r) is Parity.EVEN]
    text = [str(r) for r in ordered]
    _emit(
        args,
        {"command": "perm roots", "ambient": args.group, "permutation": str(g), "degree": g.degree,
         "count": len(text), "roots": text},
        [f"{len(text)} roots"] + text,
    )
    return EXIT_OK if text else EXIT_FALSE


def cmd_perm_decompose2(args) -> int:
    g = _perm(args)
    if parity(g) is Parity.ODD:
        _emit(args, {"command": "perm decompose2", "permutation": str(g), "degree": g.degree,
                     "decomposition": None, "reason": "odd permutation"},
              [f"{g} is odd, so it is not a product of squares"])
        return EXIT_FALSE
    d = squares.decompose_two_squares(g, args.shift)
    if d.product() != g or parity(d.h) is Parity.ODD or parity(d.t) is Parity.ODD:
        raise OracleMismatch(f"{g}: decomposition ({d.h}, {d.t}) is wrong")
    payload = {
        "command": "perm decompose2",
        "permutation": str(g),
        "degree": g.degree,
        "decomposition": {"h": str(d.h), "t": str(d.t), "h2": str(d.first_square), "t2": str(d.second_square)},
    }
    lines = [f"h = {d.h}", f"t = {d.t}", f"h^2 = {d.first_square}", f"t^2 = {d.second_square}"]
    _emit(args, payload, lines)
    return EXIT_OK


def _mat_group(args, A: mat2.Mat2) -> mat2.MatGroup:
    group = mat2.MatGroup(args.group)
    if not mat2.in_group(A, group):
        raise UsageError(f"{A} (det {A.det}) is not in {group.value.upper()}(F_{A.p})")
    return group


def _mat_oracle(A: mat2.Mat2, group: mat2.MatGroup, root) -> None:
    if A.p > mat2.BRUTE_FORCE_MAX_PRIME:
        raise UsageError(f"--oracle needs p <= {mat2.BRUTE_FORCE_MAX_PRIME}")
    brute = mat2.brute_force_roots(A, group)
    if bool(brute) != mat2.has_sqrt(A, group):
        raise OracleMismatch(f"{A}: criterion and brute force disagree in {group.value}")
    if root is not None and root not in brute:
        raise OracleMismatch(f"{A}: constructed root {root} not among brute-force roots")


def cmd_mat_classify(args) -> int:
    A = _mat(args)
    if A.det == 0:
        raise UsageError(f"{A} is singular mod {A.p}")
    cls = mat2.classify(A)
    payload = {"command": "mat classify", "p": A.p, "matrix": str(A), "class": str(cls),
               "kind": cls.kind.value, "criterion_values": mat2.criterion_values(A)}
    _emit(args, payload, [str(cls)])
    return EXIT_OK


def _mat_report(args, command: str) -> tuple[dict, mat2.Mat2, mat2.MatGroup]:
    A = _mat(args)
    group = _mat_group(args, A)
    report = mat2.matrix_report(A, group)
    if args.oracle:
        root = None if report["witness"] is None else mat2.sqrt(A, group)
        _mat_oracle(A, group, root)
    return {"command": command, **report}, A, group


def cmd_mat_is_square(args) -> int:
    payload, A, group = _mat_report(args, "mat is-square")
    ok = payload["has_sqrt"]
    _emit(args, payload, [f"{str(ok).lower()}  ({A} in {group.value.upper()}(F_{A.p}), {payload['class']})"])
    return EXIT_OK if ok else EXIT_FALSE


def cmd_mat_sqrt(args) -> int:
    payload, A, group = _mat_report(args, "mat sqrt")
    w = payload["witness"]
    _emit(args, payload, [w if w is not None else f"no square root in {group.value.upper()}(F_{A.p})"])
    return EXIT_OK if w is not None else EXIT_FALSE


def _group_table(args) -> width.GroupTable:
    try:
        if args.generators:
            data = width.load_generators(args.generators)
            return width.enumerate_group(data.generators, args.limit, data.name)
        return width.enumerate_builtin(args.name, args.limit, args.large)
    except width.GroupLimitExceeded as exc:
        raise UsageError(f"{exc}; raise --limit") from exc
    except (OSError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


def cmd_group_width(args) -> int:
    G = _group_table(args)
    rep = width.width_by_squares(G)
    if args.oracle:
        if G.order > ORACLE_MAX_ORDER:
            raise UsageError(f"--oracle needs a group of order <= {ORACLE_MAX_ORDER}")
        ref = width.naive_width_report(G)
        fields = ("squares_order", "generates", "width", "diameter")
        if any(getattr(ref, f) != getattr(rep, f) for f in fields):
            raise OracleMismatch(f"{G.name}: naive computation gives {ref}, fast path {rep}")
    diam = "inf" if math.isinf(rep.diameter) else str(int(rep.diameter))
    lines = [
        f"{rep.name}: order {rep.order}, |S| = {rep.squares_count}, |<S>| = {rep.squares_order}",
        f"generates {str(rep.generates).lower()}, width {rep.width}, diameter {diam}",
    ]
    _emit(args, {"command": "group width", **rep.to_json()}, lines)
    return EXIT_OK if rep.generates else EXIT_FALSE


def cmd_group_squares(args) -> int:
    G = _group_table(args)
    S = width.squares_set(G)
    chain = width.squaring_chain(G)
    payload = {"command": "group squares", "name": G.name, "order": G.order, "squares_count": int(len(S)),
               "squaring_chain": chain}
    lines = [f"{G.name}: order {G.order}, |S| = {len(S)}", "squaring chain: " + " > ".join(map(str, chain))]
    if args.list:
        elems = sorted(G.permutations(S))
        payload["squares"] = [str(x) for x in elems]
        lines += [str(x) for x in elems]
    _emit(args, payload, lines)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--oracle", action="store_true", help="cross-check against brute force")

    parser = argparse.ArgumentParser(prog="groupsquares", description=__doc__.splitlines()[0])
    top = parser.add_subparsers(dest="area", required=True)

    perm = top.add_parser("perm", help="permutations in S_n / A_n").add_subparsers(dest="op", required=True)
    for name, fn, help_ in (
        ("is-square", cmd_perm_is_square, "is the permutation a square"),
        ("sqrt", cmd_perm_sqrt, "one square root"),
        ("roots", cmd_perm_roots, "all square roots"),
        ("decompose2", cmd_perm_decompose2, "write an even permutation as h^2 t^2"),
    ):
        p = perm.add_parser(name, parents=[common], help=help_)
        p.add_argument("permutation", help='cycle notation, e.g. "(1,2)(3,4,5)"')
        p.add_argument("--degree", type=int, help="n (default: largest moved point)")
        p.add_argument("--group", choices=["sn", "an"], default="an")
        if name == "decompose2":
            p.add_argument("--shift", type=int, default=0, help="pick another factorisation")
        p.set_defaults(func=fn)

    mat = top.add_parser("mat", help="2x2 matrices over F_p").add_subparsers(dest="op", required=True)
    for name, fn, help_ in (
        ("classify", cmd_mat_classify, "scalar / split / jordan / irreducible"),
        ("is-square", cmd_mat_is_square, "is the matrix a square"),
        ("sqrt", cmd_mat_sqrt, "one square root"),
    ):
        p = mat.add_parser(name, parents=[common], help=help_)
        p.add_argument("matrix", help='"[[a,b],[c,d]]", optionally followed by "mod p"')
        p.add_argument("--prime", type=int)
        p.add_argument("--group", choices=["gl2", "sl2", "psl2"], default="gl2")
        p.set_defaults(func=fn)

    grp = top.add_parser("group", help="finite permutation groups").add_subparsers(dest="op", required=True)
    for name, fn, help_ in (
        ("width", cmd_group_width, "verbal width by squares"),
        ("squares", cmd_group_squares, "the set of squares"),
    ):
        p = grp.add_parser(name, parents=[common], help=help_)
        p.add_argument("name", nargs="?", help="A4..A10, S3..S10, M8..M22 (M23, M24 with --large)")
        p.add_argument("--generators", help="generator file instead of a builtin name")
        p.add_argument("--limit", type=int, default=width.DEFAULT_LIMIT)
        p.add_argument("--large", action="store_true", help="allow M23 / M24")
        if name == "squares":
            p.add_argument("--list", action="store_true", help="print every square")
        p.set_defaults(func=fn)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.area == "group" and not (args.name or args.generators):
        print("groupsquares: error: give a group name or --generators", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"groupsquares: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OracleMismatch as exc:
        print(f"groupsquares: ORACLE MISMATCH: {exc}", file=sys.stderr)
        return EXIT_ORACLE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
