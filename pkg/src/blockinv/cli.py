"""Batch command-line front end.

Exit codes: 0 success, 2 parse/shape/structure error, 3 not invertible,
4 method mismatch or failed check, 5 invalid flags.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import errors
from .inverse import (
    BlockTriangularMatrix,
    PerturbationBlock,
    inverse_explicit,
    inverse_iterative,
    inverse_recursive,
    perturbation_deltas,
    perturbed_inverse,
)
from .io import document_from_mat, document_from_partitioned, dumps_pretty, read_document
from .matrix import Mat, blocks_close
from .quasidet import (
    DEFAULT_MAX_EXPANSION,
    HessenbergGrid,
    hessenberg_qdet,
    hessenberg_qdet_expansion,
    normalize_diamond,
    qdet_factor_split,
    qdet_row_split,
)
from .ring import DEFAULT_TOLERANCE

EXIT_OK, EXIT_PARSE, EXIT_NOT_INVERTIBLE, EXIT_MISMATCH, EXIT_FLAGS = 0, 2, 3, 4, 5

AGREEMENT_RTOL = 1e-8

METHODS = {
    "explicit": inverse_explicit,
    "recursive": inverse_recursive,
    "iterative": inverse_iterative,
}


class FlagError(Exception):
    pass


class MethodMismatch(Exception):
    def __init__(self, message, blocks):
        super().__init__(message)
        self.blocks = blocks


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise FlagError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--output", "-o", default="-", help="output path (default: stdout)")
    common.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE, help="zero tolerance in float mode")
    common.add_argument(
        "--max-expansion", type=int, default=DEFAULT_MAX_EXPANSION, help="largest grid for the chain expansion"
    )

    parser = _Parser(prog="blockinv", description="Inverses and quasideterminants of block triangular matrices.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invert", parents=[common], help="invert a block upper triangular matrix")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--method", choices=sorted(METHODS), default="explicit")
    p.add_argument("--split", type=int, default=1, help="constant split for the recursive method")
    p.add_argument("--check", action="store_true", help="run all three methods and fail on mismatch")

    p = sub.add_parser("qdet", parents=[common], help="Hessenberg quasideterminant of a block grid")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--method", choices=["solve", "expansion", "split", "row-split"], default="solve")
    p.add_argument("--split-index", type=int, default=None)

    p = sub.add_parser("perturb", parents=[common], help="inverse update under an off-diagonal perturbation")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--perturbation", "-p", required=True)
    p.add_argument("--split", type=int, required=True)
    p.add_argument("--full", action="store_true", help="emit the perturbed inverse instead of the deltas")

    p = sub.add_parser("check", parents=[common], help="run the invariant suite on a matrix")
    p.add_argument("--input", "-i", required=True)
    return parser


def _load_triangular(path, tolerance) -> BlockTriangularMatrix:
    doc = read_document(path, tolerance)
    if doc.partition != doc.col_partition:
        raise errors.ShapeError("a block triangular matrix needs equal row and column partitions")
    return BlockTriangularMatrix(doc.to_partitioned())


def _upper(j, k):
    return j <= k


def _compare(a, b, label):
    bad = []
    for j in range(1, a.n_rows + 1):
        for k in range(j, a.n_cols + 1):
            if not blocks_close(a.block(j, k), b.block(j, k), AGREEMENT_RTOL):
                bad.append([j, k])
    if bad:
        raise MethodMismatch(f"{label}: {len(bad)} blocks disagree", bad)


def cmd_invert(args):
    m = _load_triangular(args.input, args.tolerance)
    if args.method == "recursive":
        result = inverse_recursive(m, args.split)
    else:
        result = METHODS[args.method](m)
    meta = {"command": "invert", "method": args.method}
    if args.check:
        for name in sorted(METHODS):
            if name != args.method:
                _compare(result, METHODS[name](m), f"{args.method} vs {name}")
        meta["check"] = "passed"
    return document_from_partitioned(result, include=_upper, meta=meta)


def cmd_qdet(args):
    doc = read_document(args.input, args.tolerance)
    h = HessenbergGrid(doc.to_partitioned())
    if args.method == "solve":
        value = hessenberg_qdet(h)
    elif args.method == "expansion":
        value = hessenberg_qdet_expansion(h, args.max_expansion)
    elif args.method == "row-split":
        value = qdet_row_split(h)
    else:
        if args.split_index is None:
            raise FlagError("--method split needs --split-index")
        value = qdet_factor_split(h, args.split_index)
    return document_from_mat(value, meta={"command": "qdet", "method": args.method})


def cmd_perturb(args):
    m = _load_triangular(args.input, args.tolerance)
    edoc = read_document(args.perturbation, args.tolerance)
    if edoc.ring_tag != ("quaternion-rational" if m.ring.exact else "quaternion-float"):
        raise errors.ShapeError("perturbation and matrix use different rings")
    e = PerturbationBlock(edoc.to_partitioned(), args.split)
    e.check_against(m.partition)
    inv = inverse_explicit(m)
    meta = {"command": "perturb", "split": args.split}
    if args.full:
        meta["full"] = True
        return document_from_partitioned(perturbed_inverse(m, e, inv), include=_upper, meta=meta)
    l = args.split
    deltas = perturbation_deltas(inv, e)
    return document_from_partitioned(deltas, include=lambda j, k: j <= l < k, meta=meta)


def run_checks(m: BlockTriangularMatrix, max_expansion: int = DEFAULT_MAX_EXPANSION) -> list[dict]:
    """Invariant suite on one matrix; each entry is ``{"name", "passed", ...}``."""
    results = []
    ring = m.ring
    size = m.partition.total
    ident = Mat.identity(ring, size)
    a = m.grid.data

    def record(name, ok, **extra):
        results.append({"name": name, "passed": bool(ok), **extra})

    inverses = {name: fn(m) for name, fn in METHODS.items()}
    for name, inv in sorted(inverses.items()):
        x = inv.data
        if ring.exact:
            right, left = a * x == ident, x * a == ident
        else:
            scale = AGREEMENT_RTOL * a.norm() * x.norm()
            right, left = (a * x - ident).norm() <= scale, (x * a - ident).norm() <= scale
        record(f"{name}: M*inv = I", right)
        record(f"{name}: inv*M = I", left)

    ref = inverses["explicit"]
    candidates = [("iterative", inverses["iterative"])]
    candidates += [(f"recursive l={c}", inverse_recursive(m, c)) for c in range(1, max(m.n, 2))]
    for label, inv in candidates:
        bad = [
            [j, k]
            for j in range(1, m.n + 1)
            for k in range(j, m.n + 1)
            if not blocks_close(ref.block(j, k), inv.block(j, k), AGREEMENT_RTOL)
        ]
        record(f"explicit == {label}", not bad, mismatched_blocks=bad or None)

    for j in range(1, m.n + 1):
        for k in range(j + 1, m.n + 1):
            h = HessenbergGrid(m.grid.sub_grid(j, j + 1, k - j), {c: m.inv(j + c) for c in range(1, k - j)}, check=False)
            base = hessenberg_qdet(h)
            ok = blocks_close(base, hessenberg_qdet(normalize_diamond(h)), AGREEMENT_RTOL)
            ok = ok and all(blocks_close(base, qdet_factor_split(h, s), AGREEMENT_RTOL) for s in range(1, h.n + 1))
            if h.n >= 2:
                ok = ok and blocks_close(base, qdet_row_split(h), AGREEMENT_RTOL)
            if h.n <= max_expansion:
                ok = ok and blocks_close(base, hessenberg_qdet_expansion(h, max_expansion), AGREEMENT_RTOL)
            record(f"quasideterminant routes agree on block ({j},{k})", ok)
    return results


def cmd_check(args):
    m = _load_triangular(args.input, args.tolerance)
    results = run_checks(m, args.max_expansion)
    passed = all(r["passed"] for r in results)
    report = {"command": "check", "passed": passed, "checks": [{k: v for k, v in r.items() if v is not None} for r in results]}
    return report, (EXIT_OK if passed else EXIT_MISMATCH)


COMMANDS = {"invert": cmd_invert, "qdet": cmd_qdet, "perturb": cmd_perturb, "check": cmd_check}


def _emit(obj, path):
    text = dumps_pretty(obj) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _fail(code, payload):
    sys.stderr.write(json.dumps({"error": payload}) + "\n")
    return code


def run_command(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except FlagError as exc:
        return _fail(EXIT_FLAGS, {"code": "invalid_flags", "message": str(exc)})
    try:
        out = COMMANDS[args.command](args)
        status = EXIT_OK
        if isinstance(out, tuple):
            out, status = out
    except FlagError as exc:
        return _fail(EXIT_FLAGS, {"code": "invalid_flags", "message": str(exc)})
    except MethodMismatch as exc:
        return _fail(EXIT_MISMATCH, {"code": "method_mismatch", "message": str(exc), "blocks": exc.blocks})
    except errors.NotInvertible as exc:
        return _fail(EXIT_NOT_INVERTIBLE, exc.to_dict())
    except (errors.ParseError, errors.StructureError, errors.DimensionMismatch) as exc:
        return _fail(EXIT_PARSE, exc.to_dict())
    except (errors.InvalidSplit, errors.IndexOutOfRange, errors.CapExceeded, errors.DegenerateResult) as exc:
        return _fail(EXIT_FLAGS, exc.to_dict())
    except OSError as exc:
        return _fail(EXIT_PARSE, {"code": "io_error", "message": str(exc)})
    _emit(out, args.output)
    return status


def main(argv=None):
    sys.exit(run_command(argv))


if __name__ == "__main__":
    main()
