"""Command-line front end.

Every command prints JSON lines on stdout. Exit status is 0 when the
computation succeeded and all checks passed, 1 when it succeeded but found a
counterexample, an unreachable binomial or a hole, and 2 on bad input.
``--report`` wraps the output in an envelope with the command, inputs, seed
and version; it carries no timings so reruns are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Any, Callable, Sequence

from . import __version__
from .detsquare import (
    TERM_BUDGET,
    det_coefficient_direct,
    det_coefficient_via_graphs,
    shuffle_square_identity,
    verify_det_square,
)
from .paths import (
    DEFAULT_SEED,
    AxisPath,
    FillingExhausted,
    PLPath,
    axis_signature,
    axis_signature_entry,
    axis_signature_tensor,
    filling_shape,
    jacobian_rank,
    rank_probe,
    signature_pl,
)
from .polytopes import (
    HoleCertificate,
    LatticePolytope,
    LemmaHypothesisError,
    affine_rank,
    idp_check,
    lattice_points,
    prime_pair,
    rough_veronese_degree,
    rough_veronese_weights,
    verify_hole_certificate,
    very_ample_hole,
)
from .tensor import TruncatedTensor, is_group_like
from .toric import (
    FIBER_GUARD,
    RIGIDITY_BUDGET,
    ExponentMultiset,
    InsufficientCopies,
    RigidSquare,
    binomial_in_ideal,
    generated_in_degree_upto,
    high_degree_binomial,
    monomiality_certificate,
    rigid_square,
    saturation_reduce,
    verify_rigidity,
)
from .words import format_word, lie_dimension, lyndon_words, parse_word, shuffle

DEFAULT_HOLE_BOUND = 60
DEFAULT_SMAX = 3


class UsageError(ValueError):
    pass


class Result:
    """What a command hands back: output lines plus the exit status."""

    def __init__(self, lines: list[Any], status: int = 0, raw: bool = False):
        self.lines = lines
        self.status = status
        self.raw = raw


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _fracs(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(x) for x in text.split(",") if x.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected comma-separated rationals, got {text!r}")


def _word(text: str):
    try:
        return parse_word(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _default_jobs() -> int:
    env = os.environ.get("SIGVAR_JOBS")
    return int(env) if env and env.isdigit() else 1


def _load_input(args) -> dict:
    if not args.infile:
        return {}
    try:
        with open(args.infile) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {args.infile}: {exc}")
    if not isinstance(data, dict):
        raise UsageError("input JSON must be an object")
    return data


def _need(value, name: str):
    if value is None:
        raise UsageError(f"missing --{name}")
    return value


def _weights_k(args) -> tuple[tuple[int, ...], int]:
    data = _load_input(args)
    w = args.weights if args.weights is not None else data.get("weights")
    k = args.k if args.k is not None else data.get("k")
    w, k = _need(w, "weights"), _need(k, "k")
    w = tuple(int(x) for x in w)
    if not w or min(w) < 1 or int(k) < 1:
        raise UsageError("weights and k must be positive")
    return w, int(k)


def _pmap(fn: Callable, items: Sequence, jobs: int) -> list:
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


# commands ------------------------------------------------------------------


def cmd_sig_pl(args) -> Result:
    data = _load_input(args)
    if args.path:
        data = json.loads(args.path)
    path = PLPath.from_json(_need(data or None, "path"))
    return Result([signature_pl(path, _need(args.m, "m")).to_json()])


def cmd_sig_axis(args) -> Result:
    shape = _need(args.shape, "shape")
    k = _need(args.k, "k")
    lengths = args.lengths
    if lengths is not None and len(lengths) != len(shape):
        raise UsageError("need one length per letter of the shape")
    if args.word is not None:
        if len(args.word) != k:
            raise UsageError("--word must have length k")
        return Result([str(axis_signature_entry(shape, lengths, args.word))], raw=True)
    entries = axis_signature(shape, lengths, k)
    return Result([{"shape": list(shape), "k": k, "entries": {format_word(w): str(v) for w, v in entries.items()}}])


def cmd_shuffle(args) -> Result:
    return Result([shuffle(args.u, args.v).to_json()])


def cmd_lyndon(args) -> Result:
    return Result([[format_word(w) for w in lyndon_words(args.d, args.m)]])


def cmd_liedim(args) -> Result:
    return Result([lie_dimension(args.d, args.m)])


def cmd_grouplike(args) -> Result:
    if args.shape:
        lengths = _need(args.lengths, "lengths")
        t = axis_signature_tensor(AxisPath(args.shape, lengths), _need(args.m, "m"))
    else:
        t = TruncatedTensor.from_json(_need(_load_input(args) or None, "in"))
    ok = is_group_like(t)
    return Result([{"order": t.order, "group_like": ok}], 0 if ok else 1)


def cmd_det_verify(args) -> Result:
    shape = _need(args.shape, "shape")
    budget = args.budget if args.budget is not None else TERM_BUDGET
    if args.symbolic:
        budget = 10**18
    v = verify_det_square(shape, args.point, budget, args.seed)
    out = v.to_json()
    out["verdict"] = "equal" if v.equal else "COUNTEREXAMPLE"
    return Result([out], 0 if v.equal else 1)


def cmd_det_shuffle_square(args) -> Result:
    lhs, rhs, ok = shuffle_square_identity(args.d)
    return Result([{"d": args.d, "lhs_terms": len(lhs.terms), "rhs_terms": len(rhs.terms), "equal": ok}], 0 if ok else 1)


def cmd_det_graphs(args) -> Result:
    shape = _need(args.shape, "shape")
    g = det_coefficient_via_graphs(shape)
    direct = det_coefficient_direct(shape)
    return Result([{"shape": list(shape), "graphs": str(g), "direct": str(direct), "agree": g == direct}], 0 if g == direct else 1)


def cmd_polytope(args) -> Result:
    w, k = _weights_k(args)
    base = {"weights": list(w), "k": k}
    if args.action == "points":
        return Result([{**base, "points": [list(p) for p in lattice_points(w, k)]}])
    if args.action == "rank":
        return Result([{**base, "affine_rank": affine_rank(lattice_points(w, k))}])
    if args.action == "volume":
        poly = LatticePolytope(lattice_points(w, k))
        return Result([{**base, "dimension": poly.dim, "normalized_volume": poly.normalized_volume()}])
    if args.action == "idp":
        v = idp_check(w, k, args.smax if args.smax is not None else DEFAULT_SMAX)
        return Result([v.to_json()], 0 if v.passed else 1)
    if args.action == "holes":
        if args.certificate:
            cert = HoleCertificate.from_json(_load_input(args))
            ok = verify_hole_certificate(cert)
            return Result([{"certificate_valid": ok}], 0 if ok else 1)
        search = very_ample_hole(w, k, args.bound if args.bound is not None else DEFAULT_HOLE_BOUND)
        return Result([search.to_json()], 1 if search.found else 0)
    raise UsageError(f"unknown polytope action {args.action}")


def cmd_roughdeg(args) -> Result:
    rep = rough_veronese_degree(args.d, args.k, args.m)
    out = rep.to_json()
    return Result([{"degree": out["degree"], "bound": out["bound"]}])


def cmd_primes(args) -> Result:
    lo, hi = (args.m, args.m) if args.range is None else tuple(args.range)
    lines, status = [], 0
    for m in range(_need(lo, "m"), hi + 1):
        try:
            lines.append({"m": m, "pair": list(prime_pair(m))})
        except LemmaHypothesisError as exc:
            lines.append({"m": m, "error": str(exc)})
            status = 2
    return Result(lines, status)


def _square_from_args(args) -> RigidSquare:
    if args.n is not None:
        return rigid_square(args.n)
    data = _load_input(args)
    if "matrix" not in data:
        raise UsageError("give --n or --in with a matrix")
    mat = [list(map(int, r)) for r in data["matrix"]]
    n = len(mat)
    if any(len(r) != n for r in mat):
        raise UsageError("matrix must be square")
    k = int(data.get("k", sum(mat[0])))
    return RigidSquare(n, k, tuple(tuple(r) for r in mat))


def cmd_rigid(args) -> Result:
    sq = _square_from_args(args)
    if args.action == "make":
        return Result([sq.to_json()])
    v = verify_rigidity(sq, args.budget if args.budget is not None else RIGIDITY_BUDGET)
    return Result([{"n": sq.n, "k": sq.k, **v.to_json()}], 0 if v.rigid else 1)


def _multiset(data: dict, key: str, w, k) -> ExponentMultiset:
    return ExponentMultiset(w, k, tuple(tuple(p) for p in _need(data.get(key), key)))


def cmd_toric(args) -> Result:
    guard = args.budget if args.budget is not None else FIBER_GUARD
    if args.action == "highdeg":
        h = high_degree_binomial(_need(args.n, "n"))
        out = h.to_json()
        out["in_ideal"] = binomial_in_ideal(h.left, h.right)
        status = 0
        if args.smax is not None:
            v = generated_in_degree_upto(h.left, h.right, args.smax, guard)
            out["fiber"] = v.to_json()
            status = 1 if v.status == "UNREACHABLE" else 0
        return Result([out], status)
    if args.action == "monomial-cert":
        cert = monomiality_certificate(_need(args.shape, "shape"), args.k or 2, not args.identity)
        return Result([cert.to_json()], 0 if cert.verified else 1)
    data = _load_input(args)
    w, k = _weights_k(args)
    if args.action == "member":
        ok = binomial_in_ideal(_multiset(data, "left", w, k), _multiset(data, "right", w, k))
        return Result([{"in_ideal": ok}])
    if args.action == "fibercheck":
        left, right = _multiset(data, "left", w, k), _multiset(data, "right", w, k)
        v = generated_in_degree_upto(left, right, _need(args.smax, "smax"), guard)
        return Result([v.to_json()], 1 if v.status == "UNREACHABLE" else 0)
    if args.action == "saturate":
        res = saturation_reduce(_multiset(data, "points", w, k), args.copies)
        return Result([res.to_json()])
    raise UsageError(f"unknown toric action {args.action}")


def _rank_line(job):
    shape, k, seed = job
    return rank_probe(shape, k, seed=seed).to_json()


def cmd_dim(args) -> Result:
    if args.action == "fill":
        try:
            shape = filling_shape(_need(args.d, "d"), _need(args.k, "k"), args.max_len, args.seed)
        except FillingExhausted as exc:
            return Result([{"error": str(exc), "shape": list(exc.shape)}], 1)
        return Result([{"d": args.d, "k": args.k, "shape": list(shape), "length": len(shape)}])
    shapes = args.shapes or []
    if not shapes:
        raise UsageError("missing --shape")
    k = _need(args.k, "k")
    if args.action == "rank":
        if args.point is not None:
            return Result([{"shape": list(shapes[0]), "k": k, "rank": jacobian_rank(shapes[0], k, args.point), "kind": "rank at point"}])
        return Result(_pmap(_rank_line, [(s, k, args.seed) for s in shapes], args.jobs))
    if args.action == "defective":
        lines = _pmap(_rank_line, [(s, k, args.seed) for s in shapes], args.jobs)
        for line in lines:
            line["defective"] = line["rank"] < line["length"]
        return Result(lines)
    raise UsageError(f"unknown dim action {args.action}")


# reproduction tables -----------------------------------------------------------------

SIGMA_EXAMPLE = {
    "1,2,3,4": "a1*a2*a4*a8 + a1*a2*a6*a8 + a1*a5*a6*a8 + a3*a5*a6*a8",
    "2,3,1,4": "a2*a4*a7*a8 + a2*a6*a7*a8 + a5*a6*a7*a8",
    "4,1,2,3": "0",
    "1,1,2,4": "1/2*a1^2*a2*a8 + 1/2*a1^2*a5*a8 + a1*a3*a5*a8 + 1/2*a3^2*a5*a8",
}


def repro_sigma_example(args) -> list[dict]:
    shape = (1, 2, 1, 3, 2, 3, 1, 4)
    rows = []
    for w, expected in SIGMA_EXAMPLE.items():
        got = str(axis_signature_entry(shape, None, parse_word(w)))
        rows.append({"word": w, "value": got, "expected": expected, "match": got == expected})
    return rows


def repro_degrees(args) -> list[dict]:
    rows = []
    for k in range(2, 9):
        rep = rough_veronese_degree(2, k, 2)
        closed = k * k // 2 if k % 2 == 0 else (k * k - 1) // 2
        rows.append({"k": k, "degree": rep.degree, "closed_form": closed, "match": rep.degree == closed})
    return rows


def repro_dimensions(args) -> list[dict]:
    from math import lcm

    rows = []
    for d, m in [(2, 2), (2, 3), (3, 2), (3, 3)]:
        k = lcm(*range(1, m + 1))
        r = affine_rank(lattice_points(rough_veronese_weights(d, m), k))
        expected = lie_dimension(d, m) - 1
        rows.append({"d": d, "m": m, "k": k, "affine_rank": r, "expected": expected, "match": r == expected})
    return rows


PRIME_TABLE_RANGES = [((7, 9), (5, 7)), ((11, 13), (7, 11)), ((14, 19), (11, 13)), ((20, 31), (17, 19)), ((32, 56), (29, 31))]


def repro_primes(args) -> list[dict]:
    rows = []
    for (lo, hi), pair in PRIME_TABLE_RANGES:
        got = {prime_pair(m) for m in range(lo, hi + 1)}
        rows.append({"range": [lo, hi], "expected": list(pair), "match": got == {pair}})
    return rows


def repro_rigid(args) -> list[dict]:
    rows = []
    for n in (3, 4):
        sq = rigid_square(n)
        v = verify_rigidity(sq)
        rows.append({"n": n, "k": sq.k, "decompositions": v.decompositions, "match": v.rigid})
    return rows


def repro_shuffle_square(args) -> list[dict]:
    return [{"d": d, "match": shuffle_square_identity(d)[2]} for d in (1, 2, 3)]


REPRO_TABLES: dict[str, Callable] = {
    "sigma-example": repro_sigma_example,
    "degrees-2-2": repro_degrees,
    "dimensions": repro_dimensions,
    "prime-pairs": repro_primes,
    "rigid-squares": repro_rigid,
    "shuffle-square": repro_shuffle_square,
}


def cmd_repro(args) -> Result:
    rows = REPRO_TABLES[args.table](args)
    ok = all(r["match"] for r in rows)
    return Result(rows + [{"table": args.table, "all_match": ok}], 0 if ok else 1)


# parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"PRNG seed (default {DEFAULT_SEED})")
    common.add_argument("--budget", type=int, help=f"work guard: det terms (default {TERM_BUDGET}), fiber states (default {FIBER_GUARD}), rigidity nodes (default {RIGIDITY_BUDGET})")
    common.add_argument("--bound", type=int, help=f"hole search bound (default {DEFAULT_HOLE_BOUND})")
    common.add_argument("--smax", type=int, help=f"IDP dilation bound (default {DEFAULT_SMAX}) or fiber move size")
    common.add_argument("--jobs", type=int, default=_default_jobs(), help="worker processes (default 1, or $SIGVAR_JOBS)")
    common.add_argument("--in", dest="infile", help="JSON input file")
    common.add_argument("--pretty", action="store_true", help="indented output")
    common.add_argument("--report", action="store_true", help="wrap output in a report envelope")

    parser = argparse.ArgumentParser(prog="sigvar", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(parent, name, func, help_text):
        p = parent.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    sig = sub.add_parser("sig", help="path signatures").add_subparsers(dest="kind", required=True)
    p = add(sig, "pl", cmd_sig_pl, "signature of a piecewise-linear path")
    p.add_argument("--path", help='JSON like {"d":2,"steps":[["1","0"],["0","1/2"]]}')
    p.add_argument("--m", type=int, help="truncation order")
    p = add(sig, "axis", cmd_sig_axis, "level-k signature of an axis path")
    p.add_argument("--shape", type=_ints)
    p.add_argument("--k", type=int)
    p.add_argument("--lengths", type=_fracs, help="omit for symbolic lengths a1..am")
    p.add_argument("--word", type=_ints)

    p = add(sub, "shuffle", cmd_shuffle, "shuffle product of two words")
    p.add_argument("--u", type=_word, required=True)
    p.add_argument("--v", type=_word, required=True)
    p = add(sub, "lyndon", cmd_lyndon, "Lyndon words up to length m")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p = add(sub, "liedim", cmd_liedim, "dimension of the truncated free Lie algebra")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p = add(sub, "grouplike", cmd_grouplike, "group-likeness of a tensor (--in) or an axis signature")
    p.add_argument("--shape", type=_ints)
    p.add_argument("--lengths", type=_fracs)
    p.add_argument("--m", type=int)

    det = sub.add_parser("detsquare", help="determinant-is-a-square checks").add_subparsers(dest="kind", required=True)
    p = add(det, "verify", cmd_det_verify, "2^d det = P(a)^2")
    p.add_argument("--shape", type=_ints)
    p.add_argument("--point", type=_fracs)
    p.add_argument("--symbolic", action="store_true", help="force the symbolic comparison")
    p = add(det, "shuffle-square", cmd_det_shuffle_square, "shuffle determinant identity")
    p.add_argument("--d", type=int, required=True)
    p = add(det, "graphs", cmd_det_graphs, "determinant coefficient via graphs vs direct")
    p.add_argument("--shape", type=_ints)

    p = add(sub, "polytope", cmd_polytope, "lattice polytope P(w,k)")
    p.add_argument("action", choices=["points", "rank", "volume", "idp", "holes"])
    p.add_argument("--weights", type=_ints)
    p.add_argument("--k", type=int)
    p.add_argument("--certificate", action="store_true", help="with holes: re-verify the certificate given by --in")

    p = add(sub, "roughdeg", cmd_roughdeg, "degree of the rough Veronese variety")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)

    p = add(sub, "primes", cmd_primes, "prime pairs (p1, p2) for the normality lemma")
    p.add_argument("--m", type=int)
    p.add_argument("--range", type=int, nargs=2, metavar=("LO", "HI"))

    p = add(sub, "rigid", cmd_rigid, "rigid square matrices")
    p.add_argument("action", choices=["make", "verify"])
    p.add_argument("--n", type=int)

    p = add(sub, "toric", cmd_toric, "toric ideal computations")
    p.add_argument("action", choices=["member", "fibercheck", "highdeg", "saturate", "monomial-cert"])
    p.add_argument("--weights", type=_ints)
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--copies", type=int, default=0)
    p.add_argument("--shape", type=_ints)
    p.add_argument("--identity", action="store_true", help="monomial-cert without the domain substitution")

    p = add(sub, "dim", cmd_dim, "Jacobian ranks and defectiveness")
    p.add_argument("action", choices=["rank", "defective", "fill"])
    p.add_argument("--shape", type=_ints, action="append", dest="shapes")
    p.add_argument("--k", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--point", type=_fracs)
    p.add_argument("--max-len", type=int, default=40)

    p = add(sub, "repro", cmd_repro, "regenerate a worked table")
    p.add_argument("table", choices=sorted(REPRO_TABLES))
    return parser


def _emit(obj, pretty: bool, raw: bool) -> None:
    if raw and isinstance(obj, str):
        print(obj)
    else:
        print(json.dumps(obj, indent=2 if pretty else None, sort_keys=False))


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = args.func(args)
    except (UsageError, ValueError, InsufficientCopies, KeyError, TypeError, json.JSONDecodeError) as exc:
        print(f"sigvar: error: {exc}", file=sys.stderr)
        return 2
    if args.report:
        inputs = {k: v for k, v in vars(args).items() if k not in ("func", "pretty", "report", "jobs")}
        inputs = json.loads(json.dumps(inputs, default=str))
        envelope = {
            "command": " ".join(str(x) for x in (args.command, getattr(args, "kind", None) or getattr(args, "action", None)) if x),
            "inputs": inputs,
            "seed": args.seed,
            "verdicts": result.lines,
            "status": result.status,
            "version": __version__,
        }
        _emit(envelope, args.pretty, False)
    else:
        for line in result.lines:
            _emit(line, args.pretty, result.raw)
    return result.status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
