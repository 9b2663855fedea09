"""Command-line front end.  Every subcommand prints one report (JSON by
default, ``--text`` for key: value lines).

Exit status: 0 on success, 1 when an internal consistency check fails,
2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import bounds as B
from .errors import InputError, InvariantViolation
from .extend import normalize_with_trace, tight_pivot
from .io import (field_spec, format_matrix, format_point_set, read_matrix, read_point_set,
                 read_tuple)
from .linalg import encode_point
from .matroid import is_tame
from .search import (PointSet, arank_histogram, clp_rank_check, enumerate_solutions,
                     find_affine_subspace, max_solution_free_set, proof_replay)
from .systems import classify_solution, disjoint_rank_sets, generic_witness_lowdim


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj) if obj.denominator != 1 else obj.numerator
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _emit(report: dict, args) -> None:
    report = _jsonable(report)
    if getattr(args, "text", False):
        for key in sorted(report):
            val = report[key]
            print(f"{key}: {val if isinstance(val, (str, int, float)) else json.dumps(val, sort_keys=True)}")
    else:
        print(json.dumps(report, sort_keys=True))


def _field_info(F) -> dict:
    info = {"q": F.q}
    if F.e > 1:
        info["poly"] = list(F.modulus)
    return info


def _point_set(args, F) -> PointSet:
    if args.set:
        return read_point_set(args.set, F)
    if args.n is None:
        raise InputError("give --set or --n")
    return PointSet.full(F, args.n)


def _field_from_args(args):
    if args.q is None:
        raise InputError("--q is required")
    poly = [int(c) for c in args.poly.split(",")] if args.poly else None
    return field_spec(args.q, poly)


# -- subcommands -----------------------------------------------------------------

def cmd_tame_check(args) -> dict:
    A = read_matrix(args.matrix)
    cert = is_tame(A)
    out = {"result": "tameness-characterization", "verdict": cert.verdict,
           "m": A.nrows, "k": A.ncols, **_field_info(A.field)}
    if cert.tame:
        out["witnesses"] = {str(i): [list(b1), list(b2)] for i, (b1, b2) in cert.witnesses.items()}
    else:
        out["violating_set"] = list(cert.violating_set)
    return out


def cmd_extend(args) -> dict:
    A = read_matrix(args.matrix)
    out, steps = normalize_with_trace(A)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(format_matrix(out))
    return {"result": "tame-normalization", **_field_info(A.field),
            "input_shape": list(A.shape), "shape": list(out.shape),
            "matrix": [list(r) for r in out.rows], "steps": [s.as_dict() for s in steps]}


def cmd_tight(args) -> dict:
    A = read_matrix(args.matrix)
    rep = tight_pivot(A)
    return {"result": "tight-sets", "minimal": list(rep.minimal), "pivot": rep.pivot,
            "tight_sets": None if rep.tight_sets is None else [list(u) for u in rep.tight_sets]}


def cmd_classify(args) -> dict:
    A = read_matrix(args.matrix)
    x = read_tuple(args.tuple, A.field)
    return {"result": "solution-classification", **classify_solution(A, x).as_dict()}


def cmd_generic_witness(args) -> dict:
    A = read_matrix(args.matrix)
    z = generic_witness_lowdim(A)
    return {"result": "generic-witness", "n": A.ncols - A.nrows - 1, "points": [list(p) for p in z]}


def cmd_disjoint_sets(args) -> dict:
    A = read_matrix(args.matrix)
    x = read_tuple(args.tuple, A.field)
    I1, I2 = disjoint_rank_sets(A, x)
    return {"result": "disjoint-rank-sets", "I1": list(I1), "I2": list(I2), "r": len(I1)}


def cmd_enumerate(args) -> dict:
    A = read_matrix(args.matrix)
    S = _point_set(args, A.field)
    sols = [[encode_point(A.field, p) for p in x] for x in enumerate_solutions(A, S)]
    shown = sols if args.limit is None else sols[:args.limit]
    return {"result": "solution-enumeration", "n": S.n, "count": len(sols), "solutions": shown}


def cmd_histogram(args) -> dict:
    A = read_matrix(args.matrix)
    S = _point_set(args, A.field)
    return {"result": "affine-rank-histogram", "n": S.n, **arank_histogram(A, S).as_dict()}


def cmd_capfree(args) -> dict:
    A = read_matrix(args.matrix)
    res = max_solution_free_set(A, args.n, mode=args.mode, forbid=args.forbid, seed=args.seed,
                                restarts=args.restarts)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(format_point_set(PointSet(A.field, args.n, res.codes)))
    out = {"result": "solution-free-set", "n": args.n, "mode": res.mode, "forbid": res.forbid,
           "size": res.size, "codes": list(res.codes),
           "certificate": "exhaustive" if res.certified else "heuristic"}
    if 2 * A.nrows < A.ncols and args.n >= 1:
        out["slice_rank_bound"] = B.slice_rank_bound(A.field.q, A.nrows, A.ncols, args.n).bound
    return out


def cmd_subspace(args) -> dict:
    F = _field_from_args(args)
    S = read_point_set(args.set, F)
    found = find_affine_subspace(S, args.d)
    out = {"result": "affine-subspace", "d": args.d, "found": found is not None}
    if found:
        out["base"] = list(found.base)
        out["directions"] = [list(v) for v in found.directions]
    return out


def cmd_clp(args) -> dict:
    F = _field_from_args(args)
    rng = random.Random(args.seed)
    results = [clp_rank_check(F, args.n, args.d, rng=rng) for _ in range(args.samples)]
    return {"result": "clp-rank-bound", "q": F.q, "n": args.n, "d": args.d,
            "bound": results[0].bound, "ranks": [r.rank for r in results],
            "max_rank": max(r.rank for r in results), "size": results[0].size}


def cmd_replay(args) -> dict:
    A = read_matrix(args.matrix)
    S = _point_set(args, A.field)
    rep = proof_replay(A, S, args.r, trials=args.trials, seed=args.seed)
    return {"result": "random-rank-replay", "q": rep.q, "n": rep.n, "m": rep.m, "r": rep.r,
            "I": list(rep.I), "J": list(rep.J), "degree": rep.degree, "dim_V": rep.dim_V,
            "section": list(rep.section), "sizes": rep.sizes, "rank_bound": rep.rank_bound,
            "ranks": [t.rank_T for t in rep.trials],
            "support": [t.support_T3 for t in rep.trials],
            "support_ranks": [t.rank_T3 for t in rep.trials],
            "support_rank_lower": [t.support_rank_bound for t in rep.trials],
            "mean_support": rep.mean_support, "expected_support": rep.expected_support,
            "sigma": rep.sigma_mean, "support_within_3sigma": rep.support_within_3sigma}


def cmd_bounds(args) -> dict:
    kind = args.kind
    if kind == "mono":
        return {"result": "monomial-count", "q": args.q, "n": args.n, "d": B.exact(args.d),
                "value": B.monomial_count(args.q, args.n, args.d)}
    if kind == "c":
        value, t = B.c_constant(args.q, B.exact(args.delta))
        return {"result": "growth-constant", "q": args.q, "delta": B.exact(args.delta),
                "value": value, "t": t}
    if kind == "slice":
        s = B.slice_rank_bound(args.q, args.m, args.k, args.n)
        return {"result": "slice-rank-bound", "q": s.q, "m": s.m, "k": s.k, "n": s.n,
                "degree": s.degree, "monomials": s.monomials, "bound": s.bound,
                "c": s.c_value, "nontrivial": s.nontrivial}
    if kind == "qbin":
        return {"result": "gaussian-binomial", "q": args.q, "n": args.n, "d": args.d,
                "value": B.gaussian_binomial(args.q, args.n, args.d)}
    if kind == "supersat":
        s = B.supersat_params(args.q, args.r, args.delta, args.delta_prime, args.n0)
        return {"result": "supersaturation", "q": s.q, "r": s.r, "delta": s.delta,
                "delta_prime": s.delta_prime, "n0": s.n0, "n1": s.n1, "epsilon": s.epsilon,
                "C": s.C, "log_q_C": s.log_q_C}
    if kind == "subspace":
        rows = B.subspace_constants(args.q, args.d)
        return {"result": "subspace-constants", "q": args.q,
                "rows": [{"d": r.d, "n": r.n_d, "C": r.C_d,
                          "delta": r.delta_d if isinstance(r.delta_d, Fraction) else float(r.delta_d)}
                         for r in rows]}
    raise InputError(f"unknown bounds kind {kind!r}")


# -- parser -------------------------------------------------------------------------

def _output_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", action="store_true", default=True, help="JSON report (default)")
    g.add_argument("--text", action="store_true", help="key: value report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tamesys", description="Tame balanced linear systems over finite fields.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, matrix=True):
        p = sub.add_parser(name, help=help_)
        if matrix:
            p.add_argument("--matrix", required=True, help="matrix file")
        _output_flags(p)
        p.set_defaults(func=func)
        return p

    add("tame-check", cmd_tame_check, "decide tameness with a certificate")
    p = add("extend", cmd_extend, "normalize to a tame m' x (2m'+1) matrix")
    p.add_argument("--out", help="write the normalized matrix here")
    add("tight-sets", cmd_tight, "tight sets and extension pivot")
    for name, func, help_ in (("classify", cmd_classify, "classify a solution tuple"),
                              ("disjoint-sets", cmd_disjoint_sets, "disjoint full-rank index sets")):
        p = add(name, func, help_)
        p.add_argument("--tuple", required=True, help="tuple file")
    add("generic-witness", cmd_generic_witness, "generic solution in dimension k - m - 1")

    for name, func, help_ in (("enumerate", cmd_enumerate, "list solutions inside a point set"),
                              ("histogram", cmd_histogram, "affine-rank histogram of solutions")):
        p = add(name, func, help_)
        p.add_argument("--set", help="point-set file (default: all of F_q^n)")
        p.add_argument("--n", type=int, help="dimension when --set is omitted")
        if name == "enumerate":
            p.add_argument("--limit", type=int, help="print at most this many solutions")

    p = add("capfree", cmd_capfree, "large set without forbidden solutions")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=["exact", "greedy", "random"], default="exact")
    p.add_argument("--forbid", choices=["generic", "shape", "nontrivial"], default="generic")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--out", help="write the set here")

    p = add("subspace-find", cmd_subspace, "affine subspace inside a point set", matrix=False)
    p.add_argument("--set", required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--poly", help="modulus coefficients c0,...,1 for q = p^e")
    p.add_argument("--d", type=int, required=True)

    p = add("clp", cmd_clp, "rank of random low-degree polynomial matrices", matrix=False)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--poly")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--samples", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)

    p = add("replay", cmd_replay, "replay the random rank argument")
    p.add_argument("--set")
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)

    pb = sub.add_parser("bounds", help="numeric bounds and constants")
    bsub = pb.add_subparsers(dest="kind", required=True)
    specs = {
        "mono": [("q", int), ("n", int), ("d", str)],
        "c": [("q", int), ("delta", str)],
        "slice": [("q", int), ("m", int), ("k", int), ("n", int)],
        "qbin": [("q", int), ("n", int), ("d", int)],
        "supersat": [("q", int), ("r", int), ("delta", str), ("delta_prime", str), ("n0", int)],
        "subspace": [("q", int), ("d", int)],
    }
    for kind, params in specs.items():
        bp = bsub.add_parser(kind)
        for name, typ in params:
            # positional or --flag form
            bp.add_argument(name, nargs="?", type=typ)
            bp.add_argument(f"--{name.replace('_', '-')}", dest=f"{name}_flag", type=typ)
        _output_flags(bp)
        bp.set_defaults(func=cmd_bounds, params=[n for n, _ in params])
    return parser


def _merge_bound_flags(args, parser) -> None:
    for name in getattr(args, "params", []):
        flag = getattr(args, f"{name}_flag")
        if flag is not None:
            setattr(args, name, flag)
        if getattr(args, name) is None:
            parser.error(f"bounds {args.kind}: missing {name}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "bounds":
        _merge_bound_flags(args, parser)
    try:
        report = args.func(args)
    except InvariantViolation as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return 1
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(report, args)
    return 0


if __name__ == "__main__":
    sys.exit(main())
