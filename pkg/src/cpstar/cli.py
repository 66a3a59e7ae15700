"""Command line front end.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from typing import List, Optional

import numpy as np

from . import serialize
from .biproducts import oplus_algebra
from .cp import (
    choi_matrix,
    is_cp,
    is_cpstar_morphism,
    is_dagger_idempotent,
    is_unital,
    noncontractive_data,
    noncontractive_projection,
    split_morphism_check,
)
from .fhilb import DEFAULT_TOL, LinearMap, mat_cup, min_eigenvalue, operator_norm
from .frobenius import FrobeniusAlgebra, check_all, is_normal, normalise
from .functors import functor_F_object, functor_G_fhilb, round_trip_witnesses
from .groupoids import (
    Groupoid,
    counterexample_R,
    enumerate_groupoids,
    groupoid_to_algebra,
    nine_morphism_groupoid,
    per_counterexample,
    search_dagger_splitting,
)
from .rel import REL
from .report import Report
from .serialize import InputError
from .split import (
    CpmPer,
    Per,
    cpm_per_check,
    cpm_per_diagonal_domain,
    cpm_per_is_unital,
    quotient,
    search_f_image,
    search_split_iso_cpm_rel,
    split_iso_rel,
)

COUNTEREXAMPLES = ("rel-nosplit", "rel-unital-image", "fhilb-noncontractive")


class _Result:
    def __init__(self, report: Report, output=None, text: str = ""):
        self.report, self.output, self.text = report, output, text


def _algebra(obj) -> FrobeniusAlgebra:
    if isinstance(obj, Groupoid):
        return groupoid_to_algebra(obj)
    if isinstance(obj, FrobeniusAlgebra):
        return obj
    raise InputError("expected an algebra or a groupoid")


def cmd_check_frobenius(args) -> _Result:
    alg = _algebra(serialize.load(args.path))
    report = check_all(alg, args.tol)
    report.command = "check-frobenius"
    return _Result(report)


def cmd_cp_check(args) -> _Result:
    f = serialize.morphism_from_json(_read(args.morphism))
    a, b = _algebra(serialize.load(args.src)), _algebra(serialize.load(args.dst))
    if f.backend is not a.backend or a.backend is not b.backend:
        raise InputError("morphism and algebras use different backends")
    if f.shape != (b.dim, a.dim):
        raise InputError(f"morphism {f.shape[1]} -> {f.shape[0]} does not fit {a.dim} -> {b.dim}")
    report = Report("cp-check")
    report.add("cpstar_morphism", is_cpstar_morphism(f, a, b, args.tol))
    return _Result(report)


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def cmd_functor(args) -> _Result:
    report = Report(f"functor {args.which}")
    if args.which == "F":
        alg = _algebra(serialize.load(args.path))
        p = functor_F_object(alg, args.tol).projection
        report.add("dagger_idempotent", is_dagger_idempotent(p, args.tol))
        report.add("completely_positive", is_cp(p, alg.dim, alg.dim, args.tol))
        report.add("unital", is_unital(p, alg.dim, alg.dim, args.tol))
        if alg.backend is REL:
            out = CpmPer(alg.dim, p)
            report.add("quotient_size", len(quotient(out)) == alg.dim)
            return _Result(report, out.to_dict())
        return _Result(report, p.to_dict())
    p = serialize.load(args.path)
    if not isinstance(p, LinearMap):
        raise InputError("G and roundtrip take a matrix on M_m")
    if args.which == "G":
        try:
            alg = functor_G_fhilb(p, args.tol)
        except ValueError as exc:
            report.add(f"precondition: {exc}", False)
            return _Result(report)
        report.extend(check_all(alg, args.tol))
        return _Result(report, serialize.algebra_to_json(alg))
    try:
        rt = round_trip_witnesses(p, args.tol)
    except ValueError as exc:
        report.add(f"precondition: {exc}", False)
        return _Result(report)
    tol = args.tol
    r1, r2 = rt.residuals()
    report.add("g_after_f_is_p", r1 <= tol, r1)
    report.add("f_after_g_is_FG(p)", r2 <= tol, r2)
    m, r = rt.split.shape
    m = int(round(np.sqrt(m)))
    report.add("f_cp", is_cp(rt.f, m, r, tol))
    report.add("g_cp", is_cp(rt.g, r, m, tol))
    report.add("f_absorbed", split_morphism_check(rt.f, p, rt.image, tol))
    report.add("g_absorbed", split_morphism_check(rt.g, rt.image, p, tol))
    report.extend(check_all(rt.algebra, tol), "G(p).")
    return _Result(report, {"f": rt.f.to_dict(), "g": rt.g.to_dict(), "algebra": serialize.algebra_to_json(rt.algebra)})


def cmd_split_search(args) -> _Result:
    a, b = serialize.load(args.first), serialize.load(args.second)
    report = Report("split-search")
    if isinstance(a, Groupoid) and isinstance(b, CpmPer):
        a, b = b, a
    if isinstance(a, CpmPer) and isinstance(b, Groupoid):
        res = search_f_image(a, b, exhaustive=args.exhaustive)
        report.add("image_of_groupoid", res.found)
        return _Result(report, {"beta": res.mapping, "candidates": res.candidates})
    if isinstance(a, CpmPer) and isinstance(b, CpmPer):
        res = search_split_iso_cpm_rel(a, b, exhaustive=args.exhaustive)
        report.add("isomorphic", res.found)
        return _Result(report, {"alpha": res.mapping, "candidates": res.candidates})
    if isinstance(a, (Per, CpmPer)) and isinstance(b, (Per, CpmPer)):
        report.add("isomorphic", split_iso_rel(a, b))
        return _Result(report, {"classes": [len(quotient(a)), len(quotient(b))]})
    raise InputError("split-search takes two PERs, two CPM PERs, or a CPM PER and a groupoid")


def cmd_biproduct(args) -> _Result:
    a, b = _algebra(serialize.load(args.first)), _algebra(serialize.load(args.second))
    if a.backend is not b.backend:
        raise InputError("algebras use different backends")
    if not is_normal(a, args.tol):
        a = normalise(a, args.tol)[0]
    if not is_normal(b, args.tol):
        b = normalise(b, args.tol)[0]
    alg = oplus_algebra(a, b, args.tol)
    report = check_all(alg, args.tol)
    report.command = "biproduct"
    return _Result(report, serialize.algebra_to_json(alg))


def cmd_counterexample(args) -> _Result:
    report = Report(f"counterexample {args.name}")
    lines = []
    if args.name == "rel-nosplit":
        g, r = nine_morphism_groupoid(), counterexample_R()
        start = time.perf_counter()
        res = search_dagger_splitting(r, g, exhaustive=not args.fast)
        elapsed = time.perf_counter() - start
        report.add("R_is_dagger_idempotent", r.dagger() == r and r @ r == r)
        report.add("no_splitting", not res.found)
        kept = [g.labels[x] for c in res.classes for x in c]
        lines.append(f"R = diagonal on {', '.join(kept)}")
        lines.append(
            f"no splitting among {res.candidates} candidates over {res.groupoids} groupoids "
            f"with {len(res.classes)} morphisms ({elapsed:.2f} s)"
        )
        out = {"retained": kept, "candidates": res.candidates, "groupoids": res.groupoids}
    elif args.name == "rel-unital-image":
        c = per_counterexample()
        report.add("cpm_per", cpm_per_check(c.relation, c.x_size))
        report.add("unital", cpm_per_is_unital(c) and cpm_per_diagonal_domain(c))
        hs = enumerate_groupoids(len(quotient(c)))
        total = 0
        hits = 0
        for h in hs:
            res = search_f_image(c, h, exhaustive=not args.fast)
            total += res.candidates
            hits += res.found
        report.add("outside_image", hits == 0)
        lines.append(f"classes: {[divmod(cls[0], 3) for cls in quotient(c)]}")
        lines.append(f"no groupoid among {len(hs)} matches ({total} candidates)")
        out = {"classes": len(quotient(c)), "groupoids": len(hs), "candidates": total}
    else:
        p = noncontractive_projection()
        a, rho = noncontractive_data()
        tol = args.tol
        report.add("self_adjoint", np.max(np.abs(p.dagger().array - p.array)) <= tol)
        report.add("idempotent", np.max(np.abs((p @ p).array - p.array)) <= tol)
        lam = min_eigenvalue(choi_matrix(p))
        report.add("choi_psd", lam >= -tol, lam)
        norm = operator_norm((p @ mat_cup(2)).array.reshape(2, 2))
        report.add("not_contractive", norm > 1, norm)
        report.add("not_unital", not is_unital(p, 2, 2, tol))
        lines.append(f"a = diag({a[0, 0].real:.6f}, {a[1, 1].real:.6f}), Tr(a) = {np.trace(a).real:.6f}")
        lines.append(f"||p(1)|| = {norm:.5f} > 1")
        out = {"norm": norm, "trace_a": float(np.trace(a).real), "min_choi_eigenvalue": lam}
    return _Result(report, out, "\n".join(lines))


def cmd_enumerate(args) -> _Result:
    if args.n < 0:
        raise InputError("N must be non-negative")
    try:
        gs = enumerate_groupoids(args.n)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    report = Report("enumerate-groupoids")
    report.add(f"count={len(gs)}", True)
    text = "\n".join(f"{g.n_objects} objects: {g.name}" for g in gs)
    return _Result(report, [g.to_dict() for g in gs], text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="absolute tolerance for FHilb checks")
    common.add_argument("--json", action="store_true", help="print a machine-readable report")
    common.add_argument("--out", help="write the command's output document to this file")
    parser = argparse.ArgumentParser(prog="cpstar", description="Check CP*, CPM and splitting constructions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-frobenius", parents=[common], help="check algebra axioms")
    p.add_argument("path")
    p.set_defaults(func=cmd_check_frobenius)

    p = sub.add_parser("cp-check", parents=[common], help="is a morphism CP* between two algebras")
    p.add_argument("morphism")
    p.add_argument("src")
    p.add_argument("dst")
    p.set_defaults(func=cmd_cp_check)

    p = sub.add_parser("functor", parents=[common], help="apply F or G, or verify the round trip")
    p.add_argument("which", choices=["F", "G", "roundtrip"])
    p.add_argument("path")
    p.set_defaults(func=cmd_functor)

    p = sub.add_parser("split-search", parents=[common], help="search for an isomorphism of split objects")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--exhaustive", action="store_true", help="test every bijection instead of pruning")
    p.set_defaults(func=cmd_split_search)

    p = sub.add_parser("biproduct", parents=[common], help="direct sum of two algebras")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_biproduct)

    p = sub.add_parser("counterexample", parents=[common], help="reproduce a counterexample")
    p.add_argument("name", choices=COUNTEREXAMPLES)
    p.add_argument("--fast", action="store_true", help="pruned search instead of testing every bijection")
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("enumerate-groupoids", parents=[common], help="list groupoids with N morphisms")
    p.add_argument("n", type=int, metavar="N")
    p.set_defaults(func=cmd_enumerate)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.tol < 0:
        parser.error("--tol must be non-negative")
    try:
        result = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.out and result.output is not None:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(result.output, fh, indent=1)
    if args.json:
        doc = result.report.to_dict()
        if result.output is not None and not args.out:
            doc["output"] = result.output
        print(json.dumps(doc))
    else:
        print(result.report.format())
        if result.text:
            print(result.text)
    return 0 if result.report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
