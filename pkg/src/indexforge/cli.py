"""Command-line front end (``indexforge``).

Exit codes: 0 on success, 2 when the request fails validation (bad flags,
unknown manifolds, dimension or structure mismatches, malformed descriptor
files) and 1 when a computation fails.  Rationals are printed as
``num/den`` strings; only ``heat`` prints floating-point numbers.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import manifolds as mf
from .algebra import GradedClass, partitions
from . import spin_rep as sr
from .index import (
    CoefficientVector,
    StructureError,
    coefficient_match,
    evaluate_index,
    index_oracle,
    induced_oracle,
    random_evaluations,
    thom_determinant,
    thom_matrix,
)
from .operators import FAMILIES, ALIASES, OperatorSpec, higher_signature_integrand, twisted_integrand

__all__ = ["main", "build_parser", "ValidationError"]

DEFAULT_FORMAT = {
    "index": "plain",
    "integrand": "json",
    "classify": "json",
    "reps": "json",
    "match": "json",
    "thom": "json",
    "heat": "csv",
    "manifolds": "plain",
}


class ValidationError(ValueError):
    """A request that is rejected before any computation starts."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# argument helpers

def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _twist_summand(text: str) -> tuple:
    try:
        return tuple(Fraction(tok) for tok in text.split(",") if tok.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"twist summand must be comma-separated rationals, got {text!r}") from None


def _t_grid(text: str) -> tuple[float, ...]:
    """``a,b,c`` or ``start:stop:count`` (geometric)."""
    try:
        if ":" in text:
            start, stop, count = text.split(":")
            grid = np.geomspace(float(start), float(stop), int(count))
        else:
            grid = np.array([float(tok) for tok in text.split(",") if tok.strip()])
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad --t-grid {text!r}; use a,b,c or start:stop:count") from None
    if grid.size == 0 or np.any(grid <= 0):
        raise argparse.ArgumentTypeError("--t-grid needs positive times")
    return tuple(float(t) for t in grid)


def _operator_choices() -> list[str]:
    return sorted(set(ALIASES))


def _add_format(p, default):
    p.add_argument("--format", choices=("json", "csv", "plain"), default=None,
                   help=f"output format (default: {default})")


def _add_operator(p, need_n: bool):
    p.add_argument("--op", required=True, choices=_operator_choices(), metavar="OP",
                   help=f"operator family: {', '.join(FAMILIES)} (aliases: rs, signature)")
    p.add_argument("--n", type=int, default=None, required=need_n,
                   help="ambient dimension" + ("" if need_n else " (default: the manifold's dimension)"))
    p.add_argument("--j", type=int, default=0, help="order of the higher Dirac operator (default 0)")
    p.add_argument("--mu", type=int, default=0, help="higher signature parameter mu >= 0 (default 0)")


def _add_library(p):
    p.add_argument("--manifolds", metavar="DIR", default=None,
                   help="manifold library directory (default: $INDEXFORGE_MANIFOLDS or the shipped set)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="indexforge", description="Exact index densities and indices of chiral geometric operators.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("index", help="evaluate an index on a manifold descriptor")
    _add_operator(p, need_n=False)
    p.add_argument("--manifold", required=True,
                   help="manifold name or product expression, e.g. K3, CP1^2*K3")
    p.add_argument("--twist", action="append", type=_twist_summand, default=None, metavar="C1,C2,..",
                   help="line-bundle summand given by its c1-integrals over the surface factors; repeatable")
    _add_library(p)
    _add_format(p, DEFAULT_FORMAT["index"])

    p = sub.add_parser("integrand", help="print the index density as a graded class")
    _add_operator(p, need_n=True)
    p.add_argument("--twisted", action="store_true", help="include the generic twist character ch_0 + ch_1 + ...")
    p.add_argument("--character-degree", type=int, choices=(4, 8), default=4,
                   help="higher signature only: degree to which the bundle characters are kept (default 4)")
    _add_format(p, DEFAULT_FORMAT["integrand"])

    p = sub.add_parser("classify", help="list elliptic generalized gradients for a dominant weight")
    p.add_argument("--n", type=int, required=True, help="dimension n >= 3")
    p.add_argument("--lambda", dest="weight", required=True, metavar="L1,L2,..",
                   help="dominant weight, e.g. 1/2,1/2")
    p.add_argument("--minimal", action="store_true", help="only the minimal elliptic target sets")
    _add_format(p, DEFAULT_FORMAT["classify"])

    p = sub.add_parser("reps", help="dimensions and vector-tensor summands of Spin(n) modules")
    p.add_argument("--n", type=int, required=True, help="dimension n >= 3")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--lambda", dest="weight", metavar="L1,L2,..", help="a single dominant weight")
    g.add_argument("--max-entry", type=_fraction, metavar="Q", help="table of all dominant weights with entries <= Q")
    _add_format(p, DEFAULT_FORMAT["reps"])

    p = sub.add_parser("match", help="recover index-density coefficients from index values")
    _add_operator(p, need_n=True)
    p.add_argument("--verify", type=int, default=0, metavar="COUNT",
                   help="re-evaluate the recovered vector on COUNT random held-out products")
    p.add_argument("--seed", type=int, default=0, help="seed for --verify (default 0)")
    p.add_argument("--cp1-c1", type=int, default=None, metavar="C",
                   help="c1-integral of the CP1 twist used for matching (default -2; any nonzero value)")
    _add_format(p, DEFAULT_FORMAT["match"])

    p = sub.add_parser("thom", help="Thom matrix of generator Pontryagin numbers")
    p.add_argument("--k", type=int, required=True, help="partition weight k >= 1")
    _add_format(p, DEFAULT_FORMAT["thom"])

    p = sub.add_parser("heat", help="heat coefficients, spectral fits and the Landau supertrace")
    p.add_argument("--model", choices=("free", "potential", "landau"), required=True,
                   help="free Laplacian, -Delta + V, or the flat-torus Dirac operator with flux")
    p.add_argument("--order", type=int, default=4, help="highest coefficient Phi_k (0..4, default 4)")
    p.add_argument("--dim", type=int, default=2, help="dimension of the free/potential model (default 2)")
    p.add_argument("--potential", type=_fraction, default=Fraction(1), help="constant potential V (default 1)")
    p.add_argument("--flux", type=int, default=1, help="line-bundle degree c for the landau model (default 1)")
    p.add_argument("--t-grid", type=_t_grid, default=None, metavar="GRID",
                   help="times as a,b,c or start:stop:count (default 0.05:20:25)")
    _add_format(p, DEFAULT_FORMAT["heat"])

    p = sub.add_parser("manifolds", help="list, show or validate manifold descriptors")
    p.add_argument("action", choices=("list", "show", "validate"), help="what to do with the library")
    p.add_argument("targets", nargs="*", help="names for show, JSON files for validate")
    _add_library(p)
    _add_format(p, DEFAULT_FORMAT["manifolds"])
    return parser


# ---------------------------------------------------------------------------
# output

def _emit(fmt: str, plain: str, json_obj, rows: list[list] | None, out) -> None:
    if fmt == "json":
        out.write(json.dumps(json_obj, indent=2) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for row in rows or []:
            writer.writerow(row)
        out.write(buf.getvalue())
    else:
        out.write(plain.rstrip("\n") + "\n")


def _spec(args, n: int | None) -> OperatorSpec:
    try:
        return OperatorSpec(args.op, n, j=args.j, mu=args.mu)
    except ValueError as exc:
        raise ValidationError(str(exc)) from None


def _library(path):
    try:
        return mf.ManifoldLibrary(path)
    except mf.DescriptorError as exc:
        raise ValidationError(str(exc)) from None


def _weight(text: str, n: int) -> sr.DominantWeight:
    try:
        return sr.DominantWeight(text, n)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(str(exc)) from None


# ---------------------------------------------------------------------------
# subcommands

def _cmd_index(args, out):
    lib = _library(args.manifolds)
    try:
        M = lib.get(args.manifold)
    except KeyError as exc:
        raise ValidationError(exc.args[0]) from None
    spec = _spec(args, args.n if args.n is not None else M.dim)
    twist = tuple(args.twist) if args.twist else None
    if M.dim != spec.n:
        raise ValidationError(f"{spec.name} is defined in dimension {spec.n}, but {M.name} has dimension {M.dim}")
    if spec.requires_spin and not M.spin:
        raise ValidationError(f"{spec.name} needs a spin manifold; {M.name} is not spin")
    if twist:
        for s in twist:
            if len(s) > M.surface_factors:
                raise ValidationError(
                    f"twist summand {','.join(map(str, s))} has {len(s)} c1-integrals but {M.name} "
                    f"has {M.surface_factors} surface factors")
    value = evaluate_index(spec, M, twist)
    twist_json = [[str(a) for a in s] for s in twist] if twist else []
    _emit(args.format, str(value),
          {"operator": spec.name, "n": spec.n, "manifold": M.name, "twist": twist_json, "index": str(value)},
          [["operator", "n", "manifold", "twist", "index"],
           [spec.name, spec.n, M.name, ";".join(",".join(s) for s in twist_json), str(value)]], out)


def _cmd_integrand(args, out):
    spec = _spec(args, args.n)
    if args.character_degree != 4 and spec.family != "higher-signature":
        raise ValidationError("--character-degree applies to higher-signature only")
    if spec.family == "higher-signature" and args.character_degree != 4:
        c = higher_signature_integrand(spec.mu, args.character_degree)
        if args.twisted:
            c = GradedClass.chern_character(4) * c
    else:
        c = twisted_integrand(spec) if args.twisted else spec.integrand()
    data = c.to_json()
    _emit(args.format, str(c), data, [["monomial", "coefficient"]] + [[k, v] for k, v in data.items()], out)


def _cmd_classify(args, out):
    w = _weight(args.weight, args.n)
    sets = sr.classify_minimal_elliptic(w, args.n) if args.minimal else sr.elliptic_gradients(w, args.n)
    items = [sr.GradientSelector(w, s).labels for s in sets]
    plain = "\n".join(" ".join(t) for t in items) if items else "(none)"
    _emit(args.format, plain, [{"targets": t} for t in items],
          [["weight", "targets"]] + [[str(w), " ".join(t)] for t in items], out)


def _rep_record(w: sr.DominantWeight) -> dict:
    n = w.n
    # module types only distinguish anything for even n
    kind, conj = sr.module_type(w, n) if n % 2 == 0 else (None, None)
    summands = []
    for eps in sr.fegan_targets(w, n):
        target = sr.shift(w, eps)
        summands.append({"target": sr.target_label(eps),
                         "weight": [str(x) for x in target],
                         "dimension": sr.weyl_dim(target, n)})
    dim = sr.weyl_dim(w, n)
    return {
        "weight": w.to_json(),
        "dimension": dim,
        "type": kind,
        "conjugate": conj.to_json() if conj is not None else None,
        "summands": summands,
        "fegan_sum": sum(s["dimension"] for s in summands),
        "n_times_dimension": n * dim,
    }


def _cmd_reps(args, out):
    if args.n < 3:
        raise ValidationError("n must be at least 3")
    if args.weight is not None:
        records = [_rep_record(_weight(args.weight, args.n))]
    else:
        if args.max_entry < 0 or (2 * args.max_entry).denominator != 1:
            raise ValidationError("--max-entry must be a non-negative integer or half-integer")
        records = [_rep_record(w) for w in sr.dominant_weights(args.n, args.max_entry)]
    rows = [["weight", "dimension", "type", "targets", "fegan_sum", "n_times_dimension"]]
    lines = []
    for r in records:
        wt = "(" + ", ".join(r["weight"]) + ")"
        targets = " ".join(s["target"] for s in r["summands"])
        rows.append([wt, r["dimension"], r["type"], targets, r["fegan_sum"], r["n_times_dimension"]])
        lines.append(f"{wt}  dim={r['dimension']}  type={r['type']}  targets={targets}")
    _emit(args.format, "\n".join(lines), records if args.weight is None else records[0], rows, out)


def _cmd_match(args, out):
    spec = _spec(args, args.n)
    if args.verify < 0:
        raise ValidationError("--verify must be non-negative")
    if args.cp1_c1 == 0:
        raise ValidationError("--cp1-c1 must be nonzero")
    vec = coefficient_match(index_oracle(spec), spec.n, c1_integral=args.cp1_c1)
    report = {"operator": spec.name, "n": spec.n, "coefficients": vec.to_json()}
    if args.verify:
        induced = induced_oracle(vec)
        oracle = index_oracle(spec)
        samples = random_evaluations(spec.n, args.verify, args.seed, spin_only=spec.requires_spin)
        mismatches = [M.name for M, tw in samples if induced(M, tw) != oracle(M, tw)]
        report["verified"] = {"samples": args.verify, "seed": args.seed, "mismatches": mismatches}
        if mismatches:
            raise RuntimeError(f"recovered vector disagrees with the oracle on {', '.join(mismatches)}")
    if vec != CoefficientVector.from_class(twisted_integrand(spec)):
        raise RuntimeError("recovered vector differs from the integrand coefficients")
    lines = [f"k={k}  I={I}  {v}" for (k, I), v in vec.entries.items()]
    if args.verify:
        lines.append(f"verified on {args.verify} held-out products")
    rows = [["k", "partition", "value"]] + [[e["k"], e["partition"], e["value"]] for e in report["coefficients"]]
    _emit(args.format, "\n".join(lines), report, rows, out)


def _cmd_thom(args, out):
    if args.k < 1:
        raise ValidationError("--k must be at least 1")
    parts = partitions(args.k)
    matrix = thom_matrix(args.k)
    det = thom_determinant(args.k)
    report = {
        "k": args.k,
        "rows": [str(J) for J in parts],
        "columns": [str(I) for I in parts],
        "matrix": [[str(x) for x in row] for row in matrix],
        "determinant": str(det),
    }
    width = max(len(str(x)) for row in matrix for x in row)
    lines = ["rows/cols: " + " ".join(str(I) for I in parts)]
    lines += [" ".join(str(x).rjust(width) for x in row) for row in matrix]
    lines.append(f"det = {det}")
    rows = [["row"] + report["columns"]] + [[r] + m for r, m in zip(report["rows"], report["matrix"])]
    rows.append(["determinant", str(det)])
    _emit(args.format, "\n".join(lines), report, rows, out)


def _cmd_heat(args, out):
    from . import heat

    if not 0 <= args.order <= 4:
        raise ValidationError("--order must lie in 0..4")
    if args.dim < 1 or args.dim > 4:
        raise ValidationError("--dim must lie in 1..4")
    t_grid = tuple(float(t) for t in (args.t_grid or heat.spectral.DEFAULT_T_GRID))
    records: list[tuple] = []
    if args.model in ("free", "potential"):
        n = args.dim
        op = heat.free_laplacian(n) if args.model == "free" else heat.schrodinger(args.potential, n, args.order)
        terms = heat.parametrix_recursion(op, args.order)
        fit = None
        if args.model == "potential":
            fit = heat.fit_schrodinger_coefficients(float(args.potential), n)
        for k in range(args.order + 1):
            phi = heat.heat_coefficients(terms, n, k)
            records.append(("phi_exact", k, str(phi.value)))
            if fit is not None:
                records.append(("phi_fit", k, repr(fit.normalized(k))))
    else:
        c = args.flux
        if len(t_grid) < 3:
            raise ValidationError("--t-grid needs at least three times for the landau model")
        for t in t_grid:
            records.append(("supertrace", repr(t), repr(heat.torus_spectral_supertrace(c, t))))
        dfit = heat.fit_divergent_terms(c, t_grid)
        for k, v in enumerate(dfit.coefficients):
            records.append(("fit_coefficient", f"t^({k - 2}/2)", repr(v)))
        records.append(("index_T2", "", str(evaluate_index(OperatorSpec("dirac", 2), mf.torus(2), ((c,),)))))
    plain = "\n".join(f"{q:<16} {key:<20} {v}" for q, key, v in records)
    _emit(args.format, plain, [{"quantity": q, "key": str(key), "value": v} for q, key, v in records],
          [["quantity", "key", "value"]] + [list(r) for r in records], out)


def _cmd_manifolds(args, out):
    if args.action == "validate":
        if not args.targets:
            raise ValidationError("validate needs one or more descriptor files")
        results = []
        for path in args.targets:
            try:
                M = mf.load_descriptor(path)
            except (OSError, mf.DescriptorError) as exc:
                raise ValidationError(str(exc)) from None
            results.append({"file": path, "name": M.name, "ok": True})
        _emit(args.format, "\n".join(f"{r['file']}: ok ({r['name']})" for r in results), results,
              [["file", "name", "ok"]] + [[r["file"], r["name"], "true"] for r in results], out)
        return
    lib = _library(args.manifolds)
    if args.action == "list":
        items = list(lib)
        _emit(args.format, "\n".join(f"{M.name:<8} dim={M.dim:<3} spin={str(M.spin).lower()}" for M in items),
              [M.name for M in items],
              [["name", "dim", "spin", "euler_char", "signature"]]
              + [[M.name, M.dim, str(M.spin).lower(), M.euler_char, M.signature] for M in items], out)
        return
    if not args.targets:
        raise ValidationError("show needs one or more manifold names")
    found = []
    for name in args.targets:
        try:
            found.append(lib.get(name))
        except KeyError as exc:
            raise ValidationError(exc.args[0]) from None
    docs = [mf.descriptor_to_json(M) for M in found]
    rows = [["name", "partition", "value"]]
    for d in docs:
        rows += [[d["name"], k, v] for k, v in d["pontryagin_numbers"].items()]
    _emit(args.format, "\n".join(json.dumps(d) for d in docs), docs if len(docs) > 1 else docs[0], rows, out)


COMMANDS = {
    "index": _cmd_index,
    "integrand": _cmd_integrand,
    "classify": _cmd_classify,
    "reps": _cmd_reps,
    "match": _cmd_match,
    "thom": _cmd_thom,
    "heat": _cmd_heat,
    "manifolds": _cmd_manifolds,
}


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.format is None:
        args.format = DEFAULT_FORMAT[args.command]
    try:
        COMMANDS[args.command](args, out)
    except (ValidationError, StructureError, mf.DescriptorError) as exc:
        err.write(f"indexforge {args.command}: error: {exc}\n")
        return 2
    except Exception as exc:  # noqa: BLE001 - every computation failure maps to exit 1
        err.write(f"indexforge {args.command}: computation failed: {exc}\n")
        return 1
    return 0


def main_entry() -> None:
    """Console-script entry point."""
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
