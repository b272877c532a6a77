"""`mslaw` command line: checks and constructions on `.mla` files, plus the catalog.

Exit codes: 0 when every check passes, 1 when a mathematical check fails, 2 on usage
or parse errors.
"""

from __future__ import annotations

import argparse
import sys
from typing import Callable

from . import catalog as cat
from .cochain import TransformPair, act, check_ZQplus, pullback
from .errors import DomainError, UsageError
from .lie import (
    LieAlgebra, MetricLieAlgebra, canonical_isotropic_ideal, check_ad_invariant, check_jacobi,
    derivation_defect, is_skewsymmetric,
)
from .linalg import jordan_chevalley, signature
from .mla import DocumentBuilder, MlaDocument, emit_mla, read_mla
from .quadext import (
    EquivalenceWitness, IsomorphismWitness, build_standard_model, check_balanced,
    model_labels, verify_equivalence, verify_isomorphism,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class Report:
    """Collects `PASS|FAIL ...` lines and free-form output; FAIL decides the exit code."""

    def __init__(self, out=None):
        self.out = out or sys.stdout
        self.failed = False

    def check(self, ok: bool, *words: str, detail: str = "") -> None:
        parts = ["PASS" if ok else "FAIL", *words]
        if detail:
            parts.append(detail)
        self.failed |= not ok
        print(" ".join(parts), file=self.out)

    def info(self, text: str) -> None:
        print(text, file=self.out)

    @property
    def code(self) -> int:
        return EXIT_FAIL if self.failed else EXIT_OK


def _write(text: str, path: str | None, report: Report) -> None:
    if path is None or path == "-":
        report.info(text.rstrip("\n"))
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None
    report.info(f"wrote {path}")


def _selected(doc: MlaDocument, kind: str, name: str | None) -> list[str]:
    if name is not None:
        doc.get(kind, name)
        return [name]
    names = doc.names(kind)
    if not names:
        raise UsageError(f"file defines no {kind}")
    return names


def _cocycle_pair(doc: MlaDocument, cocycle: str, pair: str | None) -> tuple[str, object]:
    cdef = doc.cocycle(cocycle)
    name = pair or cdef.pair
    if name is None:
        raise UsageError(f"cocycle {cocycle!r} has no pair; pass --pair")
    return name, doc.pair(name)


def _fmt_vec(v) -> str:
    return "(" + " ".join(str(x) for x in v) + ")"


# ---------------------------------------------------------------- subcommands

def cmd_check_lie(args, report: Report) -> None:
    doc = read_mla(args.file)
    for name in _selected(doc, "algebra", args.name):
        res = check_jacobi(doc.algebra(name))
        report.check(bool(res), name, "jacobi", detail=res.detail)


def _metric_algebra(doc: MlaDocument, name: str, report: Report) -> MetricLieAlgebra | None:
    mdef = doc.metric(name)
    G = mdef.gram
    report.check(G.is_symmetric(), name, "symmetric")
    nondeg = G.rank() == G.rows
    report.check(nondeg, name, "nondegenerate")
    if not (G.is_symmetric() and nondeg):
        return None
    return MetricLieAlgebra(doc.algebra(mdef.algebra), G)


def cmd_check_metric(args, report: Report) -> None:
    doc = read_mla(args.file)
    for name in _selected(doc, "metric", args.name):
        m = _metric_algebra(doc, name, report)
        if m is not None:
            res = check_ad_invariant(m)
            report.check(bool(res), name, "ad-invariant", detail=res.detail)


def cmd_check_derivation(args, report: Report) -> None:
    doc = read_mla(args.file)
    ddef = doc.derivation(args.name)
    g = doc.algebra(ddef.algebra)
    bad = derivation_defect(g, ddef.matrix)
    detail = "" if bad is None else f"fails on (e{bad[0] + 1}, e{bad[1] + 1})"
    report.check(bad is None, args.name, "derivation", detail=detail)
    report.info(f"INFO {args.name} bijective {'yes' if ddef.matrix.is_invertible() else 'no'}")
    for mname in doc.names("metric"):
        mdef = doc.metric(mname)
        if mdef.algebra == ddef.algebra:
            report.check(is_skewsymmetric(mdef.gram, ddef.matrix), args.name,
                         "skewsymmetric", detail=f"for {mname}")


def cmd_jordan(args, report: Report) -> None:
    doc = read_mla(args.file)
    M = doc.derivation(args.name).matrix
    S, N = jordan_chevalley(M)
    report.info("S =")
    report.info(S.pretty())
    report.info("N =")
    report.info(N.pretty())


def cmd_ideal(args, report: Report) -> None:
    doc = read_mla(args.file)
    for name in _selected(doc, "metric", args.metric):
        mdef = doc.metric(name)
        try:
            ideal = canonical_isotropic_ideal(MetricLieAlgebra(doc.algebra(mdef.algebra),
                                                               mdef.gram))
        except DomainError as exc:
            report.check(False, name, "ideal", detail=str(exc))
            continue
        report.info(f"ideal {name} dim {ideal.dim}")
        for b in ideal.basis:
            report.info(f"  {_fmt_vec(b)}")


def cmd_signature(args, report: Report) -> None:
    doc = read_mla(args.file)
    neg, pos, zero = signature(doc.metric(args.metric).gram)
    report.info(f"signature {args.metric} neg={neg} pos={pos} zero={zero}")


def cmd_standard_model(args, report: Report) -> None:
    doc = read_mla(args.file)
    pname, pair = _cocycle_pair(doc, args.cocycle, args.pair)
    c = doc.cocycle(args.cocycle).cocycle
    try:
        sm = build_standard_model(pair, c)
    except (DomainError, AssertionError) as exc:
        report.check(False, args.cocycle, "standard-model", detail=str(exc))
        return
    report.check(True, args.cocycle, "standard-model", detail=f"dim {sm.dim}")
    out = DocumentBuilder()
    alg = out.algebra("d", sm.model.algebra)
    out.metric("g", alg, sm.model.gram)
    out.derivation("D", alg, sm.derivation)
    _write(emit_mla(out.doc), args.output, report)


def cmd_check_cocycle(args, report: Report) -> None:
    doc = read_mla(args.file)
    _, pair = _cocycle_pair(doc, args.cocycle, args.pair)
    c = doc.cocycle(args.cocycle).cocycle
    res = check_ZQplus(pair, c)
    report.check(bool(res), "cocycle", detail="; ".join(res.failures))
    if args.balanced:
        try:
            bal = check_balanced(pair, c)
            report.check(bool(bal), "balanced", detail=bal.detail)
        except DomainError as exc:
            report.check(False, "balanced", detail=str(exc))


def _emit_cocycle(pair_name: str, pair, c, name: str, path, report: Report) -> None:
    out = DocumentBuilder()
    p = out.pair(pair_name, pair)
    out.cocycle(name, c, p)
    _write(emit_mla(out.doc), path, report)


def cmd_act(args, report: Report) -> None:
    doc = read_mla(args.file)
    pname, pair = _cocycle_pair(doc, args.cocycle, args.pair)
    c = doc.cocycle(args.cocycle).cocycle
    result = act(pair, c, doc.transform(args.transform))
    _emit_cocycle(pname, pair, result, f"{args.cocycle}_act", args.output, report)


def cmd_pullback(args, report: Report) -> None:
    doc = read_mla(args.file)
    mor = doc.morphism(args.morphism)
    c = doc.cocycle(args.cocycle).cocycle
    result = pullback(mor, c)
    source = doc.witness(args.morphism).source
    _emit_cocycle(source, mor.source, result, f"{args.cocycle}_pullback", args.output, report)


def cmd_verify_equivalence(args, report: Report) -> None:
    doc = read_mla(args.file)
    _, pair = _cocycle_pair(doc, args.c1, args.pair)
    c1, c2 = doc.cocycle(args.c1).cocycle, doc.cocycle(args.c2).cocycle
    w = doc.witness(args.witness)
    t = w.transform
    if t is None:
        t = TransformPair.identity(pair.n, pair.a_dim)
    ok = verify_equivalence(pair, c1, c2, EquivalenceWitness(t))
    report.check(ok, "equivalence", args.c1, args.c2,
                 detail="" if ok else f"{args.c1} is not {args.c2} acted on by the witness")


def cmd_verify_isomorphism(args, report: Report) -> None:
    doc = read_mla(args.file)
    mor = doc.morphism(args.witness)
    c1, c2 = doc.cocycle(args.c1).cocycle, doc.cocycle(args.c2).cocycle
    t = doc.witness(args.witness).transform
    ok = verify_isomorphism(mor.source, c1, mor.target, c2, IsomorphismWitness(mor, t))
    report.check(ok, "isomorphism", args.c1, args.c2,
                 detail="" if ok else "witness does not relate the cocycles")


def entry_document(e: cat.CatalogEntry, with_model: bool = True) -> MlaDocument:
    """Pair, cocycle and (optionally) the standard model with its metric and derivation."""
    out = DocumentBuilder()
    p = out.pair("P", e.pair)
    out.cocycle("c", e.cocycle, p)
    if with_model:
        sm = build_standard_model(e.pair, e.cocycle)
        g = sm.model.algebra
        labelled = LieAlgebra(g.dim, g.structure, model_labels(sm.n, sm.m))
        alg = out.algebra("d", labelled)
        out.metric("g", alg, sm.model.gram)
        out.derivation("D", alg, sm.derivation)
    return out.doc


def cmd_emit(args, report: Report) -> None:
    entry = cat.instantiate(args.family, cat.parse_params(args.params))
    text = f"# {entry.name}\n" + emit_mla(entry_document(entry, not args.no_model))
    _write(text, args.output, report)


def cmd_verify_catalog(args, report: Report) -> None:
    for entry in cat.default_entries(args.family):
        for line in cat.verify_entry(entry):
            report.check(line.ok, line.entry, line.check, detail=line.detail)
        for line in cat.seeded_checks(entry, args.seed):
            report.check(line.ok, line.entry, line.check, detail=line.detail)


def cmd_emptiness(args, report: Report) -> None:
    res = cat.emptiness_suite(args.l, args.samples, args.seed)
    report.check(res.ok, f"emptiness-{res.choice.value}", "balanced",
                 detail=f"{res.balanced}/{res.samples}")
    report.info(f"INFO emptiness-{res.choice.value} seed {res.seed} "
                f"nonzero-cocycles {res.nonzero_cocycles} nonzero-alpha {res.nonzero_alpha}")


# ---------------------------------------------------------------- argument parsing

def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mslaw",
        description="Metric symplectic Lie algebras as quadratic extensions: exact checks.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name: str, fn: Callable, help_text: str, file: bool = True):
        p = sub.add_parser(name, help=help_text, description=help_text)
        if file:
            p.add_argument("file", metavar="FILE", help=".mla input file")
        p.set_defaults(func=fn)
        return p

    p = add("check-lie", cmd_check_lie, "check the Jacobi identity of algebras")
    p.add_argument("--name", help="only this algebra")
    p = add("check-metric", cmd_check_metric, "check metrics: symmetric, nondegenerate, ad-invariant")
    p.add_argument("--name", help="only this metric")
    p = add("check-derivation", cmd_check_derivation, "check a derivation (and skewness per metric)")
    p.add_argument("--name", required=True)
    p = add("jordan", cmd_jordan, "print the semisimple and nilpotent parts of a derivation")
    p.add_argument("--name", required=True)
    p = add("ideal", cmd_ideal, "print a basis of the canonical isotropic ideal")
    p.add_argument("--metric", help="only this metric")
    p = add("signature", cmd_signature, "print the signature of a metric")
    p.add_argument("--metric", required=True)
    p = add("standard-model", cmd_standard_model, "build the standard model of a cocycle")
    p.add_argument("--pair")
    p.add_argument("--cocycle", required=True)
    p.add_argument("-o", "--output")
    p = add("check-cocycle", cmd_check_cocycle, "check a quadratic cocycle")
    p.add_argument("--pair")
    p.add_argument("--cocycle", required=True)
    p.add_argument("--balanced", action="store_true", help="also check the balanced conditions")
    p = add("act", cmd_act, "apply a transform (tau, sigma) to a cocycle")
    p.add_argument("--pair")
    p.add_argument("--cocycle", required=True)
    p.add_argument("--transform", required=True, help="witness holding tau and sigma")
    p.add_argument("-o", "--output")
    p = add("pullback", cmd_pullback, "pull a cocycle back along a morphism of pairs")
    p.add_argument("--cocycle", required=True)
    p.add_argument("--morphism", required=True, help="witness holding S, U, source, target")
    p.add_argument("-o", "--output")
    p = add("verify-equivalence", cmd_verify_equivalence, "check c1 = c2 . (tau, sigma)")
    p.add_argument("--pair")
    p.add_argument("--c1", required=True)
    p.add_argument("--c2", required=True)
    p.add_argument("--witness", required=True)
    p = add("verify-isomorphism", cmd_verify_isomorphism,
            "check c1 = ((S,U)^* c2) . (tau, sigma) for balanced cocycles")
    p.add_argument("--c1", required=True)
    p.add_argument("--c2", required=True)
    p.add_argument("--witness", required=True)
    p = add("emit", cmd_emit, "write a catalog entry as an .mla document", file=False)
    p.add_argument("--family", required=True, help="family id, e.g. dim6-diag")
    p.add_argument("--params", help="comma-separated name=value bindings, e.g. a=-3,b=1,c=2")
    p.add_argument("--no-model", action="store_true", help="omit the standard model sections")
    p.add_argument("-o", "--output")
    p = add("verify-catalog", cmd_verify_catalog, "run the full pipeline on catalog entries",
            file=False)
    p.add_argument("--family", help="family id or glob, e.g. 'dim6-*'")
    p.add_argument("--seed", type=int, default=1)
    p = add("emptiness", cmd_emptiness, "sample cocycles and count balanced ones", file=False)
    p.add_argument("--l", required=True, choices=["r1", "r2", "h3"])
    p.add_argument("--samples", type=_positive, default=100)
    p.add_argument("--seed", type=int, default=1)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    report = Report()
    try:
        args.func(args, report)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        report.check(False, args.command, detail=str(exc))
    return report.code


if __name__ == "__main__":
    sys.exit(main())
