"""Command-line entry point: ``ramseycert <command> ...``.

Exit codes: 0 all requested checks passed, 1 a colouring violates its
target (witnesses are printed), 2 a search ran out of budget, 3 usage or
input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

from . import catalog
from .catalog import CertFile, ParseError, certificate_file, format_cert
from .clique import Undecided
from .constructions import (
    DOUBLING_CANDIDATES,
    BandSpec,
    GateFailure,
    compound,
    cyclify,
    extend_linear,
    gapped_cyclify,
    mathon_double,
    neighborhood_clique_numbers,
    paley,
    quadruple,
)
from .core import MODES, ColoringError, DistanceColoring, KVector, color_degree
from .search import SearchConfig, exhaustive_nonexistence, search
from .verifier import SATISFIED, UNDECIDED, VIOLATED, Certificate, verify

OK, VIOLATED_EXIT, UNDECIDED_EXIT, USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class CommandOutcome:
    code: int
    report: dict[str, Any]
    text: str = ""
    paths: list[str] = field(default_factory=list)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with 2
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


# --- helpers -------------------------------------------------------------

def _kvec(text: str) -> KVector:
    try:
        return KVector.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _budget(text: str) -> int:
    try:
        return int(float(text))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad budget {text!r}") from None


def _min_dist(text: str) -> tuple[int, int]:
    try:
        s, d = text.split(":")
        return int(s), int(d)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected colour:length, got {text!r}") from None


def _load_cert(path: str) -> CertFile:
    p = Path(path)
    if not p.exists():
        try:
            return catalog.bundled(path)  # type: ignore[return-value]
        except FileNotFoundError:
            raise UsageError(f"no such file: {path}") from None
    return catalog.load_cert(p)


def _load_band(path: str) -> BandSpec:
    p = Path(path)
    spec = catalog.load(p) if p.exists() else catalog.bundled(path)
    if not isinstance(spec, BandSpec):
        raise UsageError(f"{path} is not a band spec")
    return spec


def _target(args: argparse.Namespace, cf: CertFile | None = None) -> KVector | None:
    if getattr(args, "avoid", None) is not None:
        return args.avoid
    return cf.avoid if cf is not None else None


def _cert_report(cert: Certificate) -> dict[str, Any]:
    c = cert.coloring
    rep: dict[str, Any] = {
        "order": c.order,
        "mode": c.mode,
        "colors": c.num_colors,
        "clique_numbers": list(cert.clique_numbers),
        "status": cert.status,
        "provenance": list(cert.provenance),
    }
    if cert.claimed is not None:
        rep["avoid"] = list(cert.claimed)
        if cert.satisfied:
            rep["lower_bound"] = f"R({cert.claimed}) >= {c.order + 1}"
    if cert.status == UNDECIDED:
        rep["clique_lower_bounds"] = list(cert.lower_bounds)
    viol = cert.violations()
    if viol:
        rep["witnesses"] = [{"color": s, "vertices": list(w)} for s, w in viol]
    return rep


def _code(status: str) -> int:
    return {SATISFIED: OK, VIOLATED: VIOLATED_EXIT, UNDECIDED: UNDECIDED_EXIT}[status]


def _text(rep: dict[str, Any]) -> str:
    lines = []
    for key, val in rep.items():
        if key == "witnesses":
            for w in val:
                lines.append(f"witness: colour {w['color']} clique on vertices "
                             + " ".join(map(str, w["vertices"])))
        elif key == "certificate":
            continue
        elif isinstance(val, list):
            lines.append(f"{key}: " + " ".join("?" if v is None else str(v) for v in val))
        else:
            lines.append(f"{key}: {val}")
    return "\n".join(lines)


def _emit_cert(cert: Certificate, args: argparse.Namespace, out: CommandOutcome) -> None:
    cf = certificate_file(cert)
    if getattr(args, "out", None):
        catalog.save(cf, args.out)
        out.paths.append(args.out)
        out.report["written"] = args.out
    else:
        out.report["certificate"] = format_cert(cf)


def _from_cert(cert: Certificate, args: argparse.Namespace) -> CommandOutcome:
    rep = _cert_report(cert)
    out = CommandOutcome(_code(cert.status), rep)
    if cert.satisfied or cert.claimed is None and cert.status != UNDECIDED:
        _emit_cert(cert, args, out)
    return out


def _gate_failure(exc: GateFailure) -> CommandOutcome:
    rep: dict[str, Any] = {"error": str(exc), "tried": list(exc.tried)}
    if exc.certificate is not None:
        rep.update(_cert_report(exc.certificate))
    code = UNDECIDED_EXIT if exc.undecided else VIOLATED_EXIT
    return CommandOutcome(code, rep)


# --- commands ------------------------------------------------------------

def cmd_verify(args: argparse.Namespace) -> CommandOutcome:
    cf = _load_cert(args.file)
    cert = verify(cf.coloring, _target(args, cf), budget=args.budget, workers=args.threads,
                  provenance=tuple(cf.provenance))
    rep = _cert_report(cert)
    if cf.verified is not None and None not in cert.clique_numbers \
            and tuple(cert.clique_numbers) != cf.verified:
        rep["recorded_mismatch"] = f"file records {cf.verified}"
    return CommandOutcome(_code(cert.status), rep)


def cmd_clique_number(args: argparse.Namespace) -> CommandOutcome:
    cf = _load_cert(args.file)
    cert = verify(cf.coloring, None, budget=args.budget, workers=args.threads)
    nums = list(cert.clique_numbers)
    rep: dict[str, Any] = {"order": cf.coloring.order}
    if args.color is not None:
        if not 1 <= args.color <= cf.coloring.num_colors:
            raise UsageError(f"colour {args.color} not in 1..{cf.coloring.num_colors}")
        rep["color"] = args.color
        rep["clique_number"] = nums[args.color - 1]
        rep["witness"] = list(cert.witnesses.get(args.color, ()))
        undecided = nums[args.color - 1] is None
    else:
        rep["clique_numbers"] = nums
        undecided = None in nums
    return CommandOutcome(UNDECIDED_EXIT if undecided else OK, rep)


def _trusted(c: DistanceColoring, args: argparse.Namespace, step: str,
             derived: KVector | None = None) -> CommandOutcome:
    target = _target(args) or derived
    cert = verify(c, target, budget=args.budget, workers=args.threads, provenance=(step,))
    return _from_cert(cert, args)


def _plus_triangle(k: KVector | None) -> KVector | None:
    # the band colour added by extension is triangle-free
    return None if k is None else KVector(tuple(k) + (3,))


def cmd_construct(args: argparse.Namespace) -> CommandOutcome:
    kind = args.kind
    try:
        if kind == "paley":
            return _trusted(paley(args.q), args, f"paley({args.q})")
        if kind == "neighborhood":
            cf = _load_cert(args.input)
            order, nums = neighborhood_clique_numbers(cf.coloring, args.color, args.vertex,
                                                      budget=args.budget)
            rep = {"order": order, "color": args.color, "vertex": args.vertex,
                   "degree": color_degree(cf.coloring, args.color), "clique_numbers": list(nums)}
            code = UNDECIDED_EXIT if None in nums else OK
            if args.avoid is not None and code == OK:
                if len(args.avoid) != len(nums):
                    raise UsageError("--avoid length differs from colour count")
                bad = [s for s, (w, k) in enumerate(zip(nums, args.avoid), 1) if w >= k]
                rep["status"] = VIOLATED if bad else SATISFIED
                code = VIOLATED_EXIT if bad else OK
            return CommandOutcome(code, rep)
        cf = _load_cert(args.input)
        if kind == "extend":
            return _trusted(extend_linear(cf.coloring), args, f"extend({args.input})",
                            _plus_triangle(cf.avoid))
        if kind == "cyclify":
            return _trusted(cyclify(cf.coloring), args, f"cyclify({args.input})",
                            _plus_triangle(cf.avoid))
        if kind == "compound":
            other = _load_cert(args.with_)
            both = (KVector(tuple(cf.avoid) + tuple(other.avoid))
                    if cf.avoid is not None and other.avoid is not None else None)
            return _trusted(compound(cf.coloring, other.coloring), args,
                            f"compound({args.input}, {args.with_})", both)
        target = _target(args)
        if target is None:
            raise UsageError(f"construct {kind} needs --avoid")
        if kind == "gapped":
            cert = gapped_cyclify(cf.coloring, _load_band(args.band), target, budget=args.budget)
        elif kind == "double":
            cert = mathon_double(cf.coloring, target, candidates=args.candidate, budget=args.budget)
        else:
            exp = None
            if args.expect_degree:
                exp = _min_dist(args.expect_degree)
            cert = quadruple(cf.coloring, args.variant, target, own=args.own or cf.avoid,
                             candidates=args.candidate, budget=args.budget, expect_degree=exp)
        return _from_cert(cert.with_provenance(f"from {args.input}"), args)
    except GateFailure as exc:
        return _gate_failure(exc)


def cmd_search(args: argparse.Namespace) -> CommandOutcome:
    seed = _load_cert(args.seed).coloring if args.seed else None
    cfg = SearchConfig(args.order, args.mode, args.avoid, dict(args.min_dist or []),
                       args.max_solutions, args.budget, seed,
                       symmetry_breaking=not args.no_symmetry,
                       forward_check=args.forward_check)
    run = search(cfg)
    sols = []
    for i, cert in enumerate(run):
        entry = {"classes": {str(s): sorted(ls) for s, ls in cert.coloring.classes.items()},
                 "clique_numbers": list(cert.clique_numbers)}
        if args.out_dir:
            Path(args.out_dir).mkdir(parents=True, exist_ok=True)
            path = str(Path(args.out_dir) / f"solution_{i + 1}.cert")
            catalog.save(certificate_file(cert), path)
            entry["path"] = path
        sols.append(entry)
    st = run.stats
    rep = {"solutions": sols, "nodes": st.nodes, "exhaustive": st.exhaustive,
           "budget_exhausted": st.budget_exhausted,
           "symmetry_classes": [list(c) for c in st.symmetry_classes],
           "summary": st.summary()}
    code = UNDECIDED_EXIT if st.budget_exhausted and not sols else OK
    out = CommandOutcome(code, rep, paths=[s["path"] for s in sols if "path" in s])
    return out


def cmd_nonexist(args: argparse.Namespace) -> CommandOutcome:
    cfg = SearchConfig(args.order, args.mode, args.avoid, node_budget=args.budget,
                       symmetry_breaking=not args.no_symmetry)
    try:
        proven = exhaustive_nonexistence(cfg)
    except Undecided as exc:
        return CommandOutcome(UNDECIDED_EXIT, {"result": "undecided", "nodes": exc.nodes})
    if proven:
        return CommandOutcome(OK, {"result": "none exists",
                                   "statement": f"no {args.mode} colouring of K_{args.order} "
                                                f"avoids ({args.avoid})"})
    cert = next(iter(search(SearchConfig(args.order, args.mode, args.avoid, max_solutions=1))))
    rep = {"result": "exists",
           "example": {str(s): sorted(ls) for s, ls in cert.coloring.classes.items()}}
    return CommandOutcome(VIOLATED_EXIT, rep)


def cmd_ledger(args: argparse.Namespace) -> CommandOutcome:
    records = catalog.default_records()
    chain = catalog.derive_bound_chain(records, args.depth)
    rep = {
        "chain": [{"kvector": list(st.record.kvector), "order": st.record.order,
                   "lower_bound": st.record.lower_bound, "step": st.step,
                   "provenance": st.record.provenance,
                   "growth_factor": st.record.growth_factor,
                   "text": st.describe()} for st in chain],
        "tables": catalog.reconstructed_tables(records, args.depth),
    }
    text = "\n".join(st.describe() for st in chain) + "\n\n" + rep["tables"]
    return CommandOutcome(OK, rep, text)


def cmd_export(args: argparse.Namespace) -> CommandOutcome:
    cf = _load_cert(args.file)
    c = cf.coloring
    t = c.table
    lines = [f"{u} {v} {t[v - u]}" for u in range(c.order) for v in range(u + 1, c.order)]
    body = "\n".join(lines) + ("\n" if lines else "")
    rep: dict[str, Any] = {"order": c.order, "edges": len(lines), "format": args.format}
    if args.out:
        catalog._atomic_write(args.out, body)
        rep["written"] = args.out
        return CommandOutcome(OK, rep, paths=[args.out])
    return CommandOutcome(OK, rep, body.rstrip("\n"))


# --- parser --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ramseycert", description="Verify, build and search distance colourings.")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.add_argument("--threads", type=int, default=1, help="worker processes for verification")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp: argparse.ArgumentParser, avoid: bool = True) -> None:
        if avoid:
            sp.add_argument("--avoid", type=_kvec, help="k-vector, e.g. 3,3,4,4")
        sp.add_argument("--budget", type=_budget, help="node budget (e.g. 1e9)")

    sp = sub.add_parser("verify", help="check a certificate against a k-vector")
    sp.add_argument("file")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("clique-number", help="per-colour clique numbers")
    sp.add_argument("file")
    sp.add_argument("--color", type=int)
    common(sp, avoid=False)
    sp.set_defaults(func=cmd_clique_number)

    sp = sub.add_parser("construct", help="build a colouring")
    csub = sp.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    for kind in ("extend", "cyclify", "gapped", "compound", "double", "quadruple", "neighborhood"):
        cp = csub.add_parser(kind)
        cp.add_argument("--in", dest="input", required=True)
        cp.add_argument("--out")
        common(cp)
        cp.set_defaults(func=cmd_construct)
        if kind == "gapped":
            cp.add_argument("--band", required=True)
        elif kind == "compound":
            cp.add_argument("--with", dest="with_", required=True)
        elif kind == "double":
            cp.add_argument("--candidate", action="append", choices=sorted(DOUBLING_CANDIDATES))
        elif kind == "quadruple":
            cp.add_argument("--variant", choices=("cor3", "cor5"), required=True)
            cp.add_argument("--own", type=_kvec, help="k-vector of the prototype")
            cp.add_argument("--candidate", action="append")
            cp.add_argument("--expect-degree", help="colour:degree check before verification")
        elif kind == "neighborhood":
            cp.add_argument("--color", type=int, required=True)
            cp.add_argument("--vertex", type=int, default=0)
    cp = csub.add_parser("paley")
    cp.add_argument("--q", type=int, required=True)
    cp.add_argument("--out")
    common(cp)
    cp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("search", help="depth-first search for colourings")
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--mode", choices=MODES, default="cyclic")
    sp.add_argument("--avoid", type=_kvec, required=True)
    sp.add_argument("--min-dist", type=_min_dist, action="append", help="colour:length")
    sp.add_argument("--seed", help="certificate with a partial colouring")
    sp.add_argument("--budget", type=_budget)
    sp.add_argument("--max-solutions", type=int, default=1)
    sp.add_argument("--out-dir")
    sp.add_argument("--no-symmetry", action="store_true")
    sp.add_argument("--forward-check", action="store_true")
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("nonexist", help="prove no colouring exists by exhaustion")
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--mode", choices=MODES, default="cyclic")
    sp.add_argument("--avoid", type=_kvec, required=True)
    sp.add_argument("--budget", type=_budget)
    sp.add_argument("--no-symmetry", action="store_true")
    sp.set_defaults(func=cmd_nonexist)

    sp = sub.add_parser("ledger", help="bounds implied by the bundled certificates")
    sp.add_argument("--depth", type=int, default=1)
    sp.set_defaults(func=cmd_ledger)

    sp = sub.add_parser("export", help="write a certificate as an edge list")
    sp.add_argument("file")
    sp.add_argument("--format", choices=("edge-list",), default="edge-list")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_export)
    return p


def run(argv: Sequence[str] | None = None) -> CommandOutcome:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.threads < 1:
            raise UsageError("--threads must be at least 1")
        out = args.func(args)
    except UsageError as exc:
        return CommandOutcome(USAGE, {"error": str(exc)})
    except (ParseError, ColoringError, ValueError, FileNotFoundError) as exc:
        return CommandOutcome(USAGE, {"error": str(exc)})
    out.report["exit_code"] = out.code
    if args.json:
        out.text = json.dumps(out.report, indent=2, sort_keys=False)
    elif not out.text:
        out.text = _text(out.report)
        if "certificate" in out.report:
            out.text += "\n" + out.report["certificate"].rstrip("\n")
    return out


def main(argv: Sequence[str] | None = None) -> int:
    out = run(argv)
    if not out.text:
        # usage errors go to stderr
        print(out.report.get("error", ""), file=sys.stderr)
    else:
        print(out.text)
    return out.code


if __name__ == "__main__":
    sys.exit(main())
