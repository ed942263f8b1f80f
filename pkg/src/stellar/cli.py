"""Command line interface.  Every command prints one JSON report.

Exit codes: 0 success (including negative verdicts), 1 bad input,
2 internal invariant violation.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import coxeter as cx
from .complex import euler, format_simplex, is_closed
from .errors import InvariantViolation, StellarError, StructureError
from .io import (
    check_document,
    document_structure,
    emit_complex,
    emit_script,
    emit_structure,
    parse_document,
    parse_script,
)
from .moves import apply_script, bounded_equivalence_search
from .prism import free_face_collapse, prism
from .recognition import is_stellar_manifold
from .structure import build_structure, quotient_counts, verify_euler_relation


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise StellarError(f"cannot read {path}: {exc.strerror}") from None


def _complex(path: str):
    doc = parse_document(_read(path))
    if not doc.complex:
        raise StellarError(f"{path}: no simplex lines")
    return doc


def _gens(K):
    return [list(g) for g in K]


def cmd_check(args):
    doc = _complex(args.file)
    K = doc.complex
    report = {"uniform": K.is_uniform, "dim": K.dim, "closed": is_closed(K)}
    verdict = is_stellar_manifold(K)
    report["manifold"] = verdict.verdict
    report["links"] = {str(v): kind for v, kind in sorted(verdict.links.items())}
    if doc.has_structure:
        problems = check_document(doc)
        report["regular"] = not problems
        report["violations"] = problems
    return report


def cmd_euler(args):
    K = _complex(args.file).complex
    return {"euler": euler(K), "f_vector": K.f_vector()}


def cmd_structure(args):
    M = _complex(args.file).complex
    st = build_structure(M, check=True)
    counts = quotient_counts(st)
    report = {
        "apex": st.apex,
        "sphere_facets": len(st.facets),
        "closed": st.is_closed,
        "vertex_classes": [list(c) for c in st.equiv.vertex_classes],
        "facet_pairs": len(st.equiv.facet_pairs),
        "h": list(counts.h),
        "s": list(counts.s),
        "q": None if counts.q is None else list(counts.q),
    }
    if is_closed(M):
        check = verify_euler_relation(M, st)
        report["euler_relation"] = {
            "ok": check.ok,
            "chi_manifold": check.chi_manifold,
            "chi_quotient": check.chi_quotient,
            "expected": check.expected_quotient,
        }
        if not check.ok:
            raise InvariantViolation("Euler relation failed on a built structure")
    if args.output:
        Path(args.output).write_text(emit_structure(st), encoding="utf-8")
        report["output"] = args.output
    return report


def cmd_coxeter(args):
    doc = parse_document(_read(args.file))
    problems = check_document(doc)
    if problems:
        raise StructureError("; ".join(problems))
    st = document_structure(doc)
    if not st.is_closed:
        raise StructureError(f"structure is not closed: facet {format_simplex(st.unpaired[0])} is unpaired")
    report = cx.coxeter_report(st)
    if args.dot:
        Path(args.dot).write_text(cx.diagram_dot(report.matrix), encoding="utf-8")
    return report.to_dict()


def cmd_moves(args):
    K = _complex(args.file).complex
    script = parse_script(_read(args.script))
    result = apply_script(K, script)
    return {"moves": len(script), "result": _gens(result), "text": emit_complex(result)}


def cmd_equiv(args):
    K = _complex(args.file1).complex
    L = _complex(args.file2).complex
    res = bounded_equivalence_search(K, L, max_nodes=args.max_nodes, max_vertices=args.max_vertices)
    return {
        "verdict": res.verdict,
        "nodes": res.nodes,
        "script": emit_script(res.script).splitlines() if res.equivalent else None,
    }


def cmd_prism(args):
    K = _complex(args.file).complex
    P = prism(K)
    return {"generators": _gens(P), "euler": euler(P), "text": emit_complex(P)}


def cmd_collapse(args):
    doc = parse_document(_read(args.file))
    if doc.has_structure:
        st = document_structure(doc)
        target = st.quotient
    else:
        target = doc.complex
        if not target:
            raise StellarError(f"{args.file}: no simplex lines")
    res = free_face_collapse(target)
    residue = res.residue
    return {
        "collapsible": res.collapsible,
        "steps": len(res.steps),
        "residue": _gens(residue) if hasattr(residue, "generators") else [list(c) for c in residue],
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stellar", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="uniformity, closedness, manifold verdict")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("euler", help="Euler characteristic and face vector")
    p.add_argument("file")
    p.set_defaults(func=cmd_euler)

    p = sub.add_parser("structure", help="build the stellar structure of a manifold")
    p.add_argument("file")
    p.add_argument("-o", "--output", help="write the structure (.sst) here")
    p.set_defaults(func=cmd_structure)

    p = sub.add_parser("coxeter", help="Coxeter analysis of a closed structure")
    p.add_argument("file")
    p.add_argument("--dot", help="write the diagram in DOT format here")
    p.set_defaults(func=cmd_coxeter)

    p = sub.add_parser("moves", help="apply a move script")
    p.add_argument("file")
    p.add_argument("script")
    p.set_defaults(func=cmd_moves)

    p = sub.add_parser("equiv", help="bounded stellar equivalence search")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--max-nodes", type=int, default=10_000)
    p.add_argument("--max-vertices", type=int, default=None)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("prism", help="prism over a complex")
    p.add_argument("file")
    p.set_defaults(func=cmd_prism)

    p = sub.add_parser("collapse", help="greedy free-face collapse (of S/~ for structure files)")
    p.add_argument("file")
    p.set_defaults(func=cmd_collapse)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = args.func(args)
    except StellarError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 1
    except InvariantViolation as exc:
        print(json.dumps({"invariant_violation": str(exc)}), file=sys.stderr)
        return 2
    print(json.dumps(report, indent=2))
    return 0


if __name__ == "__main__":
    sys.exit(main())
