"""Text formats for complexes, structures (``.sst``) and move scripts.

Complex / structure lines, ``#`` starts a comment::

    dim 2
    simplex 1 2 4
    vequiv 4 5
    gequiv 1 2 4 | 1 2 5
    apex 6
    source 1 2 3        # generator of the original complex (structures only)
    origin 7 4          # sphere vertex 7 came from vertex 4 of the source

Script lines: ``SUB a : v1 .. vk``, ``WELD a : v1 .. vk``, ``RELABEL x->y,...``.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .complex import Complex, simplex
from .errors import ParseError, StructureError
from .moves import Move
from .structure import RegularEquivalence, StellarStructure, structure_from, validate_regular


@dataclass
class Document:
    complex: Complex
    dim: int | None = None
    vertex_merges: list = field(default_factory=list)
    facet_pairs: list = field(default_factory=list)
    apex: int | None = None
    source: Complex | None = None
    origin: list = field(default_factory=list)

    @property
    def has_structure(self) -> bool:
        return bool(self.vertex_merges or self.facet_pairs or self.apex is not None)


def _ints(tokens, lineno):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def _simplex(tokens, lineno):
    try:
        return simplex(_ints(tokens, lineno))
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc), lineno) from None


def parse_document(text: str) -> Document:
    gens, source = set(), set()
    doc = Document(Complex())
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "dim":
            if len(rest) != 1:
                raise ParseError("dim takes one integer", lineno)
            doc.dim = _ints(rest, lineno)[0]
        elif head in ("simplex", "source"):
            s = _simplex(rest, lineno)
            target = gens if head == "simplex" else source
            if s in target:
                warnings.warn(f"line {lineno}: repeated {head} {rest} cancels (Z2 sum)")
            target ^= {s}
        elif head == "vequiv":
            if len(rest) != 2:
                raise ParseError("vequiv takes two vertices", lineno)
            doc.vertex_merges.append(tuple(_ints(rest, lineno)))
        elif head == "gequiv":
            if rest.count("|") != 1:
                raise ParseError("gequiv needs exactly one '|'", lineno)
            k = rest.index("|")
            left, right = rest[:k], rest[k + 1:]
            if len(left) != len(right) or not left:
                raise ParseError(f"gequiv arity mismatch: {len(left)} vs {len(right)}", lineno)
            doc.facet_pairs.append((_simplex(left, lineno), _simplex(right, lineno)))
        elif head == "apex":
            if len(rest) != 1:
                raise ParseError("apex takes one vertex", lineno)
            doc.apex = _ints(rest, lineno)[0]
        elif head == "origin":
            if len(rest) != 2:
                raise ParseError("origin takes two vertices", lineno)
            doc.origin.append(tuple(_ints(rest, lineno)))
        else:
            raise ParseError(f"unknown keyword {head!r}", lineno)
    doc.complex = Complex._raw(gens)
    if source:
        doc.source = Complex._raw(source)
    if doc.dim is not None and doc.complex and doc.complex.dim != doc.dim:
        raise ParseError(f"declared dim {doc.dim} but generators have dimension {doc.complex.dim}")
    if doc.complex and not doc.complex.is_uniform:
        raise ParseError("generators have mixed dimensions")
    return doc


def parse_complex(text: str) -> Complex:
    return parse_document(text).complex


def emit_complex(K: Complex) -> str:
    lines = []
    if K.dim is not None:
        lines.append(f"dim {K.dim}")
    lines += ["simplex " + " ".join(map(str, g)) for g in K]
    return "\n".join(lines) + "\n"


def document_structure(doc: Document) -> StellarStructure:
    """Structure described by a document; raises on non-regular data."""
    if not doc.complex:
        raise StructureError("no simplex lines")
    equiv = RegularEquivalence.build(doc.vertex_merges, doc.facet_pairs)
    st = structure_from(doc.complex, equiv, doc.apex)
    if doc.source is None and not doc.origin:
        return st
    return StellarStructure(
        apex=st.apex, sphere=st.sphere, equiv=st.equiv,
        source=doc.source, origin=tuple(sorted(doc.origin)),
    )


def parse_structure(text: str) -> StellarStructure:
    return document_structure(parse_document(text))


def emit_structure(st: StellarStructure) -> str:
    lines = [f"dim {st.dim}", f"apex {st.apex}"]
    lines += ["simplex " + " ".join(map(str, g)) for g in st.facets]
    for c in st.equiv.vertex_classes:
        lines += [f"vequiv {c[0]} {v}" for v in c[1:]]
    for g, p in st.equiv.facet_pairs:
        corr = st.equiv.correspondence(g, p)
        lines.append(
            "gequiv " + " ".join(map(str, g)) + " | " + " ".join(str(corr[v]) for v in g)
        )
    if st.source is not None:
        lines += ["source " + " ".join(map(str, g)) for g in st.source]
    lines += [f"origin {v} {w}" for v, w in st.origin]
    return "\n".join(lines) + "\n"


def check_document(doc: Document) -> list:
    equiv = RegularEquivalence.build(doc.vertex_merges, doc.facet_pairs)
    return validate_regular(doc.complex, equiv)


# --- scripts ----------------------------------------------------------------

def parse_script(text: str) -> list:
    moves = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        head = head.upper()
        if head in ("SUB", "WELD"):
            label, colon, verts = rest.partition(":")
            if not colon:
                raise ParseError(f"{head} needs 'label : vertices'", lineno)
            labels = _ints(label.split(), lineno)
            if len(labels) != 1:
                raise ParseError("expected exactly one label before ':'", lineno)
            a = labels[0]
            A = _simplex(verts.split(), lineno)
            moves.append(Move.subdivide(A, a) if head == "SUB" else Move.weld(A, a))
        elif head == "RELABEL":
            mapping = {}
            for item in filter(None, (x.strip() for x in rest.split(","))):
                src, arrow, dst = item.partition("->")
                if not arrow:
                    raise ParseError(f"bad relabel item {item!r}", lineno)
                x, y = _ints([src.strip(), dst.strip()], lineno)
                mapping[x] = y
            moves.append(Move.relabel(mapping))
        else:
            raise ParseError(f"unknown move {head!r}", lineno)
    return moves


def emit_script(moves) -> str:
    return "".join(f"{m}\n" for m in moves)
