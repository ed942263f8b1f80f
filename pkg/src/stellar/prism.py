"""Prisms, cones and greedy free-face collapsing."""
from __future__ import annotations

from dataclasses import dataclass

from .complex import Complex, faces_of, join, require_uniform


def prism(K: Complex) -> Complex:
    """Combinatorial cylinder ``K x I`` built from staircase simplexes.

    Vertex ``v`` gets the copy ``j_v = max(V) + 1 + rank(v)``; a generator
    ``(i_1 .. i_r)`` contributes ``(i_1 .. i_k j_{i_k} .. j_{i_r})`` for each ``k``.
    """
    require_uniform(K, "prism")
    verts = K.vertices
    if not verts:
        return Complex()
    base = max(verts) + 1
    copy = {v: base + r for r, v in enumerate(verts)}
    out = set()
    for g in K.generators:
        for k in range(1, len(g) + 1):
            out.add(tuple(sorted(g[:k] + tuple(copy[v] for v in g[k - 1:]))))
    return Complex._raw(out)


def prism_copy(K: Complex) -> dict:
    """The vertex map ``v -> j_v`` used by :func:`prism`."""
    verts = K.vertices
    base = max(verts) + 1 if verts else 0
    return {v: base + r for r, v in enumerate(verts)}


def cone(a: int, K: Complex) -> Complex:
    if not K or K.generators == frozenset({()}):
        return Complex([(a,)])
    return join(Complex([(a,)]), K)


@dataclass
class CollapseResult:
    residue: object  # Complex, or a sorted list of quotient cells
    steps: list  # (free face, maximal cell) in removal order
    collapsible: bool


def _poset_of(K):
    """``(faces, dims, key)`` for a complex or a quotient cell structure."""
    if isinstance(K, Complex):
        cells = K.faces()
        faces = {c: frozenset(f for f in faces_of(c) if len(f) < len(c)) for c in cells}
        dims = {c: len(c) - 1 for c in cells}
        return faces, dims
    faces = K.face_poset()
    dims = {c: c[0] for c in faces}
    return faces, dims


def free_face_collapse(K) -> CollapseResult:
    """Greedily remove free faces with everything above them.

    A face is free when it is not maximal and lies in exactly one maximal
    cell.  Among all (free face, maximal cell) choices the highest maximal
    cell is preferred, then the smallest codimension, then the smallest
    label, so the step log is reproducible.  Works on a :class:`Complex` or on
    a quotient cell structure (anything with ``face_poset()``).
    """
    faces, dims = _poset_of(K)
    alive = set(faces)
    cofaces = {c: set() for c in faces}
    for c, fs in faces.items():
        for f in fs:
            cofaces[f].add(c)
    steps = []
    while True:
        maximal = {c for c in alive if not (cofaces[c] & alive)}
        best = None
        for sigma in alive - maximal:
            above = [t for t in maximal if sigma in faces[t]]
            if len(above) != 1:
                continue
            tau = above[0]
            key = (-dims[tau], dims[tau] - dims[sigma], sigma, tau)
            if best is None or key < best[0]:
                best = (key, sigma, tau)
        if best is None:
            break
        _, sigma, tau = best
        alive -= {c for c in cofaces[sigma] if c in alive} | {sigma}
        steps.append((sigma, tau))
    collapsible = len(alive) == 1 and dims[next(iter(alive))] == 0
    if isinstance(K, Complex):
        top = {c for c in alive if not (cofaces[c] & alive)}
        residue = Complex._raw(top)
    else:
        residue = sorted(alive)
    return CollapseResult(residue, steps, collapsible)
