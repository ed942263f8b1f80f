"""Stellar moves: subdivision, weld, relabeling, scripts and move search."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping

from .complex import (
    Complex,
    canonical_labeling,
    format_simplex,
    join,
    link,
    require_uniform,
    simplex,
    simplex_boundary,
)
from .errors import InvariantViolation, MoveError, StellarError, WeldError


@dataclass(frozen=True)
class Move:
    kind: str  # "subdivide" | "weld" | "relabel"
    simplex: tuple = ()
    label: int | None = None
    mapping: tuple = ()  # sorted (old, new) pairs for relabel

    @classmethod
    def subdivide(cls, A, a):
        return cls("subdivide", simplex(A), int(a))

    @classmethod
    def weld(cls, A, a):
        return cls("weld", simplex(A), int(a))

    @classmethod
    def relabel(cls, mapping: Mapping[int, int]):
        return cls("relabel", mapping=tuple(sorted((int(k), int(v)) for k, v in mapping.items())))

    def inverse(self) -> "Move":
        if self.kind == "subdivide":
            return Move("weld", self.simplex, self.label)
        if self.kind == "weld":
            return Move("subdivide", self.simplex, self.label)
        return Move("relabel", mapping=tuple(sorted((v, k) for k, v in self.mapping)))

    def apply(self, K: Complex) -> Complex:
        if self.kind == "subdivide":
            return subdivide(K, self.simplex, self.label)
        if self.kind == "weld":
            return weld(K, self.simplex, self.label)
        if self.kind == "relabel":
            return relabel(K, dict(self.mapping))
        raise MoveError(f"unknown move kind {self.kind!r}")

    def __str__(self):
        if self.kind == "relabel":
            return "RELABEL " + ",".join(f"{k}->{v}" for k, v in self.mapping)
        tag = "SUB" if self.kind == "subdivide" else "WELD"
        return f"{tag} {self.label} : " + " ".join(map(str, self.simplex))


def subdivide(K: Complex, A, a: int) -> Complex:
    """Starring ``(A a)K = a * dA * lk(A, K) + Q(A, K)``."""
    A = simplex(A)
    if not A or not K.has_face(A):
        raise MoveError(f"{format_simplex(A)} is not a simplex of the complex")
    if a in set(K.vertices):
        raise MoveError(f"label {a} is already a vertex")
    aset = set(A)
    out = []
    for g in K.generators:
        if aset <= set(g):
            rest = tuple(v for v in g if v not in aset)
            for face in simplex_boundary(A):
                out.append(tuple(sorted(face + rest + (a,))))
        else:
            out.append(g)
    return Complex._raw(out)


def _weld_factor(K: Complex, A: tuple, a: int):
    """Return ``B`` with ``lk(a, K) = dA * B``, or raise :class:`WeldError`."""
    if a not in set(K.vertices):
        raise WeldError(f"{a} is not a vertex")
    if a in A:
        raise WeldError(f"{format_simplex(A)} contains the weld vertex {a}")
    if K.has_face(A):
        raise WeldError(f"{format_simplex(A)} is already a simplex of the complex")
    L = link((a,), K)
    B = link(A[1:], L)
    if set(B.vertices) & set(A) or join(Complex._raw(simplex_boundary(A)), B) != L:
        raise WeldError(
            f"link of {a} does not factor as the boundary of {format_simplex(A)} joined with a complex"
        )
    return B


def can_weld(K: Complex, A, a: int) -> bool:
    try:
        _weld_factor(K, simplex(A), a)
    except WeldError:
        return False
    return True


def weld(K: Complex, A, a: int) -> Complex:
    """Inverse starring ``(A a)^-1 K = A * B + Q(a, K)``."""
    A = simplex(A)
    if not A:
        raise WeldError("cannot weld along the empty simplex")
    B = _weld_factor(K, A, a)
    rest = [g for g in K.generators if a not in g]
    return Complex._raw([tuple(sorted(A + b)) for b in B.generators] + rest)


def relabel(K: Complex, mapping: Mapping[int, int]) -> Complex:
    verts = K.vertices
    image = [mapping.get(v, v) for v in verts]
    if len(set(image)) != len(image):
        seen = {}
        for v, w in zip(verts, image):
            if w in seen:
                raise MoveError(f"relabeling sends {seen[w]} and {v} to {w}")
            seen[w] = v
    return K.relabeled(mapping)


def apply_script(K: Complex, script) -> Complex:
    for i, move in enumerate(script, start=1):
        try:
            K = move.apply(K)
        except MoveError as exc:
            raise type(exc)(str(exc), index=i) from exc
        except StellarError as exc:
            raise MoveError(str(exc), index=i) from exc
    return K


# --- search -----------------------------------------------------------------

def weld_moves(K: Complex):
    """All legal welds of ``K`` in deterministic order."""
    n = K.dim
    out = []
    for a in K.vertices:
        L = link((a,), K)
        lverts = L.vertices
        for k in range(2, n + 2):
            for A in combinations(lverts, k):
                if can_weld(K, A, a):
                    out.append(Move("weld", A, a))
    return out


def subdivision_moves(K: Complex):
    fresh = (max(K.vertices) + 1) if K.vertices else 0
    faces = sorted((f for f in K.faces() if len(f) >= 2), key=lambda f: (len(f), f))
    return [Move("subdivide", f, fresh) for f in faces]


def simplify(K: Complex):
    """Greedy weld descent: apply the first available weld until none is left."""
    script = []
    while True:
        moves = weld_moves(K)
        if not moves:
            return K, script
        K = moves[0].apply(K)
        script.append(moves[0])


@dataclass
class SearchResult:
    verdict: str  # "equivalent" | "unknown"
    script: list = field(default_factory=list)
    nodes: int = 0

    @property
    def equivalent(self) -> bool:
        return self.verdict == "equivalent"


def _relabel_move(source: Complex, target_labeling: dict, source_labeling: dict):
    inv = {i: v for v, i in target_labeling.items()}
    mapping = {v: inv[i] for v, i in source_labeling.items()}
    if all(k == v for k, v in mapping.items()):
        return None
    return Move.relabel({k: v for k, v in mapping.items() if k != v})


def bounded_equivalence_search(
    K: Complex, L: Complex, max_nodes: int = 10_000, max_vertices: int | None = None
) -> SearchResult:
    """Bidirectional breadth-first deepening over welds and subdivisions.

    States are deduplicated by canonical form.  A returned script is replayed
    on ``K`` and must reproduce ``L`` exactly; "unknown" means the budget ran
    out, never that the complexes are inequivalent.
    """
    require_uniform(K, "search")
    require_uniform(L, "search")
    if K.dim != L.dim:
        raise StellarError(f"dimension mismatch: {K.dim} vs {L.dim}")
    if K == L:
        return SearchResult("equivalent", [], 1)
    if max_vertices is None:
        max_vertices = max(len(K.vertices), len(L.vertices)) + 2

    # canonical form -> (complex, labeling, parent form, move parent->complex)
    sides = [{}, {}]
    frontiers = [[], []]
    for side, X in enumerate((K, L)):
        form, lab = canonical_labeling(X)
        sides[side][form] = (X, lab, None, None)
        frontiers[side].append(form)
    nodes = 2

    def path(side, form):
        moves = []
        while True:
            X, lab, parent, move = sides[side][form]
            if parent is None:
                return moves[::-1]
            moves.append(move)
            form = parent

    def finish(form):
        Y, ylab = sides[0][form][:2]
        Z, zlab = sides[1][form][:2]
        script = path(0, form)
        rel = _relabel_move(Y, zlab, ylab)
        if rel is not None:
            script.append(rel)
        script.extend(m.inverse() for m in reversed(path(1, form)))
        if apply_script(K, script) != L:
            raise InvariantViolation("search produced a script that does not replay")
        return SearchResult("equivalent", script, nodes)

    common = set(sides[0]) & set(sides[1])
    if common:
        return finish(min(common))

    while frontiers[0] or frontiers[1]:
        side = 0 if (len(frontiers[0]) <= len(frontiers[1]) and frontiers[0]) or not frontiers[1] else 1
        other = 1 - side
        new_frontier = []
        for form in sorted(frontiers[side]):
            X = sides[side][form][0]
            moves = weld_moves(X)
            if len(X.vertices) < max_vertices:
                moves += subdivision_moves(X)
            for move in moves:
                Y = move.apply(X)
                yform, ylab = canonical_labeling(Y)
                if yform in sides[side]:
                    continue
                sides[side][yform] = (Y, ylab, form, move)
                nodes += 1
                if yform in sides[other]:
                    return finish(yform)
                new_frontier.append(yform)
                if nodes >= max_nodes:
                    return SearchResult("unknown", [], nodes)
        frontiers[side] = new_frontier
    return SearchResult("unknown", [], nodes)
