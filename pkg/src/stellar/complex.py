"""Simplicial complexes with Z2 coefficients.

A simplex is a sorted tuple of distinct integer labels; ``()`` is the empty
simplex.  A :class:`Complex` is a finite set of generator simplexes.  Adding a
simplex that is already present removes it, so sums of complexes are symmetric
differences of their generator sets.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from itertools import combinations
from typing import Iterable

from .errors import JoinError, NotUniformError

Simplex = tuple


def simplex(vertices: Iterable[int]) -> Simplex:
    """Normalize ``vertices`` to a simplex; repeated labels are rejected."""
    s = tuple(sorted(int(v) for v in vertices))
    for x, y in zip(s, s[1:]):
        if x == y:
            raise ValueError(f"repeated vertex {x} in simplex")
    return s


def dim_of(s: Simplex) -> int:
    return len(s) - 1


def faces_of(s: Simplex, dim: int | None = None):
    """Nonempty faces of ``s`` (including ``s``), or those of one dimension."""
    if dim is not None:
        return list(combinations(s, dim + 1)) if 0 <= dim < len(s) else []
    out = []
    for k in range(1, len(s) + 1):
        out.extend(combinations(s, k))
    return out


def simplex_boundary(s: Simplex):
    return [s[:i] + s[i + 1:] for i in range(len(s))]


def format_simplex(s: Simplex) -> str:
    return "(" + " ".join(map(str, s)) + ")"


class Complex:
    """Immutable Z2 sum of simplexes."""

    __slots__ = ("generators", "_hash")

    def __init__(self, simplices: Iterable = ()):
        gens: set = set()
        for s in simplices:
            gens ^= {simplex(s)}
        self.generators = frozenset(gens)
        self._hash = None

    @classmethod
    def _raw(cls, gens) -> "Complex":
        obj = cls.__new__(cls)
        obj.generators = frozenset(gens)
        obj._hash = None
        return obj

    # --- container protocol -------------------------------------------------
    def __iter__(self):
        return iter(sorted(self.generators))

    def __len__(self):
        return len(self.generators)

    def __bool__(self):
        return bool(self.generators)

    def __eq__(self, other):
        if not isinstance(other, Complex):
            return NotImplemented
        return self.generators == other.generators

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.generators)
        return self._hash

    def __add__(self, other: "Complex") -> "Complex":
        return Complex._raw(self.generators ^ other.generators)

    def __repr__(self):
        if not self.generators:
            return "Complex(0)"
        return "Complex(" + "+".join(format_simplex(s) for s in self) + ")"

    # --- derived data -------------------------------------------------------
    @property
    def vertices(self) -> tuple:
        return tuple(sorted({v for g in self.generators for v in g}))

    @property
    def dim(self) -> int | None:
        """Largest generator dimension; ``None`` for the zero complex."""
        if not self.generators:
            return None
        return max(len(g) for g in self.generators) - 1

    @property
    def is_uniform(self) -> bool:
        return len({len(g) for g in self.generators}) <= 1

    def faces(self, dim: int | None = None) -> set:
        """Face closure (nonempty faces), optionally restricted to one dimension."""
        out = set()
        for g in self.generators:
            out.update(faces_of(g, dim))
        return out

    def has_face(self, s) -> bool:
        s = set(s)
        return any(s <= set(g) for g in self.generators)

    def f_vector(self) -> list:
        d = self.dim
        if d is None or d < 0:
            return []
        counts = Counter(len(f) - 1 for f in self.faces())
        return [counts[i] for i in range(d + 1)]

    def relabeled(self, mapping) -> "Complex":
        return Complex._raw(
            tuple(sorted(mapping.get(v, v) for v in g)) for g in self.generators
        )


def require_uniform(K: Complex, what: str = "operation"):
    if not K.is_uniform:
        dims = sorted({len(g) - 1 for g in K.generators})
        raise NotUniformError(f"{what} needs a uniform complex, got dimensions {dims}")


def simplex_complex(*vertices) -> Complex:
    return Complex([vertices])


def boundary(K: Complex) -> Complex:
    require_uniform(K, "boundary")
    counts = Counter()
    for g in K.generators:
        counts.update(simplex_boundary(g))
    return Complex._raw(f for f, c in counts.items() if c % 2)


def is_closed(M: Complex) -> bool:
    return not boundary(M)


def join(K: Complex, L: Complex) -> Complex:
    shared = set(K.vertices) & set(L.vertices)
    if shared:
        raise JoinError(min(shared))
    return Complex._raw(
        tuple(sorted(q + p)) for q in K.generators for p in L.generators
    )


def _maximal(simplices) -> set:
    items = sorted(set(simplices), key=len, reverse=True)
    kept: list = []
    for s in items:
        ss = set(s)
        if not any(ss < set(k) for k in kept):
            kept.append(s)
    return set(kept)


def link(A, K: Complex) -> Complex:
    A = simplex(A)
    aset = set(A)
    rest = [tuple(v for v in g if v not in aset) for g in K.generators if aset <= set(g)]
    return Complex._raw(_maximal(rest))


def star_rest(A, K: Complex):
    """Split ``K`` into ``A * lk(A, K)`` and ``Q(A, K)``."""
    aset = set(simplex(A))
    star = [g for g in K.generators if aset <= set(g)]
    rest = [g for g in K.generators if not aset <= set(g)]
    return Complex._raw(star), Complex._raw(rest)


def euler(K: Complex) -> int:
    return sum((-1) ** (len(f) - 1) for f in K.faces())


def connected_components(K: Complex) -> list:
    """Generators grouped by shared-vertex connectivity, ordered by least generator."""
    parent: dict = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in K.generators:
        for v in g:
            parent.setdefault(v, v)
        for u, v in zip(g, g[1:]):
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
    groups = defaultdict(list)
    empties = []
    for g in K.generators:
        if g:
            groups[find(g[0])].append(g)
        else:
            empties.append(g)
    comps = [Complex._raw(gs) for gs in groups.values()]
    if empties:
        comps.append(Complex._raw(empties))
    return sorted(comps, key=lambda c: min(c.generators))


# --- canonical labeling -----------------------------------------------------

def _refine(colors: dict, incidence: dict) -> dict:
    ncolors = len(set(colors.values()))
    while True:
        sig = {
            v: (
                colors[v],
                tuple(sorted(tuple(sorted(colors[u] for u in g if u != v)) for g in incidence[v])),
            )
            for v in colors
        }
        rank = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        new = {v: rank[sig[v]] for v in colors}
        if len(rank) == ncolors:
            return new
        colors, ncolors = new, len(rank)


def canonical_labeling(K: Complex):
    """Return ``(form, labeling)``.

    ``labeling`` maps each vertex of ``K`` to ``0..n-1`` such that relabeling
    ``K`` with it yields ``form``; isomorphic complexes get equal forms.
    Colour refinement plus exhaustive individualization of the first
    non-singleton cell; exponential on highly symmetric inputs, which is fine at
    the sizes used here.
    """
    verts = K.vertices
    incidence = {v: [] for v in verts}
    for g in K.generators:
        for v in g:
            incidence[v].append(g)
    best = [None, None]

    def serialize(colors):
        return (len(verts),) + tuple(
            sorted(tuple(sorted(colors[v] for v in g)) for g in K.generators)
        )

    def search(colors):
        colors = _refine(colors, incidence)
        cells = defaultdict(list)
        for v, c in colors.items():
            cells[c].append(v)
        target = next((c for c in sorted(cells) if len(cells[c]) > 1), None)
        if target is None:
            form = serialize(colors)
            if best[0] is None or form < best[0]:
                best[0], best[1] = form, dict(colors)
            return
        for v in sorted(cells[target]):
            indiv = {u: 2 * c + 1 for u, c in colors.items()}
            indiv[v] = 2 * target
            search(indiv)

    if not verts:
        return serialize({}), {}
    search({v: 0 for v in verts})
    return best[0], best[1]


def canonical_form(K: Complex):
    return canonical_labeling(K)[0]
