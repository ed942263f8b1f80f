"""Stellar structures ``a * (S/~)``: regular equivalences on a sphere ``S``."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property

from .complex import (
    Complex,
    boundary,
    connected_components,
    euler,
    faces_of,
    format_simplex,
    require_uniform,
    simplex,
    simplex_boundary,
)
from .errors import InvariantViolation, StellarError, StructureError
from .recognition import check_pseudo_manifold


class _UnionFind:
    def __init__(self, items=()):
        self.parent = {x: x for x in items}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        self.add(x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            if ry < rx:
                rx, ry = ry, rx
            self.parent[ry] = rx

    def groups(self):
        out = defaultdict(list)
        for x in self.parent:
            out[self.find(x)].append(x)
        return sorted((tuple(sorted(g)) for g in out.values()))


@dataclass(frozen=True)
class RegularEquivalence:
    """Vertex classes (non-singleton ones) plus a pairing of facets."""

    vertex_classes: tuple = ()
    facet_pairs: tuple = ()

    @classmethod
    def build(cls, vertex_merges=(), facet_pairs=()):
        uf = _UnionFind()
        for a, b in vertex_merges:
            uf.union(a, b)
        for group in map(tuple, vertex_merges):
            for v in group:
                uf.add(v)
        classes = tuple(g for g in uf.groups() if len(g) > 1)
        pairs = tuple(sorted(tuple(sorted((simplex(g), simplex(p)))) for g, p in facet_pairs))
        return cls(classes, pairs)

    @classmethod
    def from_classes(cls, classes, facet_pairs=()):
        merges = [(c[0], v) for c in classes for v in c[1:]]
        return cls.build(merges, facet_pairs)

    @cached_property
    def _rep(self):
        return {v: c[0] for c in self.vertex_classes for v in c}

    def class_of(self, v):
        return self._rep.get(v, v)

    @cached_property
    def _partner(self):
        out = {}
        for g, p in self.facet_pairs:
            out.setdefault(g, p)
            out.setdefault(p, g)
        return out

    def partner(self, g):
        return self._partner.get(g)

    def correspondence(self, g, p) -> dict:
        """Vertex map ``g -> p`` matching equal-or-equivalent vertices."""
        by_class = {self.class_of(w): w for w in p}
        return {v: by_class.get(self.class_of(v)) for v in g}

    def partition(self, vertices) -> list:
        groups = defaultdict(list)
        for v in vertices:
            groups[self.class_of(v)].append(v)
        return sorted(tuple(sorted(g)) for g in groups.values())


def validate_regular(S: Complex, e: RegularEquivalence) -> list:
    """Return the list of violations of conditions (i)-(ii); empty means regular."""
    problems = []
    gens = S.generators
    verts = set(S.vertices)
    for c in e.vertex_classes:
        stray = [v for v in c if v not in verts]
        if stray:
            problems.append(f"vertex class {c} contains non-vertices {stray}")
    for g in sorted(gens):
        seen = {}
        for v in g:
            r = e.class_of(v)
            if r in seen:
                problems.append(
                    f"facet {format_simplex(g)} contains equivalent vertices {seen[r]} and {v}"
                )
            seen[r] = v
    used = {}
    for g, p in e.facet_pairs:
        for x in (g, p):
            if x not in gens:
                problems.append(f"paired simplex {format_simplex(x)} is not a generator")
        if g == p:
            problems.append(f"facet {format_simplex(g)} is paired with itself")
            continue
        for x in (g, p):
            if x in used:
                problems.append(f"facet {format_simplex(x)} is paired more than once")
            used[x] = True
        cg = sorted(e.class_of(v) for v in g)
        cp = sorted(e.class_of(v) for v in p)
        if cg != cp:
            problems.append(
                f"paired facets {format_simplex(g)} and {format_simplex(p)} do not correspond vertex by vertex"
            )
    return problems


@dataclass(frozen=True, eq=False)
class StellarStructure:
    apex: int
    sphere: Complex
    equiv: RegularEquivalence
    source: Complex | None = None
    origin: tuple = ()  # (sphere vertex, source vertex) pairs
    steps: tuple = ()

    @property
    def dim(self) -> int:
        """Dimension of the sphere ``S``; the manifold has dimension ``dim + 1``."""
        return self.sphere.dim

    @cached_property
    def facets(self) -> list:
        return sorted(self.sphere.generators)

    @cached_property
    def facet_index(self) -> dict:
        return {g: i for i, g in enumerate(self.facets)}

    @property
    def unpaired(self) -> list:
        return [g for g in self.facets if self.equiv.partner(g) is None]

    @property
    def is_closed(self) -> bool:
        """True when every facet of ``S`` is paired (the represented manifold is closed)."""
        return not self.unpaired

    @cached_property
    def _induced(self) -> dict:
        return {}

    def induced(self, d: int) -> list:
        if d not in self._induced:
            self._induced[d] = induced_equivalence(self.sphere, self.equiv, d)
        return self._induced[d]

    @cached_property
    def quotient(self) -> "QuotientComplex":
        return QuotientComplex(self)


# --- induced equivalence ----------------------------------------------------

def induced_equivalence(S: Complex, e: RegularEquivalence, d: int) -> list:
    """Classes of ``d``-simplexes of ``S``, each a sorted tuple, ordered by least member."""
    n1 = S.dim
    if n1 is None or not 0 <= d <= n1:
        raise StellarError(f"dimension {d} out of range 0..{n1}")
    if d == 0:
        return [tuple((v,) for v in c) for c in e.partition(S.vertices)]
    uf = _UnionFind(S.faces(d))
    for g, p in e.facet_pairs:
        corr = e.correspondence(g, p)
        for face in faces_of(g, d):
            image = tuple(sorted(corr[v] for v in face))
            uf.union(face, image)
    return uf.groups()


# --- quotient ---------------------------------------------------------------

class QuotientComplex:
    """Class-level cell structure of ``S/~`` (not necessarily simplicial)."""

    def __init__(self, st: StellarStructure):
        self.structure = st
        top = st.dim
        self.classes = [st.induced(d) for d in range(top + 1)] if top is not None and top >= 0 else []
        # facets: classes are the pairs, not the induced top-dimensional relation
        if top is not None and top >= 0:
            seen, tops = set(), []
            for g in st.facets:
                if g in seen:
                    continue
                p = st.equiv.partner(g)
                cls = (g,) if p is None else tuple(sorted((g, p)))
                seen.update(cls)
                tops.append(cls)
            self.classes[top] = tops
        self.index = {}
        for d, classes in enumerate(self.classes):
            for k, members in enumerate(classes):
                for s in members:
                    self.index[s] = (d, k)

    @property
    def h(self) -> list:
        return [len(c) for c in self.classes]

    def euler(self) -> int:
        return sum((-1) ** d * n for d, n in enumerate(self.h))

    def cell_of(self, s):
        return self.index[tuple(s)]

    def representative(self, cell):
        d, k = cell
        return self.classes[d][k][0]

    def face_poset(self) -> dict:
        """Cell -> frozenset of all proper faces (as cells)."""
        out = {}
        for d, classes in enumerate(self.classes):
            for k, members in enumerate(classes):
                rep = members[0]
                out[(d, k)] = frozenset(
                    self.index[f] for f in faces_of(rep) if len(f) < len(rep)
                )
        return out

    def is_simplicial(self) -> bool:
        for d, classes in enumerate(self.classes):
            keys = {self._vertex_key(c[0]) for c in classes}
            if len(keys) != len(classes):
                return False
        return True

    def _vertex_key(self, s):
        return tuple(sorted(self.structure.equiv.class_of(v) for v in s))

    def as_complex(self) -> Complex:
        """The quotient as a simplicial complex, vertex classes labelled by least member."""
        if not self.is_simplicial():
            raise StellarError("quotient is not a simplicial complex")
        return Complex(self._vertex_key(c[0]) for c in self.classes[-1])

    def surface_cells(self):
        from .recognition import _CellSurface

        if len(self.classes) != 3:
            raise StellarError("surface classification needs a 2-dimensional quotient")
        vertices = list(range(len(self.classes[0])))
        edges = {}
        for k, members in enumerate(self.classes[1]):
            u, w = (self.index[(x,)][1] for x in members[0])
            edges[k] = (min(u, w), max(u, w))
        tris = []
        for members in self.classes[2]:
            a, b, c = members[0]
            cv = [self.index[(x,)][1] for x in (a, b, c)]
            ce = [self.index[f][1] for f in ((a, b), (b, c), (a, c))]
            tris.append((*cv, *ce))
        return _CellSurface(vertices, edges, tris)


@dataclass(frozen=True)
class QuotientCounts:
    h: tuple  # class counts of S/~ per dimension
    s: tuple  # simplex counts of S per dimension
    q: tuple | None  # cell counts of a * (S/~); closed structures only

    @property
    def euler_quotient(self) -> int:
        return sum((-1) ** i * x for i, x in enumerate(self.h))

    @property
    def euler_total(self) -> int | None:
        if self.q is None:
            return None
        return sum((-1) ** i * x for i, x in enumerate(self.q))


def quotient_counts(st: StellarStructure) -> QuotientCounts:
    h = tuple(st.quotient.h)
    s = tuple(st.sphere.f_vector())
    q = None
    if st.is_closed:
        n = len(h)  # dimension of the manifold
        if s[n - 1] != 2 * h[n - 1]:
            raise InvariantViolation(f"closed structure with s_top={s[n - 1]} != 2*h_top={2 * h[n - 1]}")
        q = (h[0] + 1,) + tuple(h[i] + s[i - 1] for i in range(1, n)) + (s[n - 1],)
    return QuotientCounts(h, s, q)


@dataclass(frozen=True)
class EulerCheck:
    ok: bool
    chi_manifold: int
    chi_quotient: int
    expected_quotient: int


def verify_euler_relation(M: Complex, st: StellarStructure) -> EulerCheck:
    chi_m = euler(M)
    counts = quotient_counts(st)
    n = st.dim + 1
    expected = chi_m + (-1) ** (n + 1)
    ok = counts.euler_quotient == expected
    if counts.euler_total is not None:
        ok = ok and counts.euler_total == chi_m
    return EulerCheck(ok, chi_m, counts.euler_quotient, expected)


# --- construction -----------------------------------------------------------

@dataclass(frozen=True)
class Absorption:
    generator: tuple  # generator of M absorbed
    face: tuple  # shared face, in M labels
    sphere_face: tuple  # the facet of S it was glued along
    case: int  # 1: apex vertex new to S, 2: fresh copy introduced
    label: int  # label of the new sphere vertex


def _current_equivalence(sphere, origin):
    by_image = defaultdict(list)
    for f in sphere:
        by_image[tuple(sorted(origin[v] for v in f))].append(f)
    pairs = []
    for image, fs in by_image.items():
        if len(fs) > 2:
            raise InvariantViolation(f"face {image} appears {len(fs)} times on the sphere")
        if len(fs) == 2:
            pairs.append(tuple(fs))
    fibres = defaultdict(list)
    verts = {v for f in sphere for v in f}
    for v in verts:
        fibres[origin[v]].append(v)
    classes = [tuple(sorted(c)) for c in fibres.values() if len(c) > 1]
    return RegularEquivalence.from_classes(sorted(classes), pairs)


def build_structure(M: Complex, check: bool = False) -> StellarStructure:
    """Unfold ``M`` into ``a * (S/~)`` by absorbing generators one at a time.

    Start from ``N_0 = (g a)M`` for the least generator ``g``; then repeatedly
    take the least generator ``p`` outside the apex star sharing a codimension-1
    face with ``S = lk(a, N_k)`` and glue it on along the least such face.  The
    apex of ``p`` keeps its label if it is not yet on ``S`` and is otherwise
    replaced by a fresh label equivalent to it.  With ``check`` the regularity
    of the growing equivalence is verified after every step.
    """
    require_uniform(M, "build_structure")
    if not M or M.dim < 1:
        raise StructureError("need a nonempty complex of dimension >= 1")
    if len(connected_components(M)) != 1:
        raise StructureError("complex is not connected")
    check_pseudo_manifold(M)

    gens = sorted(M.generators)
    first = gens[0]
    apex = max(M.vertices) + 1
    fresh = apex + 1
    origin = {v: v for v in first}
    sphere = set(simplex_boundary(first))
    on_sphere = defaultdict(list)  # M-face -> sphere facets with that image
    for f in sphere:
        on_sphere[f].append(f)
    remaining = set(gens[1:])
    sphere_vertices = set(first)
    steps = []

    while remaining:
        chosen = None
        for p in sorted(remaining):
            shared = [f for f in simplex_boundary(p) if on_sphere.get(f)]
            if shared:
                chosen = (p, min(shared))
                break
        if chosen is None:
            raise StructureError(
                f"{len(remaining)} generators cannot be reached through codimension-1 faces"
            )
        p, face = chosen
        candidates = on_sphere[face]
        if len(candidates) != 1:
            raise InvariantViolation(f"face {face} of an unabsorbed generator appears {len(candidates)} times")
        F = candidates[0]
        (v,) = set(p) - set(face)
        if v in sphere_vertices:
            label, case = fresh, 2
            fresh += 1
        else:
            label, case = v, 1
        origin[label] = v

        sphere.remove(F)
        on_sphere[face].remove(F)
        for x in F:
            new = tuple(sorted(set(F) - {x} | {label}))
            sphere.add(new)
            on_sphere[tuple(sorted(origin[u] for u in new))].append(new)
        sphere_vertices = {u for f in sphere for u in f}
        remaining.remove(p)
        steps.append(Absorption(p, face, F, case, label))
        if check:
            S_k = Complex._raw(sphere)
            problems = validate_regular(S_k, _current_equivalence(sphere, origin))
            if problems:
                raise InvariantViolation(f"after absorbing {p}: {problems[0]}")

    S = Complex._raw(sphere)
    equiv = _current_equivalence(sphere, origin)
    st = StellarStructure(
        apex=apex,
        sphere=S,
        equiv=equiv,
        source=M,
        origin=tuple(sorted((v, origin[v]) for v in S.vertices)),
        steps=tuple(steps),
    )
    unpaired_images = {tuple(sorted(origin[v] for v in f)) for f in st.unpaired}
    if unpaired_images != set(boundary(M).generators):
        raise InvariantViolation("unpaired sphere facets do not match the boundary of M")
    return st


def structure_from(S: Complex, equiv: RegularEquivalence, apex: int | None = None) -> StellarStructure:
    """Wrap given data as a structure, rejecting non-regular equivalences."""
    problems = validate_regular(S, equiv)
    if problems:
        raise StructureError("; ".join(problems))
    if apex is None:
        apex = max(S.vertices) + 1
    if apex in set(S.vertices):
        raise StructureError(f"apex {apex} is a vertex of the sphere")
    return StellarStructure(apex=apex, sphere=S, equiv=equiv)


def reglue(st: StellarStructure) -> Complex:
    """A simplicial complex homeomorphic to ``a * (S/~)``.

    Built as the order complex of its cells: the apex, the cone cells ``a * t``
    for every simplex ``t`` of ``S`` (kept distinct), and the classes of ``S/~``.
    """
    Q = st.quotient
    cells = [("apex",)]
    cells += [("base",) + c for c in sorted(Q.face_poset())]
    cone_faces = sorted(st.sphere.faces(), key=lambda f: (len(f), f))
    cells += [("cone", f) for f in cone_faces]
    label = {c: i + 1 for i, c in enumerate(cells)}

    def below(cell):
        kind = cell[0]
        if kind == "apex":
            return []
        if kind == "base":
            d, k = cell[1:]
            if d == 0:
                return []
            rep = Q.representative((d, k))
            return [("base",) + Q.cell_of(f) for f in simplex_boundary(rep)]
        t = cell[1]
        out = [("base",) + Q.cell_of(t)]
        out += [("cone", f) for f in simplex_boundary(t)] if len(t) > 1 else [("apex",)]
        return out

    chains = []

    def descend(cell, acc):
        lower = below(cell)
        if not lower:
            chains.append(tuple(sorted(label[c] for c in acc)))
            return
        for c in lower:
            descend(c, acc + [c])

    for f in st.facets:
        descend(("cone", f), [("cone", f)])
    return Complex(chains)
