"""Ball, sphere and manifold recognition; surface classification."""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field

from .complex import (
    Complex,
    boundary,
    connected_components,
    euler,
    link,
    require_uniform,
    simplex_boundary,
)
from .errors import NotAPseudoManifold, StellarError
from .moves import bounded_equivalence_search, simplify

YES, NO, UNKNOWN = "yes", "no", "unknown"

# budget for the dimension >= 3 semi-decision
SEARCH_NODES = 2_000


def _ridge_counts(K: Complex) -> Counter:
    counts = Counter()
    for g in K.generators:
        counts.update(simplex_boundary(g))
    return counts


def check_pseudo_manifold(K: Complex) -> Counter:
    """Raise unless every codimension-1 face lies in at most two generators."""
    counts = _ridge_counts(K)
    for face, c in sorted(counts.items()):
        if c > 2:
            raise NotAPseudoManifold(face, c)
    return counts


def _graph_shape(K: Complex) -> str:
    """'cycle', 'path' or 'no' for a 1-dimensional complex."""
    degree = check_pseudo_manifold(K)
    if len(connected_components(K)) != 1:
        return "no"
    ends = sum(1 for c in degree.values() if c == 1)
    if ends == 0:
        return "cycle"
    if ends == 2:
        return "path"
    return "no"


def _nonempty(K: Complex, what: str):
    require_uniform(K, what)
    if not K:
        raise StellarError(f"{what} needs a nonempty complex")


def _search_against(K: Complex, model: Complex) -> str:
    reduced, _ = simplify(K)
    for start in (reduced, K) if reduced != K else (K,):
        res = bounded_equivalence_search(start, model, max_nodes=SEARCH_NODES)
        if res.equivalent:
            return YES
    return UNKNOWN


def _surface_links_ok(K: Complex, want: str) -> bool:
    for v in K.vertices:
        shape = _graph_shape(link((v,), K))
        if shape == "no" or (want == "cycle" and shape != "cycle"):
            return False
    return True


def recognize_sphere(K: Complex) -> str:
    _nonempty(K, "sphere recognition")
    n = K.dim
    if n == -1:
        return YES
    if n == 0:
        return YES if len(K) == 2 else NO
    if n == 1:
        return YES if _graph_shape(K) == "cycle" else NO
    check_pseudo_manifold(K)
    if boundary(K) or len(connected_components(K)) != 1:
        return NO
    if euler(K) != 1 + (-1) ** n:
        return NO
    if n == 2:
        return YES if _surface_links_ok(K, "cycle") else NO
    return _search_against(K, Complex(simplex_boundary(tuple(range(1, n + 3)))))


def recognize_ball(K: Complex) -> str:
    _nonempty(K, "ball recognition")
    n = K.dim
    if n == -1:
        return YES
    if n == 0:
        return YES if len(K) == 1 else NO
    if n == 1:
        return YES if _graph_shape(K) == "path" else NO
    check_pseudo_manifold(K)
    bd = boundary(K)
    if not bd or len(connected_components(K)) != 1 or euler(K) != 1:
        return NO
    if n == 2:
        if len(connected_components(bd)) != 1 or _graph_shape(bd) != "cycle":
            return NO
        return YES if _surface_links_ok(K, "any") else NO
    if recognize_sphere(bd) == NO:
        return NO
    return _search_against(K, Complex([tuple(range(1, n + 2))]))


@dataclass
class ManifoldVerdict:
    verdict: str
    links: dict = field(default_factory=dict)  # vertex -> "sphere" | "ball" | "no" | "unknown"

    def __str__(self):
        return self.verdict


def link_kind(L: Complex) -> str:
    try:
        s = recognize_sphere(L)
        if s == YES:
            return "sphere"
        b = recognize_ball(L)
    except NotAPseudoManifold:
        return "no"
    if b == YES:
        return "ball"
    if s == NO and b == NO:
        return "no"
    return "unknown"


def is_stellar_manifold(M: Complex) -> ManifoldVerdict:
    if not M.is_uniform or not M:
        return ManifoldVerdict(NO, {})
    links = {v: link_kind(link((v,), M)) for v in M.vertices}
    kinds = set(links.values())
    if "no" in kinds:
        verdict = NO
    elif "unknown" in kinds:
        verdict = UNKNOWN
    else:
        verdict = YES
    return ManifoldVerdict(verdict, links)


# --- surfaces ---------------------------------------------------------------

@dataclass(frozen=True)
class SurfaceClass:
    name: str  # sphere | disk | projective_plane | torus | klein | other
    euler: int
    orientable: bool
    boundary_components: int


class _CellSurface:
    """Triangles given as vertex triples over vertex/edge cells.

    ``triangles`` is a list of ``(v0, v1, v2, e01, e12, e02)`` where the ``v``
    are vertex-cell ids (pairwise distinct) and the ``e`` edge-cell ids; ``edges``
    maps an edge id to its two endpoint ids.
    """

    def __init__(self, vertices, edges, triangles):
        self.vertices = list(vertices)
        self.edges = dict(edges)
        self.triangles = list(triangles)


def _surface_cells(K) -> _CellSurface:
    if isinstance(K, Complex):
        if K.dim != 2 or not K.is_uniform:
            raise StellarError("surface classification needs a uniform 2-dimensional complex")
        check_pseudo_manifold(K)
        if len(connected_components(K)) != 1:
            raise StellarError("surface classification needs a connected complex")
        edges = {e: e for e in K.faces(1)}
        tris = [(a, b, c, (a, b), (b, c), (a, c)) for a, b, c in sorted(K.generators)]
        return _CellSurface(K.vertices, edges, tris)
    return K.surface_cells()


def classify_surface(K) -> SurfaceClass:
    """Classify a connected 2-dimensional pseudo-manifold.

    Accepts a :class:`Complex` or a quotient ``S/~`` (anything with a
    ``surface_cells()`` method).
    """
    cells = _surface_cells(K)
    incidence = Counter()
    for t in cells.triangles:
        incidence.update(t[3:])
    for e, c in sorted(incidence.items()):
        if c > 2:
            raise NotAPseudoManifold(cells.edges[e], c)
    chi = len(cells.vertices) - len(cells.edges) + len(cells.triangles)

    # boundary components: connected pieces of the graph of boundary edges
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e, c in incidence.items():
        if c == 1:
            u, v = cells.edges[e]
            parent.setdefault(u, u)
            parent.setdefault(v, v)
            parent[find(u)] = find(v)
    nbound = len({find(x) for x in parent})

    # orientability by propagating +-1 across shared edges
    by_edge = defaultdict(list)
    for i, (v0, v1, v2, e01, e12, e02) in enumerate(cells.triangles):
        for e, (x, y) in ((e01, (v0, v1)), (e12, (v1, v2)), (e02, (v2, v0))):
            u, w = cells.edges[e]
            # +1 when the triangle's cyclic order runs along the edge's stored direction
            by_edge[e].append((i, 1 if (x, y) == (u, w) else -1))
    sign = {}
    orientable = True
    for start in range(len(cells.triangles)):
        if start in sign:
            continue
        sign[start] = 1
        stack = [start]
        while stack:
            t = stack.pop()
            for e in (cells.triangles[t][3:]):
                uses = by_edge[e]
                if len(uses) != 2:
                    continue
                (t1, d1), (t2, d2) = uses
                other, d_other, d_self = (t2, d2, d1) if t1 == t else (t1, d1, d2)
                want = -sign[t] * d_self * d_other
                if other in sign:
                    if sign[other] != want:
                        orientable = False
                else:
                    sign[other] = want
                    stack.append(other)

    if nbound == 0:
        if orientable:
            name = {2: "sphere", 0: "torus"}.get(chi, "other")
        else:
            name = {1: "projective_plane", 0: "klein"}.get(chi, "other")
    else:
        name = "disk" if orientable and chi == 1 and nbound == 1 else "other"
    return SurfaceClass(name, chi, orientable, nbound)
