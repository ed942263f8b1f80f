"""Standard complexes, the two worked structures, and an enumerator of
regular equivalences on small spheres."""
from __future__ import annotations

from itertools import permutations

from .complex import Complex, join, simplex_boundary
from .structure import RegularEquivalence, StellarStructure, structure_from

INFINITY = 10  # label of the south pole in the projective-plane example


def simplex_sphere(n: int) -> Complex:
    """Boundary of the simplex on ``1 .. n+2`` (an ``n``-sphere)."""
    return Complex(simplex_boundary(tuple(range(1, n + 3))))


def tetrahedron_boundary() -> Complex:
    return simplex_sphere(2)


def octahedron() -> Complex:
    return join(join(Complex([(1,), (2,)]), Complex([(3,), (4,)])), Complex([(5,), (6,)]))


def cycle(n: int) -> Complex:
    return Complex((i, i % n + 1) for i in range(1, n + 1))


def torus7() -> Complex:
    """Seven-vertex torus: triangles ``{i, i+1, i+3}`` and ``{i, i+2, i+3}`` mod 7."""
    tris = []
    for i in range(7):
        for a, b in ((1, 3), (2, 3)):
            tris.append(tuple(sorted(((i) % 7 + 1, (i + a) % 7 + 1, (i + b) % 7 + 1))))
    return Complex(tris)


def annulus() -> Complex:
    """Inner triangle 1 2 3, outer triangle 4 5 6."""
    return Complex([
        (1, 2, 4), (2, 4, 5), (2, 3, 5), (3, 5, 6), (1, 3, 6), (1, 4, 6),
    ])


def bipyramid() -> Complex:
    """Sphere with six triangles: suspension of the triangle 1 2 3 by 4 and 5."""
    return Complex([(1, 2, 4), (1, 3, 4), (2, 3, 4), (1, 2, 5), (1, 3, 5), (2, 3, 5)])


def bipyramid_structure() -> StellarStructure:
    """Bipyramid with the poles identified and facets paired across the equator."""
    S = bipyramid()
    e = RegularEquivalence.build(
        [(4, 5)],
        [((1, 2, 4), (1, 2, 5)), ((1, 3, 4), (1, 3, 5)), ((2, 3, 4), (2, 3, 5))],
    )
    return structure_from(S, e, apex=6)


PROJECTIVE_PAIRS = [
    ((3, 7, 8), (1, 5, INFINITY)),
    ((1, 3, 5), (7, 8, INFINITY)),
    ((3, 4, 5), (8, 9, INFINITY)),
    ((3, 4, 7), (1, 9, INFINITY)),
    ((4, 5, 7), (1, 8, 9)),
    ((5, 6, 7), (1, 2, 8)),
    ((1, 2, 3), (6, 7, INFINITY)),
    ((2, 3, 8), (5, 6, INFINITY)),
]
PROJECTIVE_CLASSES = [(1, 7), (2, 6), (3, INFINITY), (4, 9), (5, 8)]


def projective_sphere() -> Complex:
    return Complex([g for pair in PROJECTIVE_PAIRS for g in pair])


def projective_structure() -> StellarStructure:
    """Sixteen-triangle sphere whose quotient is a projective plane."""
    e = RegularEquivalence.from_classes(PROJECTIVE_CLASSES, PROJECTIVE_PAIRS)
    return structure_from(projective_sphere(), e, apex=INFINITY + 1)


def small_spheres() -> dict:
    """Spheres with at most eight facets used for exhaustive checks."""
    out = {f"cycle{n}": cycle(n) for n in range(4, 9)}
    out["tetrahedron"] = tetrahedron_boundary()
    out["bipyramid"] = bipyramid()
    out["octahedron"] = octahedron()
    out["simplex4"] = simplex_sphere(3)
    return out


# --- enumeration ------------------------------------------------------------

def _find(parent, x):
    while parent[x] != x:
        x = parent[x]
    return x


def _regular_so_far(parent, facets) -> bool:
    for g in facets:
        roots = [_find(parent, v) for v in g]
        if len(set(roots)) != len(roots):
            return False
    return True


def enumerate_regular(S: Complex, limit: int | None = None):
    """Yield closed structures ``(S, ~)``: perfect facet pairings with vertex bijections.

    Backtracking over matchings of the facets; each pair fixes a vertex
    bijection whose images are merged, and any branch putting two equivalent
    vertices in one facet is cut.  Different bijections that give the same
    equivalence are yielded once.
    """
    facets = sorted(S.generators)
    if len(facets) % 2:
        return
    apex = max(S.vertices) + 1
    seen = set()
    count = 0

    def rec(unpaired, parent, pairs):
        nonlocal count
        if limit is not None and count >= limit:
            return
        if not unpaired:
            classes = {}
            for v in S.vertices:
                classes.setdefault(_find(parent, v), []).append(v)
            merged = tuple(sorted(tuple(sorted(c)) for c in classes.values() if len(c) > 1))
            key = (merged, tuple(sorted(pairs)))
            if key in seen:
                return
            seen.add(key)
            count += 1
            yield StellarStructure(apex=apex, sphere=S, equiv=RegularEquivalence(merged, tuple(sorted(pairs))))
            return
        g = unpaired[0]
        for k in range(1, len(unpaired)):
            p = unpaired[k]
            rest = unpaired[1:k] + unpaired[k + 1:]
            for image in permutations(p):
                child = dict(parent)
                for v, w in zip(g, image):
                    rv, rw = _find(child, v), _find(child, w)
                    if rv != rw:
                        child[max(rv, rw)] = min(rv, rw)
                if not _regular_so_far(child, facets):
                    continue
                yield from rec(rest, child, pairs + [(g, p)])
                if limit is not None and count >= limit:
                    return

    yield from rec(facets, {v: v for v in S.vertices}, [])


def enumerated_structures(per_sphere: int | None = 400) -> list:
    """``[(sphere name, structure)]`` over :func:`small_spheres`."""
    out = []
    for name, S in small_spheres().items():
        for st in enumerate_regular(S, limit=per_sphere):
            out.append((name, st))
    return out


def find_singular(min_size: int = 3):
    """First enumerated structure with a ridge class of at least ``min_size`` members."""
    for name, S in small_spheres().items():
        for st in enumerate_regular(S):
            if any(len(c) >= min_size for c in st.induced(st.dim - 1)):
                return name, st
    return None


def find_alternating():
    """First enumerated structure with a facet whose ridge-class pair forms an alternating link cycle."""
    from .coxeter import link_cycle_check, ridge_classes

    for name, S in small_spheres().items():
        for st in enumerate_regular(S):
            classes = ridge_classes(st)
            for a in classes:
                for b in classes:
                    if a >= b:
                        continue
                    for g in st.facets:
                        case = link_cycle_check(st, a, b, g)
                        if case.kind == "case_i":
                            return name, st, a, b, g
    return None
