"""Permutations of the facets of ``S`` induced by a closed stellar structure.

Facets of ``S`` are indexed in sorted order.  ``compose(p, q)`` applies ``q``
first, so ``compose(p0, pa)`` is the product written ``p0 . pa``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import gcd

from .complex import Complex, format_simplex, link, simplex, simplex_boundary
from .errors import InvariantViolation, NotAPseudoManifold, StellarError, StructureError
from .structure import StellarStructure

Perm = tuple


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Perm, q: Perm) -> Perm:
    return tuple(p[i] for i in q)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def cycles(p: Perm) -> list:
    seen, out = set(), []
    for start in range(len(p)):
        if start in seen:
            continue
        cyc, i = [], start
        while i not in seen:
            seen.add(i)
            cyc.append(i)
            i = p[i]
        out.append(tuple(cyc))
    return out


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def perm_order(p: Perm) -> int:
    order = 1
    for c in cycles(p):
        order = _lcm(order, len(c))
    return order


def perm_parity(p: Perm) -> str:
    transpositions = len(p) - len(cycles(p))
    return "even" if transpositions % 2 == 0 else "odd"


def is_identity(p: Perm) -> bool:
    return all(i == j for i, j in enumerate(p))


# --- generators -------------------------------------------------------------

def _require_closed(st: StellarStructure):
    if not st.is_closed:
        g = st.unpaired[0]
        raise StructureError(f"structure is not closed: facet {format_simplex(g)} is unpaired")


def ridge_classes(st: StellarStructure) -> list:
    """Classes of codimension-1 faces of ``S`` (the index set ``E``)."""
    return st.induced(st.dim - 1)


def p0(st: StellarStructure) -> Perm:
    _require_closed(st)
    idx = st.facet_index
    return tuple(idx[st.equiv.partner(g)] for g in st.facets)


def _ridge_facets(st: StellarStructure) -> dict:
    cache = st.__dict__.setdefault("_ridge_facets", None)
    if cache is None:
        cache = {}
        for g in st.facets:
            for r in simplex_boundary(g):
                cache.setdefault(r, []).append(st.facet_index[g])
        st.__dict__["_ridge_facets"] = cache
    return cache


def p_alpha(st: StellarStructure, alpha) -> Perm:
    """Swap the two facets through each member of ``alpha``."""
    by_ridge = _ridge_facets(st)
    p = list(identity(len(st.facets)))
    for r in alpha:
        r = simplex(r)
        pair = by_ridge.get(r, [])
        if len(pair) != 2:
            raise StellarError(f"ridge {format_simplex(r)} lies in {len(pair)} facets")
        i, j = pair
        if p[i] != i or p[j] != j:
            raise InvariantViolation(f"a facet contains two members of the class of {format_simplex(r)}")
        p[i], p[j] = j, i
    return tuple(p)


def support(st: StellarStructure, alpha) -> list:
    by_ridge = _ridge_facets(st)
    return sorted({i for r in alpha for i in by_ridge.get(simplex(r), [])})


def class_order(st: StellarStructure, alpha) -> int:
    """Order of ``p0 . p_alpha`` restricted to the facets through members of ``alpha``.

    Off that support ``p0 . p_alpha`` acts as ``p0``, so the order of the whole
    permutation is this value made even whenever some facet avoids ``alpha``.
    """
    x = compose(p0(st), p_alpha(st, alpha))
    order = 1
    for i in support(st, alpha):
        k, j = 1, x[i]
        while j != i:
            j, k = x[j], k + 1
        order = _lcm(order, k)
    return order


# --- orders along a pair of classes ----------------------------------------

@dataclass(frozen=True)
class FacetOrder:
    order: int
    r_ab: int | None = None
    r_ba: int | None = None


def _contains_member(g: tuple, alpha) -> tuple | None:
    gs = set(g)
    for r in alpha:
        if set(r) <= gs:
            return tuple(r)
    return None


def order_of_facet(st: StellarStructure, alpha, beta, g) -> FacetOrder:
    """Least ``m`` with ``(pa . pb)^m (g) = g``, plus ``r_ab``, ``r_ba`` when defined.

    The ``r`` values are reported when ``g`` contains members of both classes
    and the order exceeds 2 without the link of their common face being an
    alternating cycle; then ``order = r_ab + r_ba + 1`` is asserted.
    """
    g = simplex(g)
    i = st.facet_index[g]
    pa, pb = p_alpha(st, alpha), p_alpha(st, beta)
    t = compose(pa, pb)
    order, j = 1, t[i]
    while j != i:
        j, order = t[j], order + 1
    if order <= 2 or _contains_member(g, alpha) is None or _contains_member(g, beta) is None:
        return FacetOrder(order)
    case = link_cycle_check(st, alpha, beta, g)
    if case.kind != "case_ii":
        return FacetOrder(order)
    return FacetOrder(order, case.r_ab, case.r_ba)


def _first_return(perm: Perm, start: int, target: int, limit: int) -> int | None:
    j = start
    for r in range(1, limit + 1):
        j = perm[j]
        if j == target:
            return r
    return None


@dataclass(frozen=True)
class LinkCase:
    kind: str  # "case_i" | "case_ii" | "not_applicable"
    facet: tuple = ()
    ridge_face: tuple = ()  # the common face of the two members in the facet
    order: int = 0
    cycle: tuple = ()
    v: int | None = None
    r_ab: int | None = None
    r_ba: int | None = None


def _cycle_order(L: Complex) -> list | None:
    """Vertices of a 1-dimensional cycle in traversal order, or None."""
    adj = {}
    for e in L.generators:
        if len(e) != 2:
            return None
        a, b = e
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    if not adj or any(len(n) != 2 for n in adj.values()):
        return None
    start = min(adj)
    seq, prev, cur = [start], None, start
    while True:
        a, b = sorted(adj[cur])
        nxt = a if a != prev else b
        if nxt == start:
            break
        seq.append(nxt)
        prev, cur = cur, nxt
    return seq if len(seq) == len(adj) else None


def link_cycle_check(st: StellarStructure, alpha, beta, g) -> LinkCase:
    """Check the local structure behind an order above 2 at facet ``g``.

    If ``g`` itself does not contain members of both classes (it sits at the
    end of its orbit) the least facet of its orbit that does is examined.
    """
    g = simplex(g)
    pa, pb = p_alpha(st, alpha), p_alpha(st, beta)
    t = compose(pa, pb)
    i = st.facet_index[g]
    orbit = [i]
    j = t[i]
    while j != i:
        orbit.append(j)
        j = t[j]
    order = len(orbit)
    if order <= 2:
        return LinkCase("not_applicable", g, order=order)

    # the orbit under <pa, pb> (not just under pa.pb)
    seen, queue = {i}, deque([i])
    while queue:
        x = queue.popleft()
        for y in (pa[x], pb[x]):
            if y not in seen:
                seen.add(y)
                queue.append(y)
    anchors = [
        st.facets[x] for x in sorted(seen)
        if _contains_member(st.facets[x], alpha) and _contains_member(st.facets[x], beta)
    ]
    if not anchors:
        raise InvariantViolation(f"order {order} at {format_simplex(g)} with no facet meeting both classes")
    h = g if g in anchors else anchors[0]
    ra, rb = _contains_member(h, alpha), _contains_member(h, beta)
    ell = tuple(sorted(set(ra) & set(rb)))
    (vi,) = set(ra) - set(ell)
    (vj,) = set(rb) - set(ell)
    L = link(ell, st.sphere) if ell else st.sphere
    seq = _cycle_order(L)
    if seq is None:
        raise InvariantViolation(f"link of {format_simplex(ell)} is not a cycle")

    cls = {}
    for r in alpha:
        cls[simplex(r)] = "a"
    for r in beta:
        cls[simplex(r)] = "b"
    tags = [cls.get(tuple(sorted(set(ell) | {v}))) for v in seq]
    outside = [v for v, tag in zip(seq, tags) if tag is None]
    hi = st.facet_index[h]
    h_order = _first_return(t, hi, hi, len(t))

    if not outside:
        if len(seq) != 2 * h_order:
            raise InvariantViolation(f"link cycle of length {len(seq)} for order {h_order}")
        if any(tags[k] == tags[(k + 1) % len(seq)] for k in range(len(seq))):
            raise InvariantViolation("link cycle does not alternate between the classes")
        start = seq.index(vi)
        step = 1 if tags[(start + 1) % len(seq)] == "b" else -1
        rotated = tuple(seq[(start + step * k) % len(seq)] for k in range(len(seq)))
        return LinkCase("case_i", h, ell, h_order, cycle=rotated)

    s = compose(pb, pa)
    r_ab = _first_return(t, hi, pb[hi], len(t))
    r_ba = _first_return(s, hi, pa[hi], len(t))
    if r_ab is None or r_ba is None or h_order != r_ab + r_ba + 1:
        raise InvariantViolation(
            f"order {h_order} at {format_simplex(h)} differs from r_ab + r_ba + 1 with r = {r_ab}, {r_ba}"
        )
    return LinkCase("case_ii", h, ell, h_order, v=min(outside), r_ab=r_ab, r_ba=r_ba)


def m_ab(st: StellarStructure, alpha, beta) -> int:
    if sorted(map(simplex, alpha)) == sorted(map(simplex, beta)):
        return 1
    pa, pb = p_alpha(st, alpha), p_alpha(st, beta)
    t = compose(pa, pb)
    m = 1
    for g in st.facets:
        m = _lcm(m, _first_return(t, st.facet_index[g], st.facet_index[g], len(t)))
    if m != perm_order(t):
        raise InvariantViolation("lcm of facet orders differs from the permutation order")
    return m


# --- matrix, flatness, singularities ---------------------------------------

@dataclass(frozen=True)
class CoxeterMatrix:
    labels: tuple  # "p0" then one label per class
    classes: tuple  # None for p0, else the class (tuple of ridges)
    m: tuple  # rows of integers
    degenerate: tuple = ()  # index pairs (x, y) with x.y = identity, x != y

    @property
    def sizes(self) -> tuple:
        return tuple(None if c is None else len(c) for c in self.classes)

    def components(self) -> list:
        """Connected components of the diagram (edges where m >= 3)."""
        n = len(self.labels)
        seen, out = set(), []
        for s in range(n):
            if s in seen:
                continue
            comp, stack = [], [s]
            seen.add(s)
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in range(n):
                    if y not in seen and self.m[x][y] >= 3:
                        seen.add(y)
                        stack.append(y)
            out.append(sorted(comp))
        return out


def class_label(alpha) -> str:
    members = sorted(map(simplex, alpha))
    return "{" + ",".join(format_simplex(r) for r in members) + "}"


def generators(st: StellarStructure, classes=None) -> list:
    """``[(label, class or None, permutation)]`` for p0 and each class."""
    if classes is None:
        classes = ridge_classes(st)
    out = [("p0", None, p0(st))]
    out += [(class_label(a), tuple(map(simplex, a)), p_alpha(st, a)) for a in classes]
    return out


def coxeter_matrix(st: StellarStructure, classes=None) -> CoxeterMatrix:
    """Matrix of orders of ``x . y`` over p0 and the given classes (default: all)."""
    gens = generators(st, classes)
    n = len(gens)
    m = [[1] * n for _ in range(n)]
    degenerate = []
    for x in range(n):
        for y in range(x + 1, n):
            prod = compose(gens[x][2], gens[y][2])
            order = perm_order(prod)
            m[x][y] = m[y][x] = order
            if order == 1:
                degenerate.append((x, y))
    return CoxeterMatrix(
        tuple(g[0] for g in gens),
        tuple(g[1] for g in gens),
        tuple(map(tuple, m)),
        tuple(degenerate),
    )


@dataclass(frozen=True)
class Flatness:
    flat: bool
    witness: tuple | None = None  # first class whose p_alpha does not commute with p0

    def __bool__(self):
        return self.flat


def is_flat(st: StellarStructure) -> Flatness:
    z = p0(st)
    for alpha in ridge_classes(st):
        pa = p_alpha(st, alpha)
        if compose(z, pa) != compose(pa, z):
            return Flatness(False, tuple(alpha))
    return Flatness(True)


def flat_at(st: StellarStructure, alpha) -> bool:
    x = compose(p0(st), p_alpha(st, alpha))
    flat = is_identity(compose(x, x))
    if flat != (len(alpha) <= 2):
        raise InvariantViolation(f"(p0 pa)^2 = 1 is {flat} for a class of size {len(alpha)}")
    return flat


def singular_classes(st: StellarStructure) -> list:
    """``[(alpha, |alpha|, order)]`` for classes of three or more ridges.

    The order is taken on the facets through members of ``alpha``; see
    :func:`class_order` for how it relates to the order of ``p0 . p_alpha``.
    """
    out = []
    for alpha in ridge_classes(st):
        if len(alpha) < 3:
            continue
        local = class_order(st, alpha)
        if local != len(alpha):
            raise InvariantViolation(f"class of size {len(alpha)} has order {local}")
        full = perm_order(compose(p0(st), p_alpha(st, alpha)))
        off = len(support(st, alpha)) < len(st.facets)
        if full != _lcm(local, 2 if off else 1):
            raise InvariantViolation("global order of p0 . p_alpha inconsistent with its local order")
        out.append((tuple(alpha), len(alpha), local))
    return out


@dataclass(frozen=True)
class AlternatingCheck:
    verdict: str  # "consistent" | "inconsistent" | "not_applicable"
    collapsible: tuple | None = None  # a class consisting of one ridge
    odd: tuple | None = None  # a class whose p_alpha is odd
    parities: tuple = ()


def alternating_check(st: StellarStructure) -> AlternatingCheck:
    classes = ridge_classes(st)
    parities = tuple(perm_parity(p_alpha(st, a)) for a in classes)
    for a in classes:
        order = class_order(st, a) if len(a) >= 3 else perm_order(compose(p0(st), p_alpha(st, a)))
        if order % 2:
            return AlternatingCheck("not_applicable", parities=parities)
    collapsible = next((tuple(a) for a in classes if len(a) == 1), None)
    odd = next((tuple(a) for a, par in zip(classes, parities) if par == "odd"), None)
    ok = (collapsible is None) == (odd is None)
    return AlternatingCheck("consistent" if ok else "inconsistent", collapsible, odd, parities)


# --- closure oracle ---------------------------------------------------------

@dataclass(frozen=True)
class Closure:
    order: int | None  # None on overflow
    overflow: bool
    normal: bool | None = None  # {1, p0} normal, when the closure completed


def group_closure(st: StellarStructure, cap: int = 100_000) -> Closure:
    gens = [g[2] for g in generators(st)]
    n = len(st.facets)
    start = identity(n)
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = compose(g, x)
            if y not in seen:
                if len(seen) >= cap:
                    return Closure(None, True)
                seen.add(y)
                queue.append(y)
    z = gens[0]
    allowed = {start, z}
    normal = all(compose(compose(x, z), inverse(x)) in allowed for x in seen)
    return Closure(len(seen), False, normal)


# --- diagram and report -----------------------------------------------------

def diagram_dot(matrix: CoxeterMatrix) -> str:
    lines = ["graph coxeter {"]
    for k, label in enumerate(matrix.labels):
        lines.append(f'  n{k} [label="{label}"];')
    n = len(matrix.labels)
    for x in range(n):
        for y in range(x + 1, n):
            m = matrix.m[x][y]
            if m >= 3:
                attr = f' [label="{m}"]' if m > 3 else ""
                lines.append(f"  n{x} -- n{y}{attr};")
    comps = "; ".join(" ".join(f"n{k}" for k in c) for c in matrix.components())
    lines.append(f"  // components: {comps}")
    lines.append("}")
    return "\n".join(lines) + "\n"


@dataclass
class CoxeterReport:
    matrix: CoxeterMatrix
    flat: Flatness
    singular: list
    parities: tuple
    alternating: AlternatingCheck
    surface: object = None  # SurfaceClass when S is 2-dimensional
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        mx = self.matrix
        out = {
            "generators": list(mx.labels),
            "sizes": list(mx.sizes),
            "matrix": [list(r) for r in mx.m],
            "degenerate": [list(p) for p in mx.degenerate],
            "flat": self.flat.flat,
            "flat_witness": None if self.flat.witness is None else class_label(self.flat.witness),
            "singular": [
                {"class": class_label(a), "size": k, "order": o} for a, k, o in self.singular
            ],
            "parity": dict(zip(mx.labels[1:], self.parities)),
            "alternating": self.alternating.verdict,
            "components": [[mx.labels[k] for k in c] for c in mx.components()],
        }
        if isinstance(self.surface, str):
            out["quotient_surface"] = self.surface
        elif self.surface is not None:
            out["quotient_surface"] = {
                "name": self.surface.name,
                "euler": self.surface.euler,
                "orientable": self.surface.orientable,
                "boundary_components": self.surface.boundary_components,
            }
        out.update(self.extra)
        return out


def coxeter_report(st: StellarStructure) -> CoxeterReport:
    from .recognition import classify_surface

    matrix = coxeter_matrix(st)
    surface = None
    if st.dim == 2:
        try:
            surface = classify_surface(st.quotient)
        except NotAPseudoManifold:
            surface = "not_a_surface"  # a singular edge class lies in three or more triangles
    return CoxeterReport(
        matrix=matrix,
        flat=is_flat(st),
        singular=singular_classes(st),
        parities=tuple(perm_parity(p_alpha(st, a)) for a in ridge_classes(st)),
        alternating=alternating_check(st),
        surface=surface,
    )
