"""Acceptance gate: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py`` (lines appear in the terminal
summary) or directly with ``python3 tests/test_acceptance.py``.
"""
import random
import sys
import time
from functools import lru_cache
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from stellar import coxeter as cx  # noqa: E402
from stellar.complex import Complex, boundary, canonical_form, euler, is_closed, join  # noqa: E402
from stellar.fixtures import (  # noqa: E402
    annulus,
    bipyramid,
    bipyramid_structure,
    enumerated_structures,
    find_singular,
    octahedron,
    projective_sphere,
    projective_structure,
    simplex_sphere,
    tetrahedron_boundary,
    torus7,
)
from stellar.moves import apply_script, bounded_equivalence_search, subdivide, weld  # noqa: E402
from stellar.prism import free_face_collapse, prism  # noqa: E402
from stellar.recognition import classify_surface, recognize_sphere  # noqa: E402
from stellar.structure import (  # noqa: E402
    build_structure,
    quotient_counts,
    validate_regular,
    verify_euler_relation,
)
from strategies import random_complex  # noqa: E402

RESULTS = {}


def record(n, ok, detail):
    RESULTS[n] = (bool(ok), detail)
    assert ok, f"criterion {n}: {detail}"


def report_lines():
    return [
        f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}"
        for n, (ok, detail) in sorted(RESULTS.items())
    ]


PIPELINE = {
    "tetrahedron": (tetrahedron_boundary, 1),
    "3-sphere": (lambda: simplex_sphere(3), 1),
    "torus": (torus7, -1),
    "bipyramid": (bipyramid, None),
    "projective sphere": (projective_sphere, None),
}


@lru_cache(maxsize=None)
def pipeline_structures():
    return {name: (make(), build_structure(make(), check=True)) for name, (make, _) in PIPELINE.items()}


@lru_cache(maxsize=None)
def all_structures():
    out = [("bipyramid structure", bipyramid_structure()), ("projective structure", projective_structure())]
    out += [(f"pipeline {k}", st) for k, (_, st) in pipeline_structures().items()]
    out += enumerated_structures(per_sphere=None)
    return out


def test_1_algebraic_soundness():
    rng = random.Random(20261015)
    start = time.perf_counter()
    failures = 0
    for _ in range(200):
        K = random_complex(rng)
        if boundary(boundary(K)) != Complex():
            failures += 1
        face = rng.choice(sorted(K.faces()))
        a = max(K.vertices) + 1
        L = subdivide(K, face, a)
        if weld(L, face, a) != K or euler(L) != euler(K):
            failures += 1
        J = random_complex(rng, max_facets=8)
        shift = max(K.vertices)
        J = J.relabeled({v: v + shift for v in J.vertices})
        if 1 - euler(join(K, J)) != (1 - euler(K)) * (1 - euler(J)):
            failures += 1
    elapsed = time.perf_counter() - start
    record(1, failures == 0 and elapsed < 10, f"200 random complexes, {failures} failures, {elapsed:.2f}s (< 10s)")


def test_2_pipeline():
    problems = []
    for name, (M, st) in pipeline_structures().items():
        if st.apex in st.sphere.vertices:
            problems.append(f"{name}: apex on sphere")
        if recognize_sphere(st.sphere) != "yes":
            problems.append(f"{name}: S not recognized")
        if validate_regular(st.sphere, st.equiv):
            problems.append(f"{name}: not regular")
        if is_closed(M):
            paired = [g for pair in st.equiv.facet_pairs for g in pair]
            if sorted(paired) != st.facets:
                problems.append(f"{name}: pairing not perfect")
    record(2, not problems, f"{len(PIPELINE)} inputs built, invariants hold" if not problems else "; ".join(problems))


def test_3_euler_relation():
    got = {}
    ok = True
    for name, (M, st) in pipeline_structures().items():
        check = verify_euler_relation(M, st)
        ok = ok and check.ok
        got[name] = check.chi_quotient
        expected = PIPELINE[name][1]
        if expected is not None:
            ok = ok and check.chi_quotient == expected
    values = ", ".join(f"{k}={v}" for k, v in got.items())
    record(3, ok, f"chi(S/~) = chi(M) + (-1)^(n+1) exactly: {values}")


def test_4_bipyramid_structure():
    start = time.perf_counter()
    st = bipyramid_structure()
    chi = quotient_counts(st).euler_quotient
    surface = classify_surface(st.quotient).name
    flat = cx.is_flat(st).flat
    flat_all = all(cx.flat_at(st, a) for a in cx.ridge_classes(st))
    sub = [((1, 2),), ((2, 4), (2, 5)), ((3, 4), (3, 5))]
    row = cx.coxeter_matrix(st, sub).m[0]
    elapsed = time.perf_counter() - start
    ok = chi == 1 and surface == "disk" and flat and flat_all and row[1:] == (2, 2, 2) and elapsed < 1
    record(4, ok, f"chi={chi}, {surface}, flat={flat}, flat_at all={flat_all}, m[0]={row[1:]}, {elapsed:.3f}s")


def test_5_projective_structure():
    start = time.perf_counter()
    st = projective_structure()
    closed = st.is_closed and not validate_regular(st.sphere, st.equiv)
    sphere = recognize_sphere(st.sphere)
    chi = quotient_counts(st).euler_quotient
    surface = classify_surface(st.quotient).name
    flat = cx.is_flat(st).flat
    elapsed = time.perf_counter() - start
    ok = closed and sphere == "yes" and chi == 1 and surface == "projective_plane" and flat and elapsed < 1
    record(5, ok, f"closed={closed}, S sphere={sphere}, chi={chi}, {surface}, flat={flat}, {elapsed:.3f}s")


def test_6_coxeter_order_laws():
    exceptions = []
    checked = 0
    for name, st in all_structures():
        classes = cx.ridge_classes(st)
        z = cx.p0(st)
        try:
            for a in classes:
                x = cx.compose(z, cx.p_alpha(st, a))
                if cx.is_identity(cx.compose(x, x)) != (len(a) <= 2):
                    exceptions.append((name, "involution law"))
                if len(a) >= 3 and cx.class_order(st, a) != len(a):
                    exceptions.append((name, "class order law"))
            cx.singular_classes(st)
            for i, a in enumerate(classes):
                for b in classes[i + 1:]:
                    cx.m_ab(st, a, b)  # lcm law asserted inside
                    for g in st.facets:
                        cx.link_cycle_check(st, a, b, g)
                    checked += 1
        except Exception as exc:  # an InvariantViolation is a counterexample
            exceptions.append((name, repr(exc)))
    o = cx.order_of_facet(bipyramid_structure(), ((1, 2),), ((2, 4), (2, 5)), (1, 2, 4))
    instance = (o.order, o.r_ab, o.r_ba) == (4, 1, 2)
    record(
        6,
        not exceptions and instance,
        f"{len(all_structures())} structures, {checked} class pairs, {len(exceptions)} exceptions; "
        f"bipyramid structure order={o.order}, r_ab={o.r_ab}, r_ba={o.r_ba}",
    )


def test_7_singularity():
    found = find_singular()
    ok = found is not None
    detail = "no size-3 class found"
    if ok:
        name, st = found
        sing = cx.singular_classes(st)
        flat = cx.is_flat(st).flat
        ok = any(k == 3 and o == 3 for _, k, o in sing) and not flat
        detail = f"{name}: singular (size, order) = {[(k, o) for _, k, o in sing]}, flat={flat}"
    record(7, ok, detail)


def test_8_flatness_oracle():
    agree = disagree = overflow = 0
    for name, st in all_structures():
        closure = cx.group_closure(st, cap=100_000)
        if closure.overflow:
            overflow += 1
        elif closure.normal == cx.is_flat(st).flat:
            agree += 1
        else:
            disagree += 1
    record(8, disagree == 0, f"{agree} agree, {disagree} disagree, {overflow} above 10^5 elements")


def test_9_alternating():
    applicable = inconsistent = 0
    for name, st in all_structures():
        res = cx.alternating_check(st)
        if res.verdict == "not_applicable":
            continue
        applicable += 1
        inconsistent += res.verdict == "inconsistent"
    ex1 = cx.alternating_check(bipyramid_structure())
    ex1_ok = ex1.verdict == "consistent" and ex1.collapsible is not None and ex1.odd is not None
    record(
        9,
        inconsistent == 0 and ex1_ok,
        f"{applicable} fixtures meet the premise, {inconsistent} inconsistent; bipyramid structure collapsible witness={ex1.collapsible}",
    )


def test_10_prism_collapse():
    fixtures = [
        Complex([(1, 2)]), tetrahedron_boundary(), simplex_sphere(3), torus7(), octahedron(),
        bipyramid(), projective_sphere(), annulus(), bipyramid_structure().quotient.as_complex(),
    ]
    euler_ok = all(euler(prism(K)) == euler(K) for K in fixtures)
    disk = free_face_collapse(bipyramid_structure().quotient).collapsible
    circle = free_face_collapse(Complex([(1, 2), (2, 3), (1, 3)])).collapsible
    record(10, euler_ok and disk and not circle,
           f"prism euler on {len(fixtures)} fixtures={euler_ok}, bipyramid disk collapses={disk}, circle collapses={circle}")


def test_11_search():
    start = time.perf_counter()
    res = bounded_equivalence_search(tetrahedron_boundary(), octahedron(), max_nodes=10_000)
    elapsed = time.perf_counter() - start
    pairs = [
        (tetrahedron_boundary(), octahedron()),
        (octahedron(), tetrahedron_boundary()),
        (tetrahedron_boundary(), subdivide(subdivide(tetrahedron_boundary(), (1, 2), 5), (2, 3), 6)),
        (Complex([(1, 2), (2, 3), (1, 3)]), Complex([(1, 2), (2, 3), (3, 4), (1, 4)])),
        (bipyramid(), octahedron().relabeled({1: 20})),
    ]
    replay_ok = True
    for K, L in pairs:
        r = bounded_equivalence_search(K, L, max_nodes=10_000)
        if r.equivalent:
            replay_ok = replay_ok and canonical_form(apply_script(K, r.script)) == canonical_form(L)
        else:
            replay_ok = False
    ok = res.equivalent and res.nodes <= 10_000 and elapsed < 30 and replay_ok
    record(11, ok, f"tetrahedron -> octahedron in {res.nodes} nodes, {elapsed:.2f}s; {len(pairs)} scripts replay={replay_ok}")


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    tests.sort(key=lambda f: int(f.__name__.split("_")[1]))
    for t in tests:
        try:
            t()
        except AssertionError:
            pass
    print("\n".join(report_lines()))
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) else 1)
