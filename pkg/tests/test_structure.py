import pytest

from stellar.complex import Complex, boundary, euler, is_closed
from stellar.errors import StellarError, StructureError
from stellar.fixtures import (
    PROJECTIVE_CLASSES,
    annulus,
    bipyramid,
    bipyramid_structure,
    projective_structure,
    simplex_sphere,
    tetrahedron_boundary,
    torus7,
)
from stellar.moves import bounded_equivalence_search, simplify
from stellar.recognition import classify_surface, is_stellar_manifold, recognize_sphere
from stellar.structure import (
    RegularEquivalence,
    build_structure,
    induced_equivalence,
    quotient_counts,
    reglue,
    structure_from,
    validate_regular,
    verify_euler_relation,
)


def test_validate_regular_examples():
    st = bipyramid_structure()
    assert validate_regular(st.sphere, st.equiv) == []
    bad = RegularEquivalence.build([(3, 4)])
    problems = validate_regular(tetrahedron_boundary(), bad)
    assert any("(1 3 4)" in p for p in problems)
    assert validate_regular(tetrahedron_boundary(), RegularEquivalence()) == []


def test_validate_rejects_mismatched_pair():
    e = RegularEquivalence.build([], [((1, 2, 4), (1, 3, 4))])
    assert any("correspond" in p for p in validate_regular(bipyramid(), e))
    with pytest.raises(StructureError):
        structure_from(bipyramid(), e)


def test_induced_equivalence_bipyramid():
    st = bipyramid_structure()
    classes = induced_equivalence(st.sphere, st.equiv, 1)
    assert len(classes) == 6
    assert ((2, 4), (2, 5)) in classes and ((1, 2),) in classes
    with pytest.raises(StellarError):
        induced_equivalence(st.sphere, st.equiv, 3)


def test_induced_equivalence_projective_vertices():
    st = projective_structure()
    got = [tuple(v for (v,) in c) for c in st.induced(0)]
    assert got == sorted(PROJECTIVE_CLASSES)


def test_empty_equivalence_singletons():
    K = tetrahedron_boundary()
    st = structure_from(K, RegularEquivalence())
    assert quotient_counts(st).h == tuple(K.f_vector())
    assert all(len(c) == 1 for c in st.induced(1))


def test_quotient_counts_bipyramid():
    q = quotient_counts(bipyramid_structure())
    assert q.h == (4, 6, 3) and q.s[:2] == (5, 9)
    assert q.euler_quotient == 1


def test_quotient_counts_projective():
    q = quotient_counts(projective_structure())
    assert q.h == (5, 12, 8)
    assert q.euler_quotient == 1
    assert q.s[2] == 2 * q.h[2]


def test_quotient_as_complex_bipyramid():
    assert bipyramid_structure().quotient.as_complex() == Complex([(1, 2, 4), (1, 3, 4), (2, 3, 4)])
    assert not projective_structure().quotient.is_simplicial()


@pytest.mark.parametrize(
    "M, chi_q",
    [(tetrahedron_boundary(), 1), (simplex_sphere(3), 1), (torus7(), -1)],
)
def test_pipeline_euler_relation(M, chi_q):
    st = build_structure(M, check=True)
    assert st.is_closed
    assert recognize_sphere(st.sphere) == "yes"
    check = verify_euler_relation(M, st)
    assert check.ok and check.chi_quotient == chi_q
    counts = quotient_counts(st)
    assert counts.euler_total == euler(M)
    assert counts.q[0] == counts.h[0] + 1


def test_tetrahedron_structure_by_hand():
    st = build_structure(tetrahedron_boundary())
    assert st.apex == 5
    assert st.sphere == Complex([(1, 4), (2, 4), (2, 7), (3, 7), (3, 6), (1, 6)])
    assert st.equiv.vertex_classes == ((4, 6, 7),)
    assert len(st.steps) == 3


def test_build_steps_bounded():
    M = torus7()
    st = build_structure(M)
    assert len(st.steps) == len(M) - 1
    assert all(s.case in (1, 2) for s in st.steps)


def test_build_with_boundary_leaves_unpaired_facets():
    M = annulus()
    st = build_structure(M, check=True)
    assert not st.is_closed
    origin = dict(st.origin)
    images = {tuple(sorted(origin[v] for v in f)) for f in st.unpaired}
    assert images == set(boundary(M).generators)
    assert quotient_counts(st).q is None


def test_build_errors():
    with pytest.raises(StructureError):
        build_structure(Complex([(1, 2, 3), (4, 5, 6)]))
    with pytest.raises(StellarError):
        build_structure(Complex([(1, 2, 3), (3, 4)]))


def test_reglue_matches_source_on_spheres():
    for M in (tetrahedron_boundary(), bipyramid()):
        R = reglue(build_structure(M))
        reduced, _ = simplify(R)
        assert bounded_equivalence_search(reduced, M, max_nodes=10_000).equivalent


def test_reglue_concordance():
    for M in (torus7(), simplex_sphere(3)):
        R = reglue(build_structure(M))
        assert euler(R) == euler(M) and is_closed(R)
        assert is_stellar_manifold(R).verdict == "yes"
    T = reglue(build_structure(torus7()))
    assert classify_surface(T).name == "torus"


def test_reglue_projective_is_closed_three_manifold():
    R = reglue(projective_structure())
    assert R.dim == 3 and is_closed(R) and euler(R) == 0
