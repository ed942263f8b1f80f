import pytest

from stellar import coxeter as cx
from stellar.errors import StructureError
from stellar.fixtures import annulus, bipyramid_structure, find_alternating, find_singular, projective_structure
from stellar.structure import build_structure

ALPHA = ((1, 2),)
BETA = ((2, 4), (2, 5))
GAMMA = ((3, 4), (3, 5))


def facets(st, perm):
    return {st.facets[i]: st.facets[j] for i, j in enumerate(perm) if i != j}


def test_p0_bipyramid():
    st = bipyramid_structure()
    z = cx.p0(st)
    assert facets(st, z)[(1, 2, 4)] == (1, 2, 5)
    assert facets(st, z)[(2, 3, 4)] == (2, 3, 5)
    assert cx.is_identity(cx.compose(z, z))
    assert cx.perm_order(z) == 2 and cx.perm_parity(z) == "odd"


def test_p_alpha_bipyramid():
    st = bipyramid_structure()
    assert facets(st, cx.p_alpha(st, ALPHA)) == {(1, 2, 4): (1, 2, 5), (1, 2, 5): (1, 2, 4)}
    moved = facets(st, cx.p_alpha(st, BETA))
    assert moved[(1, 2, 4)] == (2, 3, 4) and moved[(1, 2, 5)] == (2, 3, 5)
    assert cx.perm_order(cx.compose(cx.p0(st), cx.p_alpha(st, ALPHA))) == 2


def test_identity_permutation():
    e = cx.identity(5)
    assert cx.perm_order(e) == 1 and cx.perm_parity(e) == "even"


def test_order_of_facet_bipyramid():
    st = bipyramid_structure()
    o = cx.order_of_facet(st, ALPHA, BETA, (1, 2, 4))
    assert (o.order, o.r_ab, o.r_ba) == (4, 1, 2)
    assert cx.order_of_facet(st, ALPHA, BETA, (1, 3, 4)).order == 1
    assert cx.m_ab(st, ALPHA, BETA) == 4
    assert cx.m_ab(st, ALPHA, ALPHA) == 1


def test_link_cycle_bipyramid():
    st = bipyramid_structure()
    case = cx.link_cycle_check(st, ALPHA, BETA, (1, 2, 4))
    assert case.kind == "case_ii" and case.ridge_face == (2,)
    assert (case.v, case.r_ab, case.r_ba) == (3, 1, 2)
    assert cx.link_cycle_check(st, ALPHA, GAMMA, (1, 2, 4)).kind == "not_applicable"


def test_link_cycle_moves_to_orbit_anchor():
    # (2 3 4) has order 4 but contains no member of ALPHA
    case = cx.link_cycle_check(bipyramid_structure(), ALPHA, BETA, (2, 3, 4))
    assert case.kind == "case_ii" and case.facet != (2, 3, 4)


def test_matrix_bipyramid_subset():
    mx = cx.coxeter_matrix(bipyramid_structure(), [ALPHA, BETA, GAMMA])
    assert mx.m[0] == (1, 2, 2, 2)
    assert all(mx.m[i][i] == 1 for i in range(4))
    assert mx.sizes == (None, 1, 2, 2)


def test_flatness_examples():
    for st in (bipyramid_structure(), projective_structure()):
        assert cx.is_flat(st)
        assert cx.singular_classes(st) == []
        assert all(cx.flat_at(st, a) for a in cx.ridge_classes(st))
    assert all(x == 2 for x in cx.coxeter_matrix(projective_structure()).m[0][1:])


def test_singular_fixture():
    name, st = find_singular()
    sing = cx.singular_classes(st)
    assert [(k, o) for _, k, o in sing] == [(3, 3)]
    flat = cx.is_flat(st)
    assert not flat and flat.witness is not None
    alpha = sing[0][0]
    assert not cx.flat_at(st, alpha)


def test_alternating_fixture_case_i():
    name, st, a, b, g = find_alternating()
    case = cx.link_cycle_check(st, a, b, g)
    assert case.kind == "case_i"
    assert len(case.cycle) == 2 * case.order


def test_alternating_check_bipyramid():
    res = cx.alternating_check(bipyramid_structure())
    assert res.verdict == "consistent"
    assert res.collapsible == ALPHA and res.odd is not None


def test_group_closure():
    c = cx.group_closure(bipyramid_structure())
    assert not c.overflow and c.order <= 48 and c.normal
    assert cx.group_closure(bipyramid_structure(), cap=1).overflow


def test_open_structure_rejected():
    st = build_structure(annulus())
    with pytest.raises(StructureError):
        cx.p0(st)


def test_diagram_dot():
    mx = cx.coxeter_matrix(bipyramid_structure(), [ALPHA, BETA, GAMMA])
    dot = cx.diagram_dot(mx)
    assert dot.count('[label="4"]') == 1
    assert "n2 -- n3;" in dot
    assert sum(1 for line in dot.splitlines() if "--" in line) == 2


def test_report_to_dict():
    d = cx.coxeter_report(projective_structure()).to_dict()
    assert d["flat"] is True and d["quotient_surface"]["name"] == "projective_plane"
