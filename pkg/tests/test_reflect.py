import pytest
from hypothesis import given, settings

from almost_affine.cartan import EVEN, ODD, CartanPair, canonical_form, is_normalized
from almost_affine.catalog import match_parametric
from almost_affine.reflect import (
    DEFAULT_LIMITS,
    DegenerateReflection,
    Limits,
    NotIsotropicOdd,
    OrbitClass,
    OverflowReport,
    odd_reflect,
    reflection_orbit,
    tables_match,
)
from almost_affine.scalar import Quadratic
from shared import fixture, fixture_matrices
from strategies import connected_pairs


def svect(a):
    return CartanPair.make([[2, -1, -1], [1 - a, 0, a], [1 + a, -a, 0]], [EVEN, ODD, ODD])


def test_reflection_by_hand():
    # b = (-2, -1, 0), c = (-2, 1, 0) for the sl(1|3) form reflected at node 0
    p = CartanPair.make([[0, 1, 0], [-1, 2, -1], [0, -1, 2]], [ODD, EVEN, EVEN])
    q = odd_reflect(p, 0)
    assert q.matrix == ((0, -1, 0), (1, 0, -1), (0, -1, 2))
    assert q.parities == (ODD, ODD, EVEN)


def test_only_grey_nodes_reflect():
    p = CartanPair.make([[2, -1], [-1, 1]], [EVEN, ODD])
    with pytest.raises(NotIsotropicOdd):
        odd_reflect(p, 1)
    with pytest.raises(NotIsotropicOdd):
        odd_reflect(p, 0)


def test_sl12_orbit():
    o = reflection_orbit(CartanPair.make([[0, -1], [-1, 2]], [ODD, EVEN]))
    assert len(o) == 2
    expected = {canonical_form(CartanPair.make([[0, -1], [-1, 2]], [ODD, EVEN])),
                canonical_form(CartanPair.make([[0, 1], [-1, 0]], [ODD, ODD]))}
    assert set(o.members) == expected


def test_parametric_orbit_table():
    e = next(e for e in fixture("super") if e.label == "NS3_82")
    o = reflection_orbit(e.matrices[0])
    assert len(o) == 4
    assert tables_match(o.transitions, [[1, 2, 3], [0, None, None], [None, 0, None], [None, None, 0]])
    assert tables_match(o.transitions, e.transitions)
    assert set(o.members) == {canonical_form(m) for m in e.matrices}


def test_all_white_orbit():
    o = reflection_orbit(CartanPair.make([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]))
    assert len(o) == 1 and o.transitions == [[None, None, None]]


def test_svect_steps_alpha():
    p = svect(5)
    names = {match_parametric(odd_reflect(p, k)).name for k in (1, 2)}
    assert names == {"svect_4(1|2)", "svect_6(1|2)"}


def test_irrational_svect_orbit_overflows():
    res = reflection_orbit(svect(Quadratic(0, 1, 2)), Limits(max_members=16))
    assert isinstance(res, OverflowReport)
    assert res.reason == "max_members" and len(res.partial) == 16


def test_limits_parse():
    assert Limits.parse("members=5,height=7") == Limits(5, 7)
    assert Limits.parse("") == DEFAULT_LIMITS
    with pytest.raises(ValueError):
        Limits.parse("depth=3")


def test_orbit_document_round_trip():
    e = next(e for e in fixture("super") if e.label == "NS3_82")
    o = reflection_orbit(e.matrices[0])
    back = OrbitClass.from_doc(o.to_doc())
    assert back.members == o.members and back.transitions == o.transitions


def test_tables_match_rejects_different_shapes():
    assert not tables_match([[1, None], [0, None]], [[None, None], [None, None]])
    assert tables_match([[1, None], [0, None]], [[None, 1], [None, 0]])


# properties ------------------------------------------------------------------

def all_fixture_matrices():
    return fixture_matrices("super") + fixture_matrices("even")


def test_involution_on_fixtures():
    checked = 0
    for p in all_fixture_matrices():
        for k in p.grey_nodes():
            q = odd_reflect(p, k)
            assert canonical_form(odd_reflect(q, k)) == canonical_form(p)
            assert is_normalized(q)
            checked += 1
    # only the parametric entries carry grey nodes
    assert checked == 30


def test_involution_on_catalog(catalog):
    checked = 0
    for e in catalog:
        p = e.pair
        for k in p.grey_nodes():
            q = odd_reflect(p, k)
            assert canonical_form(odd_reflect(q, k)) == canonical_form(p)
            checked += 1
    assert checked > 1000


@settings(max_examples=1500)
@given(connected_pairs(min_size=2, max_size=5, kinds="WBGG"))
def test_involution_on_random_pairs(p):
    for k in p.grey_nodes():
        try:
            q = odd_reflect(p, k)
        except DegenerateReflection:
            continue
        assert is_normalized(q)
        assert canonical_form(odd_reflect(q, k)) == canonical_form(p)


def test_orbit_closure_on_fixtures():
    for e in fixture("super"):
        o = reflection_orbit(e.matrices[0])
        assert isinstance(o, OrbitClass)
        members = set(o.members)
        for m, row in zip(o.members, o.transitions):
            for k in range(m.n):
                if k in m.grey_nodes():
                    q = canonical_form(odd_reflect(m, k))
                    assert q in members
                    assert o.members[row[k]] == q
                else:
                    assert row[k] is None
