import pytest

from lconj.conjugacy import (
    TWO,
    conjugate_by_point,
    conjugate_by_subset,
    conjugate_setproduct_identity_check,
    crisp_bridge,
    generated,
    is_maximal,
    l_subgroups_between,
    level_conjugate_equiv,
    maximal_conjugate_check,
    search_space,
    subgroup_closure,
)
from lconj.errors import (
    NotAChain,
    NotASubgroup,
    NotContained,
    NotMaximal,
    NotProperSubgroup,
    PointNotInAmbient,
    SearchSpaceTooLarge,
    TipMismatch,
)
from lconj.group import cyclic, symmetric
from lconj.lattice import Lattice
from lconj.lsubset import LPoint, LSubset, contains, is_l_subgroup_of, point_subset

CHAIN3 = Lattice.chain(["0", "1", "2"])


def test_point_conjugate_rejects_outside_point(d16ws):
    L, G = d16ws.lattice, d16ws.group
    with pytest.raises(PointNotInAmbient):
        conjugate_by_point(d16ws.subset("eta"), LPoint(L.index("1/4"), G.index("r")), d16ws.subset("mu"))


def test_point_conjugate_is_l_subgroup_of_ambient(s4ws, d16ws):
    for ws in (s4ws, d16ws):
        c = conjugate_by_point(ws.subset("eta"), ws.points["p"], ws.subset("mu"))
        assert is_l_subgroup_of(c, ws.subset("mu"))
        assert c.tip() == ws.lattice.meet(ws.points["p"].value, ws.subset("eta").tip())


def test_subset_conjugate_by_point_subset(s4ws):
    # conjugating by the L-subset a_z gives the point conjugate by a_{z^-1}
    G, L = s4ws.group, s4ws.lattice
    eta, p = s4ws.subset("eta"), s4ws.points["p"]
    by_subset = conjugate_by_subset(point_subset(p, G, L), eta)
    assert by_subset == conjugate_by_point(eta, LPoint(p.value, G.inverse(p.at)))


def test_setproduct_identity_on_example(d16ws):
    eta, p = d16ws.subset("eta"), d16ws.points["p"]
    assert conjugate_setproduct_identity_check(eta, eta, p).ok
    assert conjugate_setproduct_identity_check(eta, d16ws.subset("mu"), p).ok


def test_generated_requires_containment(d16ws):
    with pytest.raises(NotContained):
        generated(d16ws.subset("mu"), d16ws.subset("eta"))


def test_generated_equals_closure_below_ambient(s4ws):
    G, L = s4ws.group, s4ws.lattice
    eta = LSubset.from_labels(G, L, {G.label(x): "l" for x in G.elements()} |
                              {"e": "u", "(1 2)": "a", "(1 2 3)": "b"})
    mu = LSubset.constant(G, L, L.top)
    assert generated(eta, mu) == subgroup_closure(eta)
    assert contains(generated(eta, mu), eta)


def test_enumeration_and_cap():
    G = cyclic(2)
    lo = LSubset(G, CHAIN3, [0, 0])
    hi = LSubset(G, CHAIN3, [2, 2])
    found = {t.values for t in l_subgroups_between(lo, hi)}
    # value at g may not exceed the value at e
    assert found == {(0, 0), (1, 0), (1, 1), (2, 0), (2, 1), (2, 2)}
    assert search_space(lo, hi) == 9
    with pytest.raises(SearchSpaceTooLarge):
        l_subgroups_between(lo, hi, cap=8)
    assert len(l_subgroups_between(lo, hi, limit=2)) == 2


def test_maximality():
    G = cyclic(2)
    mu = LSubset.constant(G, CHAIN3, 2)
    assert is_maximal(LSubset(G, CHAIN3, [2, 1]), mu)
    assert not is_maximal(LSubset(G, CHAIN3, [2, 0]), mu)
    with pytest.raises(NotProperSubgroup):
        is_maximal(mu, mu)
    with pytest.raises(NotProperSubgroup):
        is_maximal(LSubset.constant(G, CHAIN3, 1), mu)


def test_maximal_conjugate_branches():
    G = cyclic(2)
    mu = LSubset.constant(G, CHAIN3, 2)
    eta = LSubset(G, CHAIN3, [2, 1])
    top = maximal_conjugate_check(eta, mu, LPoint(2, G.index("g")))
    assert top.ok and top.extra["branch"] == "maximal"
    low = maximal_conjugate_check(eta, mu, LPoint(1, G.index("g")))
    assert low.ok and low.extra["branch"] == "equal"
    with pytest.raises(NotMaximal):
        maximal_conjugate_check(LSubset(G, CHAIN3, [2, 0]), mu, LPoint(2, 0))


def test_maximal_conjugate_needs_chain(s4ws):
    with pytest.raises(NotAChain):
        maximal_conjugate_check(s4ws.subset("eta"), s4ws.subset("mu"), s4ws.points["p"])


def test_level_characterization(d16ws):
    eta, p = d16ws.subset("eta"), d16ws.points["p"]
    nu = conjugate_by_point(eta, p)
    r = level_conjugate_equiv(eta, nu, p)
    assert r.pointwise and r.levels and r.agree
    # same tip, wrong conjugator: both views say no
    other = LPoint(p.value, d16ws.group.index("r^2"))
    r = level_conjugate_equiv(eta, nu, other)
    assert not r.pointwise and not r.levels
    with pytest.raises(TipMismatch):
        level_conjugate_equiv(eta, eta, p)


def test_crisp_bridge_s3():
    G = symmetric(3)
    H = G.subgroup_generated([G.index("(1 2)")])
    K = G.subgroup_generated([G.index("(1 3)")])
    A3 = G.subgroup_generated([G.index("(1 2 3)")])
    b = crisp_bridge(G, H, K)
    assert b.classical and b.lifted and b.agree
    assert b.point.value == TWO.top
    b = crisp_bridge(G, H, A3)
    assert not b.classical and not b.lifted
    with pytest.raises(NotASubgroup):
        crisp_bridge(G, {G.index("(1 2)")}, K)
