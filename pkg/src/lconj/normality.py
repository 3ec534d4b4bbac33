"""Cosets by L-points, the two normalizer constructions and the checks that
relate normality, normalizers and conjugation."""

from __future__ import annotations

from functools import lru_cache
from typing import Literal

from . import kernels
from .checks import Check, failed, passed
from .conjugacy import conjugate_by_point
from .errors import NotAnLSubgroup, NotDistributive, PointNotInAmbient
from .lsubset import (
    LPoint,
    LSubset,
    contains,
    is_l_subgroup,
    is_l_subgroup_of,
    is_normal_in,
    point_membership,
    same_carriers,
)


def coset(side: Literal["left", "right"], p: LPoint, eta: LSubset, ambient: LSubset | None = None) -> LSubset:
    """Left coset ``z -> a ^ eta(x^-1 z)`` or right coset ``z -> a ^ eta(z x^-1)``."""
    if ambient is not None and not point_membership(p, ambient):
        raise PointNotInAmbient("coset representative is not a point of the ambient")
    G, L = eta.group, eta.lattice
    xi = G.inv[p.at]
    if side == "left":
        moved = eta.array[G.mul[xi, :]]
    elif side == "right":
        moved = eta.array[G.mul[:, xi]]
    else:
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    return LSubset(G, L, L.meet_table[p.value, moved])


def _require_subgroup_of(eta: LSubset, mu: LSubset) -> None:
    same_carriers(eta, mu)
    if not is_l_subgroup(mu) or not is_l_subgroup_of(eta, mu):
        raise NotAnLSubgroup("normalizers are defined for L-subgroups of an L-group")


@lru_cache(maxsize=4096)
def normalizer_setproduct(eta: LSubset, mu: LSubset) -> LSubset:
    """Union of the L-points ``a_x`` of ``mu`` whose left and right cosets of
    ``eta`` coincide."""
    _require_subgroup_of(eta, mu)
    vals = kernels.normalizer_setproduct(eta.group, eta.lattice, eta.array, mu.array)
    return LSubset(eta.group, eta.lattice, vals)


@lru_cache(maxsize=4096)
def normalizer_conjugacy(eta: LSubset, mu: LSubset) -> LSubset:
    """Union of the L-points ``a_z`` of ``mu`` with ``eta^{a_z} <= eta``."""
    _require_subgroup_of(eta, mu)
    vals = kernels.normalizer_conjugacy(eta.group, eta.lattice, eta.array, mu.array)
    return LSubset(eta.group, eta.lattice, vals)


def normalizer(eta: LSubset, mu: LSubset, method: str = "setproduct") -> LSubset:
    if method == "setproduct":
        return normalizer_setproduct(eta, mu)
    if method == "conjugacy":
        return normalizer_conjugacy(eta, mu)
    raise ValueError(f"unknown normalizer method {method!r}")


def normality_via_conjugates(eta: LSubset, mu: LSubset) -> Check:
    """``eta`` is normal in ``mu`` iff every conjugate of ``eta`` by a point of
    ``mu`` stays inside ``eta``.

    All points ``a <= mu(x)`` are scanned and compared with the reduced scan
    over ``a = mu(x)``; ``extra`` reports both.  When normal, also checks that
    conjugates with the same tip as ``eta`` equal ``eta``.
    """
    _require_subgroup_of(eta, mu)
    G, L = eta.group, eta.lattice
    witness = None
    reduced = True
    for x in G.elements():
        for a in L.below(mu(x)):
            if not contains(eta, conjugate_by_point(eta, LPoint(a, x))):
                if witness is None:
                    witness = {"point": f"{L.label(a)}@{G.label(x)}"}
                if a == mu(x):
                    reduced = False
    full = witness is None
    if full != reduced:
        raise AssertionError("full and reduced point scans disagree")
    if not full:
        return failed(witness, "a conjugate escapes eta", full=full, reduced=reduced)
    tip = eta.tip()
    for x in G.elements():
        for a in L.below(mu(x)):
            c = conjugate_by_point(eta, LPoint(a, x))
            if c.tip() == tip and c != eta:
                return failed({"point": f"{L.label(a)}@{G.label(x)}"},
                              "same-tip conjugate differs from eta", full=True, reduced=True)
    return passed("all conjugates stay inside eta", full=True, reduced=True)


def normalizer_conjugation_identity(eta: LSubset, mu: LSubset, p: LPoint) -> Check:
    """``N(eta)^{a_z}(g) == a ^ N(eta^{a_z})(g)`` for all ``g``.

    Left side: normalize, then conjugate.  Right side: conjugate, then normalize.
    """
    _require_subgroup_of(eta, mu)
    L = eta.lattice
    if not L.distributive:
        raise NotDistributive("the identity is stated for distributive lattices")
    if not point_membership(p, mu):
        raise PointNotInAmbient("point is not in mu")
    lhs = conjugate_by_point(normalizer_setproduct(eta, mu), p)
    n_conj = normalizer_setproduct(conjugate_by_point(eta, p), mu)
    rhs = LSubset(eta.group, L, L.meet_table[p.value, n_conj.array])
    for g in eta.group.elements():
        if lhs(g) != rhs(g):
            return failed({"element": eta.group.label(g), "lhs": L.label(lhs(g)), "rhs": L.label(rhs(g))})
    return passed("identity holds pointwise", lhs=lhs, rhs=rhs)


def inverse_point_containment_check(eta: LSubset, mu: LSubset, p: LPoint) -> Check:
    """``eta^{a_z} <= eta`` iff ``eta^{a_{z^-1}} <= eta``."""
    G = eta.group
    forward = contains(eta, conjugate_by_point(eta, p))
    backward = contains(eta, conjugate_by_point(eta, LPoint(p.value, G.inverse(p.at))))
    if forward == backward:
        return passed(forward=forward, backward=backward)
    return failed({"point": f"{eta.lattice.label(p.value)}@{G.label(p.at)}",
                   "forward": forward, "backward": backward})


def cosets_commute(eta: LSubset, p: LPoint) -> bool:
    return coset("left", p, eta) == coset("right", p, eta)


def is_normal(eta: LSubset, mu: LSubset) -> bool:
    return is_normal_in(eta, mu)
