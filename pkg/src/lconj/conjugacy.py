"""Conjugates of L-subsets by L-subsets and by L-points, generated
L-subgroups, the level-set and crisp characterisations of conjugacy, and
maximal L-subgroups.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

import numpy as np

from . import kernels
from .checks import Check, failed, passed
from .errors import (
    NotAChain,
    NotAnLSubgroup,
    NotASubgroup,
    NotContained,
    NotMaximal,
    NotProperSubgroup,
    PointNotInAmbient,
    SearchSpaceTooLarge,
    TipMismatch,
)
from .group import FiniteGroup
from .lattice import Lattice
from .lsubset import (
    LPoint,
    LSubset,
    characteristic,
    contains,
    is_l_subgroup,
    is_l_subgroup_of,
    point_membership,
    same_carriers,
    set_product,
)

DEFAULT_SEARCH_CAP = 20_000_000


def conjugate_by_subset(theta: LSubset, eta: LSubset) -> LSubset:
    """``(theta eta theta^-1)(x) = sup_{x = z y z^-1} eta(y) ^ theta(z)``."""
    same_carriers(theta, eta)
    vals = kernels.conjugate_by_subset(eta.group, eta.lattice, theta.array, eta.array)
    return LSubset(eta.group, eta.lattice, vals)


def conjugate_by_point(eta: LSubset, p: LPoint, ambient: LSubset | None = None) -> LSubset:
    """``eta^{a_z}(x) = a ^ eta(z x z^-1)``.

    With ``ambient`` given, ``p`` must be an L-point of it.
    """
    if ambient is not None and not point_membership(p, ambient):
        raise PointNotInAmbient(
            f"{eta.lattice.label(p.value)}_{eta.group.label(p.at)} is not a point of the ambient"
        )
    moved = eta.array[eta.group.conj_table[p.at]]
    return LSubset(eta.group, eta.lattice, eta.lattice.meet_table[p.value, moved])


def _first_difference(a: LSubset, b: LSubset) -> int | None:
    diff = np.flatnonzero(a.array != b.array)
    return int(diff[0]) if len(diff) else None


def _mismatch(lhs: LSubset, rhs: LSubset, detail: str) -> Check:
    g = _first_difference(lhs, rhs)
    if g is None:
        return passed(detail)
    L = lhs.lattice
    return failed(
        {"element": lhs.group.label(g), "lhs": L.label(lhs(g)), "rhs": L.label(rhs(g))}, detail
    )


def conjugate_setproduct_identity_check(eta: LSubset, nu: LSubset, p: LPoint) -> Check:
    """``(eta o nu)^{a_z} == eta^{a_z} o nu^{a_z}``, both sides computed separately."""
    lhs = conjugate_by_point(set_product(eta, nu), p)
    rhs = set_product(conjugate_by_point(eta, p), conjugate_by_point(nu, p))
    return _mismatch(lhs, rhs, "conjugate of product vs product of conjugates")


def generated(eta: LSubset, mu: LSubset) -> LSubset:
    """Smallest L-subgroup of ``mu`` containing ``eta``.

    Value at ``x`` is the sup of all ``a <= tip(eta)`` for which ``x`` lies in
    the subgroup generated by the level subset ``eta_a``.
    """
    same_carriers(eta, mu)
    if not contains(mu, eta):
        raise NotContained("generated L-subgroup needs eta contained in mu")
    G, L = eta.group, eta.lattice
    out = [L.bottom] * G.order
    for a in L.below(eta.tip()):
        for x in G.subgroup_generated(eta.level_set(a)):
            out[x] = L.join(out[x], a)
    return LSubset(G, L, out)


def subgroup_closure(eta: LSubset) -> LSubset:
    """Least L-subgroup above ``eta``, by fixpoint iteration of the defining
    inequalities (no level sets involved)."""
    return LSubset(eta.group, eta.lattice, kernels.subgroup_closure(eta.group, eta.lattice, eta.array))


def search_space(lower: LSubset, upper: LSubset) -> int:
    leq = lower.lattice.leq
    return prod(int((leq[lo] & leq[:, hi]).sum()) for lo, hi in zip(lower.values, upper.values))


def l_subgroups_between(lower: LSubset, upper: LSubset, *, limit: int = 0,
                        cap: int = DEFAULT_SEARCH_CAP) -> list[LSubset]:
    """Every L-subgroup ``t`` with ``lower <= t <= upper`` pointwise.

    ``cap`` bounds the number of candidate functions (the product of the
    per-element interval sizes) before the search is attempted.
    """
    same_carriers(lower, upper)
    size = search_space(lower, upper)
    if size > cap:
        raise SearchSpaceTooLarge(f"{size} candidate functions exceed the cap {cap}")
    if size == 0:
        return []
    raw = kernels.subgroups_between(lower.group, lower.lattice, lower.array, upper.array, limit)
    return [LSubset(lower.group, lower.lattice, v) for v in raw]


def _strictly_between(eta: LSubset, mu: LSubset, cap: int) -> LSubset | None:
    for theta in l_subgroups_between(eta, mu, limit=3, cap=cap):
        if theta != eta and theta != mu:
            return theta
    return None


def is_proper(eta: LSubset, mu: LSubset) -> bool:
    return not eta.is_constant() and eta != mu


def is_maximal(eta: LSubset, mu: LSubset, cap: int = DEFAULT_SEARCH_CAP) -> bool:
    """No L-subgroup of ``mu`` lies strictly between ``eta`` and ``mu``."""
    if not is_l_subgroup_of(eta, mu) or not is_l_subgroup(mu):
        raise NotAnLSubgroup("maximality needs an L-subgroup of an L-group")
    if not is_proper(eta, mu):
        raise NotProperSubgroup("maximality is defined for proper L-subgroups only")
    return _strictly_between(eta, mu, cap) is None


def maximal_conjugate_check(eta: LSubset, mu: LSubset, p: LPoint, cap: int = DEFAULT_SEARCH_CAP) -> Check:
    """Either ``eta^{a_z} == mu^{a_z}`` or ``eta^{a_z}`` is maximal in ``mu^{a_z}``.

    ``extra["branch"]`` is ``"equal"`` or ``"maximal"`` on success.
    """
    L = eta.lattice
    if not L.is_chain:
        raise NotAChain("the maximal-conjugate statement needs a chain lattice")
    if not point_membership(p, mu):
        raise PointNotInAmbient("point is not in mu")
    if not is_maximal(eta, mu, cap):
        raise NotMaximal("eta is not maximal in mu")
    eta_c = conjugate_by_point(eta, p)
    mu_c = conjugate_by_point(mu, p)
    if eta_c == mu_c:
        return passed("conjugates coincide", branch="equal")
    if eta_c.is_constant():
        return failed({"reason": "conjugate is constant but differs from the ambient conjugate"})
    theta = _strictly_between(eta_c, mu_c, cap)
    if theta is None:
        return passed("conjugate is maximal", branch="maximal")
    return failed({"between": theta.as_labels()}, "L-subgroup strictly between the conjugates")


@dataclass(frozen=True)
class LevelConjugacy:
    """Outcome of checking ``nu == eta^{a_z}`` pointwise and level-wise."""

    pointwise: bool
    levels: bool

    @property
    def agree(self) -> bool:
        return self.pointwise == self.levels

    def __bool__(self) -> bool:
        return self.agree


def level_conjugate_equiv(eta: LSubset, nu: LSubset, p: LPoint) -> LevelConjugacy:
    """Compare ``nu == eta^{a_z}`` with ``nu_t == z^-1 eta_t z`` for all ``t <= tip(nu)``."""
    same_carriers(eta, nu)
    G, L = eta.group, eta.lattice
    if nu.tip() != L.meet(p.value, eta.tip()):
        raise TipMismatch("tip(nu) must equal a ^ tip(eta)")
    pointwise = nu == conjugate_by_point(eta, p)
    zinv = G.inverse(p.at)
    levels = all(
        nu.level_set(t) == G.conjugate_set(eta.level_set(t), zinv) for t in L.below(nu.tip())
    )
    return LevelConjugacy(pointwise, levels)


@dataclass(frozen=True)
class Bridge:
    """Crisp conjugacy of ``H`` and ``K`` decided directly and through
    characteristic L-subgroups over the two-element chain."""

    classical: bool
    lifted: bool
    z: int | None
    point: LPoint | None

    @property
    def agree(self) -> bool:
        return self.classical == self.lifted

    def __bool__(self) -> bool:
        return self.classical


TWO = Lattice.chain(["0", "1"])


def crisp_bridge(G: FiniteGroup, H, K) -> Bridge:
    H, K = frozenset(H), frozenset(K)
    if not (G.is_subgroup(H) and G.is_subgroup(K)):
        raise NotASubgroup("crisp conjugacy needs two subgroups")
    z = G.are_conjugate(H, K)
    one_H = characteristic(G, TWO, H)
    one_K = characteristic(G, TWO, K)
    point = None
    for w in G.elements():
        for b in (TWO.bottom, TWO.top):
            if conjugate_by_point(one_H, LPoint(b, w)) == one_K:
                point = LPoint(b, w)
                break
        if point is not None:
            break
    return Bridge(z is not None, point is not None, z, point)
