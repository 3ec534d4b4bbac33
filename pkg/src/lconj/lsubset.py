"""L-subsets of a finite group: evaluation, level subsets, set products,
the L-subgroup and normality predicates, and transport along homomorphisms.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import MixedCarriers, NotAnLSubgroup, ValidationError
from .group import FiniteGroup, GroupHom
from .lattice import Lattice


class LSubset:
    """A total map from group elements to lattice elements (both by index)."""

    def __init__(self, group: FiniteGroup, lattice: Lattice, values: Sequence[int]):
        vals = tuple(int(v) for v in values)
        if len(vals) != group.order:
            raise ValidationError(f"L-subset needs {group.order} values, got {len(vals)}")
        if vals and (min(vals) < 0 or max(vals) >= len(lattice)):
            raise ValidationError("L-subset value outside the lattice")
        self.group = group
        self.lattice = lattice
        self.values = vals

    @classmethod
    def from_labels(cls, group: FiniteGroup, lattice: Lattice, mapping: dict[str, str]) -> "LSubset":
        vals = [-1] * group.order
        for k, v in mapping.items():
            vals[group.index(k)] = lattice.index(v)
        if -1 in vals:
            raise ValidationError(f"no value for {group.label(vals.index(-1))!r}")
        return cls(group, lattice, vals)

    @classmethod
    def constant(cls, group: FiniteGroup, lattice: Lattice, value: int) -> "LSubset":
        return cls(group, lattice, [value] * group.order)

    @cached_property
    def array(self) -> np.ndarray:
        a = np.array(self.values, dtype=np.intp)
        a.setflags(write=False)
        return a

    def __call__(self, x: int) -> int:
        return self.values[x]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LSubset):
            return NotImplemented
        return self.values == other.values and self.group == other.group and self.lattice == other.lattice

    def __hash__(self) -> int:
        return hash(self.values)

    def __repr__(self) -> str:
        return f"LSubset({self.as_labels()})"

    def as_labels(self) -> dict[str, str]:
        return {self.group.label(x): self.lattice.label(v) for x, v in enumerate(self.values)}

    def tip(self) -> int:
        return self.lattice.sup_over(self.values)

    def tail(self) -> int:
        return self.lattice.inf_over(self.values)

    def level_set(self, a: int) -> frozenset[int]:
        """``{x : self(x) >= a}``."""
        leq = self.lattice.leq
        return frozenset(x for x, v in enumerate(self.values) if leq[a, v])

    def is_constant(self) -> bool:
        return len(set(self.values)) == 1


@dataclass(frozen=True)
class LPoint:
    """The L-point ``a_x``: value ``a`` at ``x`` and bottom elsewhere."""

    value: int
    at: int


def l_point(a: int, x: int) -> LPoint:
    return LPoint(int(a), int(x))


def evaluate(eta: LSubset, x: int) -> int:
    return eta(x)


def tip(eta: LSubset) -> int:
    return eta.tip()


def tail(eta: LSubset) -> int:
    return eta.tail()


def level_set(eta: LSubset, a: int) -> frozenset[int]:
    return eta.level_set(a)


def same_carriers(*subsets: LSubset) -> None:
    first = subsets[0]
    for s in subsets[1:]:
        if s.group is not first.group and s.group != first.group:
            raise MixedCarriers("L-subsets live on different groups")
        if s.lattice is not first.lattice and s.lattice != first.lattice:
            raise MixedCarriers("L-subsets take values in different lattices")


def point_subset(p: LPoint, group: FiniteGroup, lattice: Lattice) -> LSubset:
    vals = [lattice.bottom] * group.order
    vals[p.at] = p.value
    return LSubset(group, lattice, vals)


def characteristic(group: FiniteGroup, lattice: Lattice, A: Iterable[int]) -> LSubset:
    """``1_A``: top on ``A``, bottom elsewhere."""
    A = set(A)
    return LSubset(group, lattice, [lattice.top if x in A else lattice.bottom for x in group.elements()])


def point_membership(p: LPoint, mu: LSubset) -> bool:
    """``a_x`` belongs to ``mu`` iff ``mu(x) >= a``."""
    return mu.lattice.le(p.value, mu(p.at))


def trivial_of(eta: LSubset) -> LSubset:
    """Identity gets the tip, everything else the tail."""
    t0, a0 = eta.tail(), eta.tip()
    G = eta.group
    return LSubset(G, eta.lattice, [a0 if x == G.identity else t0 for x in G.elements()])


def intersection(eta: LSubset, nu: LSubset) -> LSubset:
    same_carriers(eta, nu)
    m = eta.lattice.meet_table
    return LSubset(eta.group, eta.lattice, m[eta.array, nu.array])


def union(eta: LSubset, nu: LSubset) -> LSubset:
    same_carriers(eta, nu)
    j = eta.lattice.join_table
    return LSubset(eta.group, eta.lattice, j[eta.array, nu.array])


# -- containment ---------------------------------------------------------------

def contains(nu: LSubset, eta: LSubset) -> bool:
    """``eta <= nu`` pointwise."""
    same_carriers(nu, eta)
    return bool(nu.lattice.leq[eta.array, nu.array].all())


def contains_by_levels(nu: LSubset, eta: LSubset) -> bool:
    """``eta_t <= nu_t`` for every ``t <= tip(eta)``."""
    same_carriers(nu, eta)
    L = eta.lattice
    return all(eta.level_set(t) <= nu.level_set(t) for t in L.below(eta.tip()))


# -- L-subgroup predicates -----------------------------------------------------

def l_subgroup_violation(eta: LSubset) -> tuple[str, ...] | None:
    """A replayable witness that ``eta`` is not an L-subgroup, or None.

    ``("product", x, y)`` means ``eta(xy) < eta(x) ^ eta(y)``;
    ``("inverse", x)`` means ``eta(x^-1) != eta(x)``.
    """
    x, y = kernels.subgroup_violation(eta.group, eta.lattice, eta.array)
    G = eta.group
    if x < 0:
        return None
    if y < 0:
        return ("inverse", G.label(x))
    return ("product", G.label(x), G.label(y))


def is_l_subgroup(eta: LSubset) -> bool:
    return l_subgroup_violation(eta) is None


def is_l_subgroup_by_levels(eta: LSubset) -> bool:
    """Every non-empty level subset is a subgroup."""
    G = eta.group
    for a in range(len(eta.lattice)):
        S = eta.level_set(a)
        if S and not G.is_subgroup(S):
            return False
    return True


def is_l_subgroup_of(eta: LSubset, mu: LSubset) -> bool:
    return contains(mu, eta) and is_l_subgroup(eta)


def is_l_subgroup_of_by_levels(eta: LSubset, mu: LSubset) -> bool:
    """Every non-empty ``eta_a`` is a subgroup contained in ``mu_a``."""
    same_carriers(eta, mu)
    G = eta.group
    for a in range(len(eta.lattice)):
        S = eta.level_set(a)
        if S and not (G.is_subgroup(S) and S <= mu.level_set(a)):
            return False
    return True


def normality_violation(eta: LSubset, mu: LSubset) -> tuple[str, str] | None:
    """``(x, y)`` with ``eta(y x y^-1) < eta(x) ^ mu(y)``, or None."""
    same_carriers(eta, mu)
    if not is_l_subgroup_of(eta, mu):
        raise NotAnLSubgroup("normality is only defined for L-subgroups of the ambient")
    x, y = kernels.normal_violation(eta.group, eta.lattice, eta.array, mu.array)
    if x < 0:
        return None
    return (eta.group.label(x), eta.group.label(y))


def is_normal_in(eta: LSubset, mu: LSubset) -> bool:
    return normality_violation(eta, mu) is None


def is_normal_in_by_levels(eta: LSubset, mu: LSubset) -> bool:
    """Each non-empty ``eta_a`` is a normal subgroup of ``mu_a``."""
    same_carriers(eta, mu)
    G = eta.group
    for a in range(len(eta.lattice)):
        H = eta.level_set(a)
        if not H:
            continue
        for y in mu.level_set(a):
            if G.conjugate_set(H, y) != H:
                return False
    return True


# -- products and transport ----------------------------------------------------

def set_product(eta: LSubset, nu: LSubset) -> LSubset:
    """``(eta o nu)(x) = sup_{x = yz} eta(y) ^ nu(z)``."""
    same_carriers(eta, nu)
    return LSubset(eta.group, eta.lattice, kernels.set_product(eta.group, eta.lattice, eta.array, nu.array))


def image(f: GroupHom, eta: LSubset) -> LSubset:
    """``f(eta)(y)`` is the sup of ``eta`` over the fibre of ``y`` (bottom if empty)."""
    if eta.group != f.domain:
        raise MixedCarriers("L-subset is not over the homomorphism's domain")
    L = eta.lattice
    out = [L.bottom] * f.codomain.order
    for x, v in enumerate(eta.values):
        y = f(x)
        out[y] = L.join(out[y], v)
    return LSubset(f.codomain, L, out)


def preimage(f: GroupHom, nu: LSubset) -> LSubset:
    if nu.group != f.codomain:
        raise MixedCarriers("L-subset is not over the homomorphism's codomain")
    return LSubset(f.domain, nu.lattice, nu.array[f.map])
