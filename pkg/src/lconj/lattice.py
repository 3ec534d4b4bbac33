"""Finite bounded lattices stored as dense order, meet and join tables.

Elements are addressed by their integer index into ``Lattice.labels``.
"""

from __future__ import annotations

from functools import cached_property
from itertools import product
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DuplicateLabel, NotALattice, NotAPartialOrder, ValidationError


class Lattice:
    """Immutable finite lattice.

    ``leq[a, b]`` is True iff ``a <= b``; ``meet`` and ``join`` are index tables.
    """

    def __init__(self, labels: Sequence[str], leq: np.ndarray):
        labels = tuple(str(x) for x in labels)
        if not labels:
            raise NotALattice("a lattice needs at least one element")
        if len(set(labels)) != len(labels):
            dup = next(x for x in labels if labels.count(x) > 1)
            raise DuplicateLabel(f"duplicate lattice label {dup!r}")
        leq = np.array(leq, dtype=bool)
        n = len(labels)
        if leq.shape != (n, n):
            raise ValidationError(f"order relation must be {n}x{n}")
        leq = _reflexive_transitive_closure(leq)
        both = leq & leq.T
        np.fill_diagonal(both, False)
        if both.any():
            a, b = map(int, np.argwhere(both)[0])
            raise NotAPartialOrder(
                f"order has a cycle through {labels[a]!r} and {labels[b]!r}"
            )
        self.labels = labels
        self.leq = leq
        self.leq.setflags(write=False)
        self._index = {x: i for i, x in enumerate(labels)}
        self.meet_table = self._bound_table(leq, "meet")
        self.join_table = self._bound_table(leq.T, "join")
        mins = [i for i in range(n) if leq[i].all()]
        maxs = [i for i in range(n) if leq[:, i].all()]
        # a finite lattice always has both; the tables above guarantee it
        self.bottom = mins[0]
        self.top = maxs[0]

    def _bound_table(self, order: np.ndarray, kind: str) -> np.ndarray:
        # greatest lower bound w.r.t. `order` (pass the transpose for joins)
        n = len(self.labels)
        table = np.empty((n, n), dtype=np.intp)
        for a in range(n):
            for b in range(a, n):
                lower = np.flatnonzero(order[:, a] & order[:, b])
                best = [c for c in lower if order[lower, c].all()]
                if len(best) != 1:
                    raise NotALattice(
                        f"{self.labels[a]!r} and {self.labels[b]!r} have no unique {kind}",
                        pair=(self.labels[a], self.labels[b]),
                    )
                table[a, b] = table[b, a] = best[0]
        table.setflags(write=False)
        return table

    # -- constructors -------------------------------------------------
    @classmethod
    def from_covers(cls, labels: Sequence[str], covers: Iterable[tuple[str, str]]) -> "Lattice":
        """Build from cover pairs ``(lower, upper)``."""
        return cls.from_relation(labels, covers)

    @classmethod
    def from_relation(cls, labels: Sequence[str], pairs: Iterable[tuple[str, str]]) -> "Lattice":
        labels = [str(x) for x in labels]
        if len(set(labels)) != len(labels):
            dup = next(x for x in labels if labels.count(x) > 1)
            raise DuplicateLabel(f"duplicate lattice label {dup!r}")
        index = {x: i for i, x in enumerate(labels)}
        leq = np.zeros((len(labels), len(labels)), dtype=bool)
        for lo, hi in pairs:
            try:
                leq[index[str(lo)], index[str(hi)]] = True
            except KeyError as exc:
                raise ValidationError(f"unknown lattice label {exc.args[0]!r}") from None
        return cls(labels, leq)

    @classmethod
    def chain(cls, labels: Sequence[str]) -> "Lattice":
        """Chain whose order is the listed order, bottom first."""
        n = len(labels)
        return cls(labels, np.triu(np.ones((n, n), dtype=bool)))

    # -- element access -----------------------------------------------
    def __len__(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"Lattice({list(self.labels)!r})"

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.leq, other.leq)

    def __hash__(self) -> int:
        return hash((self.labels, self.leq.tobytes()))

    def index(self, label: str) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise ValidationError(f"unknown lattice label {label!r}") from None

    def label(self, a: int) -> str:
        return self.labels[a]

    def le(self, a: int, b: int) -> bool:
        return bool(self.leq[a, b])

    def meet(self, a: int, b: int) -> int:
        return int(self.meet_table[a, b])

    def join(self, a: int, b: int) -> int:
        return int(self.join_table[a, b])

    def sup_over(self, elements: Iterable[int]) -> int:
        """Join of a finite set; the empty join is bottom."""
        acc = self.bottom
        for a in elements:
            acc = self.join_table[acc, a]
        return int(acc)

    def inf_over(self, elements: Iterable[int]) -> int:
        acc = self.top
        for a in elements:
            acc = self.meet_table[acc, a]
        return int(acc)

    def below(self, a: int) -> list[int]:
        """All elements ``b <= a``."""
        return [int(b) for b in np.flatnonzero(self.leq[:, a])]

    # -- diagnostics --------------------------------------------------
    @cached_property
    def is_chain(self) -> bool:
        return bool((self.leq | self.leq.T).all())

    @cached_property
    def distributivity_witness(self) -> tuple[int, int, int] | None:
        m, j = self.meet_table, self.join_table
        n = len(self)
        for x, y, z in product(range(n), repeat=3):
            if m[x, j[y, z]] != j[m[x, y], m[x, z]]:
                return (x, y, z)
        return None

    def is_distributive(self) -> tuple[bool, tuple[str, str, str] | None]:
        """Return ``(True, None)`` or ``(False, (x, y, z))`` with
        ``x ∧ (y ∨ z) != (x ∧ y) ∨ (x ∧ z)``."""
        w = self.distributivity_witness
        if w is None:
            return True, None
        return False, tuple(self.labels[i] for i in w)

    @property
    def distributive(self) -> bool:
        return self.distributivity_witness is None

    def to_spec(self) -> dict:
        """Document form (cover relation, or chain) accepted by :func:`build_lattice`."""
        if self.is_chain:
            order = sorted(range(len(self)), key=lambda i: int(self.leq[:, i].sum()))
            return {"chain": [self.labels[i] for i in order]}
        return {"labels": list(self.labels), "covers": [[self.labels[a], self.labels[b]] for a, b in self.covers()]}

    def covers(self) -> list[tuple[int, int]]:
        n = len(self)
        out = []
        for a in range(n):
            for b in range(n):
                if a != b and self.leq[a, b]:
                    if not any(c not in (a, b) and self.leq[a, c] and self.leq[c, b] for c in range(n)):
                        out.append((a, b))
        return out


def _reflexive_transitive_closure(rel: np.ndarray) -> np.ndarray:
    closure = rel.copy()
    np.fill_diagonal(closure, True)
    for k in range(len(closure)):
        closure |= np.outer(closure[:, k], closure[k, :])
    return closure


def build_lattice(spec: Mapping) -> Lattice:
    """Build a lattice from a document section.

    Accepted forms: ``{"chain": [...]}``, ``{"labels": [...], "covers": [[lo, hi], ...]}``
    or ``{"labels": [...], "leq": [[lo, hi], ...]}``.
    """
    if "chain" in spec:
        return Lattice.chain(list(spec["chain"]))
    if "labels" not in spec:
        raise ValidationError("lattice needs 'chain' or 'labels'")
    if "covers" in spec:
        return Lattice.from_covers(spec["labels"], [tuple(p) for p in spec["covers"]])
    if "leq" in spec:
        return Lattice.from_relation(spec["labels"], [tuple(p) for p in spec["leq"]])
    raise ValidationError("lattice needs 'covers' or 'leq' alongside 'labels'")


def meet(L: Lattice, a: int, b: int) -> int:
    return L.meet(a, b)


def join(L: Lattice, a: int, b: int) -> int:
    return L.join(a, b)


def sup_over(L: Lattice, elements: Iterable[int]) -> int:
    return L.sup_over(elements)


def is_distributive(L: Lattice) -> tuple[bool, tuple[str, str, str] | None]:
    return L.is_distributive()


# Lattices used by the bundled workspaces and the instance generator.
M7_COVERS = [
    ("l", "f"), ("l", "a"), ("l", "b"), ("l", "c"),
    ("f", "d"), ("a", "d"), ("b", "d"), ("c", "d"),
    ("d", "u"),
]


def lattice_m7() -> Lattice:
    """The 7-element lattice used for the S4 conjugation example."""
    return Lattice.from_covers(["l", "f", "a", "b", "c", "d", "u"], M7_COVERS)


def m3() -> Lattice:
    return Lattice.from_covers(
        ["0", "x", "y", "z", "1"],
        [("0", "x"), ("0", "y"), ("0", "z"), ("x", "1"), ("y", "1"), ("z", "1")],
    )


def n5() -> Lattice:
    return Lattice.from_covers(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
    )


DYADIC_CHAIN = ["0", "1/32", "1/16", "1/12", "1/8", "1/4", "1/2", "1"]
