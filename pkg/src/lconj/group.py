"""Finite groups given by dense Cayley tables, plus the constructors and
classical subgroup machinery the L-valued layer relies on.

Permutations compose right to left: ``(s * t)(i) = s(t(i))``.
"""

from __future__ import annotations

import re
from collections import deque
from functools import cached_property
from itertools import permutations, product
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    ClosureTooLarge,
    IllDefinedOnGenerators,
    InvalidTable,
    NotAHomomorphism,
    NotASubgroup,
    ValidationError,
)

DEFAULT_ORDER_CAP = 10080


class FiniteGroup:
    """Immutable finite group.

    ``mul[x, y]`` is the index of ``x*y``, ``inv[x]`` the index of ``x^-1``.
    """

    def __init__(
        self,
        labels: Sequence[str],
        mul: np.ndarray,
        *,
        name: str = "G",
        parser: Callable[[str], str] | None = None,
        validate: bool = True,
    ):
        labels = tuple(str(x) for x in labels)
        if len(set(labels)) != len(labels):
            raise InvalidTable("group labels must be unique")
        mul = np.array(mul, dtype=np.intp)
        n = len(labels)
        if n == 0 or mul.shape != (n, n):
            raise InvalidTable(f"multiplication table must be {n}x{n}")
        if mul.min() < 0 or mul.max() >= n:
            raise InvalidTable("multiplication table entry out of range")
        ids = [e for e in range(n) if (mul[e] == np.arange(n)).all() and (mul[:, e] == np.arange(n)).all()]
        if not ids:
            raise InvalidTable("no two-sided identity")
        e = ids[0]
        inv = np.full(n, -1, dtype=np.intp)
        for x in range(n):
            ys = np.flatnonzero((mul[x] == e) & (mul[:, x] == e))
            if len(ys) == 0:
                raise InvalidTable(f"{labels[x]!r} has no two-sided inverse")
            inv[x] = ys[0]
        if validate:
            # (xy)z == x(yz) for all triples, vectorised over z
            lhs = mul[mul]  # lhs[x, y, z] = (xy)z
            rhs = mul[:, mul]  # rhs[x, y, z] = x(yz)
            bad = np.argwhere(lhs != rhs)
            if len(bad):
                x, y, z = (labels[i] for i in bad[0])
                raise InvalidTable(f"not associative at ({x}, {y}, {z})")
        mul.setflags(write=False)
        inv.setflags(write=False)
        self.labels = labels
        self.mul = mul
        self.inv = inv
        self.identity = e
        self.name = name
        self._index = {x: i for i, x in enumerate(labels)}
        self._parser = parser

    # -- basic access -------------------------------------------------
    def __len__(self) -> int:
        return len(self.labels)

    @property
    def order(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.mul, other.mul)

    def __hash__(self) -> int:
        return hash((self.labels, self.mul.tobytes()))

    def index(self, label: str) -> int:
        """Index of an element literal; accepts non-normal-form spellings
        where the constructor registered a parser."""
        key = str(label).strip()
        if key in self._index:
            return self._index[key]
        if self._parser is not None:
            try:
                norm = self._parser(key)
            except ValueError as exc:
                raise ValidationError(f"cannot parse element {label!r}: {exc}") from None
            if norm in self._index:
                return self._index[norm]
        raise ValidationError(f"{label!r} is not an element of {self.name}")

    def label(self, x: int) -> str:
        return self.labels[x]

    def elements(self) -> range:
        return range(len(self.labels))

    def multiply(self, x: int, y: int) -> int:
        return int(self.mul[x, y])

    def inverse(self, x: int) -> int:
        return int(self.inv[x])

    def conj(self, z: int, x: int) -> int:
        """``z x z^-1``."""
        return int(self.mul[self.mul[z, x], self.inv[z]])

    @cached_property
    def conj_table(self) -> np.ndarray:
        """``conj_table[z, x] = z x z^-1``."""
        t = self.mul[self.mul, self.inv[:, None]]
        t.setflags(write=False)
        return t

    @cached_property
    def is_abelian(self) -> bool:
        return bool((self.mul == self.mul.T).all())

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != self.identity:
            y = self.mul[y, x]
            k += 1
        return k

    # -- subgroups ----------------------------------------------------
    def subgroup_generated(self, gens: Iterable[int]) -> frozenset[int]:
        """Smallest subgroup containing ``gens``; ``{e}`` for no generators."""
        gens = sorted(set(int(g) for g in gens))
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = int(self.mul[x, g])
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        # finite group: closure under multiplication already contains inverses
        return frozenset(seen)

    def is_subgroup(self, S: Iterable[int]) -> bool:
        S = set(S)
        if self.identity not in S:
            return False
        idx = np.fromiter(S, dtype=np.intp)
        return set(self.mul[np.ix_(idx, idx)].ravel().tolist()) <= S and set(self.inv[idx].tolist()) <= S

    def is_normal_subgroup(self, H: Iterable[int]) -> bool:
        H = frozenset(H)
        return self.is_subgroup(H) and all(self.conjugate_set(H, z) == H for z in self.elements())

    def conjugate_set(self, H: Iterable[int], w: int) -> frozenset[int]:
        """``w H w^-1``.  The crisp ``H^w`` in the level characterisation of
        point conjugates is this set with ``w = z^-1``."""
        ct = self.conj_table
        return frozenset(int(ct[w, h]) for h in H)

    def classical_normalizer(self, H: Iterable[int]) -> frozenset[int]:
        """``{x : x H x^-1 = H}``."""
        H = frozenset(H)
        if not self.is_subgroup(H):
            raise NotASubgroup("normalizer needs a subgroup")
        return frozenset(x for x in self.elements() if self.conjugate_set(H, x) == H)

    def are_conjugate(self, H: Iterable[int], K: Iterable[int]) -> int | None:
        """Some ``z`` with ``K = z^-1 H z``, or None."""
        H, K = frozenset(H), frozenset(K)
        if len(H) != len(K):
            return None
        for z in self.elements():
            if self.conjugate_set(H, self.inverse(z)) == K:
                return z
        return None

    @cached_property
    def subgroups(self) -> tuple[frozenset[int], ...]:
        """Every subgroup, ordered by size then by sorted element indices."""
        cyclic = {self.subgroup_generated([x]) for x in self.elements()}
        found = set(cyclic)
        frontier = set(cyclic)
        while frontier:
            new = set()
            for H in frontier:
                for C in cyclic:
                    if not C <= H:
                        J = self.subgroup_generated(H | C)
                        if J not in found:
                            new.add(J)
            found |= new
            frontier = new
        return tuple(sorted(found, key=lambda S: (len(S), sorted(S))))

    def quotient(self, N: Iterable[int]) -> tuple["FiniteGroup", "GroupHom"]:
        """``G/N`` and the projection, for a normal subgroup ``N``."""
        N = frozenset(N)
        if not self.is_normal_subgroup(N):
            raise NotASubgroup("quotient needs a normal subgroup")
        cosets: list[frozenset[int]] = []
        which = [-1] * self.order
        for x in self.elements():
            if which[x] < 0:
                c = frozenset(int(self.mul[x, n]) for n in N)
                for y in c:
                    which[y] = len(cosets)
                cosets.append(c)
        reps = [min(c) for c in cosets]
        k = len(cosets)
        mul = np.empty((k, k), dtype=np.intp)
        for i, j in product(range(k), repeat=2):
            mul[i, j] = which[self.mul[reps[i], reps[j]]]
        labels = ["e" if i == which[self.identity] else f"{self.labels[reps[i]]}N" for i in range(k)]
        Q = FiniteGroup(labels, mul, name=f"{self.name}/N", validate=False)
        return Q, GroupHom(self, Q, which)


# -- constructors ----------------------------------------------------------

def cycle_string(perm: Sequence[int]) -> str:
    """Cycle notation over points 1..n, e.g. ``(1 2 3)(4 5)``; identity is ``e``."""
    seen = set()
    parts = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        j = perm[start]
        while j != start:
            cyc.append(j)
            seen.add(j)
            j = perm[j]
        parts.append("(" + " ".join(str(i + 1) for i in cyc) + ")")
    return "".join(parts) or "e"


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> tuple[int, ...]:
    """Parse ``(1 2 3)(4 5)`` (also ``(123)`` when degree < 10) into an image tuple.

    Cycles are composed right to left like any other permutation product.
    """
    text = text.strip()
    perm = list(range(degree))
    if text in ("e", "()", ""):
        return tuple(perm)
    if _CYCLE.sub("", text).strip():
        raise ValueError(f"bad cycle notation {text!r}")
    for body in reversed(_CYCLE.findall(text)):
        body = body.strip()
        if not body:
            continue
        if " " in body or "," in body:
            pts = [int(t) for t in re.split(r"[\s,]+", body)]
        elif degree < 10:
            pts = [int(c) for c in body]
        else:
            pts = [int(body)]
        if len(set(pts)) != len(pts) or not all(1 <= p <= degree for p in pts):
            raise ValueError(f"bad cycle {body!r} for degree {degree}")
        cyc = {pts[i] - 1: pts[(i + 1) % len(pts)] - 1 for i in range(len(pts))}
        perm = [cyc.get(p, p) for p in perm]
    return tuple(perm)


def _perm_group(perms: Iterable[tuple[int, ...]], degree: int, name: str) -> FiniteGroup:
    P = np.array(sorted(set(perms)), dtype=np.intp).reshape(-1, degree)
    # lexicographic order of image tuples == numeric order of these codes
    weights = degree ** np.arange(degree - 1, -1, -1, dtype=np.int64)
    codes = P @ weights
    mul = np.empty((len(P), len(P)), dtype=np.intp)
    for i in range(len(P)):
        comp = P[i][P]  # comp[j] = P[i] o P[j]
        mul[i] = np.searchsorted(codes, comp @ weights)
    labels = [cycle_string(p) for p in P.tolist()]
    parser = lambda s: cycle_string(parse_cycles(s, degree))
    G = FiniteGroup(labels, mul, name=name, parser=parser, validate=False)
    G.degree = degree
    G.permutations = P
    return G


def symmetric(n: int) -> FiniteGroup:
    if not 1 <= n <= 7:
        raise ValidationError("symmetric groups are limited to degree 1..7")
    return _perm_group(permutations(range(n)), n, f"S{n}")


def permutation_group(degree: int, generators: Sequence[str], cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Closure of the given cycle-notation generators inside Sym(degree)."""
    gens = [parse_cycles(g, degree) for g in generators]
    ident = tuple(range(degree))
    seen = {ident}
    queue = deque([ident])
    while queue:
        p = queue.popleft()
        for g in gens:
            q = tuple(p[i] for i in g)  # p o g
            if q not in seen:
                seen.add(q)
                if len(seen) > cap:
                    raise ClosureTooLarge(f"generated group exceeds order cap {cap}")
                queue.append(q)
    return _perm_group(seen, degree, "Perm(" + ", ".join(generators) + ")")


def _word_parser(symbols: Mapping[str, tuple], multiply, normal_form) -> Callable[[str], str]:
    token = re.compile(r"\s*([a-z])(?:\^(-?\d+))?")

    def parse(text: str) -> str:
        pos, acc = 0, symbols["e"]
        text = text.strip()
        while pos < len(text):
            m = token.match(text, pos)
            if not m or m.group(1) not in symbols:
                raise ValueError(f"unexpected input at {text[pos:]!r}")
            g = symbols[m.group(1)]
            k = int(m.group(2) or 1)
            acc = multiply(acc, _power(g, k, multiply, symbols["e"], symbols.get("_inv")))
            pos = m.end()
        return normal_form(acc)

    return parse


def _power(g, k, multiply, e, inverse):
    if k < 0:
        g, k = inverse(g), -k
    out = e
    for _ in range(k):
        out = multiply(out, g)
    return out


def dihedral(order: int) -> FiniteGroup:
    """Dihedral group of the given (even) order with ``rs = sr^-1``.

    Elements are ``r^k`` and ``sr^k``; labels ``e, r, r^2, ..., s, sr, sr^2, ...``.
    """
    if order < 2 or order % 2:
        raise ValidationError("dihedral order must be an even number >= 2")
    n = order // 2
    elems = [(0, k) for k in range(n)] + [(1, k) for k in range(n)]

    def mult(a, b):
        # s^f r^k . s^g r^m = s^(f+g) r^((-1)^g k + m)
        f, k = a
        g, m = b
        return ((f + g) % 2, ((-k if g else k) + m) % n)

    def inverse(a):
        f, k = a
        return a if f else (0, (-k) % n)

    def nf(a):
        f, k = a
        r = "" if k == 0 else ("r" if k == 1 else f"r^{k}")
        if f:
            return "s" + r
        return r or "e"

    index = {a: i for i, a in enumerate(elems)}
    mul = np.array([[index[mult(a, b)] for b in elems] for a in elems], dtype=np.intp)
    parser = _word_parser({"e": (0, 0), "r": (0, 1 % n), "s": (1, 0), "_inv": inverse}, mult, nf)
    return FiniteGroup([nf(a) for a in elems], mul, name=f"D{order}", parser=parser, validate=False)


def cyclic(n: int) -> FiniteGroup:
    """Cyclic group ``<g>`` with labels ``e, g, g^2, ...``."""
    if n < 1:
        raise ValidationError("cyclic order must be positive")
    mul = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    nf = lambda k: "e" if k == 0 else ("g" if k == 1 else f"g^{k}")
    parser = _word_parser(
        {"e": 0, "g": 1 % n, "_inv": lambda k: (-k) % n}, lambda a, b: (a + b) % n, nf
    )
    return FiniteGroup([nf(k) for k in range(n)], mul, name=f"C{n}", parser=parser, validate=False)


def quaternion8() -> FiniteGroup:
    units = ["1", "i", "j", "k"]
    # unit products: i*j = k, j*k = i, k*i = j, i*i = -1 ...
    table = {
        ("1", u): (1, u) for u in units
    }
    table.update({(u, "1"): (1, u) for u in units})
    table.update({
        ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
        ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
    })
    elems = [(s, u) for u in units for s in (1, -1)]
    lab = lambda a: ("" if a[0] == 1 else "-") + a[1]
    index = {a: i for i, a in enumerate(elems)}
    mul = np.empty((8, 8), dtype=np.intp)
    for (i, a), (j, b) in product(enumerate(elems), repeat=2):
        sgn, u = table[(a[1], b[1])]
        mul[i, j] = index[(a[0] * b[0] * sgn, u)]
    return FiniteGroup([lab(a) for a in elems], mul, name="Q8")


def from_table(labels: Sequence[str], mul: Sequence[Sequence]) -> FiniteGroup:
    """Explicit Cayley table; entries may be labels or indices."""
    index = {str(x): i for i, x in enumerate(labels)}
    rows = []
    for row in mul:
        out = []
        for v in row:
            if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
                out.append(int(v))
            elif str(v) in index:
                out.append(index[str(v)])
            else:
                raise InvalidTable(f"table entry {v!r} is not an element")
        rows.append(out)
    return FiniteGroup(labels, np.array(rows, dtype=np.intp), name="T")


def build_group(spec: Mapping) -> FiniteGroup:
    """Build a group from its document section (see the README for the schema)."""
    kind = spec.get("kind")
    if kind == "symmetric":
        return symmetric(int(spec["n"]))
    if kind == "dihedral":
        return dihedral(int(spec["order"]))
    if kind == "cyclic":
        return cyclic(int(spec["n"]))
    if kind == "quaternion":
        return quaternion8()
    if kind == "permutation":
        return permutation_group(int(spec["degree"]), list(spec["generators"]), int(spec.get("cap", DEFAULT_ORDER_CAP)))
    if kind == "table":
        return from_table(list(spec["labels"]), spec["mul"])
    raise ValidationError(f"unknown group kind {kind!r}")


def conj_elem(G: FiniteGroup, z: int, x: int) -> int:
    return G.conj(z, x)


def subgroup_generated(G: FiniteGroup, S: Iterable[int]) -> frozenset[int]:
    return G.subgroup_generated(S)


def classical_normalizer(G: FiniteGroup, H: Iterable[int]) -> frozenset[int]:
    return G.classical_normalizer(H)


# -- homomorphisms -----------------------------------------------------------

class GroupHom:
    """Validated homomorphism ``domain -> codomain`` stored as an index table."""

    def __init__(self, domain: FiniteGroup, codomain: FiniteGroup, mapping: Sequence[int]):
        mapping = np.array(mapping, dtype=np.intp)
        if mapping.shape != (domain.order,):
            raise NotAHomomorphism("map must cover every domain element")
        if mapping.min() < 0 or mapping.max() >= codomain.order:
            raise NotAHomomorphism("map leaves the codomain")
        # f(xy) == f(x) f(y) for every pair
        bad = np.argwhere(mapping[domain.mul] != codomain.mul[np.ix_(mapping, mapping)])
        if len(bad):
            x, y = map(int, bad[0])
            raise NotAHomomorphism(
                f"f({domain.label(x)}*{domain.label(y)}) != f({domain.label(x)})*f({domain.label(y)})",
                witness=(domain.label(x), domain.label(y)),
            )
        mapping.setflags(write=False)
        self.domain = domain
        self.codomain = codomain
        self.map = mapping

    def __call__(self, x: int) -> int:
        return int(self.map[x])

    @property
    def is_surjective(self) -> bool:
        return len(set(self.map.tolist())) == self.codomain.order

    def fiber(self, y: int) -> list[int]:
        return [int(x) for x in np.flatnonzero(self.map == y)]

    def __repr__(self) -> str:
        return f"GroupHom({self.domain.name} -> {self.codomain.name})"


def identity_hom(G: FiniteGroup) -> GroupHom:
    return GroupHom(G, G, range(G.order))


def sign_hom(G: FiniteGroup) -> GroupHom:
    """Sign character of a permutation group onto C2."""
    C2 = cyclic(2)
    signs = []
    for p in G.permutations.tolist():
        inversions = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
        signs.append(inversions % 2)
    return GroupHom(G, C2, signs)


def build_hom(domain: FiniteGroup, codomain: FiniteGroup, *, mapping: Mapping[str, str] | None = None,
              generator_images: Mapping[str, str] | None = None) -> GroupHom:
    """Build from a full element map or from generator images extended along words."""
    if (mapping is None) == (generator_images is None):
        raise ValidationError("give exactly one of 'map' and 'generator_images'")
    if mapping is not None:
        table = [-1] * domain.order
        for k, v in mapping.items():
            table[domain.index(k)] = codomain.index(v)
        if -1 in table:
            missing = domain.label(table.index(-1))
            raise NotAHomomorphism(f"map has no image for {missing!r}")
        return GroupHom(domain, codomain, table)
    gens = [(domain.index(k), codomain.index(v)) for k, v in generator_images.items()]
    table = [-1] * domain.order
    table[domain.identity] = codomain.identity
    queue = deque([domain.identity])
    while queue:
        x = queue.popleft()
        for g, img in gens:
            y = int(domain.mul[x, g])
            fy = int(codomain.mul[table[x], img])
            if table[y] < 0:
                table[y] = fy
                queue.append(y)
            elif table[y] != fy:
                raise IllDefinedOnGenerators(
                    f"generator images give {domain.label(y)!r} two images",
                    witness=(domain.label(x), domain.label(g)),
                )
    if -1 in table:
        raise IllDefinedOnGenerators("generators do not generate the domain")
    return GroupHom(domain, codomain, table)
