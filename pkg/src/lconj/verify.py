"""Seeded random instances and a registry of theorem checks run over them."""

from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .checks import Check, failed, passed
from .conjugacy import (
    conjugate_by_point,
    conjugate_setproduct_identity_check,
    crisp_bridge,
    generated,
    is_proper,
    l_subgroups_between,
    level_conjugate_equiv,
    maximal_conjugate_check,
    search_space,
    subgroup_closure,
)
from .errors import BoundsExceeded, UnknownSuite
from .group import (
    FiniteGroup,
    GroupHom,
    cyclic,
    dihedral,
    permutation_group,
    quaternion8,
    symmetric,
)
from .lattice import Lattice, m3, n5, lattice_m7
from .lsubset import (
    LPoint,
    LSubset,
    characteristic,
    contains,
    contains_by_levels,
    image,
    intersection,
    is_l_subgroup,
    is_l_subgroup_by_levels,
    is_l_subgroup_of,
    is_l_subgroup_of_by_levels,
    is_normal_in,
    is_normal_in_by_levels,
    point_membership,
    point_subset,
    preimage,
    trivial_of,
    union,
)
from .normality import (
    cosets_commute,
    inverse_point_containment_check,
    normality_via_conjugates,
    normalizer_conjugacy,
    normalizer_conjugation_identity,
    normalizer_setproduct,
)

MAX_GROUP_ORDER = 24
MAX_LATTICE_SIZE = 10
# enumeration budget for suites that search L-subgroups exhaustively
SUITE_SEARCH_CAP = 200_000


# -- instance generation ---------------------------------------------------------

_GROUP_CATALOG: list[tuple[str, int, Callable[[], FiniteGroup]]] = (
    [(f"C{n}", n, (lambda n=n: cyclic(n))) for n in range(1, 13)]
    + [(f"D{2 * n}", 2 * n, (lambda n=n: dihedral(2 * n))) for n in range(2, 13)]
    + [
        ("S3", 6, lambda: symmetric(3)),
        ("S4", 24, lambda: symmetric(4)),
        ("Q8", 8, quaternion8),
        ("A4", 12, lambda: permutation_group(4, ["(1 2 3)", "(1 2)(3 4)"])),
        ("V4", 4, lambda: permutation_group(4, ["(1 2)", "(3 4)"])),
    ]
)


@lru_cache(maxsize=None)
def catalog_group(name: str) -> FiniteGroup:
    for n, _, make in _GROUP_CATALOG:
        if n == name:
            G = make()
            G.name = name
            return G
    raise KeyError(name)


@lru_cache(maxsize=None)
def _named_lattice(name: str) -> Lattice:
    return {"M3": m3, "N5": n5, "M7": lattice_m7}[name]()


def _random_closure_lattice(rng: random.Random, max_size: int) -> Lattice | None:
    """Random closure system (intersection-closed family with the full set);
    every finite lattice arises this way."""
    k = rng.randint(2, 4)
    full = (1 << k) - 1
    family = {full}
    for _ in range(rng.randint(1, 2 * k)):
        family.add(rng.randrange(full + 1))
    closed = False
    while not closed:
        closed = True
        for a, b in combinations(sorted(family), 2):
            if a & b not in family:
                family.add(a & b)
                closed = False
    if not 2 <= len(family) <= max_size:
        return None
    members = sorted(family, key=lambda s: (bin(s).count("1"), s))
    label = lambda s: "{" + ",".join(str(i + 1) for i in range(k) if s >> i & 1) + "}"
    pairs = [(label(a), label(b)) for a in members for b in members if a & b == a]
    return Lattice.from_relation([label(s) for s in members], pairs)


def _random_lattice(rng: random.Random, max_size: int, kind: str) -> tuple[str, Lattice]:
    if kind == "chain" or rng.random() < 0.5:
        n = rng.randint(2, max_size)
        return f"chain{n}", Lattice.chain([f"c{i}" for i in range(n)])
    named = [nm for nm in ("M3", "N5", "M7") if len(_named_lattice(nm)) <= max_size]
    if named and rng.random() < 0.3:
        nm = rng.choice(named)
        return nm, _named_lattice(nm)
    for _ in range(50):
        L = _random_closure_lattice(rng, max_size)
        if L is not None:
            return f"closure{len(L)}", L
    n = rng.randint(2, max_size)
    return f"chain{n}", Lattice.chain([f"c{i}" for i in range(n)])


def random_l_subgroup(rng: random.Random, G: FiniteGroup, L: Lattice) -> LSubset:
    """Value ``v_i`` on ``H_i - H_{i-1}`` for an ascending subgroup chain ending
    at ``G`` and a descending chain of lattice values; every level subset is
    then one of the ``H_i``."""
    subs = G.subgroups
    chain = [rng.choice(subs)]
    while len(chain[-1]) < G.order:
        above = [H for H in subs if chain[-1] < H]
        if rng.random() < 0.3:
            chain.append(above[-1])  # G itself
        else:
            chain.append(rng.choice(above))
    values = [rng.choice(range(len(L)))]
    for _ in chain[1:]:
        values.append(rng.choice(L.below(values[-1])))
    out = [0] * G.order
    done: set[int] = set()
    for H, v in zip(chain, values):
        for x in H - done:
            out[x] = v
        done |= H
    return LSubset(G, L, out)


@dataclass
class Instance:
    seed: int
    lattice: Lattice
    group: FiniteGroup
    mu: LSubset
    eta: LSubset
    nu: LSubset
    points: list[LPoint]
    hom: GroupHom | None = None
    target_mu: LSubset | None = None
    target_eta: LSubset | None = None
    target_points: list[LPoint] = field(default_factory=list)
    descriptor: str = ""

    @property
    def rng(self) -> random.Random:
        """Fresh RNG for suites needing extra randomness; deterministic per seed."""
        return random.Random(f"suite-{self.seed}")


def _points(rng: random.Random, mu: LSubset, k: int) -> list[LPoint]:
    G, L = mu.group, mu.lattice
    pts = []
    for i in range(k):
        x = rng.randrange(G.order)
        a = mu(x) if i == 0 else rng.choice(L.below(mu(x)))
        pts.append(LPoint(a, x))
    return pts


def gen_instance(seed: int, max_group_order: int = 16, max_lattice_size: int = 8,
                 lattice_kind: str = "any", groups: Sequence[str] | None = None) -> Instance:
    """Deterministic random instance for ``seed``."""
    if not 1 <= max_group_order <= MAX_GROUP_ORDER:
        raise BoundsExceeded(f"group order bound must be in 1..{MAX_GROUP_ORDER}")
    if not 2 <= max_lattice_size <= MAX_LATTICE_SIZE:
        raise BoundsExceeded(f"lattice size bound must be in 2..{MAX_LATTICE_SIZE}")
    if lattice_kind not in ("any", "chain"):
        raise BoundsExceeded(f"lattice kind must be 'any' or 'chain', not {lattice_kind!r}")
    rng = random.Random(seed)
    names = [n for n, order, _ in _GROUP_CATALOG if order <= max_group_order]
    if groups is not None:
        names = [n for n in names if n in groups]
    G = catalog_group(rng.choice(names))
    lname, L = _random_lattice(rng, max_lattice_size, lattice_kind)
    mu = random_l_subgroup(rng, G, L)
    eta = intersection(random_l_subgroup(rng, G, L), mu)
    nu = intersection(random_l_subgroup(rng, G, L), mu)
    points = _points(rng, mu, 4)

    normals = [N for N in G.subgroups if G.is_normal_subgroup(N)]
    Q, f = G.quotient(rng.choice(normals))
    t_mu = random_l_subgroup(rng, Q, L)
    t_eta = intersection(random_l_subgroup(rng, Q, L), t_mu)
    t_points = _points(rng, t_mu, 3)

    inst = Instance(seed, L, G, mu, eta, nu, points, f, t_mu, t_eta, t_points,
                    descriptor=f"seed={seed} G={G.name} L={lname}")
    # generator validity
    assert is_l_subgroup(mu) and is_l_subgroup_of_by_levels(eta, mu) and is_l_subgroup_of(nu, mu)
    assert all(point_membership(p, mu) for p in points)
    assert is_l_subgroup_of(t_eta, t_mu) and all(point_membership(p, t_mu) for p in t_points)
    return inst


# -- reports ----------------------------------------------------------------------

@dataclass
class Report:
    suite: str
    instance: str
    verdict: str  # pass | fail | skip
    witness: dict | None = None
    reason: str = ""
    elapsed: float = 0.0

    def to_dict(self, timing: bool = False) -> dict:
        d = {
            "suite": self.suite,
            "instance": self.instance,
            "verdict": self.verdict,
            "witness": self.witness,
            "reason": self.reason,
        }
        if timing:
            d["elapsed_ms"] = round(self.elapsed * 1000, 3)
        return d


class Skip(Exception):
    """Raised by a suite whose hypotheses the instance does not meet."""


def reports_to_json(reports: Iterable[Report], timing: bool = False) -> str:
    return json.dumps([r.to_dict(timing) for r in reports], sort_keys=True, indent=1, ensure_ascii=False)


# -- helpers used by several suites ------------------------------------------------

def _lab(s: LSubset) -> dict:
    return s.as_labels()


def _pt(inst: Instance, p: LPoint) -> str:
    return f"{inst.lattice.label(p.value)}@{inst.group.label(p.at)}"


def _perturbed(inst: Instance) -> LSubset:
    rng = inst.rng
    vals = list(inst.eta.values)
    for _ in range(2):
        vals[rng.randrange(len(vals))] = rng.randrange(len(inst.lattice))
    return LSubset(inst.group, inst.lattice, vals)


def _conjugates(inst: Instance) -> list[LSubset]:
    return [conjugate_by_point(inst.eta, p) for p in inst.points]


def _subgroups_of_mu(inst: Instance) -> list[LSubset]:
    return [inst.mu, inst.eta, inst.nu, trivial_of(inst.eta), *_conjugates(inst)]


def _all_points(mu: LSubset) -> Iterable[LPoint]:
    for x in mu.group.elements():
        for a in mu.lattice.below(mu(x)):
            yield LPoint(a, x)


def _need_distributive(inst: Instance) -> None:
    if not inst.lattice.distributive:
        raise Skip("requires distributive lattice")


# -- suites ------------------------------------------------------------------------

def suite_subgroup_by_levels(inst: Instance) -> Check:
    cands = _subgroups_of_mu(inst) + [_perturbed(inst), inst.target_mu]
    for s in cands:
        if is_l_subgroup(s) != is_l_subgroup_by_levels(s):
            return failed({"subset": _lab(s)}, "pointwise and level predicates disagree")
    return passed()


def suite_hom_transport_subgroups(inst: Instance) -> Check:
    f = inst.hom
    for s in (inst.target_mu, inst.target_eta):
        if not is_l_subgroup(preimage(f, s)):
            return failed({"preimage_of": _lab(s)})
    if inst.lattice.distributive:
        for s in (inst.mu, inst.eta):
            if not is_l_subgroup(image(f, s)):
                return failed({"image_of": _lab(s)})
        return passed("images and preimages")
    return passed("preimages only (image part needs a distributive lattice)")


def suite_subgroup_of_by_levels(inst: Instance) -> Check:
    mu = inst.mu
    cands = _subgroups_of_mu(inst) + [intersection(_perturbed(inst), mu)]
    for s in cands:
        if is_l_subgroup_of(s, mu) != is_l_subgroup_of_by_levels(s, mu):
            return failed({"subset": _lab(s)}, "pointwise and level predicates disagree")
    return passed()


def suite_normal_by_levels(inst: Instance) -> Check:
    mu = inst.mu
    pairs = [(s, mu) for s in _subgroups_of_mu(inst)]
    pairs.append((inst.eta, normalizer_setproduct(inst.eta, mu)))
    for s, amb in pairs:
        if is_normal_in(s, amb) != is_normal_in_by_levels(s, amb):
            return failed({"subject": _lab(s), "ambient": _lab(amb)})
    return passed()


def suite_generated_is_closure(inst: Instance) -> Check:
    mu = inst.mu
    seeds = [
        intersection(_perturbed(inst), mu),
        union(inst.eta, inst.nu),
        union(inst.eta, point_subset(inst.points[-1], inst.group, inst.lattice)),
        inst.eta,
    ]
    for s in seeds:
        g = generated(s, mu)
        if g != subgroup_closure(s):
            return failed({"seed": _lab(s), "formula": _lab(g), "closure": _lab(subgroup_closure(s))})
        if not (is_l_subgroup_of(g, mu) and contains(g, s) and g.tip() == s.tip()):
            return failed({"seed": _lab(s), "generated": _lab(g)}, "not an L-subgroup of mu with the same tip")
    return passed()


def suite_point_conjugate_is_subgroup(inst: Instance) -> Check:
    for s in (inst.eta, inst.nu):
        for p in inst.points:
            c = conjugate_by_point(s, p, inst.mu)
            if not is_l_subgroup_of(c, inst.mu):
                return failed({"subject": _lab(s), "point": _pt(inst, p)})
    return passed()


def suite_point_conjugate_tip(inst: Instance) -> Check:
    L = inst.lattice
    for s in (inst.eta, inst.nu, inst.mu):
        for p in inst.points:
            if conjugate_by_point(s, p).tip() != L.meet(p.value, s.tip()):
                return failed({"subject": _lab(s), "point": _pt(inst, p)})
    return passed()


def suite_conjugate_of_product(inst: Instance) -> Check:
    _need_distributive(inst)
    for p in inst.points:
        for a, b in ((inst.eta, inst.nu), (inst.nu, inst.eta), (inst.eta, inst.eta)):
            r = conjugate_setproduct_identity_check(a, b, p)
            if not r:
                return failed({**r.witness, "point": _pt(inst, p)})
    return passed()


def suite_conjugate_of_image(inst: Instance) -> Check:
    _need_distributive(inst)
    f = inst.hom
    for p in inst.points:
        lhs = image(f, conjugate_by_point(inst.eta, p))
        rhs = conjugate_by_point(image(f, inst.eta), LPoint(p.value, f(p.at)))
        if lhs != rhs:
            return failed({"point": _pt(inst, p), "lhs": _lab(lhs), "rhs": _lab(rhs)})
    return passed()


def suite_conjugate_of_preimage(inst: Instance) -> Check:
    _need_distributive(inst)
    f = inst.hom
    if not f.is_surjective:
        raise Skip("requires surjective homomorphism")
    eta = inst.target_eta
    for p in inst.target_points:
        lhs = preimage(f, conjugate_by_point(eta, p))
        for s in f.fiber(p.at):
            rhs = conjugate_by_point(preimage(f, eta), LPoint(p.value, s))
            if lhs != rhs:
                return failed({"point": f"{inst.lattice.label(p.value)}@{f.codomain.label(p.at)}",
                               "s": inst.group.label(s)})
    return passed()


def suite_conjugate_by_levels(inst: Instance) -> Check:
    eta, G = inst.eta, inst.group
    for p in inst.points:
        constructed = level_conjugate_equiv(eta, conjugate_by_point(eta, p), p)
        if not (constructed.pointwise and constructed.levels):
            return failed({"point": _pt(inst, p), "pointwise": constructed.pointwise,
                           "levels": constructed.levels}, "constructed conjugate rejected")
        for w in G.elements():
            nu = conjugate_by_point(eta, LPoint(p.value, w))
            r = level_conjugate_equiv(eta, nu, p)
            if not r.agree:
                return failed({"point": _pt(inst, p), "other": G.label(w),
                               "pointwise": r.pointwise, "levels": r.levels})
    return passed()


def suite_crisp_bridge(inst: Instance) -> Check:
    G = inst.group
    subs = list(G.subgroups)
    pairs = [(H, K) for H in subs for K in subs if len(H) == len(K)]
    rng = inst.rng
    if len(pairs) > 40:
        pairs = rng.sample(pairs, 40)
    for H, K in pairs:
        b = crisp_bridge(G, H, K)
        if not b.agree:
            return failed({"H": sorted(G.label(x) for x in H), "K": sorted(G.label(x) for x in K),
                           "classical": b.classical, "lifted": b.lifted})
    return passed()


def find_maximal_above(eta: LSubset, mu: LSubset, cap: int = SUITE_SEARCH_CAP) -> LSubset | None:
    """A proper L-subgroup of ``mu`` above ``eta`` with nothing strictly between
    it and ``mu``; None when there is none."""
    between = l_subgroups_between(eta, mu, cap=cap)
    leq = mu.lattice.leq

    def below(s: LSubset, t: LSubset) -> bool:
        return bool(leq[s.array, t.array].all())

    for t in between:
        if not is_proper(t, mu):
            continue
        if not any(s != t and s != mu and below(t, s) for s in between):
            return t
    return None


def suite_maximal_conjugates(inst: Instance) -> Check:
    if not inst.lattice.is_chain:
        raise Skip("requires chain")
    mu = inst.mu
    if search_space(inst.eta, mu) > SUITE_SEARCH_CAP:
        raise Skip("search space too large")
    eta = find_maximal_above(inst.eta, mu)
    if eta is None:
        raise Skip("no proper maximal L-subgroup above eta")
    branches = []
    for p in inst.points:
        r = maximal_conjugate_check(eta, mu, p, cap=SUITE_SEARCH_CAP)
        if not r:
            return failed({**r.witness, "point": _pt(inst, p), "eta": _lab(eta)})
        branches.append(r.extra["branch"])
    return passed("branches: " + ",".join(branches))


def suite_normal_via_conjugates(inst: Instance) -> Check:
    mu = inst.mu
    for s in _subgroups_of_mu(inst):
        via = normality_via_conjugates(s, mu)
        if bool(via) != is_normal_in(s, mu):
            return failed({"subject": _lab(s), "via_conjugates": bool(via), "direct": is_normal_in(s, mu),
                           **(via.witness or {})})
    return passed()


def suite_normalizer_largest(inst: Instance) -> Check:
    eta, mu = inst.eta, inst.mu
    N = normalizer_setproduct(eta, mu)
    if not is_l_subgroup_of(N, mu):
        return failed({"normalizer": _lab(N)}, "normalizer is not an L-subgroup of mu")
    if not contains(N, eta):
        return failed({"normalizer": _lab(N)}, "normalizer does not contain eta")
    if not is_normal_in(eta, N):
        return failed({"normalizer": _lab(N)}, "eta is not normal in its normalizer")
    if (N == mu) != is_normal_in(eta, mu):
        return failed({"normalizer": _lab(N)}, "N(eta) == mu disagrees with normality")
    # largest: a_y lies in some L-subgroup normalizing eta iff a <= N(y)
    G, L = inst.group, inst.lattice
    for p in _all_points(mu):
        theta = subgroup_closure(union(eta, point_subset(p, G, L)))
        in_normalizing = is_normal_in(eta, theta)
        if in_normalizing != L.le(p.value, N(p.at)):
            return failed({"point": _pt(inst, p), "normal_in_generated": in_normalizing,
                           "normalizer_value": L.label(N(p.at))})
    return passed()


def suite_normalizer_of_conjugate(inst: Instance) -> Check:
    _need_distributive(inst)
    for s in (inst.eta, inst.nu):
        for p in inst.points:
            r = normalizer_conjugation_identity(s, inst.mu, p)
            if not r:
                return failed({**r.witness, "point": _pt(inst, p)})
    return passed()


TWO = Lattice.chain(["0", "1"])


def suite_crisp_normalizer(inst: Instance) -> Check:
    G = inst.group
    rng = inst.rng
    one_G = characteristic(G, TWO, G.elements())
    subs = list(G.subgroups)
    for _ in range(5):
        H = rng.choice(subs)
        x = rng.randrange(G.order)
        one_H = characteristic(G, TWO, H)
        p = LPoint(TWO.top, x)
        lhs = normalizer_setproduct(conjugate_by_point(one_H, p), one_G)
        rhs = conjugate_by_point(normalizer_setproduct(one_H, one_G), p)
        if lhs != rhs:
            return failed({"H": sorted(G.label(h) for h in H), "x": G.label(x)})
        if normalizer_setproduct(one_H, one_G).level_set(TWO.top) != G.classical_normalizer(H):
            return failed({"H": sorted(G.label(h) for h in H)}, "crisp normalizer mismatch")
    return passed()


def suite_containment_by_levels(inst: Instance) -> Check:
    subs = _subgroups_of_mu(inst) + [normalizer_setproduct(inst.eta, inst.mu)]
    for a in subs:
        for b in subs:
            if contains(a, b) != contains_by_levels(a, b):
                return failed({"outer": _lab(a), "inner": _lab(b)})
    return passed()


def suite_inverse_point_containment(inst: Instance) -> Check:
    for s in (inst.eta, inst.nu):
        for p in _all_points(inst.mu):
            r = inverse_point_containment_check(s, inst.mu, p)
            if not r:
                return failed(r.witness)
    return passed()


def suite_cosets_vs_conjugates(inst: Instance) -> Check:
    for s in (inst.eta, inst.nu):
        for p in _all_points(inst.mu):
            if cosets_commute(s, p) != contains(s, conjugate_by_point(s, p)):
                return failed({"subject": _lab(s), "point": _pt(inst, p)})
    return passed()


def suite_normalizers_agree(inst: Instance) -> Check:
    mu = inst.mu
    for s in (inst.eta, inst.nu, trivial_of(inst.eta), *_conjugates(inst)):
        a, b = normalizer_setproduct(s, mu), normalizer_conjugacy(s, mu)
        if a != b:
            return failed({"subject": _lab(s), "setproduct": _lab(a), "conjugacy": _lab(b)})
    return passed()


SUITES: dict[str, Callable[[Instance], Check]] = {
    "T2.2": suite_subgroup_by_levels,
    "T2.3": suite_hom_transport_subgroups,
    "T2.7": suite_subgroup_of_by_levels,
    "T2.12": suite_normal_by_levels,
    "Tgen": suite_generated_is_closure,
    "T3.2": suite_point_conjugate_is_subgroup,
    "R3.tip": suite_point_conjugate_tip,
    "T3.4": suite_conjugate_of_product,
    "T3.5": suite_conjugate_of_image,
    "T3.6": suite_conjugate_of_preimage,
    "T3.7": suite_conjugate_by_levels,
    "T3.8": suite_crisp_bridge,
    "T3.10": suite_maximal_conjugates,
    "P4.1": suite_normal_via_conjugates,
    "D4.3-largest": suite_normalizer_largest,
    "T4.4": suite_normalizer_of_conjugate,
    "C4.5": suite_crisp_normalizer,
    "P4.7": suite_containment_by_levels,
    "L4.8": suite_inverse_point_containment,
    "L4.9": suite_cosets_vs_conjugates,
    "D4.10-equivalence": suite_normalizers_agree,
}


def _run_one(suite: str, inst: Instance) -> Report:
    start = time.perf_counter()
    try:
        r = SUITES[suite](inst)
        verdict = "pass" if r.ok else "fail"
        rep = Report(suite, inst.descriptor, verdict, r.witness, "" if r.ok else r.detail)
    except Skip as exc:
        rep = Report(suite, inst.descriptor, "skip", None, str(exc))
    rep.elapsed = time.perf_counter() - start
    return rep


def run_suite(suite: str, instances: Iterable[Instance]) -> list[Report]:
    if suite not in SUITES:
        raise UnknownSuite(f"unknown suite {suite!r}; known: {', '.join(SUITES)}")
    return [_run_one(suite, inst) for inst in instances]


def _seed_job(args) -> list[Report]:
    suites, seed, bounds = args
    inst = gen_instance(seed, **bounds)
    return [_run_one(s, inst) for s in suites]


def verify_seeds(suites: Sequence[str], seeds: Iterable[int], bounds: dict | None = None,
                 jobs: int = 1) -> list[Report]:
    """Run ``suites`` over freshly generated instances.

    Output order is seed-major, suite-minor regardless of ``jobs``.
    """
    for s in suites:
        if s not in SUITES:
            raise UnknownSuite(f"unknown suite {s!r}; known: {', '.join(SUITES)}")
    bounds = bounds or {}
    work = [(list(suites), seed, bounds) for seed in seeds]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_seed_job, work))
    else:
        chunks = [_seed_job(w) for w in work]
    return [r for chunk in chunks for r in chunk]
