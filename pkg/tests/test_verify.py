import json

import pytest

from lconj import verify
from lconj.errors import BoundsExceeded, UnknownSuite
from lconj.group import identity_hom
from lconj.lsubset import is_l_subgroup_of, point_membership
from lconj.normality import normalizer_setproduct
from lconj.verify import (
    SUITES,
    Instance,
    gen_instance,
    reports_to_json,
    run_suite,
    verify_seeds,
)

REGISTRY = ["T2.2", "T2.3", "T2.7", "T2.12", "Tgen", "T3.2", "R3.tip", "T3.4", "T3.5", "T3.6", "T3.7",
            "T3.8", "T3.10", "P4.1", "D4.3-largest", "T4.4", "C4.5", "P4.7", "L4.8", "L4.9",
            "D4.10-equivalence"]


def workspace_instance(ws):
    eta, mu, p = ws.subset("eta"), ws.subset("mu"), ws.points["p"]
    return Instance(0, ws.lattice, ws.group, mu, eta, eta, [p], identity_hom(ws.group), mu, eta, [p],
                    descriptor="workspace")


def test_registry_ids():
    assert list(SUITES) == REGISTRY


def test_generated_instances_are_valid():
    for seed in range(50):
        inst = gen_instance(seed)
        assert inst.group.order <= 16 and len(inst.lattice) <= 8
        assert is_l_subgroup_of(inst.eta, inst.mu) and is_l_subgroup_of(inst.nu, inst.mu)
        assert all(point_membership(p, inst.mu) for p in inst.points)


def test_instances_are_deterministic():
    a, b = gen_instance(17), gen_instance(17)
    assert a.descriptor == b.descriptor
    assert a.eta == b.eta and a.mu == b.mu and a.points == b.points


def test_chain_bound():
    for seed in range(20):
        assert gen_instance(seed, max_lattice_size=5, lattice_kind="chain").lattice.is_chain


def test_bounds_rejected():
    with pytest.raises(BoundsExceeded):
        gen_instance(0, max_group_order=99)
    with pytest.raises(BoundsExceeded):
        gen_instance(0, max_lattice_size=1)
    with pytest.raises(BoundsExceeded):
        gen_instance(0, lattice_kind="tree")


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("T9.9", [])
    with pytest.raises(UnknownSuite):
        verify_seeds(["nope"], range(1))


def test_trivial_bounds_pass_or_skip():
    reports = verify_seeds(REGISTRY, range(5), {"max_group_order": 1, "max_lattice_size": 2})
    assert all(r.verdict in ("pass", "skip") for r in reports)
    assert sum(r.verdict == "pass" for r in reports) >= 5 * 18


def test_report_json_is_reproducible():
    first = reports_to_json(verify_seeds(REGISTRY, range(6)))
    second = reports_to_json(verify_seeds(REGISTRY, range(6)))
    assert first == second
    assert "elapsed_ms" not in first
    timed = json.loads(reports_to_json(verify_seeds(["T3.2"], range(2)), timing=True))
    assert all("elapsed_ms" in r for r in timed)


def test_parallel_order_matches_serial():
    serial = verify_seeds(["T3.2", "P4.1"], range(8))
    parallel = verify_seeds(["T3.2", "P4.1"], range(8), jobs=2)
    assert [r.to_dict() for r in serial] == [r.to_dict() for r in parallel]


def test_empty_seed_range():
    assert verify_seeds(REGISTRY, range(0)) == []


def test_chain_only_suite_skips(s4ws):
    (rep,) = run_suite("T3.10", [workspace_instance(s4ws)])
    assert rep.verdict == "skip" and rep.reason == "requires chain"
    (rep,) = run_suite("T4.4", [workspace_instance(s4ws)])
    assert rep.verdict == "skip"


def test_workspace_instance_suites(d16ws):
    inst = workspace_instance(d16ws)
    for suite in ("D4.10-equivalence", "T4.4", "T3.2", "T3.7", "P4.1", "D4.3-largest", "L4.8", "L4.9"):
        (rep,) = run_suite(suite, [inst])
        assert rep.verdict == "pass", (suite, rep)


def test_failure_carries_replayable_witness(d16ws, monkeypatch):
    inst = workspace_instance(d16ws)
    monkeypatch.setattr(verify, "normalizer_conjugacy", lambda s, mu: mu)
    (rep,) = run_suite("D4.10-equivalence", [inst])
    assert rep.verdict == "fail"
    G, L = inst.group, inst.lattice
    from lconj.lsubset import LSubset
    subject = LSubset.from_labels(G, L, rep.witness["subject"])
    assert normalizer_setproduct(subject, inst.mu).as_labels() == rep.witness["setproduct"]
    assert rep.witness["conjugacy"] != rep.witness["setproduct"]


def test_violation_witness_in_report(d16ws, monkeypatch):
    inst = workspace_instance(d16ws)
    monkeypatch.setattr(verify, "is_l_subgroup_of", lambda s, mu: False)
    (rep,) = run_suite("T3.2", [inst])
    assert rep.verdict == "fail"
    assert rep.witness["point"] == "1/12@r"
