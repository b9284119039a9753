import pytest

from qcluster import catalog
from qcluster.qmatrix import quantum_minor, verify_cluster_variable
from qcluster.seeds import mutate_seed
from qcluster.verify import (
    Fingerprints,
    certify_exchange,
    commutative_oracle,
    identify_graph,
    label_variable,
    q1_agreement,
    verify_entry,
)


def test_gr25_report():
    rep = verify_entry(catalog.load("gr2:5"))
    assert rep.passed
    assert rep.clusters == 5 and rep.variables == 5
    assert sorted(rep.identified.values()) == ["[13]", "[14]", "[24]", "[25]", "[35]"]


def test_schubert_report():
    rep = verify_entry(catalog.load("schubert:9:7:6"))
    assert rep.passed and rep.type == "A5"
    names = set(rep.identified.values())
    assert {"(22)", "(26)", "[13]", "[26]"} <= names
    assert "(16)" not in names and "[12]" not in names


def test_exchange_certificate_agrees_with_phi(graphs):
    e, g, _ = graphs("gr3:6")
    phi = identify_graph(e, g, method="phi")
    exch = identify_graph(e, g, method="exchange")
    assert phi.passed and exch.passed
    assert phi.identified == exch.identified


def test_exchange_certificate_rejects_wrong_candidate():
    e = catalog.load("gr2:5")
    k = e.seed.labels.index("[14]")
    imgs = list(e.assignment)
    assert certify_exchange(e.seed, k, imgs, quantum_minor((3, 5), e.ambient))
    assert not certify_exchange(e.seed, k, imgs, quantum_minor((3, 5), e.ambient).shift(2))
    assert not certify_exchange(e.seed, k, imgs, quantum_minor((2, 5), e.ambient))


def test_wrong_q_power_is_not_identified():
    e = catalog.load("gr3:6")
    x = mutate_seed(e.seed, 0).vars[0]
    X = catalog.named_quadratic("X", range(1, 7), 6)
    assert verify_cluster_variable(x, X, e.assignment)
    assert not verify_cluster_variable(x, X.shift(2), e.assignment)


@pytest.mark.parametrize("name,clusters,variables", [
    ("gr2:5", 5, 5), ("gr2:8", 132, 20), ("gr3:6", 50, 16), ("gr3:7", 833, 42),
])
def test_commutative_oracle(name, clusters, variables):
    cg = commutative_oracle(catalog.load(name))
    assert len(cg.nodes) == clusters and len(cg.variables) == variables


@pytest.mark.parametrize("name", ["gr2:6", "gr3:6", "schubert:8:6:5"])
def test_q1_agreement(graphs, name):
    e, g, _ = graphs(name)
    cg = commutative_oracle(e)
    assert q1_agreement(g, cg) == []
    assert cg.edges == len(g.edges)


def test_label_variable():
    e = catalog.load("gr3:6")
    fp = Fingerprints(e)
    s = mutate_seed(e.seed, 3)
    assert label_variable(e, s.vars[3], fp) == "[135]"
    assert label_variable(e, s.vars[0], fp) == "[145]"


def test_budget_recorded_as_failure():
    rep = verify_entry(catalog.load("gr2:7"), budget=5)
    assert not rep.passed
    assert any("budget" in f for f in rep.failures)
