import json
import os
from pathlib import Path

import pytest

import lucent

CORPUS = Path(os.environ.get("LUCENT_CORPUS_DIR", Path(__file__).resolve().parents[2] / "corpus"))


def test_example_nets_load():
    n1 = lucent.Net.example("N1")
    assert n1.name == "N1"
    assert len(n1.places) == 4
    assert n1.initial == {"p1": 1}
    assert lucent.is_free_choice(n1)
    assert lucent.net_class(n1) == "state-machine"


def test_parse_and_serialize_round_trip():
    text = (CORPUS / "n2.net").read_text()
    net = lucent.Net.parse(text)
    assert lucent.Net.parse(net.serialize()).serialize() == net.serialize()
    assert lucent.Net.load(str(CORPUS / "n2.net")).serialize() == net.serialize()


def test_firing():
    n2 = lucent.Net.example("N2")
    assert lucent.enabled(n2, {"p2": 1, "p6": 1}) == ["t3"]
    assert lucent.fire(n2, {"p1": 1}, ["t1", "t3"]) == {"p3": 1, "p5": 1}


def test_explore_n2():
    rg = lucent.explore(lucent.Net.example("N2"))
    assert rg["verdict"] == "complete"
    assert len(rg["states"]) == 6


def test_lucency_verdicts():
    assert lucent.lucency(lucent.Net.example("N1"))["lucent"] is True
    v = lucent.lucency(lucent.Net.example("N2"))
    assert v["lucent"] is False
    assert v["witness"] == ({"p2": 1, "p5": 1}, {"p2": 1, "p6": 1})
    assert v["footprint"] == ["t3"]
    assert lucent.lucency(lucent.Net.example("N5"), max_states=2)["lucent"] is None


def test_home_clusters():
    assert lucent.home_clusters(lucent.Net.example("N1")) == [["p4"]]
    assert lucent.home_clusters(lucent.Net.example("N3"), method="direct") == []
    with pytest.raises(ValueError):
        lucent.home_clusters(lucent.Net.example("N1"), method="nope")


def test_analyze_json_is_deterministic():
    n1 = lucent.Net.example("N1")
    a = lucent.analyze(n1)
    assert a == lucent.analyze(n1)
    report = json.loads(a)
    assert report["home_clusters"] == [["p4"]]
    assert "lucent: true" in lucent.analyze(n1, format="text")


def test_build_net_in_python():
    net = lucent.Net("loop", ["p"], ["t"], [("p", "t"), ("t", "p")], {"p": 1})
    assert lucent.is_proper(net)
    assert lucent.lucency(net)["lucent"] is True
    assert lucent.clusters(net) == [["p", "t"]]


def test_errors_raise_lucent_error():
    with pytest.raises(lucent.LucentError):
        lucent.Net.parse("place p\n")
    with pytest.raises(lucent.LucentError):
        lucent.Net("bad", ["p", "q"], ["t"], [("p", "q")])
    with pytest.raises(ValueError):
        lucent.Net.example("N9")


def test_generator_and_suite():
    g = lucent.Net.generate(5, strongly_connected=True)
    assert lucent.is_free_choice(g) and lucent.is_proper(g)
    r = lucent.theorem_suite(random=40, seed=3)
    assert r["nets"] == 45
    # the only tolerated anomaly is the cleaning gap in the short-circuit equivalence
    for check, _, evidence in r["anomalies"]:
        assert check == "short-circuit-equivalence"
        assert "cleaning drops input places" in evidence
    assert set(r["tallies"]) >= {"home-cluster-lucent", "lucent-implies-bounded"}
