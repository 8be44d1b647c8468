from fastapi.testclient import TestClient

from geu.service import app

from .conftest import load_fixture

client = TestClient(app)


def test_health():
    resp = client.get("/health")
    assert resp.status_code == 200
    assert resp.json() == {"status": "ok"}


def test_rules_listing():
    data = client.get("/rules").json()
    assert set(data["rules"]) == {"geu", "eu", "maximin", "regret", "mmeu", "ceu"}
    assert "thm2" in data["transforms"] and "thm3" in data["transforms"]


def test_eval_choquet_on_belief_fixture():
    resp = client.post("/eval", json={"document": load_fixture("beldr.json"),
                                      "rule": "ceu"})
    assert resp.status_code == 200
    data = resp.json()
    assert data["values"] == {"a1": "1", "a2": "2"}
    assert data["pairs"] == [{"left": "a1", "right": "a2", "relation": "<"}]


def test_eval_rule_domain_mismatch_is_input_error():
    resp = client.post("/eval", json={"document": load_fixture("beldr.json"),
                                      "rule": "eu"})
    assert resp.status_code == 422
    assert "does not apply" in resp.json()["detail"]["message"]


def test_eval_unknown_rule():
    resp = client.post("/eval", json={"document": load_fixture("beldr.json"),
                                      "rule": "zzz"})
    assert resp.status_code == 422


def test_parse_error_is_input_error():
    resp = client.post("/eval", json={"document": {"kind": "act"}, "rule": "ceu"})
    assert resp.status_code == 422


def test_represent_uniform_mode_rejects_ceu():
    resp = client.post("/represent", json={"document": load_fixture("beldr.json"),
                                           "rule": "ceu", "mode": "thm2"})
    assert resp.status_code == 200
    data = resp.json()
    assert data["ok"] is False
    assert data["error"]["category"] == "NotUniform"
    assert "a1" in data["error"]["witness"]


def test_represent_ordinal_mode_accepts_ceu():
    resp = client.post("/represent", json={"document": load_fixture("beldr.json"),
                                           "rule": "ceu", "mode": "thm3"})
    data = resp.json()
    assert data["ok"] is True
    assert data["similar"] is True
    assert data["relation_equal"] is True
    assert data["congruent"] is False


def test_represent_example_mode_maximin():
    resp = client.post("/represent", json={"document": load_fixture("maximin.json"),
                                           "rule": "maximin", "mode": "example"})
    data = resp.json()
    assert data["ok"] is True and data["congruent"] is True
    assert data["values"] == {"a1": "1", "a2": "1"}


def test_represent_example_mode_identity_for_eu():
    resp = client.post("/represent", json={"document": load_fixture("uniform.json"),
                                           "rule": "eu", "mode": "example"})
    data = resp.json()
    assert data["ok"] is True and data["congruent"] is True


def test_check_uniformity_witness():
    resp = client.post("/check", json={"document": load_fixture("beldr.json"),
                                       "property": "uniform", "rule": "ceu"})
    data = resp.json()
    assert data["verdict"] is False
    assert data["witness"]


def test_check_respects_utility():
    resp = client.post("/check", json={"document": load_fixture("maximin.json"),
                                       "property": "respects-utility",
                                       "rule": "maximin"})
    assert resp.json()["verdict"] is True


def test_lottery_induce_endpoint():
    resp = client.post("/lottery/induce",
                       json={"document": load_fixture("uniform.json")})
    data = resp.json()
    # both permuted acts induce the same uniform lottery
    assert len(data["lotteries"]) == 1
    assert data["act_to_lottery"] == {"a1": "a1", "a2": "a1"}


def test_lottery_construct_endpoint():
    resp = client.post("/lottery/construct",
                       json={"document": load_fixture("lottery_pair.json"),
                             "standard": False})
    data = resp.json()
    assert data["roundtrip"] is True
    assert len(data["situation"]["states"]) == 4


def test_lottery_construct_standard_endpoint():
    resp = client.post("/lottery/construct",
                       json={"document": load_fixture("lottery_pair.json"),
                             "standard": True})
    data = resp.json()
    assert data["situation"]["states"] == ["[0,1/3)", "[1/3,1/2)", "[1/2,1)"]
    assert data["roundtrip"] is True


def test_aa_endpoints():
    resp = client.post("/aa/flatten", json={"document": load_fixture("aa_nested.json")})
    data = resp.json()
    assert data["equivalent"] is True
    assert data["utility"] == {"lA": "1", "lB": "3"}
    resp = client.post("/aa/eval", json={"document": load_fixture("aa_nested.json")})
    data = resp.json()
    assert data["values"] == {"h1": "2", "h2": "3"}


def test_fuzz_endpoint_small():
    resp = client.post("/fuzz", json={"seed": 7, "count": 2, "suite": "eu-geu"})
    data = resp.json()
    assert data["ok"] is True
    assert data["suites"][0]["name"] == "eu-geu"
    assert data["suites"][0]["cases"] == 2


def test_fuzz_unknown_suite():
    resp = client.post("/fuzz", json={"suite": "nope"})
    assert resp.status_code == 422
