"""HTTP facade behavior via the in-process test client."""

import json

import pytest
from fastapi.testclient import TestClient

from roadrisk.data import bundled_model_path
from roadrisk.model_io import ModelDocument, Scenario, save_model
from roadrisk.network import Cpt, Network, Node
from roadrisk.service import MAX_SWEEP_CELLS, ServiceConfig, create_app

WORST_ROOTS_BODY = {
    "extreme_precipitation": "yes",
    "extreme_temperature": "yes",
    "sea_level_rise": "yes",
    "zero_crossing": "yes",
}


@pytest.fixture(scope="module")
def client():
    app = create_app(ServiceConfig(model_path=bundled_model_path()))
    return TestClient(app)


@pytest.fixture(scope="module")
def chain_client(tmp_path_factory):
    # a -> b is a deterministic copy; contradictory evidence is impossible
    net = Network([
        Node("a", "a", ["yes", "no"], [], Cpt([[0.5, 0.5]])),
        Node("b", "b", ["yes", "no"], ["a"], Cpt([[1.0, 0.0], [0.0, 1.0]])),
    ], name="chain")
    doc = ModelDocument(network=net,
                        scenarios=[Scenario("copy", "copy", {"a": "yes"}, ["b"])])
    path = tmp_path_factory.mktemp("model") / "chain.model"
    path.write_text(save_model(doc), encoding="utf-8")
    return TestClient(create_app(ServiceConfig(model_path=path)))


class TestHealthAndModel:
    def test_healthz_reports_model_hash(self, client):
        response = client.get("/healthz")
        assert response.status_code == 200
        body = response.json()
        assert body["status"] == "ok"
        assert len(body["model_hash"]) == 64

    def test_model_lists_28_nodes_without_cpts(self, client):
        body = client.get("/api/model").json()
        assert len(body["nodes"]) == 28
        assert all("cpt" not in n for n in body["nodes"])

    def test_model_with_cpts_matches_file_values(self, client):
        body = client.get("/api/model", params={"cpts": "true"}).json()
        raw = json.loads(bundled_model_path().read_text())
        file_nodes = {n["id"]: n for n in raw["nodes"]}
        for node in body["nodes"]:
            assert node["cpt"]["columns"] == file_nodes[node["id"]]["cpt"]["columns"]

    def test_provenance_summary_counts_reconstructed_columns(self, client):
        body = client.get("/api/model").json()
        by_id = {n["id"]: n for n in body["nodes"]}
        assert by_id["flooding"]["provenance"] == {"paper": 0, "reconstructed": 24}
        assert by_id["mudslides"]["provenance"] == {"paper": 2, "reconstructed": 0}

    def test_nodes_carry_structural_groups(self, client):
        body = client.get("/api/model").json()
        groups = {n["id"]: n["group"] for n in body["nodes"]}
        assert groups["extreme_precipitation"] == "root"
        assert groups["blue_spot"] == "context"
        assert groups["flooding"] == "intermediate"
        assert groups["road_deterioration"] == "outcome"
        assert groups["collapse_of_culvert_bridge"] == "outcome"


class TestInfer:
    def test_empty_evidence_gives_baseline(self, client):
        body = client.post("/api/infer", json={"evidence": {}}).json()
        assert body["posteriors"]["road_deterioration"]["yes"] == pytest.approx(
            0.34, abs=0.05)
        assert body["posteriors"]["collapse_of_culvert_bridge"]["yes"] == pytest.approx(
            0.48, abs=0.05)
        assert len(body["posteriors"]) == 28
        assert body["evidence"] == {}

    def test_evidence_node_is_point_mass(self, client):
        body = client.post("/api/infer",
                           json={"evidence": {"flooding": "yes"}}).json()
        assert body["posteriors"]["flooding"] == {"yes": 1.0, "no": 0.0}

    def test_unknown_node_is_400_naming_it(self, client):
        response = client.post("/api/infer", json={"evidence": {"nope": "yes"}})
        assert response.status_code == 400
        assert "nope" in response.json()["detail"]

    def test_unknown_state_is_400_naming_it(self, client):
        response = client.post("/api/infer",
                               json={"evidence": {"flooding": "maybe"}})
        assert response.status_code == 400
        assert "maybe" in response.json()["detail"]

    def test_impossible_evidence_is_422(self, chain_client):
        response = chain_client.post(
            "/api/infer", json={"evidence": {"a": "yes", "b": "no"}})
        assert response.status_code == 422
        assert response.json()["error"] == "impossible_evidence"

    def test_oversized_body_is_413(self, client):
        payload = {"evidence": {}, }
        raw = b'{"evidence": {"x": "' + b"y" * 1_100_000 + b'"}}'
        response = client.post("/api/infer", content=raw,
                               headers={"content-type": "application/json"})
        assert response.status_code == 413

    def test_unknown_body_keys_rejected(self, client):
        response = client.post("/api/infer", json={"evidenze": {}})
        assert response.status_code == 400

    def test_repeat_requests_are_value_identical(self, client):
        a = client.post("/api/infer", json={"evidence": WORST_ROOTS_BODY}).json()
        b = client.post("/api/infer", json={"evidence": WORST_ROOTS_BODY}).json()
        assert a == b


class TestCliParity:
    def test_service_and_cli_posteriors_agree(self, client, capsys, monkeypatch):
        from roadrisk.cli import main

        monkeypatch.chdir("/tmp")
        evidence = {"extreme_precipitation": "yes", "blue_spot": "high"}
        api = client.post("/api/infer", json={"evidence": evidence}).json()

        argv = ["infer", "--format", "json"]
        for node, state in evidence.items():
            argv += ["--evidence", f"{node}={state}"]
        assert main(argv) == 0
        cli = json.loads(capsys.readouterr().out)

        assert cli["model_hash"] == api["model_hash"]
        for node, states in api["posteriors"].items():
            for state, p in states.items():
                assert abs(cli["posteriors"][node][state] - p) <= 1e-12


class TestScenarios:
    def test_presets_listed(self, client):
        body = client.get("/api/scenarios").json()
        ids = {s["id"] for s in body["scenarios"]}
        assert {"baseline", "worst_case_roots", "worst_case_full"} <= ids

    def test_worst_case_full_run(self, client):
        body = client.post("/api/scenarios/worst_case_full/run").json()
        assert body["posteriors"]["collapse_of_culvert_bridge"]["yes"] == \
            pytest.approx(0.86, abs=0.08)

    def test_unknown_scenario_is_404(self, client):
        assert client.post("/api/scenarios/nope/run").status_code == 404


class TestSweep:
    FIG6 = {
        "target": {"node": "collapse_of_culvert_bridge", "state": "yes"},
        "axes": [{"node": "blue_spot"}, {"node": "bridge_condition"}],
        "fixed": WORST_ROOTS_BODY,
    }

    def test_fig6_spec_returns_15_cells(self, client):
        body = client.post("/api/sweep", json=self.FIG6).json()
        assert len(body["cells"]) == 15
        assert body["axes"][0] == {"node": "blue_spot",
                                   "states": ["low", "medium", "high"]}

    def test_single_cell_sweep_matches_infer(self, client):
        body = client.post("/api/sweep", json={
            "target": {"node": "collapse_of_culvert_bridge", "state": "yes"},
            "axes": [{"node": "bridge_condition", "states": ["g5"]}],
            "fixed": WORST_ROOTS_BODY,
        }).json()
        merged = {**WORST_ROOTS_BODY, "bridge_condition": "g5"}
        infer = client.post("/api/infer", json={"evidence": merged}).json()
        assert body["cells"][0]["probability"] == \
            infer["posteriors"]["collapse_of_culvert_bridge"]["yes"]

    def test_oversized_sweep_is_422(self, client):
        states = [f"g{i}" for i in range(1, 6)]
        body = {
            "target": {"node": "collapse_of_culvert_bridge", "state": "yes"},
            "axes": [{"node": "bridge_condition", "states": states * 5}] * 6,
        }
        cells = (len(states) * 5) ** 6
        assert cells > MAX_SWEEP_CELLS
        response = client.post("/api/sweep", json=body)
        assert response.status_code == 422
        assert response.json()["error"] == "sweep_too_large"

    def test_csv_format_matches_export(self, client):
        response = client.post("/api/sweep", params={"format": "csv"},
                               json=self.FIG6)
        assert response.headers["content-type"].startswith("text/csv")
        lines = response.text.split("\r\n")
        assert lines[0] == "blue_spot,bridge_condition,probability,error"
        assert len([l for l in lines if l]) == 16

    def test_malformed_target_is_400(self, client):
        response = client.post("/api/sweep", json={"target": {"node": "flooding"},
                                                   "axes": [{"node": "blue_spot"}]})
        assert response.status_code == 400

    def test_impossible_cell_is_marked_not_fatal(self, chain_client):
        body = chain_client.post("/api/sweep", json={
            "target": {"node": "a", "state": "yes"},
            "axes": [{"node": "b"}],
            "fixed": {"a": "yes"},
        }).json()
        cells = {c["assignment"]["b"]: c for c in body["cells"]}
        assert cells["yes"]["probability"] == 1.0
        assert cells["no"]["probability"] is None
        assert cells["no"]["error"]


class TestStartup:
    def test_missing_model_fails_fast(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            create_app(ServiceConfig(model_path=tmp_path / "absent.model"))

    def test_invalid_model_fails_fast(self, tmp_path):
        bad = tmp_path / "bad.model"
        bad.write_text("{}", encoding="utf-8")
        with pytest.raises(Exception):
            create_app(ServiceConfig(model_path=bad))

    def test_static_dir_served_at_root(self, tmp_path):
        static = tmp_path / "ui"
        static.mkdir()
        (static / "index.html").write_text("<html><body>ui</body></html>")
        app = create_app(ServiceConfig(model_path=bundled_model_path(),
                                       static_dir=static))
        client = TestClient(app)
        response = client.get("/")
        assert response.status_code == 200
        assert "ui" in response.text
        # the API keeps priority over static files
        assert client.get("/healthz").status_code == 200
