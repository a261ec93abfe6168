"""HTTP session endpoints: the incremental-refinement conversation."""

import pytest
from fastapi.testclient import TestClient

from deliberator.service import create_app
from deliberator.session import Session

from conftest import CORPUS


@pytest.fixture()
def client() -> TestClient:
    text = (CORPUS / "alfa_model_a.kb").read_text()
    return TestClient(create_app(Session(text)))


CHAIRMAN_1 = "assess u(sA1 | expense, whether_drove_alfa, how_chairman_reacts) = 8."
CHAIRMAN_2 = "assess u(sA2 | expense, whether_drove_alfa, how_chairman_reacts) = -4."


class TestSessionEndpoint:
    def test_snapshot(self, client):
        body = client.get("/session").json()
        assert body["revision"] == 0
        assert body["recommendation"]["summary"] == "ACT rent_alfa (u=3.4 vs 2)"
        assert body["history"] == []
        assert "chance sA0 : dept_pays = 0.4 ? sA1 : sA2." in body["document"]

    def test_reads_are_stable(self, client):
        first = client.get("/session").json()
        second = client.get("/session").json()
        assert first == second

    def test_health(self, client):
        assert client.get("/health").json() == {"status": "ok", "revision": 0}

    def test_every_response_carries_the_revision(self, client):
        client.post("/statements", json={"statement": CHAIRMAN_1, "revision": 0})
        for response in (
            client.get("/session"),
            client.get("/health"),
            client.get("/graph.dot", params={"literal": "u(sA0) = 2.6"}),
            client.post("/query", json={"literal": "u(sA0) = 2.6"}),
        ):
            assert response.headers["x-deliberator-revision"] == "1"


class TestStatements:
    def test_chairman_assessments_flip_verdict(self, client):
        r1 = client.post("/statements", json={"statement": CHAIRMAN_1, "revision": 0})
        assert r1.status_code == 200
        body1 = r1.json()
        assert body1["revision"] == 1
        r2 = client.post("/statements", json={"statement": CHAIRMAN_2, "revision": 1})
        body2 = r2.json()
        assert body2["recommendation"]["act"] == "rent_econo"
        assert body2["recommendation"]["utilities"]["rent_alfa"] == "0.8"
        assert body2["flip"]["changed"] is True
        assert "rent_alfa" in body2["flip"]["old"]
        assert "rent_econo" in body2["flip"]["new"]

    def test_comment_only_statement_is_400(self, client):
        r = client.post("/statements", json={"statement": "# hmm", "revision": 0})
        assert r.status_code == 400
        assert r.json()["detail"]["error"] == "parse error"

    def test_parse_diagnostics_in_body(self, client):
        r = client.post("/statements", json={"statement": "contr ghost = 3.", "revision": 0})
        assert r.status_code == 400
        detail = r.json()["detail"]
        assert detail["line"] == 1 and "ghost" in detail["message"]

    def test_stale_revision_conflicts(self, client):
        client.post("/statements", json={"statement": CHAIRMAN_1, "revision": 0})
        r = client.post("/statements", json={"statement": CHAIRMAN_2, "revision": 0})
        assert r.status_code == 409
        assert r.json()["detail"]["expected"] == 1


class TestQuery:
    def test_justify_literal(self, client):
        r = client.post("/query", json={"literal": "u(sA0) = 3.4"})
        assert r.status_code == 200
        body = r.json()
        assert body["verdict"] == "JUSTIFIED"
        assert body["trace"]["schema"] == "dialectic-trace/1"

    def test_bad_literal_is_400(self, client):
        assert client.post("/query", json={"literal": "wish(upon)"}).status_code == 400

    def test_graph_dot(self, client):
        r = client.get("/graph.dot", params={"literal": "u(sA0) = 3.4"})
        assert r.status_code == 200
        assert r.text.startswith("digraph dialectic {")


class TestUndo:
    def test_undo_pops_and_bumps_revision(self, client):
        client.post("/statements", json={"statement": CHAIRMAN_1, "revision": 0})
        client.post("/statements", json={"statement": CHAIRMAN_2, "revision": 1})
        r = client.post("/undo", json={"revision": 2})
        body = r.json()
        assert body["revision"] == 3  # monotone, even on undo
        assert len(client.get("/session").json()["statements"]) == 1

    def test_undo_on_empty_history_is_400(self, client):
        assert client.post("/undo", json={"revision": 0}).status_code == 400


class TestReplayDeterminism:
    def test_history_replay_reproduces_state(self):
        text = (CORPUS / "alfa_model_a.kb").read_text()
        session = Session(text)
        session.apply_statement(CHAIRMAN_1)
        session.apply_statement(CHAIRMAN_2)
        twin = session.replay()
        assert twin.revision == session.revision
        assert twin.recommendation.summary() == session.recommendation.summary()
        assert [h.summary for h in twin.history] == [h.summary for h in session.history]

    def test_cli_and_service_share_inference(self, tmp_path):
        import json
        import subprocess
        import sys

        text = (CORPUS / "alfa_model_a.kb").read_text()
        extended = text + "\n" + CHAIRMAN_1 + "\n" + CHAIRMAN_2 + "\n"
        f = tmp_path / "doc.kb"
        f.write_text(extended)
        proc = subprocess.run(
            [sys.executable, "-m", "deliberator.cli", "--json", "recommend", str(f)],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0, proc.stderr
        cli_summary = json.loads(proc.stdout)["summary"]
        session = Session(text)
        session.apply_statement(CHAIRMAN_1)
        session.apply_statement(CHAIRMAN_2)
        assert session.recommendation.summary() == cli_summary
