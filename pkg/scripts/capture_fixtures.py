"""Record real service responses as frontend test fixtures.

Run from the repository root after changing the engine or the service:

    python3 scripts/capture_fixtures.py

The browser client's tests replay these byte-for-byte, which is what
pins the client to actual server behavior instead of assumptions.
"""

from __future__ import annotations

import json
from pathlib import Path

from fastapi.testclient import TestClient

from deliberator.service import create_app
from deliberator.session import Session

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "frontend" / "test" / "fixtures"

CHAIRMAN_1 = "assess u(sA1 | expense, whether_drove_alfa, how_chairman_reacts) = 8."
CHAIRMAN_2 = "assess u(sA2 | expense, whether_drove_alfa, how_chairman_reacts) = -4."


def dump(name: str, payload) -> None:
    path = FIXTURES / f"{name}.json"
    path.write_text(json.dumps(payload, indent=2, sort_keys=False) + "\n")
    print(f"wrote {path.relative_to(ROOT)}")


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)

    text = (ROOT / "corpus" / "alfa_model_a.kb").read_text()
    client = TestClient(create_app(Session(text)))
    dump("alfa_session_0", client.get("/session").json())
    r1 = client.post("/statements", json={"statement": CHAIRMAN_1, "revision": 0})
    dump("alfa_statement_1", r1.json())
    dump("alfa_session_1", client.get("/session").json())
    r2 = client.post("/statements", json={"statement": CHAIRMAN_2, "revision": 1})
    dump("alfa_statement_2", r2.json())
    dump("alfa_session_2", client.get("/session").json())
    bad = client.post("/statements", json={"statement": "assess u(sA1 | ghost) = 1.", "revision": 2})
    assert bad.status_code == 400
    dump("alfa_parse_400", bad.json())
    smoke = TestClient(create_app(Session((ROOT / "corpus" / "smoking.kb").read_text())))
    dupe = smoke.post(
        "/statements", json={"statement": "contr does_smoke = -25.", "revision": 0}
    )
    assert dupe.status_code == 400
    dump("smoking_duplicate_400", dupe.json())
    stale = client.post("/statements", json={"statement": "prop x.", "revision": 0})
    assert stale.status_code == 409
    dump("alfa_conflict_409", stale.json())

    fig6 = (ROOT / "corpus" / "reinstatement.kb").read_text()
    fig_client = TestClient(create_app(Session(fig6)))
    dump("reinstatement_query_do_a1", fig_client.post("/query", json={"literal": "do(a1)"}).json())
    dump(
        "reinstatement_query_do_a2",
        fig_client.post("/query", json={"literal": "do(a2)"}).json(),
    )
    dump(
        "reinstatement_query_empty",
        fig_client.post("/query", json={"literal": "desir(p)"}).json(),
    )


if __name__ == "__main__":
    main()
