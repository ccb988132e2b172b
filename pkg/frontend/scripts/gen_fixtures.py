"""Regenerate the frontend test fixtures from the backend service.

Run from the frontend directory: python3 scripts/gen_fixtures.py
Requires the kgreason package installed in the active environment.
"""

import json
from pathlib import Path

from fastapi.testclient import TestClient

from kgreason.fixtures import build_canvas_graph, demo_model
from kgreason.service import create_app

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def dump(name: str, doc) -> None:
    (FIXTURES / name).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def main() -> None:
    app = create_app(build_canvas_graph(), demo_model())
    dump("openapi.json", app.openapi())
    client = TestClient(app)
    pairwise = client.post("/reason/pairwise", json={
        "t1": {"subject": "White House", "predicate": "participatedIn",
               "object": "Operation Mountain Thrust"},
        "t2": {"subject": "White House", "predicate": "punish",
               "object": "Iraqi Army"},
        "params": {"segmentK": 4, "segmentBidirectional": True,
                   "transferK": 5, "transferBidirectional": True},
    })
    assert pairwise.status_code == 200, pairwise.text
    dump("pairwise_verdict.json", pairwise.json())
    node = client.post("/ks/node", json={"seed": "Barack Obama"})
    assert node.status_code == 200, node.text
    dump("node_segment.json", node.json())
    print(f"fixtures regenerated in {FIXTURES}")


if __name__ == "__main__":
    main()
