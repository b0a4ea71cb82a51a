"""Regenerate tests/fixtures/*.json from the real lab service.

Each fixture records the exact script text a preset sends and the JSON
report the server returned for it.  The bench's network-mock tests replay
these files, so every number they assert against was once a genuine
server response.

Run from anywhere:

    python3 frontend/tools/capture_fixtures.py

Requires the sglab package (the backend) to be installed.
"""

import json
import pathlib

from fastapi.testclient import TestClient

from sglab.service import create_app

SCRIPTS = {
    "exp1": "beam random\nsplit z\ndrop\nsplit z\n",
    "exp2": "beam random\nfilter z +\nsplit x\n",
    "exp3": "beam random\nsplit z\ndrop\nsplit x\ndrop\nsplit z\n",
    "exp4": "beam random\nsplit z\ndrop\nsplit x\nrecombine x\nsplit z\n",
    "puzzle1": "beam random\nfilter z +\nfilter x +\nfilter z -\n",
    "puzzle2": "beam random\nfilter z +\nbfield y pi/2\nfilter x +\n",
    "puzzle3": (
        "beam random\nsplit z\ndrop\nsplit x\n"
        "bfield x 2*pi\nrecombine x\nsplit z\n"
    ),
}

FIXTURE_DIR = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def main() -> None:
    FIXTURE_DIR.mkdir(parents=True, exist_ok=True)
    with TestClient(create_app()) as client:
        for name, text in SCRIPTS.items():
            sid = client.post("/sessions").json()["id"]
            response = client.post(f"/sessions/{sid}/script", content=text)
            response.raise_for_status()
            fixture = {"script": text, "report": response.json()}
            path = FIXTURE_DIR / f"{name}.json"
            path.write_text(json.dumps(fixture, indent=2) + "\n")
            print(f"wrote {path}")


if __name__ == "__main__":
    main()
