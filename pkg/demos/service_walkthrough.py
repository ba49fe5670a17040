"""
The interview over HTTP
=======================

The same five-question example, this time through the service endpoints.
Runs against an in-process app instance; point `base` at a live server to
replay it for real (`fpqm serve --data-dir ...`).
"""

from pathlib import Path

from fastapi.testclient import TestClient

from fpqm.service import create_app

HERE = Path(__file__).resolve().parent

app = create_app(data_dir=HERE / ".walkthrough-data")
base = TestClient(app)

# Train from the CSV upload, exactly as a browser form would send it.
with open(HERE / "data" / "train.csv", "rb") as fh:
    created = base.post(
        "/api/models",
        files={"file": ("train.csv", fh, "text/csv")},
        data={"name": "walkthrough", "aggregation": "linear"},
    )
print("POST /api/models ->", created.status_code, created.json())
mid = created.json()["id"]

# Open a session; the first ask arrives with the session id.
opened = base.post("/api/sessions", json={"model_id": mid, "sigma": 0.8})
sid = opened.json()["session_id"]
step = opened.json()["step"]
print("POST /api/sessions ->", opened.json())

# Answer with the second test respondent's labels until finished.  Every
# answer can trigger a run of predicted steps before the next ask.
answers = {
    "Education": "1", "Income": "0", "Social Skills": "1",
    "Work Ability": "1", "Communication": "0",
}
while step["type"] == "ask":
    value = answers[step["attribute"]]
    reply = base.post(f"/api/sessions/{sid}/answers",
                      json={"attribute": step["attribute"], "value": value})
    print(f"  answered {step['attribute']} = {value}")
    for s in reply.json()["steps"]:
        if s["type"] == "predicted":
            print(f"    predicted {s['attribute']} = {s['value']} "
                  f"(confidence {s['confidence']:.2f})")
    step = reply.json()["steps"][-1]

report = base.get(f"/api/sessions/{sid}/report").json()
print("\nGET /api/sessions/{id}/report ->")
for name, label, flag in zip(report["attributes"], report["final_labels"],
                             report["result"]["indicators"]):
    how = "predicted" if flag else "asked"
    print(f"  {name:<15} {label}  ({how})")

# Score the model against the two-row test table in one call.
scored = base.post("/api/evaluate", json={
    "model_id": mid,
    "csv_path": str(HERE / "data" / "test.csv"),
    "sigma": 0.8,
})
body = scored.json()
print(f"\nPOST /api/evaluate -> accuracy {body['aar']:.2f}, "
      f"reduction {body['arr']:.2f}, F {body['af']:.4f}")
