"""HTTP front end: model store, live interview sessions, evaluation runs.

Models are kept as canonical JSON files under the data directory (the
``FPQM_DATA_DIR`` environment variable, falling back to ``./fpqm-data``)
and reloaded on startup.  Sessions live in memory only; every session has
its own lock, so when two answers race, exactly one is applied and the
other is turned away with a conflict.

The wire format speaks attribute names and value labels, never indices.
"""

from __future__ import annotations

import io
import os
import threading
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .dataset import DataError, column_specs_from_json, encode_with_schema, load_csv, preprocess
from .metrics import evaluate
from .model import BuildConfig, FpqmModel, ModelFormatError, build, deserialize, serialize
from .session import Ask, Finished, Predicted, Session, SessionError, run_batch

DEFAULT_DATA_DIR = "./fpqm-data"


@dataclass
class StoredModel:
    model: FpqmModel
    name: str
    created_at: str


@dataclass
class LiveSession:
    session: Session
    model_id: str
    lock: threading.Lock = field(default_factory=threading.Lock)


class ServiceState:
    def __init__(self, data_dir: Path):
        self.data_dir = data_dir
        self.models: dict[str, StoredModel] = {}
        self.sessions: dict[str, LiveSession] = {}
        self.registry_lock = threading.Lock()
        data_dir.mkdir(parents=True, exist_ok=True)
        for path in sorted(data_dir.glob("*.json")):
            try:
                model = deserialize(path.read_text(encoding="utf-8"))
            except ModelFormatError:
                continue  # unrelated json files in the data dir are not fatal
            created = datetime.fromtimestamp(path.stat().st_mtime, timezone.utc)
            self.models[path.stem] = StoredModel(
                model=model, name=path.stem, created_at=created.isoformat()
            )

    def add_model(self, model: FpqmModel, name: str) -> str:
        mid = uuid.uuid4().hex[:12]
        (self.data_dir / f"{mid}.json").write_text(serialize(model), encoding="utf-8")
        with self.registry_lock:
            self.models[mid] = StoredModel(
                model=model,
                name=name,
                created_at=datetime.now(timezone.utc).isoformat(),
            )
        return mid

    def get_model(self, mid: str) -> StoredModel:
        try:
            return self.models[mid]
        except KeyError:
            raise HTTPException(status_code=404, detail=f"no model {mid!r}") from None

    def add_session(self, session: Session, model_id: str) -> str:
        sid = uuid.uuid4().hex[:12]
        with self.registry_lock:
            self.sessions[sid] = LiveSession(session=session, model_id=model_id)
        return sid

    def get_session(self, sid: str) -> LiveSession:
        try:
            return self.sessions[sid]
        except KeyError:
            raise HTTPException(status_code=404, detail=f"no session {sid!r}") from None


class SessionBody(BaseModel):
    model_id: str
    sigma: float = 0.8


class AnswerBody(BaseModel):
    attribute: str
    value: str


class VerifyBody(BaseModel):
    attribute: str
    confirmed: bool = True
    corrected_value: str | None = None


class EvaluateBody(BaseModel):
    model_id: str
    csv_path: str | None = None
    csv_text: str | None = None
    sigma: float = 0.8
    beta: float = 0.5


def _model_summary(mid: str, stored: StoredModel) -> dict:
    model = stored.model
    return {
        "id": mid,
        "name": stored.name,
        "created_at": stored.created_at,
        "root_attribute": model.schema[model.root.attribute].name,
        "depth": model.depth,
        "rule_count": model.rule_count,
        "schema_digest": model.schema_digest,
        "schema": [a.to_dict() for a in model.schema],
    }


def _step_dto(step, schema) -> dict:
    if isinstance(step, Ask):
        attr = schema[step.attribute]
        return {"type": "ask", "attribute": attr.name, "options": list(attr.domain)}
    if isinstance(step, Predicted):
        attr = schema[step.attribute]
        return {
            "type": "predicted",
            "attribute": attr.name,
            "value": attr.domain[step.value],
            "confidence": step.confidence,
        }
    assert isinstance(step, Finished)
    return {"type": "finished"}


def _attr_index(schema, name: str) -> int:
    for a in schema:
        if a.name == name:
            return a.index
    raise HTTPException(status_code=422, detail=f"unknown attribute {name!r}")


def _label_index(attr, label: str) -> int:
    try:
        return attr.label_index(label)
    except DataError:
        raise HTTPException(
            status_code=422,
            detail=f"attribute {attr.name!r} has no label {label!r}",
        ) from None


def _session_record(live: LiveSession, schema) -> dict:
    s = live.session
    labels = [
        None if v is None else schema[j].domain[v]
        for j, v in enumerate(s.final_values)
    ]
    return {
        "status": "finished" if s.finished else "awaiting_answer",
        "pending": None if s.pending is None else schema[s.pending].name,
        "final_labels": labels,
        "indicators": list(s.indicators),
        "corrections": [
            {
                "attribute": schema[a].name,
                "predicted": schema[a].domain[p],
                "corrected": schema[a].domain[c],
            }
            for a, p, c in s.corrections
        ],
    }


def create_app(data_dir: str | Path | None = None) -> FastAPI:
    """Build the application; state is private to each instance."""
    root = Path(data_dir or os.environ.get("FPQM_DATA_DIR") or DEFAULT_DATA_DIR)
    state = ServiceState(root)
    app = FastAPI(title="fpqm service", version="0.1.0")
    app.state.store = state

    @app.exception_handler(DataError)
    async def _data_error(request: Request, exc: DataError):
        from fastapi.responses import JSONResponse

        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.exception_handler(SessionError)
    async def _session_error(request: Request, exc: SessionError):
        from fastapi.responses import JSONResponse

        return JSONResponse(status_code=409, content={"detail": str(exc)})

    @app.post("/api/models", status_code=201)
    async def create_model(request: Request):
        content_type = request.headers.get("content-type", "")
        preprocess_doc = None
        if content_type.startswith("multipart/form-data"):
            form = await request.form()
            upload = form.get("file")
            if upload is None:
                raise HTTPException(status_code=422, detail="multipart field 'file' is required")
            text = (await upload.read()).decode("utf-8")
            aggregation = form.get("aggregation", "squared")
            min_support = int(form.get("min_support", "1"))
            name = form.get("name") or Path(upload.filename or "model").stem
            preprocess_doc = form.get("preprocess")
        else:
            body = await request.json()
            path = body.get("csv_path")
            if not path:
                raise HTTPException(status_code=422, detail="csv_path is required")
            try:
                text = Path(path).read_text(encoding="utf-8")
            except OSError as exc:
                raise HTTPException(status_code=422, detail=f"cannot read {path!r}: {exc}")
            aggregation = body.get("aggregation", "squared")
            min_support = int(body.get("min_support", 1))
            name = body.get("name") or Path(path).stem
            if body.get("preprocess") is not None:
                import json as _json

                preprocess_doc = _json.dumps(body["preprocess"])
        raw = load_csv(io.StringIO(text))
        specs = column_specs_from_json(preprocess_doc) if preprocess_doc else None
        ds = preprocess(raw, specs)
        try:
            config = BuildConfig(aggregation_mode=aggregation, min_support=min_support)
        except ModelFormatError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        model = build(ds, config)
        mid = state.add_model(model, name)
        return {
            "id": mid,
            "root_attribute": model.schema[model.root.attribute].name,
            "depth": model.depth,
            "rule_count": model.rule_count,
        }

    @app.get("/api/models")
    def list_models():
        return {
            "models": [
                _model_summary(mid, stored) for mid, stored in sorted(state.models.items())
            ]
        }

    @app.get("/api/models/{mid}")
    def get_model(mid: str):
        return _model_summary(mid, state.get_model(mid))

    @app.post("/api/sessions", status_code=201)
    def create_session(body: SessionBody):
        stored = state.get_model(body.model_id)
        if body.sigma < 0:
            raise HTTPException(status_code=422, detail="sigma must be non-negative")
        session = Session(stored.model, body.sigma)
        sid = state.add_session(session, body.model_id)
        first = Ask(session.pending)
        return {"session_id": sid, "step": _step_dto(first, stored.model.schema)}

    @app.get("/api/sessions/{sid}")
    def get_session(sid: str):
        live = state.get_session(sid)
        schema = live.session.model.schema
        with live.lock:
            if live.session.finished:
                step = Finished()
            else:
                step = Ask(live.session.pending)
            record = _session_record(live, schema)
        return {
            "model_id": live.model_id,
            "sigma": live.session.sigma,
            "record": record,
            "step": _step_dto(step, schema),
        }

    @app.post("/api/sessions/{sid}/answers")
    def submit_answer(sid: str, body: AnswerBody):
        live = state.get_session(sid)
        schema = live.session.model.schema
        attr_idx = _attr_index(schema, body.attribute)
        value_idx = _label_index(schema[attr_idx], body.value)
        with live.lock:
            steps = live.session.submit_answer(attr_idx, value_idx)
        return {"steps": [_step_dto(s, schema) for s in steps]}

    @app.post("/api/sessions/{sid}/verify")
    def verify(sid: str, body: VerifyBody):
        live = state.get_session(sid)
        schema = live.session.model.schema
        attr_idx = _attr_index(schema, body.attribute)
        corrected = None
        if body.corrected_value is not None:
            corrected = _label_index(schema[attr_idx], body.corrected_value)
        elif not body.confirmed:
            raise HTTPException(
                status_code=422,
                detail="a non-confirmation must carry corrected_value",
            )
        with live.lock:
            live.session.record_verification(attr_idx, corrected)
        return _session_record(live, schema)

    @app.get("/api/sessions/{sid}/report")
    def report(sid: str):
        live = state.get_session(sid)
        schema = live.session.model.schema
        with live.lock:
            result = live.session.result()  # SessionError (409) when unfinished
        return {
            "result": result.to_dict(),
            "attributes": [a.name for a in schema],
            "final_labels": [
                schema[j].domain[v] for j, v in enumerate(result.final_values)
            ],
            "model_id": live.model_id,
            "sigma": live.session.sigma,
        }

    @app.post("/api/evaluate")
    def evaluate_model(body: EvaluateBody):
        stored = state.get_model(body.model_id)
        if body.csv_text is not None:
            text = body.csv_text
        elif body.csv_path is not None:
            try:
                text = Path(body.csv_path).read_text(encoding="utf-8")
            except OSError as exc:
                raise HTTPException(status_code=422, detail=f"cannot read test CSV: {exc}")
        else:
            raise HTTPException(status_code=422, detail="csv_path or csv_text is required")
        if body.beta <= 0:
            raise HTTPException(status_code=422, detail="beta must be positive")
        if body.sigma < 0:
            raise HTTPException(status_code=422, detail="sigma must be non-negative")
        ds = encode_with_schema(load_csv(io.StringIO(text)), stored.model.schema)
        results = [
            run_batch(stored.model, [int(v) for v in row], body.sigma) for row in ds.rows
        ]
        rep = evaluate(results, ds, body.beta)
        return rep.to_dict()

    ui_dir = os.environ.get("FPQM_UI_DIR")
    candidates = [Path(ui_dir)] if ui_dir else [
        Path(__file__).resolve().parents[2] / "frontend" / "dist",
    ]
    for candidate in candidates:
        if candidate.is_dir():
            app.mount("/ui", StaticFiles(directory=candidate, html=True), name="ui")
            break

    return app
