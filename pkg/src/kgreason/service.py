"""HTTP/JSON facade over the reasoning engine.

All endpoints are pure functions of the loaded (graph, model) snapshot and
the request body, so identical requests are served byte-identically from
an LRU response cache. Long-running extractions can be submitted to a
small polling job queue instead of blocking the request.
"""

from __future__ import annotations

import json
import threading
import time
import uuid
from collections import OrderedDict

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from pydantic import BaseModel, Field

from .collective import reason_collective
from .errors import (InvalidQuery, KgError, MissingSegment, NoPath,
                     SingularSystem, UnknownEntity, UnknownPredicate)
from .kernel import KernelConfig
from .mining import PredicateSimilarityModel
from .pairwise import ReasoningParams, reason_pair
from .ppr import NibbleParams
from .segments import (ExtractionConfig, extract_edge_segment,
                       extract_node_segment, extract_subgraph_segment,
                       segment_to_json)
from .mining import compute_predicate_stats
from .store import KnowledgeGraph, QueryGraph


class TripleBody(BaseModel):
    subject: str
    predicate: str
    object: str

    def as_tuple(self) -> tuple[str, str, str]:
        return (self.subject, self.predicate, self.object)


class NibbleBody(BaseModel):
    alpha: float = 0.15
    epsilon: float = 1e-5
    maxSize: int = 50


class NodeSegmentRequest(BaseModel):
    seed: str
    params: NibbleBody = NibbleBody()


class EdgeSegmentRequest(BaseModel):
    triple: TripleBody
    k: int = 5
    bidirectional: bool = False


class SubgraphRequest(BaseModel):
    queryGraph: list[TripleBody]
    k: int = 5
    bidirectional: bool = False


class ReasonParamsBody(BaseModel):
    keyFraction: float = 0.5
    sameThingThreshold: float = 0.6
    transferThreshold: float = 0.700
    typePredicate: str = "isTypeOf"
    segmentK: int = 5
    transferK: int = 5
    segmentBidirectional: bool = False
    transferBidirectional: bool = True
    decay: float | None = None

    def to_params(self) -> ReasoningParams:
        return ReasoningParams(
            key_fraction=self.keyFraction,
            same_thing_threshold=self.sameThingThreshold,
            transfer_threshold=self.transferThreshold,
            type_predicate=self.typePredicate,
            segment_k=self.segmentK,
            transfer_k=self.transferK,
            segment_bidirectional=self.segmentBidirectional,
            transfer_bidirectional=self.transferBidirectional,
            kernel=KernelConfig(decay=self.decay),
        )


class PairwiseRequest(BaseModel):
    t1: TripleBody
    t2: TripleBody
    params: ReasonParamsBody = ReasonParamsBody()


class CollectiveRequest(BaseModel):
    queryGraph: list[TripleBody]
    params: ReasonParamsBody = ReasonParamsBody()


class JobRequest(BaseModel):
    kind: str = Field(pattern="^(ks/node|ks/edge|ks/subgraph|reason/pairwise|reason/collective)$")
    payload: dict


class ResponseCache:
    def __init__(self, capacity: int):
        self.capacity = capacity
        self._data: OrderedDict[str, bytes] = OrderedDict()
        self._lock = threading.Lock()

    def get(self, key: str) -> bytes | None:
        with self._lock:
            body = self._data.get(key)
            if body is not None:
                self._data.move_to_end(key)
            return body

    def put(self, key: str, body: bytes) -> None:
        with self._lock:
            self._data[key] = body
            self._data.move_to_end(key)
            while len(self._data) > self.capacity:
                self._data.popitem(last=False)


class JobStore:
    def __init__(self):
        self._jobs: dict[str, dict] = {}
        self._lock = threading.Lock()

    def submit(self, fn) -> str:
        job_id = uuid.uuid4().hex
        with self._lock:
            self._jobs[job_id] = {"status": "running", "result": None, "error": None}

        def run():
            try:
                result = fn()
                with self._lock:
                    self._jobs[job_id].update(status="done", result=result)
            except Exception as exc:  # surfaced via polling
                with self._lock:
                    self._jobs[job_id].update(status="failed", error=str(exc))

        threading.Thread(target=run, daemon=True).start()
        return job_id

    def get(self, job_id: str) -> dict | None:
        with self._lock:
            job = self._jobs.get(job_id)
            return dict(job) if job else None


def _error_status(exc: Exception) -> tuple[int, str]:
    if isinstance(exc, (UnknownEntity, UnknownPredicate)):
        return 404, type(exc).__name__
    if isinstance(exc, (NoPath, MissingSegment)):
        return 422, type(exc).__name__
    if isinstance(exc, InvalidQuery):
        return 400, type(exc).__name__
    if isinstance(exc, SingularSystem):
        return 500, type(exc).__name__
    return 500, type(exc).__name__


def create_app(graph: KnowledgeGraph, model: PredicateSimilarityModel,
               cache_size: int = 1024) -> FastAPI:
    app = FastAPI(title="kgreason", version="0.1.0",
                  description="Knowledge-graph comparative reasoning API")
    cache = ResponseCache(cache_size)
    jobs = JobStore()
    stats = compute_predicate_stats(graph)

    def envelope(payload: dict, started: float, warnings: list[str] | None = None) -> dict:
        return {
            "status": "ok",
            "elapsedMs": round((time.perf_counter() - started) * 1000.0, 3),
            "warnings": warnings or [],
            **payload,
        }

    def error_body(status: int, error: str, message: str, partial=None) -> bytes:
        doc = {"status": "error", "error": error, "message": message}
        if partial is not None:
            doc["partial"] = partial
        return json.dumps(doc, sort_keys=True).encode()

    def respond(key: str, compute) -> Response:
        cached = cache.get(key)
        if cached is not None:
            return Response(content=cached, media_type="application/json")
        started = time.perf_counter()
        try:
            payload = compute()
        except KgError as exc:
            status, name = _error_status(exc)
            body = error_body(status, name, str(exc), getattr(exc, "partial", None))
            return Response(content=body, media_type="application/json", status_code=status)
        body = json.dumps(envelope(payload, started), sort_keys=True).encode()
        cache.put(key, body)
        return Response(content=body, media_type="application/json")

    @app.exception_handler(RequestValidationError)
    async def malformed_body(request: Request, exc: RequestValidationError):
        return Response(content=error_body(400, "MalformedBody", str(exc.errors())),
                        media_type="application/json", status_code=400)

    @app.get("/health")
    def health():
        started = time.perf_counter()
        return envelope({"entities": graph.entity_count,
                         "predicates": graph.predicate_count,
                         "triples": graph.triple_count}, started)

    @app.get("/entity")
    def entity(label: str):
        def compute():
            eid = graph.resolve_entity(label)
            if eid is None:
                raise UnknownEntity(f"unknown entity: {label!r}")
            return {"entity": {
                "label": label, "id": eid,
                "outDegree": graph.out_degree(eid), "inDegree": graph.in_degree(eid),
            }}
        return respond(f"/entity?{label}", compute)

    @app.get("/predicates/similarity")
    def predicate_similarity(p1: str, p2: str):
        def compute():
            return {"p1": p1, "p2": p2, "similarity": model.similarity(p1, p2)}
        return respond(f"/predicates/similarity?{p1}|{p2}", compute)

    def run_node(body: NodeSegmentRequest) -> dict:
        params = NibbleParams(alpha=body.params.alpha, epsilon=body.params.epsilon,
                              max_size=body.params.maxSize)
        segment = extract_node_segment(graph, stats, body.seed, params)
        if segment.empty:
            exc = NoPath(f"seed {body.seed!r} is isolated in the weighted view")
            exc.partial = {"segment": segment_to_json(graph, segment)}
            raise exc
        return {"segment": segment_to_json(graph, segment)}

    def run_edge(body: EdgeSegmentRequest) -> dict:
        config = ExtractionConfig(k=body.k, bidirectional=body.bidirectional)
        segment, paths = extract_edge_segment(graph, model, body.triple.as_tuple(), config)
        return {"segment": segment_to_json(graph, segment, paths)}

    def run_subgraph(body: SubgraphRequest) -> dict:
        query = QueryGraph.from_triples([t.as_tuple() for t in body.queryGraph])
        config = ExtractionConfig(k=body.k, bidirectional=body.bidirectional)
        result = extract_subgraph_segment(graph, model, query, config)
        return {
            "segments": {str(i): segment_to_json(graph, seg, result.paths.get(i))
                         for i, seg in result.segments.items()},
            "merged": segment_to_json(graph, result.merged),
            "failures": {str(i): msg for i, msg in result.failures.items()},
        }

    def run_pairwise(body: PairwiseRequest) -> dict:
        verdict = reason_pair(graph, model, body.t1.as_tuple(), body.t2.as_tuple(),
                              body.params.to_params())
        return {"verdict": verdict.to_json(graph)}

    def run_collective(body: CollectiveRequest) -> dict:
        query = QueryGraph.from_triples([t.as_tuple() for t in body.queryGraph])
        verdict = reason_collective(graph, model, query, body.params.to_params())
        return {"verdict": verdict.to_json(graph)}

    @app.post("/ks/node")
    def ks_node(body: NodeSegmentRequest):
        return respond("/ks/node|" + body.model_dump_json(), lambda: run_node(body))

    @app.post("/ks/edge")
    def ks_edge(body: EdgeSegmentRequest):
        return respond("/ks/edge|" + body.model_dump_json(), lambda: run_edge(body))

    @app.post("/ks/subgraph")
    def ks_subgraph(body: SubgraphRequest):
        return respond("/ks/subgraph|" + body.model_dump_json(), lambda: run_subgraph(body))

    @app.post("/reason/pairwise")
    def reason_pairwise_endpoint(body: PairwiseRequest):
        return respond("/reason/pairwise|" + body.model_dump_json(), lambda: run_pairwise(body))

    @app.post("/reason/collective")
    def reason_collective_endpoint(body: CollectiveRequest):
        return respond("/reason/collective|" + body.model_dump_json(), lambda: run_collective(body))

    _runners = {
        "ks/node": (NodeSegmentRequest, run_node),
        "ks/edge": (EdgeSegmentRequest, run_edge),
        "ks/subgraph": (SubgraphRequest, run_subgraph),
        "reason/pairwise": (PairwiseRequest, run_pairwise),
        "reason/collective": (CollectiveRequest, run_collective),
    }

    @app.post("/jobs")
    def submit_job(body: JobRequest):
        model_cls, runner = _runners[body.kind]
        parsed = model_cls.model_validate(body.payload)
        job_id = jobs.submit(lambda: runner(parsed))
        return {"jobId": job_id, "status": "running"}

    @app.get("/jobs/{job_id}")
    def poll_job(job_id: str):
        job = jobs.get(job_id)
        if job is None:
            return Response(content=error_body(404, "UnknownJob", job_id),
                            media_type="application/json", status_code=404)
        return job

    @app.get("/spec")
    def openapi_document():
        return app.openapi()

    return app


def demo_app(cache_size: int = 1024) -> FastAPI:
    """App over the bundled demo dataset."""
    from .fixtures import build_canvas_graph, demo_model
    return create_app(build_canvas_graph(), demo_model(), cache_size)
