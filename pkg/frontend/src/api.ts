// Query builders produce the exact JSON bodies the service accepts;
// the client wraps fetch with error surfacing.

import type {
  CollectiveRequest,
  CollectiveVerdict,
  EdgeSegmentRequest,
  Envelope,
  NodeSegmentRequest,
  PairwiseRequest,
  PairwiseVerdict,
  ReasonParams,
  SegmentJson,
  ServiceError,
  SubgraphRequest,
  Triple,
} from "./types";

export type FunctionId = "f1" | "f2" | "f3" | "f4" | "f5";

export const FUNCTIONS: Record<FunctionId, { endpoint: string; title: string }> = {
  f1: { endpoint: "/ks/node", title: "Node segment" },
  f2: { endpoint: "/ks/edge", title: "Edge segment" },
  f3: { endpoint: "/ks/subgraph", title: "Query-graph segment" },
  f4: { endpoint: "/reason/pairwise", title: "Pairwise reasoning" },
  f5: { endpoint: "/reason/collective", title: "Collective reasoning" },
};

export function validateTriple(t: Partial<Triple>): string[] {
  const problems: string[] = [];
  if (!t.subject?.trim()) problems.push("subject is empty");
  if (!t.predicate?.trim()) problems.push("predicate is empty");
  if (!t.object?.trim()) problems.push("object is empty");
  return problems;
}

export function buildNodeRequest(seed: string, params?: NodeSegmentRequest["params"]): NodeSegmentRequest {
  const body: NodeSegmentRequest = { seed: seed.trim() };
  if (params) body.params = params;
  return body;
}

export function buildEdgeRequest(triple: Triple, k = 5, bidirectional = false): EdgeSegmentRequest {
  return { triple, k, bidirectional };
}

export function buildSubgraphRequest(triples: Triple[], k = 5, bidirectional = false): SubgraphRequest {
  return { queryGraph: triples, k, bidirectional };
}

export function buildPairwiseRequest(t1: Triple, t2: Triple, params?: ReasonParams): PairwiseRequest {
  const body: PairwiseRequest = { t1, t2 };
  if (params) body.params = params;
  return body;
}

export function buildCollectiveRequest(triples: Triple[], params?: ReasonParams): CollectiveRequest {
  const body: CollectiveRequest = { queryGraph: triples };
  if (params) body.params = params;
  return body;
}

export class ApiError extends Error {
  constructor(public status: number, public payload: ServiceError) {
    super(`${payload.error}: ${payload.message}`);
  }
}

export class Client {
  constructor(private baseUrl = "") {}

  private async post<T>(endpoint: string, body: unknown): Promise<Envelope<T>> {
    const res = await fetch(`${this.baseUrl}${endpoint}`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    const doc = await res.json();
    if (!res.ok) throw new ApiError(res.status, doc as ServiceError);
    return doc as Envelope<T>;
  }

  nodeSegment(body: NodeSegmentRequest) {
    return this.post<{ segment: SegmentJson }>("/ks/node", body);
  }
  edgeSegment(body: EdgeSegmentRequest) {
    return this.post<{ segment: SegmentJson }>("/ks/edge", body);
  }
  subgraphSegment(body: SubgraphRequest) {
    return this.post<{
      segments: Record<string, SegmentJson>;
      merged: SegmentJson;
      failures: Record<string, string>;
    }>("/ks/subgraph", body);
  }
  pairwise(body: PairwiseRequest) {
    return this.post<{ verdict: PairwiseVerdict }>("/reason/pairwise", body);
  }
  collective(body: CollectiveRequest) {
    return this.post<{ verdict: CollectiveVerdict }>("/reason/collective", body);
  }
}
