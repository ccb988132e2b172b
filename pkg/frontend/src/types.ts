// Request/response shapes mirroring the reasoning service JSON.

export type Triple = { subject: string; predicate: string; object: string };

export type ReasonParams = {
  keyFraction?: number;
  sameThingThreshold?: number;
  transferThreshold?: number;
  typePredicate?: string;
  segmentK?: number;
  transferK?: number;
  segmentBidirectional?: boolean;
  transferBidirectional?: boolean;
  decay?: number | null;
};

export type NodeSegmentRequest = {
  seed: string;
  params?: { alpha?: number; epsilon?: number; maxSize?: number };
};
export type EdgeSegmentRequest = { triple: Triple; k?: number; bidirectional?: boolean };
export type SubgraphRequest = { queryGraph: Triple[]; k?: number; bidirectional?: boolean };
export type PairwiseRequest = { t1: Triple; t2: Triple; params?: ReasonParams };
export type CollectiveRequest = { queryGraph: Triple[]; params?: ReasonParams };

export type SegmentNode = { id: number; label: string; attrs: string[] };
export type SegmentEdge = { src: string; pred: string; dst: string; weight: number };
export type SegmentJson = {
  nodes: SegmentNode[];
  edges: SegmentEdge[];
  provenance: Record<string, unknown>;
  empty: boolean;
  paths?: { nodes: string[]; cost: number }[];
};

export type InfluenceEntry = { element: string | string[]; value: number };
export type InfluenceSide = {
  attributes: InfluenceEntry[];
  nodes: InfluenceEntry[];
  edges: InfluenceEntry[];
};

export type TransferDirection = {
  value: number;
  paths: { nodes: string[]; value: number }[];
  error: string | null;
};
export type TransferJson = {
  forward: TransferDirection;
  backward: TransferDirection;
  threshold: number;
  verdict: "subsumes" | "disjoint";
};

export type PairwiseVerdict = {
  case: string;
  t1: string[];
  t2: string[];
  sameThing: boolean;
  consistent: boolean | null;
  predicateCheck: string | null;
  overlapRate: { attributes: number; nodes: number; edges: number; mean: number } | null;
  commonality: { nodes: string[]; edges: string[][] } | null;
  transfer: TransferJson | null;
  evidence: {
    segments?: SegmentJson[];
    influence?: { first: InfluenceSide; second: InfluenceSide };
    keyElements?: InfluenceSide[];
  };
};

export type PairCheck = {
  edgeA: number;
  edgeB: number;
  overlap: { attributes: number; nodes: number; edges: number; mean: number };
  status: "below-overlap" | "subject-disjoint" | "checked";
  subjectTransfer: TransferJson | null;
  objectTransfer: TransferJson | null;
  inconsistent: boolean;
};

export type CollectiveVerdict = {
  query: string[][];
  inconsistent: boolean;
  pairsChecked: PairCheck[];
  lineGraphs: {
    adjacency: number[][];
    h1: number[][];
    h2: number[][];
    h2Normalized: number[][];
    loss: number;
  };
  evidence: {
    segments: Record<string, SegmentJson>;
    merged: SegmentJson;
    collectiveKeyElements: Record<string, InfluenceSide>;
  };
};

export type Envelope<T> = T & { status: string; elapsedMs: number; warnings: string[] };
export type ServiceError = { status: "error"; error: string; message: string; partial?: unknown };
