// SVG result viewer: node size follows absolute influence, key elements
// and commonality get dedicated classes, failing transfer paths are
// flagged, and every entity is clickable so a result can seed the next
// node query.

import { forceLayout } from "./layout";
import type {
  CollectiveVerdict,
  InfluenceSide,
  PairwiseVerdict,
  SegmentJson,
} from "./types";

const SVG_NS = "http://www.w3.org/2000/svg";

export type RenderOptions = {
  width?: number;
  height?: number;
  seed?: number;
  influence?: Map<string, number>;
  keyNodes?: Set<string>;
  keyEdges?: Set<string>;
  commonalityNodes?: Set<string>;
  commonalityEdges?: Set<string>;
  failingEdges?: Set<string>;
  onEntityClick?: (label: string) => void;
};

export function edgeKey(src: string, pred: string, dst: string): string {
  return `${src}|${pred}|${dst}`;
}

function radiusScale(influence: Map<string, number> | undefined, labels: string[]) {
  if (!influence || influence.size === 0) return () => 10;
  let max = 0;
  for (const label of labels) {
    max = Math.max(max, Math.abs(influence.get(label) ?? 0));
  }
  if (max === 0) return () => 10;
  return (label: string) => 7 + 11 * (Math.abs(influence.get(label) ?? 0) / max);
}

export function renderSegment(
  container: HTMLElement,
  segment: SegmentJson,
  options: RenderOptions = {},
): SVGSVGElement {
  const width = options.width ?? 640;
  const height = options.height ?? 420;
  const doc = container.ownerDocument;
  const svg = doc.createElementNS(SVG_NS, "svg") as SVGSVGElement;
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.setAttribute("class", "segment-view");

  const labels = segment.nodes.map((n) => n.label);
  const positions = forceLayout(
    labels,
    segment.edges.map((e) => ({ source: e.src, target: e.dst })),
    width,
    height,
    options.seed ?? 42,
  );
  const radius = radiusScale(options.influence, labels);

  for (const edge of segment.edges) {
    const a = positions.get(edge.src);
    const b = positions.get(edge.dst);
    if (!a || !b) continue;
    const key = edgeKey(edge.src, edge.pred, edge.dst);
    const group = doc.createElementNS(SVG_NS, "g");
    const classes = ["edge"];
    if (options.keyEdges?.has(key)) classes.push("key-element");
    if (options.commonalityEdges?.has(key)) classes.push("commonality");
    if (options.failingEdges?.has(key)) classes.push("failing-transfer");
    group.setAttribute("class", classes.join(" "));
    group.setAttribute("data-src", edge.src);
    group.setAttribute("data-pred", edge.pred);
    group.setAttribute("data-dst", edge.dst);

    const line = doc.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", a.x.toFixed(1));
    line.setAttribute("y1", a.y.toFixed(1));
    line.setAttribute("x2", b.x.toFixed(1));
    line.setAttribute("y2", b.y.toFixed(1));
    group.appendChild(line);

    const text = doc.createElementNS(SVG_NS, "text");
    text.setAttribute("x", ((a.x + b.x) / 2).toFixed(1));
    text.setAttribute("y", ((a.y + b.y) / 2 - 4).toFixed(1));
    text.setAttribute("class", "edge-label");
    text.textContent = edge.pred;
    group.appendChild(text);
    svg.appendChild(group);
  }

  for (const node of segment.nodes) {
    const pos = positions.get(node.label);
    if (!pos) continue;
    const group = doc.createElementNS(SVG_NS, "g");
    const classes = ["node"];
    if (options.keyNodes?.has(node.label)) classes.push("key-element");
    if (options.commonalityNodes?.has(node.label)) classes.push("commonality");
    group.setAttribute("class", classes.join(" "));
    group.setAttribute("data-label", node.label);

    const circle = doc.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", pos.x.toFixed(1));
    circle.setAttribute("cy", pos.y.toFixed(1));
    circle.setAttribute("r", radius(node.label).toFixed(2));
    group.appendChild(circle);

    const text = doc.createElementNS(SVG_NS, "text");
    text.setAttribute("x", pos.x.toFixed(1));
    text.setAttribute("y", (pos.y - radius(node.label) - 4).toFixed(1));
    text.setAttribute("class", "node-label");
    text.textContent = node.label;
    group.appendChild(text);

    if (options.onEntityClick) {
      group.addEventListener("click", () => options.onEntityClick!(node.label));
    }
    svg.appendChild(group);
  }
  container.appendChild(svg);
  return svg;
}

function influenceMap(side: InfluenceSide | undefined): Map<string, number> {
  const out = new Map<string, number>();
  if (!side) return out;
  for (const entry of side.nodes) {
    if (typeof entry.element === "string") out.set(entry.element, entry.value);
  }
  return out;
}

function keySets(side: InfluenceSide | undefined) {
  const nodes = new Set<string>();
  const edges = new Set<string>();
  if (side) {
    for (const entry of side.nodes) {
      if (typeof entry.element === "string") nodes.add(entry.element);
    }
    for (const entry of side.edges) {
      if (Array.isArray(entry.element)) {
        const [s, p, d] = entry.element;
        edges.add(edgeKey(s, p, d));
      }
    }
  }
  return { nodes, edges };
}

function verdictBanner(doc: Document, state: boolean | null, text: string): HTMLElement {
  const banner = doc.createElement("div");
  const kind = state === null ? "not-applicable" : state ? "consistent" : "inconsistent";
  banner.className = `verdict-banner ${kind}`;
  banner.textContent = text;
  return banner;
}

export function renderPairwiseVerdict(
  container: HTMLElement,
  verdict: PairwiseVerdict,
  options: RenderOptions = {},
): void {
  const doc = container.ownerDocument;
  const state = verdict.consistent;
  const label =
    state === null
      ? `case ${verdict.case}: the clues describe different things`
      : state
        ? `case ${verdict.case}: the clues are consistent`
        : `case ${verdict.case}: inconsistency detected`;
  container.appendChild(verdictBanner(doc, state, label));

  if (verdict.overlapRate) {
    const overlap = doc.createElement("p");
    overlap.className = "overlap-summary";
    const r = verdict.overlapRate;
    overlap.textContent =
      `key-element overlap: attributes ${r.attributes.toFixed(2)}, ` +
      `nodes ${r.nodes.toFixed(2)}, edges ${r.edges.toFixed(2)}, mean ${r.mean.toFixed(2)}`;
    container.appendChild(overlap);
  }

  const commonNodes = new Set(verdict.commonality?.nodes ?? []);
  const commonEdges = new Set(
    (verdict.commonality?.edges ?? []).map(([s, p, d]) => edgeKey(s, p, d)),
  );
  const failing = new Set<string>();
  if (verdict.transfer && verdict.transfer.verdict === "disjoint") {
    for (const direction of [verdict.transfer.forward, verdict.transfer.backward]) {
      for (const path of direction.paths) {
        for (let i = 0; i < path.nodes.length - 1; i++) {
          failing.add(`${path.nodes[i]}->${path.nodes[i + 1]}`);
        }
      }
    }
  }

  const segments = verdict.evidence.segments ?? [];
  const keys = verdict.evidence.keyElements ?? [];
  segments.forEach((segment, i) => {
    const panel = doc.createElement("section");
    panel.className = "segment-panel";
    const heading = doc.createElement("h3");
    heading.textContent = `segment of clue ${i + 1}`;
    panel.appendChild(heading);
    const side = keys[i];
    const { nodes: keyNodes, edges: keyEdges } = keySets(side);
    const failingEdges = new Set<string>();
    for (const edge of segment.edges) {
      if (failing.has(`${edge.src}->${edge.dst}`) || failing.has(`${edge.dst}->${edge.src}`)) {
        failingEdges.add(edgeKey(edge.src, edge.pred, edge.dst));
      }
    }
    renderSegment(panel, segment, {
      ...options,
      seed: (options.seed ?? 42) + i,
      influence: influenceMap(
        i === 0 ? verdict.evidence.influence?.first : verdict.evidence.influence?.second,
      ),
      keyNodes,
      keyEdges,
      commonalityNodes: commonNodes,
      commonalityEdges: commonEdges,
      failingEdges,
    });
    container.appendChild(panel);
  });
}

export function renderCollectiveVerdict(
  container: HTMLElement,
  verdict: CollectiveVerdict,
  options: RenderOptions = {},
): void {
  const doc = container.ownerDocument;
  container.appendChild(
    verdictBanner(
      doc,
      verdict.inconsistent ? false : true,
      verdict.inconsistent
        ? "collective inconsistency detected"
        : "no collective inconsistency",
    ),
  );
  const table = doc.createElement("table");
  table.className = "pair-table";
  const head = doc.createElement("tr");
  head.innerHTML =
    "<th>pair</th><th>overlap</th><th>status</th><th>subjects</th><th>objects</th>";
  table.appendChild(head);
  for (const pair of verdict.pairsChecked) {
    const row = doc.createElement("tr");
    row.className = pair.inconsistent ? "pair-inconsistent" : "pair-ok";
    const subject = pair.subjectTransfer
      ? Math.max(pair.subjectTransfer.forward.value, pair.subjectTransfer.backward.value).toFixed(3)
      : "–";
    const object = pair.objectTransfer
      ? Math.max(pair.objectTransfer.forward.value, pair.objectTransfer.backward.value).toFixed(3)
      : "–";
    row.innerHTML =
      `<td>${pair.edgeA + 1} × ${pair.edgeB + 1}</td>` +
      `<td>${pair.overlap.mean.toFixed(3)}</td>` +
      `<td>${pair.status}</td><td>${subject}</td><td>${object}</td>`;
    table.appendChild(row);
  }
  container.appendChild(table);

  const merged = doc.createElement("section");
  merged.className = "segment-panel";
  const heading = doc.createElement("h3");
  heading.textContent = "semantic matching subgraph";
  merged.appendChild(heading);
  renderSegment(merged, verdict.evidence.merged, options);
  container.appendChild(merged);
}

export function renderError(container: HTMLElement, error: string, message: string): void {
  const doc = container.ownerDocument;
  const box = doc.createElement("div");
  box.className = "error-box";
  box.textContent = `${error}: ${message}`;
  container.appendChild(box);
}
