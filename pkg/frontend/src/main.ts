// Page wiring: function selector, query forms, result viewer, history.

import {
  ApiError,
  Client,
  FUNCTIONS,
  buildCollectiveRequest,
  buildEdgeRequest,
  buildNodeRequest,
  buildPairwiseRequest,
  buildSubgraphRequest,
  validateTriple,
  type FunctionId,
} from "./api";
import { renderCollectiveVerdict, renderError, renderPairwiseVerdict, renderSegment } from "./render";
import { UiSession } from "./session";
import type { Triple } from "./types";

const client = new Client("");
const session = new UiSession();

const selector = document.getElementById("function-selector") as HTMLSelectElement;
const form = document.getElementById("query-form") as HTMLFormElement;
const fields = document.getElementById("query-fields") as HTMLDivElement;
const validation = document.getElementById("validation") as HTMLDivElement;
const results = document.getElementById("results") as HTMLDivElement;
const historyList = document.getElementById("history") as HTMLUListElement;

for (const [id, info] of Object.entries(FUNCTIONS)) {
  const option = document.createElement("option");
  option.value = id;
  option.textContent = `${id}: ${info.title}`;
  selector.appendChild(option);
}

function tripleFields(prefix: string, count: number): string {
  let html = "";
  for (let i = 0; i < count; i++) {
    html += `
      <fieldset class="triple" data-row="${i}">
        <input name="${prefix}${i}-subject" placeholder="subject">
        <input name="${prefix}${i}-predicate" placeholder="predicate">
        <input name="${prefix}${i}-object" placeholder="object">
      </fieldset>`;
  }
  return html;
}

function drawForm(fn: FunctionId): void {
  session.current = fn;
  if (fn === "f1") {
    fields.innerHTML = `<input name="seed" placeholder="entity label">`;
  } else if (fn === "f2") {
    fields.innerHTML = tripleFields("t", 1);
  } else if (fn === "f4") {
    fields.innerHTML = tripleFields("t", 2);
  } else {
    fields.innerHTML = tripleFields("t", 3) + `<p class="hint">leave trailing rows blank to drop them</p>`;
  }
  validation.textContent = "";
}

function readTriple(data: FormData, index: number): Triple {
  return {
    subject: String(data.get(`t${index}-subject`) ?? ""),
    predicate: String(data.get(`t${index}-predicate`) ?? ""),
    object: String(data.get(`t${index}-object`) ?? ""),
  };
}

function readTriples(data: FormData, count: number): Triple[] {
  const triples: Triple[] = [];
  for (let i = 0; i < count; i++) {
    const t = readTriple(data, i);
    if (!t.subject && !t.predicate && !t.object) continue;
    triples.push(t);
  }
  return triples;
}

function seedNodeQuery(label: string): void {
  selector.value = "f1";
  drawForm("f1");
  (fields.querySelector("input[name=seed]") as HTMLInputElement).value = label;
  form.requestSubmit();
}

async function run(fn: FunctionId, data: FormData): Promise<void> {
  const problems: string[] = [];
  let body: unknown;
  let send: () => Promise<unknown>;
  const params = { segmentBidirectional: true, transferBidirectional: true };

  if (fn === "f1") {
    const seed = String(data.get("seed") ?? "").trim();
    if (!seed) problems.push("seed is empty");
    const request = buildNodeRequest(seed);
    body = request;
    send = () => client.nodeSegment(request);
  } else if (fn === "f2") {
    const t = readTriple(data, 0);
    problems.push(...validateTriple(t));
    const request = buildEdgeRequest(t, 5, true);
    body = request;
    send = () => client.edgeSegment(request);
  } else if (fn === "f3") {
    const triples = readTriples(data, 3);
    if (triples.length === 0) problems.push("query graph is empty");
    triples.forEach((t, i) => validateTriple(t).forEach((p) => problems.push(`row ${i + 1}: ${p}`)));
    const request = buildSubgraphRequest(triples, 5, true);
    body = request;
    send = () => client.subgraphSegment(request);
  } else if (fn === "f4") {
    const t1 = readTriple(data, 0);
    const t2 = readTriple(data, 1);
    validateTriple(t1).forEach((p) => problems.push(`first clue: ${p}`));
    validateTriple(t2).forEach((p) => problems.push(`second clue: ${p}`));
    const request = buildPairwiseRequest(t1, t2, params);
    body = request;
    send = () => client.pairwise(request);
  } else {
    const triples = readTriples(data, 3);
    if (triples.length < 2) problems.push("a query graph needs at least 2 edges");
    triples.forEach((t, i) => validateTriple(t).forEach((p) => problems.push(`row ${i + 1}: ${p}`)));
    const request = buildCollectiveRequest(triples, params);
    body = request;
    send = () => client.collective(request);
  }

  if (problems.length) {
    validation.textContent = problems.join("; ");
    return;  // invalid drafts never reach the service
  }
  validation.textContent = "";

  const entry = session.record(fn, FUNCTIONS[fn].endpoint, body);
  appendHistory(entry.id, fn, body);
  const token = session.beginRequest(fn);
  results.innerHTML = "<p class='loading'>querying…</p>";
  try {
    const response: any = await send();
    if (!session.isCurrent(fn, token)) return;
    results.innerHTML = "";
    renderResponse(fn, response);
  } catch (err) {
    if (!session.isCurrent(fn, token)) return;
    results.innerHTML = "";
    if (err instanceof ApiError) {
      renderError(results, err.payload.error, err.payload.message);
    } else {
      renderError(results, "NetworkError", String(err));
    }
  }
}

function renderResponse(fn: FunctionId, response: any): void {
  const onEntityClick = seedNodeQuery;
  if (fn === "f1" || fn === "f2") {
    renderSegment(results, response.segment, { onEntityClick });
  } else if (fn === "f3") {
    renderSegment(results, response.merged, { onEntityClick });
    const failures = Object.entries(response.failures ?? {});
    if (failures.length) {
      renderError(results, "NoPath", failures.map(([i, m]) => `edge ${i}: ${m}`).join("; "));
    }
  } else if (fn === "f4") {
    renderPairwiseVerdict(results, response.verdict, { onEntityClick });
  } else {
    renderCollectiveVerdict(results, response.verdict, { onEntityClick });
  }
}

function appendHistory(id: number, fn: FunctionId, body: unknown): void {
  const item = document.createElement("li");
  const button = document.createElement("button");
  button.type = "button";
  button.textContent = `${fn} · ${JSON.stringify(body).slice(0, 80)}`;
  button.addEventListener("click", () => {
    const replay = session.replayBody(id);
    const fnInfo = FUNCTIONS[fn];
    results.innerHTML = "<p class='loading'>replaying…</p>";
    fetch(fnInfo.endpoint, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(replay),
    })
      .then(async (res) => {
        const doc = await res.json();
        results.innerHTML = "";
        if (!res.ok) {
          renderError(results, doc.error ?? "Error", doc.message ?? "request failed");
        } else {
          renderResponse(fn, doc);
        }
      })
      .catch((err) => {
        results.innerHTML = "";
        renderError(results, "NetworkError", String(err));
      });
  });
  item.appendChild(button);
  historyList.appendChild(item);
}

selector.addEventListener("change", () => drawForm(selector.value as FunctionId));
form.addEventListener("submit", (event) => {
  event.preventDefault();
  void run(session.current, new FormData(form));
});

drawForm("f1");
