// Session state: the current function, the query draft, and a replayable
// history where every entry keeps the exact body that was sent.

import type { FunctionId } from "./api";

export type HistoryEntry = {
  id: number;
  fn: FunctionId;
  endpoint: string;
  body: unknown;
  at: string;
};

export class UiSession {
  current: FunctionId = "f1";
  history: HistoryEntry[] = [];
  private counter = 0;
  private inflight = new Map<FunctionId, number>();

  record(fn: FunctionId, endpoint: string, body: unknown): HistoryEntry {
    const entry: HistoryEntry = {
      id: ++this.counter,
      fn,
      endpoint,
      // deep-copy so later draft edits cannot mutate history
      body: JSON.parse(JSON.stringify(body)),
      at: new Date().toISOString(),
    };
    this.history.push(entry);
    return entry;
  }

  replayBody(id: number): unknown {
    const entry = this.history.find((e) => e.id === id);
    if (!entry) throw new Error(`no history entry ${id}`);
    return JSON.parse(JSON.stringify(entry.body));
  }

  // one in-flight request per panel: a stale response must be dropped
  beginRequest(fn: FunctionId): number {
    const token = ++this.counter;
    this.inflight.set(fn, token);
    return token;
  }

  isCurrent(fn: FunctionId, token: number): boolean {
    return this.inflight.get(fn) === token;
  }
}
