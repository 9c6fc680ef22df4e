import { ApiError } from "./api";
import type {
  Client,
  CommitResponse,
  Scope,
  StatsResponse,
  SuggestResponse,
} from "./api";

/**
 * Session store for the workbench.
 *
 * Holds the source text, the draft translation, the chosen scope, the last
 * suggestion report and a stats snapshot. The store owns all server talk;
 * views subscribe and re-render. Two rules are load-bearing:
 *
 * - the draft is editable at all times and no background response ever
 *   writes to it; only the user (or an explicit copy action) does, and
 * - a suggestion response is applied only if it answers the current
 *   source text, so slow responses never resurface stale reports.
 */

export interface WorkbenchError {
  message: string;
  op: "suggest" | "commit" | "stats";
}

export interface SessionState {
  source: string;
  draft: string;
  scope: Scope;
  report: SuggestResponse | null;
  reportFor: string | null;
  stats: StatsResponse | null;
  lastCommit: CommitResponse | null;
  error: WorkbenchError | null;
  pending: number;
}

type Listener = (state: SessionState) => void;

function describeError(exc: unknown, op: WorkbenchError["op"]): WorkbenchError {
  if (exc instanceof ApiError) {
    const prefix = exc.status > 0 ? `${exc.status} ${exc.code}` : exc.code;
    return { op, message: `${prefix}: ${exc.message}` };
  }
  return { op, message: exc instanceof Error ? exc.message : String(exc) };
}

export class Workbench {
  private readonly client: Client;
  private state: SessionState;
  private listeners = new Set<Listener>();
  private suggestSeq = 0;

  constructor(client: Client) {
    this.client = client;
    this.state = {
      source: "",
      draft: "",
      scope: "local",
      report: null,
      reportFor: null,
      stats: null,
      lastCommit: null,
      error: null,
      pending: 0,
    };
  }

  getState(): SessionState {
    return this.state;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.add(listener);
    return () => {
      this.listeners.delete(listener);
    };
  }

  private patch(changes: Partial<SessionState>): void {
    this.state = { ...this.state, ...changes };
    for (const listener of this.listeners) {
      listener(this.state);
    }
  }

  setSource(text: string): void {
    if (text === this.state.source) {
      return;
    }
    // A changed source outdates any in-flight suggestion request.
    this.suggestSeq += 1;
    this.patch({ source: text, lastCommit: null });
  }

  setDraft(text: string): void {
    this.patch({ draft: text });
  }

  setScope(scope: Scope): void {
    this.patch({ scope });
  }

  copySuggestion(target: string): void {
    this.patch({ draft: target });
  }

  canCommit(): boolean {
    return this.state.source.trim() !== "" && this.state.draft.trim() !== "";
  }

  dismissError(): void {
    this.patch({ error: null });
  }

  async retry(): Promise<void> {
    const failed = this.state.error;
    if (!failed) {
      return;
    }
    this.patch({ error: null });
    if (failed.op === "suggest") {
      await this.suggest();
    } else if (failed.op === "commit") {
      await this.commit();
    } else {
      await this.refreshStats();
    }
  }

  async refreshStats(): Promise<void> {
    try {
      const stats = await this.client.stats();
      this.patch({ stats });
    } catch (exc) {
      this.patch({ error: describeError(exc, "stats") });
    }
  }

  async suggest(): Promise<void> {
    const text = this.state.source;
    if (text.trim() === "") {
      this.suggestSeq += 1;
      this.patch({ report: null, reportFor: null });
      return;
    }
    const seq = ++this.suggestSeq;
    this.patch({ pending: this.state.pending + 1 });
    try {
      const report = await this.client.suggest(text);
      if (seq === this.suggestSeq) {
        this.patch({ report, reportFor: text, error: null });
      }
    } catch (exc) {
      if (seq === this.suggestSeq) {
        this.patch({ error: describeError(exc, "suggest") });
      }
    } finally {
      this.patch({ pending: this.state.pending - 1 });
    }
  }

  async commit(): Promise<void> {
    if (!this.canCommit()) {
      return;
    }
    const { source, draft, scope } = this.state;
    this.patch({ pending: this.state.pending + 1 });
    try {
      const committed = await this.client.commit(source, draft, scope);
      this.patch({ lastCommit: committed, error: null });
      // Close the loop: the saved pair must now come back as an exact
      // match for the same source.
      await this.suggest();
      await this.refreshStats();
    } catch (exc) {
      // Draft and report stay untouched so the user can retry.
      this.patch({ error: describeError(exc, "commit") });
    } finally {
      this.patch({ pending: this.state.pending - 1 });
    }
  }
}
