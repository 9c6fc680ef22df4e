import { ApiError } from "../src/api";
import type {
  Client,
  CommitResponse,
  HealthResponse,
  ImportResponse,
  QueryResponse,
  Scope,
  StatsResponse,
  SuggestResponse,
} from "../src/api";

export const K = 3.0;
export const ORDER = 3;

export const PROPOSAL_SOURCE = "Will they recommend our proposal made for sites?";
export const PROPOSAL_TARGET = "वे हमारे प्रस्ताव की अनुशंसा करेंगे";

export function emptyReport(): SuggestResponse {
  return { sentence_matches: [], phrase_matches: [], k: K, order: ORDER };
}

/* Mirrors the service payload for the proposal sentence: one phrase group
   spanning words 1..4, chars 5..32, whose stored translation scores 0.75
   against the whole query. */
export function proposalReport(): SuggestResponse {
  return {
    sentence_matches: [],
    phrase_matches: [
      {
        phrase: "they recommend our proposal",
        span: [1, 4],
        char_start: 5,
        char_end: 32,
        suggestions: [
          {
            rank: 1,
            score: 0.75,
            source: "they recommend our proposal",
            target: PROPOSAL_TARGET,
            unit_id: "aaaa000000000001",
          },
        ],
      },
    ],
    k: K,
    order: ORDER,
  };
}

export function exactReport(source: string, target: string): SuggestResponse {
  return {
    sentence_matches: [
      {
        rank: 1,
        score: K / 2,
        kind: "exact",
        source,
        target,
        unit_id: "bbbb000000000001",
      },
    ],
    phrase_matches: [],
    k: K,
    order: ORDER,
  };
}

/* Seven candidates for one phrase; the view must render only five. */
export function sevenCandidateReport(): SuggestResponse {
  const suggestions = [];
  for (let i = 1; i <= 7; i += 1) {
    suggestions.push({
      rank: i,
      score: 0,
      source: `unit ${i}`,
      target: `अनुवाद ${i}`,
      unit_id: `cccc00000000000${i}`,
    });
  }
  return {
    sentence_matches: [],
    phrase_matches: [
      {
        phrase: "seven ways",
        span: [0, 1] as [number, number],
        char_start: 0,
        char_end: 10,
        suggestions,
      },
    ],
    k: K,
    order: ORDER,
  };
}

export function deferred<T>() {
  let resolve!: (value: T) => void;
  let reject!: (reason?: unknown) => void;
  const promise = new Promise<T>((res, rej) => {
    resolve = res;
    reject = rej;
  });
  return { promise, resolve, reject };
}

export function flush(): Promise<void> {
  return new Promise((resolve) => {
    setTimeout(resolve, 0);
  });
}

interface StoredUnit {
  source: string;
  target: string;
  scope: Scope;
  unit_id: string;
}

/**
 * In-memory stand-in for the HTTP service with the same visible
 * semantics: idempotent commits and read-your-writes (a committed pair
 * surfaces as an exact match for its source on the next suggest).
 */
export class FakeServer implements Client {
  committed = new Map<string, StoredUnit>();
  cannedReports = new Map<string, SuggestResponse>();
  failNext: Partial<Record<"suggest" | "commit" | "stats", ApiError>> = {};
  log: string[] = [];

  private takeFailure(op: "suggest" | "commit" | "stats"): void {
    const failure = this.failNext[op];
    if (failure) {
      delete this.failNext[op];
      throw failure;
    }
  }

  async health(): Promise<HealthResponse> {
    return { status: "ok", version: "test", k: K, order: ORDER };
  }

  async stats(): Promise<StatsResponse> {
    this.log.push("stats");
    this.takeFailure("stats");
    let local = 0;
    let global = 0;
    for (const unit of this.committed.values()) {
      if (unit.scope === "local") {
        local += 1;
      } else {
        global += 1;
      }
    }
    return {
      units: local + global,
      local_units: local,
      global_units: global,
      k: K,
      order: ORDER,
    };
  }

  async query(text: string): Promise<QueryResponse> {
    const report = await this.suggest(text);
    return { results: report.sentence_matches, k: K, order: ORDER };
  }

  async suggest(text: string): Promise<SuggestResponse> {
    this.log.push(`suggest:${text}`);
    this.takeFailure("suggest");
    for (const unit of this.committed.values()) {
      if (unit.source === text) {
        const report = exactReport(unit.source, unit.target);
        report.sentence_matches[0]!.unit_id = unit.unit_id;
        return report;
      }
    }
    return this.cannedReports.get(text) ?? emptyReport();
  }

  async commit(source: string, target: string, scope: Scope): Promise<CommitResponse> {
    this.log.push(`commit:${scope}:${source}=>${target}`);
    this.takeFailure("commit");
    const key = `${source}${target}`;
    const existing = this.committed.get(key);
    if (existing) {
      return {
        unit_id: existing.unit_id,
        created: false,
        source,
        target,
        scope: existing.scope,
        k: K,
        order: ORDER,
      };
    }
    const unit: StoredUnit = {
      source,
      target,
      scope,
      unit_id: `u${this.committed.size + 1}`,
    };
    this.committed.set(key, unit);
    return {
      unit_id: unit.unit_id,
      created: true,
      source,
      target,
      scope,
      k: K,
      order: ORDER,
    };
  }

  async importTmx(): Promise<ImportResponse> {
    return { added: 0, skipped: 0, malformed: 0, k: K, order: ORDER };
  }

  async exportTmx(): Promise<string> {
    return "<?xml version=\"1.0\" encoding=\"utf-8\"?><tmx version=\"1.4\"/>";
  }
}
