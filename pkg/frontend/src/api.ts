import { z } from "zod";

/**
 * Typed client for the translation memory service.
 *
 * Every response is validated against a schema before it reaches the UI,
 * so all numbers shown on screen (scores, counts, k, order) trace back to
 * the server. Failures of any kind are normalized into ApiError.
 */

export const resultItemSchema = z.object({
  rank: z.number(),
  score: z.number(),
  kind: z.string(),
  source: z.string(),
  target: z.string(),
  unit_id: z.string(),
});

export const suggestionItemSchema = z.object({
  rank: z.number(),
  score: z.number(),
  source: z.string(),
  target: z.string(),
  unit_id: z.string(),
});

export const phraseMatchSchema = z.object({
  phrase: z.string(),
  span: z.tuple([z.number(), z.number()]),
  char_start: z.number(),
  char_end: z.number(),
  suggestions: z.array(suggestionItemSchema),
});

export const suggestResponseSchema = z.object({
  sentence_matches: z.array(resultItemSchema),
  phrase_matches: z.array(phraseMatchSchema),
  k: z.number(),
  order: z.number(),
});

export const queryResponseSchema = z.object({
  results: z.array(resultItemSchema),
  k: z.number(),
  order: z.number(),
});

export const commitResponseSchema = z.object({
  unit_id: z.string(),
  created: z.boolean(),
  source: z.string(),
  target: z.string(),
  scope: z.string(),
  k: z.number(),
  order: z.number(),
});

export const importResponseSchema = z.object({
  added: z.number(),
  skipped: z.number(),
  malformed: z.number(),
  k: z.number(),
  order: z.number(),
});

export const statsResponseSchema = z.object({
  units: z.number(),
  local_units: z.number(),
  global_units: z.number(),
  k: z.number(),
  order: z.number(),
});

export const healthResponseSchema = z.object({
  status: z.string(),
  version: z.string(),
  k: z.number(),
  order: z.number(),
});

const errorEnvelopeSchema = z.object({
  error: z.object({ code: z.string(), message: z.string() }),
});

export type ResultItem = z.infer<typeof resultItemSchema>;
export type SuggestionItem = z.infer<typeof suggestionItemSchema>;
export type PhraseMatch = z.infer<typeof phraseMatchSchema>;
export type SuggestResponse = z.infer<typeof suggestResponseSchema>;
export type QueryResponse = z.infer<typeof queryResponseSchema>;
export type CommitResponse = z.infer<typeof commitResponseSchema>;
export type ImportResponse = z.infer<typeof importResponseSchema>;
export type StatsResponse = z.infer<typeof statsResponseSchema>;
export type HealthResponse = z.infer<typeof healthResponseSchema>;

export type Scope = "local" | "global";

export class ApiError extends Error {
  readonly status: number;
  readonly code: string;

  constructor(status: number, code: string, message: string) {
    super(message);
    this.name = "ApiError";
    this.status = status;
    this.code = code;
  }
}

export interface Client {
  health(): Promise<HealthResponse>;
  stats(): Promise<StatsResponse>;
  query(text: string, limit?: number): Promise<QueryResponse>;
  suggest(text: string, limit?: number): Promise<SuggestResponse>;
  commit(source: string, target: string, scope: Scope): Promise<CommitResponse>;
  importTmx(payload: BodyInit, scope: Scope): Promise<ImportResponse>;
  exportTmx(scope: Scope | "all"): Promise<string>;
}

async function raiseForStatus(res: Response): Promise<void> {
  if (res.ok) {
    return;
  }

  let code = "http_error";
  let message = `${res.status} ${res.statusText}`.trim();
  try {
    const envelope = errorEnvelopeSchema.parse(await res.json());
    code = envelope.error.code;
    message = envelope.error.message;
  } catch {
    // Non-JSON error body; keep the status-line fallback.
  }
  throw new ApiError(res.status, code, message);
}

export function createClient(baseUrl = "", fetchFn: typeof fetch = fetch): Client {
  const base = baseUrl.replace(/\/+$/, "");

  async function request(path: string, init?: RequestInit): Promise<Response> {
    let res: Response;
    try {
      res = await fetchFn(`${base}${path}`, init);
    } catch (exc) {
      const reason = exc instanceof Error ? exc.message : String(exc);
      throw new ApiError(0, "network", reason);
    }
    await raiseForStatus(res);
    return res;
  }

  async function requestJson<T>(
    path: string,
    schema: z.ZodType<T>,
    init?: RequestInit,
  ): Promise<T> {
    const res = await request(path, init);
    let payload: unknown;
    try {
      payload = await res.json();
    } catch {
      throw new ApiError(res.status, "bad_response", "response was not JSON");
    }
    const parsed = schema.safeParse(payload);
    if (!parsed.success) {
      throw new ApiError(res.status, "bad_response", parsed.error.message);
    }
    return parsed.data;
  }

  function postJson(body: unknown): RequestInit {
    return {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    };
  }

  return {
    health: () => requestJson("/api/health", healthResponseSchema),
    stats: () => requestJson("/api/stats", statsResponseSchema),
    query: (text, limit = 5) =>
      requestJson("/api/query", queryResponseSchema, postJson({ text, limit })),
    suggest: (text, limit = 5) =>
      requestJson("/api/suggest", suggestResponseSchema, postJson({ text, limit })),
    commit: (source, target, scope) =>
      requestJson(
        "/api/commit",
        commitResponseSchema,
        postJson({ source, target, scope }),
      ),
    importTmx: (payload, scope) =>
      requestJson(`/api/import?scope=${scope}`, importResponseSchema, {
        method: "POST",
        headers: { "Content-Type": "application/xml" },
        body: payload,
      }),
    exportTmx: async (scope) => {
      const res = await request(`/api/export?scope=${scope}`);
      return res.text();
    },
  };
}
