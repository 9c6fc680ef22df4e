import type {
  PhraseMatch,
  ResultItem,
  SuggestResponse,
  SuggestionItem,
} from "./api";

/**
 * DOM builders for the suggestions pane.
 *
 * Nothing here computes a similarity; scores arrive from the server and
 * are only rescaled for display: a perfect match scores k/2, so the badge
 * shows score / (k/2) as a percentage. Every list is capped at five rows
 * regardless of how many candidates the server sent.
 */

export const MAX_RENDERED = 5;

export function scorePercent(score: number, k: number): number {
  return Math.round((score / (k / 2)) * 100);
}

function badge(score: number, k: number, exact: boolean): HTMLElement {
  const el = document.createElement("span");
  el.className = exact ? "badge badge-exact" : "badge";
  el.textContent = `${scorePercent(score, k)}%`;
  return el;
}

/* Slices by the server-reported char offsets, never by text search, so
   the mark lands on the right occurrence of a repeated phrase. */
export function renderHighlight(
  source: string,
  charStart: number,
  charEnd: number,
): HTMLElement {
  const el = document.createElement("p");
  el.className = "phrase-context";
  el.lang = "en";
  el.append(document.createTextNode(source.slice(0, charStart)));
  const mark = document.createElement("mark");
  mark.textContent = source.slice(charStart, charEnd);
  el.append(mark);
  el.append(document.createTextNode(source.slice(charEnd)));
  return el;
}

type CopyHandler = (target: string) => void;

function suggestionRow(
  score: number,
  kind: string | null,
  source: string,
  target: string,
  unitId: string,
  k: number,
  onCopy: CopyHandler,
): HTMLElement {
  const row = document.createElement("button");
  row.type = "button";
  row.className = kind === "exact" ? "suggestion match-exact" : "suggestion";
  row.dataset.unitId = unitId;
  row.title = "copy into draft";
  row.append(badge(score, k, kind === "exact"));
  if (kind !== null) {
    const kindEl = document.createElement("span");
    kindEl.className = "kind";
    kindEl.textContent = kind;
    row.append(kindEl);
  }
  const sourceEl = document.createElement("span");
  sourceEl.className = "suggestion-source";
  sourceEl.lang = "en";
  sourceEl.textContent = source;
  const targetEl = document.createElement("span");
  targetEl.className = "suggestion-target";
  targetEl.lang = "hi";
  targetEl.textContent = target;
  row.append(sourceEl, targetEl);
  row.addEventListener("click", () => onCopy(target));
  return row;
}

function sentenceSection(
  matches: ResultItem[],
  k: number,
  onCopy: CopyHandler,
): HTMLElement {
  const section = document.createElement("section");
  section.className = "sentence-matches";
  const heading = document.createElement("h2");
  heading.textContent = "sentence matches";
  section.append(heading);
  for (const item of matches.slice(0, MAX_RENDERED)) {
    section.append(
      suggestionRow(
        item.score,
        item.kind,
        item.source,
        item.target,
        item.unit_id,
        k,
        onCopy,
      ),
    );
  }
  return section;
}

function phraseSection(
  group: PhraseMatch,
  sourceText: string,
  k: number,
  onCopy: CopyHandler,
): HTMLElement {
  const section = document.createElement("section");
  section.className = "phrase-group";
  section.append(renderHighlight(sourceText, group.char_start, group.char_end));
  const list = document.createElement("div");
  list.className = "phrase-suggestions";
  const shown: SuggestionItem[] = group.suggestions.slice(0, MAX_RENDERED);
  for (const item of shown) {
    list.append(
      suggestionRow(item.score, null, item.source, item.target, item.unit_id, k, onCopy),
    );
  }
  section.append(list);
  return section;
}

export function renderSuggestions(
  report: SuggestResponse,
  sourceText: string,
  onCopy: CopyHandler,
): HTMLElement {
  const root = document.createElement("div");
  root.className = "suggestions";
  if (report.sentence_matches.length === 0 && report.phrase_matches.length === 0) {
    const empty = document.createElement("p");
    empty.className = "no-match";
    empty.textContent = "no match — translate from scratch";
    root.append(empty);
    return root;
  }
  if (report.sentence_matches.length > 0) {
    root.append(sentenceSection(report.sentence_matches, report.k, onCopy));
  }
  if (report.phrase_matches.length > 0) {
    const heading = document.createElement("h2");
    heading.textContent = "phrase suggestions";
    root.append(heading);
    for (const group of report.phrase_matches) {
      root.append(phraseSection(group, sourceText, report.k, onCopy));
    }
  }
  return root;
}
