import type { Client, Scope } from "./api";
import { renderSuggestions, scorePercent } from "./render";
import { Workbench } from "./state";
import type { SessionState } from "./state";

/**
 * Builds the workbench UI inside `root` and wires it to a session store.
 *
 * The static shell (panes, inputs, buttons) is created once; a subscriber
 * re-renders the dynamic parts on every state change. Textarea values are
 * only pushed when they differ from the state, so re-renders triggered by
 * background responses never disturb the caret or an active composition.
 */
export function mountWorkbench(root: HTMLElement, client: Client): Workbench {
  const store = new Workbench(client);

  root.innerHTML = "";
  root.className = "workbench";

  const header = document.createElement("header");
  const title = document.createElement("h1");
  title.textContent = "translation workbench";
  const statsLine = document.createElement("span");
  statsLine.className = "stats";
  header.append(title, statsLine);

  const errorBanner = document.createElement("div");
  errorBanner.className = "error-banner";
  errorBanner.setAttribute("role", "alert");
  errorBanner.hidden = true;
  const errorText = document.createElement("span");
  errorText.className = "error-text";
  const retryButton = document.createElement("button");
  retryButton.type = "button";
  retryButton.className = "retry";
  retryButton.textContent = "retry";
  retryButton.addEventListener("click", () => {
    void store.retry();
  });
  const dismissButton = document.createElement("button");
  dismissButton.type = "button";
  dismissButton.className = "dismiss";
  dismissButton.textContent = "dismiss";
  dismissButton.addEventListener("click", () => {
    store.dismissError();
  });
  errorBanner.append(errorText, retryButton, dismissButton);

  const commitBanner = document.createElement("div");
  commitBanner.className = "commit-banner";
  commitBanner.setAttribute("role", "status");
  commitBanner.hidden = true;

  const sourcePane = document.createElement("section");
  sourcePane.className = "pane pane-source";
  const sourceLabel = document.createElement("label");
  sourceLabel.htmlFor = "source";
  sourceLabel.textContent = "source (English)";
  const sourceInput = document.createElement("textarea");
  sourceInput.id = "source";
  sourceInput.lang = "en";
  sourceInput.rows = 3;
  sourceInput.placeholder = "type a sentence to translate";
  sourceInput.addEventListener("input", () => {
    store.setSource(sourceInput.value);
  });
  const suggestButton = document.createElement("button");
  suggestButton.type = "button";
  suggestButton.id = "suggest";
  suggestButton.textContent = "suggest";
  suggestButton.addEventListener("click", () => {
    void store.suggest();
  });
  sourcePane.append(sourceLabel, sourceInput, suggestButton);

  const suggestionsPane = document.createElement("section");
  suggestionsPane.className = "pane pane-suggestions";
  suggestionsPane.id = "suggestions";

  const draftPane = document.createElement("section");
  draftPane.className = "pane pane-draft";
  const draftLabel = document.createElement("label");
  draftLabel.htmlFor = "draft";
  draftLabel.textContent = "draft translation (Hindi)";
  const draftInput = document.createElement("textarea");
  draftInput.id = "draft";
  draftInput.lang = "hi";
  draftInput.rows = 3;
  draftInput.placeholder = "edit the translation here";
  draftInput.addEventListener("input", () => {
    store.setDraft(draftInput.value);
  });
  const scopeRow = document.createElement("div");
  scopeRow.className = "scope-row";
  const scopeInputs: Partial<Record<Scope, HTMLInputElement>> = {};
  for (const scope of ["local", "global"] as const) {
    const wrap = document.createElement("label");
    wrap.className = "scope-choice";
    const radio = document.createElement("input");
    radio.type = "radio";
    radio.name = "scope";
    radio.value = scope;
    radio.addEventListener("change", () => {
      if (radio.checked) {
        store.setScope(scope);
      }
    });
    scopeInputs[scope] = radio;
    wrap.append(radio, document.createTextNode(` ${scope}`));
    scopeRow.append(wrap);
  }
  const commitButton = document.createElement("button");
  commitButton.type = "button";
  commitButton.id = "commit";
  commitButton.textContent = "commit";
  commitButton.addEventListener("click", () => {
    void store.commit();
  });
  scopeRow.append(commitButton);
  draftPane.append(draftLabel, draftInput, scopeRow);

  root.append(header, errorBanner, commitBanner, sourcePane, suggestionsPane, draftPane);

  function renderState(state: SessionState): void {
    statsLine.textContent = state.stats
      ? `units: ${state.stats.units} (local ${state.stats.local_units}, global ${state.stats.global_units})`
      : "";

    errorBanner.hidden = state.error === null;
    errorText.textContent = state.error ? state.error.message : "";

    if (state.lastCommit) {
      const verb = state.lastCommit.created ? "saved to" : "already in";
      let tail = "";
      const report = state.reportFor === state.source ? state.report : null;
      const exact = report?.sentence_matches.find((m) => m.kind === "exact");
      if (exact && report) {
        tail = `: exact match (${scorePercent(exact.score, report.k)}%)`;
      }
      commitBanner.textContent = `${verb} ${state.lastCommit.scope} store${tail}`;
      commitBanner.hidden = false;
    } else {
      commitBanner.hidden = true;
    }

    if (sourceInput.value !== state.source) {
      sourceInput.value = state.source;
    }
    if (draftInput.value !== state.draft) {
      draftInput.value = state.draft;
    }
    scopeInputs.local!.checked = state.scope === "local";
    scopeInputs.global!.checked = state.scope === "global";
    commitButton.disabled = !store.canCommit();
    suggestButton.disabled = state.source.trim() === "";

    suggestionsPane.innerHTML = "";
    if (state.report && state.reportFor === state.source) {
      suggestionsPane.append(
        renderSuggestions(state.report, state.reportFor, (target) => {
          store.copySuggestion(target);
        }),
      );
    } else {
      const hint = document.createElement("p");
      hint.className = "hint";
      hint.textContent = state.pending > 0 ? "searching ..." : "suggestions appear here";
      suggestionsPane.append(hint);
    }
  }

  store.subscribe(renderState);
  renderState(store.getState());
  void store.refreshStats();
  return store;
}
