import { ApiError, apiGet, apiPost } from './api.js';
import { renderErrorBanner } from './banner.js';
import { el } from './format.js';
import type {
  CaseListPayload,
  CasePayload,
  ContributionsPayload,
  DistributionsPayload,
  FlipsPayload,
  ImportancePayload,
  ModelPayload,
  SimilarPayload,
  WhatIfPayload,
} from './types.js';
import {
  defaultDetailsOptions,
  renderDetails,
  type DetailsOptions,
} from './views/details.js';
import {
  MAX_DRAFTS,
  renderSandbox,
  type DraftChange,
} from './views/sandbox.js';
import { renderDistributions, renderImportance } from './views/about.js';
import { renderSimilar } from './views/similar.js';

// Single-page workbench. All data lives on the server; this module holds
// only view state and re-renders whole views from fetched payloads.

type ViewName =
  | 'details'
  | 'sandbox'
  | 'similar'
  | 'about-importance'
  | 'about-distributions';

interface ViewState {
  caseId: string | null;
  view: ViewName;
  details: DetailsOptions;
  drafts: DraftChange[];
  whatif: WhatIfPayload | null;
  fieldErrors: Record<string, string>;
  score: number;
}

const NAV_LABELS: Record<ViewName, string> = {
  details: 'Details',
  sandbox: 'Sandbox',
  similar: 'Supervision / Review',
  'about-importance': 'Importance',
  'about-distributions': 'Distributions',
};

export async function boot(root: HTMLElement): Promise<void> {
  const state: ViewState = {
    caseId: null,
    view: 'details',
    details: { ...defaultDetailsOptions },
    drafts: [],
    whatif: null,
    fieldErrors: {},
    score: 10,
  };
  // Fetches that land after a newer case selection are stale; every async
  // path checks its token against the current one before touching the DOM.
  let token = 0;

  root.textContent = '';
  const layout = el('div', 'layout');
  const sidebar = el('nav', 'sidebar');
  const main = el('main', 'main');
  main.id = 'main';
  layout.appendChild(sidebar);
  layout.appendChild(main);
  root.appendChild(layout);

  const model = await apiGet<ModelPayload>('/model');
  const caseList = await apiGet<CaseListPayload>('/cases?limit=100');
  state.caseId = caseList.cases[0]?.id ?? null;

  function currentCase(): string {
    if (state.caseId === null) throw new ApiError(404, 'CASE_NOT_FOUND', 'no cases');
    return state.caseId;
  }

  function navButton(view: ViewName): HTMLElement {
    const button = el('button', 'nav-item', NAV_LABELS[view]);
    button.dataset.view = view;
    button.addEventListener('click', () => {
      state.view = view;
      void refresh();
    });
    return button;
  }

  function buildSidebar(): void {
    sidebar.textContent = '';
    sidebar.appendChild(el('h1', 'brand', 'sibyl'));

    const picker = el('select', 'case-picker');
    picker.id = 'case-picker';
    for (const summary of caseList.cases) {
      const option = el('option', '', `${summary.id} (score ${summary.score})`);
      option.value = summary.id;
      picker.appendChild(option);
    }
    if (state.caseId) picker.value = state.caseId;
    picker.addEventListener('change', () => selectCase(picker.value));
    sidebar.appendChild(picker);

    sidebar.appendChild(navButton('details'));
    sidebar.appendChild(navButton('sandbox'));
    sidebar.appendChild(el('div', 'nav-group', 'About Model'));
    sidebar.appendChild(navButton('about-importance'));
    sidebar.appendChild(navButton('about-distributions'));
    // The similar-cases interface is a supervision tool; the server only
    // exposes it in review mode, so hide the entry entirely otherwise.
    if (model.review_mode) {
      sidebar.appendChild(navButton('similar'));
    }

    const palette = el('button', 'palette-toggle', 'color-blind palette');
    palette.id = 'palette-toggle';
    palette.addEventListener('click', () => {
      document.body.classList.toggle('colorblind');
    });
    sidebar.appendChild(palette);
  }

  function selectCase(id: string): void {
    token += 1;
    state.caseId = id;
    state.drafts = [];
    state.whatif = null;
    state.fieldErrors = {};
    void refresh();
  }

  function markActiveNav(): void {
    for (const item of sidebar.querySelectorAll('.nav-item')) {
      item.classList.toggle(
        'active',
        (item as HTMLElement).dataset.view === state.view,
      );
    }
  }

  function contributionsPath(): string {
    const id = currentCase();
    const options = state.details;
    if (options.split) return `/cases/${id}/contributions?view=split`;
    if (options.topTen) return `/cases/${id}/contributions?view=top`;
    const params = new URLSearchParams({ view: 'all' });
    if (options.query) params.set('query', options.query);
    if (options.category) params.set('categories', options.category);
    return `/cases/${id}/contributions?${params.toString()}`;
  }

  async function showDetails(): Promise<void> {
    const mine = token;
    const id = currentCase();
    const [caseData, contribs] = await Promise.all([
      apiGet<CasePayload>(`/cases/${id}`),
      apiGet<ContributionsPayload>(contributionsPath()),
    ]);
    if (mine !== token) return;
    renderDetails(main, caseData, contribs, state.details, {
      onOptions(next) {
        state.details = { ...state.details, ...next };
        void refresh();
      },
    });
  }

  function defaultDraft(caseData: CasePayload): DraftChange {
    const factor = caseData.factors[0];
    return { factor: factor.display_name, value: factor.value };
  }

  async function showSandbox(): Promise<void> {
    const mine = token;
    const id = currentCase();
    const [caseData, flips] = await Promise.all([
      apiGet<CasePayload>(`/cases/${id}`),
      apiGet<FlipsPayload>(`/cases/${id}/flips`),
    ]);
    if (mine !== token) return;
    renderCurrentSandbox(caseData, flips);
  }

  function renderCurrentSandbox(caseData: CasePayload, flips: FlipsPayload): void {
    renderSandbox(
      main,
      caseData,
      model,
      state.drafts,
      state.whatif,
      flips,
      state.fieldErrors,
      {
        onAdd() {
          if (state.drafts.length >= MAX_DRAFTS) return;
          state.drafts = [...state.drafts, defaultDraft(caseData)];
          state.whatif = null;
          renderCurrentSandbox(caseData, flips);
        },
        onRemove(index) {
          state.drafts = state.drafts.filter((_, i) => i !== index);
          state.whatif = null;
          state.fieldErrors = {};
          renderCurrentSandbox(caseData, flips);
        },
        onFactor(index, factorName) {
          const factor = caseData.factors.find(
            (f) => f.display_name === factorName,
          );
          state.drafts = state.drafts.map((draft, i) =>
            i === index
              ? { factor: factorName, value: factor ? factor.value : 0 }
              : draft,
          );
          state.whatif = null;
          renderCurrentSandbox(caseData, flips);
        },
        onValue(index, value) {
          state.drafts = state.drafts.map((draft, i) =>
            i === index ? { ...draft, value } : draft,
          );
          state.whatif = null;
          renderCurrentSandbox(caseData, flips);
        },
        onApply() {
          void applyDrafts(caseData, flips);
        },
      },
    );
  }

  async function applyDrafts(
    caseData: CasePayload,
    flips: FlipsPayload,
  ): Promise<void> {
    const mine = token;
    state.fieldErrors = {};
    try {
      const result = await apiPost<WhatIfPayload>(
        `/cases/${caseData.id}/whatif`,
        { changes: state.drafts },
      );
      if (mine !== token) return;
      state.whatif = result;
    } catch (error) {
      if (mine !== token) return;
      if (error instanceof ApiError && error.status === 422) {
        const hit = state.drafts.find((draft) =>
          error.message.includes(draft.factor),
        );
        const key = hit ? hit.factor : state.drafts[0]?.factor ?? '';
        state.fieldErrors = { [key]: error.message };
        state.whatif = null;
      } else {
        throw error;
      }
    }
    renderCurrentSandbox(caseData, flips);
  }

  async function showSimilar(): Promise<void> {
    const mine = token;
    const id = currentCase();
    const payload = await apiGet<SimilarPayload>(`/cases/${id}/similar?k=3`);
    if (mine !== token) return;
    renderSimilar(main, payload);
  }

  async function showImportance(): Promise<void> {
    const mine = token;
    const payload = await apiGet<ImportancePayload>('/importance');
    if (mine !== token) return;
    renderImportance(main, payload);
  }

  async function showDistributions(): Promise<void> {
    const mine = token;
    const payload = await apiGet<DistributionsPayload>(
      `/distributions/${state.score}`,
    );
    if (mine !== token) return;
    renderDistributions(main, payload, {
      onScore(score) {
        if (score < 1 || score > 20) return;
        state.score = score;
        void refresh();
      },
    });
  }

  async function refresh(): Promise<void> {
    markActiveNav();
    try {
      switch (state.view) {
        case 'details':
          await showDetails();
          break;
        case 'sandbox':
          await showSandbox();
          break;
        case 'similar':
          await showSimilar();
          break;
        case 'about-importance':
          await showImportance();
          break;
        case 'about-distributions':
          await showDistributions();
          break;
      }
    } catch (error) {
      const message =
        error instanceof ApiError
          ? `${error.code}: ${error.message}`
          : String(error);
      renderErrorBanner(main, message, () => void refresh());
    }
  }

  buildSidebar();
  await refresh();
}

const rootElement = document.getElementById('app');
if (rootElement) {
  void boot(rootElement);
}
