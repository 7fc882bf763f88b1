import type { ApiClient, ResultsQuery } from './api';
import { formatPercent, formatScore, formatWeight } from './format';
import { isMissingJudgments, type MissingItem, type Report } from './types';

export interface WeightBar {
  child: string;
  weight: number;
  widthPct: string;
}

export interface GradeSegment {
  grade: string;
  fraction: number;
  widthPct: string;
}

export interface NodeView {
  id: string;
  label: string;
  score: string;
  verdictLabel: string;
  weightBars: WeightBar[];
  gradeBars: GradeSegment[];
}

export type DashboardState =
  | {
      kind: 'complete';
      rootScore: string;
      rootVerdict: string;
      method: string;
      nodes: NodeView[];
      warnings: string[];
    }
  | { kind: 'incomplete'; checklist: string[] };

function nodeViews(report: Report): NodeView[] {
  return Object.entries(report.results).map(([id, res]) => {
    const bundle = report.weights[id];
    return {
      id,
      label: res.label,
      score: formatScore(res.score),
      verdictLabel: report.evaluation_set[res.verdict - 1].label,
      weightBars: bundle
        ? bundle.children.map((child, k) => ({
            child,
            weight: bundle.weights[k],
            widthPct: formatPercent(bundle.weights[k]),
          }))
        : [],
      gradeBars: res.distribution.map((fraction, k) => ({
        grade: report.evaluation_set[k].label,
        fraction,
        widthPct: formatPercent(fraction),
      })),
    };
  });
}

function checklist(missing: MissingItem[]): string[] {
  return missing.map((item) =>
    isMissingJudgments(item)
      ? `${item.expert}: ${item.pairs.length} comparison(s) left at ${item.node}`
      : `${item.expert}: rating missing for ${item.leaf}`,
  );
}

/**
 * Results view. Every number shown comes straight from the service; the
 * dashboard does no evaluation math of its own, only display formatting.
 */
export class Dashboard {
  query: ResultsQuery;
  pollIntervalMs: number;
  private timer: ReturnType<typeof setInterval> | undefined;

  constructor(
    private readonly api: ApiClient,
    private readonly sessionId: string,
    options: ResultsQuery & { pollIntervalMs?: number } = {},
  ) {
    this.query = { method: options.method, theta: options.theta };
    this.pollIntervalMs = options.pollIntervalMs ?? 2000;
  }

  async refresh(): Promise<DashboardState> {
    const results = await this.api.getResults(this.sessionId, this.query);
    if (results.status === 'incomplete') {
      return { kind: 'incomplete', checklist: checklist(results.missing) };
    }
    const report = results.report;
    const root = report.results[report.root];
    return {
      kind: 'complete',
      rootScore: formatScore(root.score),
      rootVerdict: report.evaluation_set[root.verdict - 1].label,
      method: report.method,
      nodes: nodeViews(report),
      warnings: report.environment_warnings,
    };
  }

  /** Changing method or theta re-queries the service on the next refresh. */
  setQuery(query: ResultsQuery): void {
    this.query = query;
  }

  startPolling(onState: (state: DashboardState) => void): void {
    this.stopPolling();
    this.timer = setInterval(() => {
      void this.refresh().then(onState);
    }, this.pollIntervalMs);
  }

  stopPolling(): void {
    if (this.timer !== undefined) {
      clearInterval(this.timer);
      this.timer = undefined;
    }
  }
}

export function renderDashboard(state: DashboardState): string {
  if (state.kind === 'incomplete') {
    const items = state.checklist.map((line) => `<li>${line}</li>`).join('');
    return `<section class="gaps"><h2>Session incomplete</h2><ul>${items}</ul></section>`;
  }
  const nodes = state.nodes
    .map((node) => {
      const weights = node.weightBars
        .map(
          (bar) =>
            `<div class="bar" style="width:${bar.widthPct}">` +
            `${bar.child} ${formatWeight(bar.weight)}</div>`,
        )
        .join('');
      const grades = node.gradeBars
        .map(
          (seg) =>
            `<span class="segment" style="width:${seg.widthPct}">${seg.grade}</span>`,
        )
        .join('');
      return (
        `<article class="node" data-node="${node.id}">` +
        `<h3>${node.label}</h3>` +
        `<p>score ${node.score} (${node.verdictLabel})</p>` +
        `<div class="weights">${weights}</div>` +
        `<div class="grades">${grades}</div>` +
        `</article>`
      );
    })
    .join('');
  const warnings = state.warnings.map((w) => `<li>${w}</li>`).join('');
  return (
    `<section class="dashboard">` +
    `<h1 class="root-score">S = ${state.rootScore}</h1>` +
    `<p class="root-verdict">${state.rootVerdict} (${state.method} weights)</p>` +
    (warnings ? `<ul class="warnings">${warnings}</ul>` : '') +
    nodes +
    `</section>`
  );
}
