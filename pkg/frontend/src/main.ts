// Browser entry point. Expects ?session=<id>&expert=<id> in the URL and the
// service reachable at the same origin (or ?service=<base url>).

import { ApiClient, ServiceError } from './api';
import { renderBadge } from './badge';
import { Dashboard, renderDashboard } from './dashboard';
import { RatingGrid } from './grid';
import { labelFor, ticksFor } from './scale';
import { ComparisonWizard } from './wizard';

function el(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node;
}

async function mountWizard(wizard: ComparisonWizard): Promise<void> {
  await wizard.load();
  const host = el('wizard');

  const draw = () => {
    const pair = wizard.current();
    if (!pair) {
      host.innerHTML = `<p>All comparisons answered.</p>`;
      return;
    }
    const ticks = ticksFor(wizard.scale)
      .map(
        (t, k) =>
          `<option value="${k}" title="${t.label}">${t.value}</option>`,
      )
      .join('');
    host.innerHTML =
      `<p class="progress">${Math.round(wizard.progress * 100)}% done</p>` +
      `<h3>${pair.nodeLabel}</h3>` +
      `<p>${pair.leftLabel} vs ${pair.rightLabel}</p>` +
      `<select id="tick">${ticks}</select>` +
      `<span id="tick-label"></span>` +
      `<button id="submit">Submit</button>` +
      `<div id="badges"></div>`;
    const select = el('tick') as HTMLSelectElement;
    const showLabel = () => {
      const tick = ticksFor(wizard.scale)[Number(select.value)];
      el('tick-label').textContent = labelFor(wizard.scale, tick.value);
    };
    select.addEventListener('change', showLabel);
    showLabel();
    el('submit').addEventListener('click', () => {
      const tick = ticksFor(wizard.scale)[Number(select.value)];
      void wizard
        .submit(tick.value)
        .then((badge) => {
          el('badges').innerHTML = renderBadge(badge);
          if (badge.state === 'fail') {
            wizard.reviseWorstTriad(badge.node);
          }
          draw();
        })
        .catch((err: unknown) => {
          el('badges').textContent =
            err instanceof ServiceError ? err.message : String(err);
        });
    });
  };
  draw();
}

async function mountGrid(grid: RatingGrid): Promise<void> {
  await grid.load();
  const host = el('grid');
  const draw = () => {
    const rows = grid
      .leaves()
      .map((leaf) => {
        const options = grid.grades
          .map(
            (g, k) =>
              `<option value="${k + 1}" ${leaf.grade === k + 1 ? 'selected' : ''}>` +
              `${g.label}</option>`,
          )
          .join('');
        const placeholder = leaf.grade === undefined ? `<option selected></option>` : '';
        return (
          `<tr><td>${leaf.label}</td>` +
          `<td><select data-leaf="${leaf.id}">${placeholder}${options}</select></td></tr>`
        );
      })
      .join('');
    host.innerHTML =
      `<table>${rows}</table>` +
      `<p>${grid.complete ? 'All leaves rated.' : 'Ratings incomplete.'}</p>`;
    host.querySelectorAll('select').forEach((select) => {
      select.addEventListener('change', () => {
        const leaf = select.getAttribute('data-leaf')!;
        void grid.select(leaf, Number(select.value)).then(draw);
      });
    });
  };
  draw();
}

function mountDashboard(dashboard: Dashboard): void {
  const host = el('dashboard');
  const method = el('method') as HTMLSelectElement;
  method.addEventListener('change', () => {
    dashboard.setQuery({ method: method.value });
  });
  dashboard.startPolling((state) => {
    host.innerHTML = renderDashboard(state);
  });
}

const params = new URLSearchParams(window.location.search);
const api = new ApiClient(params.get('service') ?? '');
const sessionId = params.get('session') ?? '';
const expertId = params.get('expert') ?? '';

if (sessionId && expertId) {
  const wizard = new ComparisonWizard(api, sessionId, expertId);
  const grid = new RatingGrid(api, sessionId, expertId);
  void mountWizard(wizard);
  void mountGrid(grid);
}
if (sessionId) {
  mountDashboard(new Dashboard(api, sessionId));
}
