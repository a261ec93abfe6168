/**
 * Pure rendering: view state in, HTML strings out.  No DOM access here,
 * which keeps every visual decision assertable in plain node tests.
 * Numbers and verdicts are interpolated verbatim from server payloads.
 */

import type { InspectState, ViewState } from './state';
import type {
  DisplayEdge,
  HistoryEntryOut,
  PoolArgument,
  RecommendationOut,
  TraceOut,
} from './types';

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

function verdictClass(verdict: string): string {
  return `verdict verdict-${verdict.toLowerCase()}`;
}

export function renderRecommendation(
  rec: RecommendationOut | null,
  flip: ViewState['flip'],
): string {
  const parts: string[] = ['<section class="panel" id="recommendation">'];
  parts.push('<h2>Recommendation</h2>');
  if (rec === null) {
    parts.push('<p class="empty">No acts declared yet.</p>');
  } else {
    parts.push(
      `<p><span class="${verdictClass(rec.verdict)}">${escapeHtml(rec.verdict)}</span> ` +
        `<strong class="summary">${escapeHtml(rec.summary)}</strong></p>`,
    );
    const known = Object.entries(rec.utilities);
    if (known.length > 0) {
      parts.push('<table class="utilities"><tbody>');
      for (const [act, value] of known) {
        parts.push(
          `<tr><td class="act">${escapeHtml(act)}</td>` +
            `<td class="value">${value === null ? '—' : escapeHtml(value)}</td></tr>`,
        );
      }
      parts.push('</tbody></table>');
    }
    if (rec.fallback_used) {
      parts.push('<p class="fallback">chosen by inclination, not by argument</p>');
    }
  }
  if (flip && flip.changed) {
    parts.push(
      `<p class="flip" role="status">verdict changed: ` +
        `<span class="flip-old">${escapeHtml(flip.old ?? '—')}</span>` +
        ` → <span class="flip-new">${escapeHtml(flip.new ?? '—')}</span></p>`,
    );
  }
  parts.push('</section>');
  return parts.join('\n');
}

export function renderHistory(history: HistoryEntryOut[]): string {
  const parts: string[] = ['<section class="panel" id="history">'];
  parts.push('<h2>History</h2>');
  if (history.length === 0) {
    parts.push('<p class="empty">No refinements yet.</p>');
  } else {
    parts.push('<ol class="timeline">');
    for (const entry of history) {
      parts.push(
        `<li data-revision="${entry.revision}">` +
          `<code>${escapeHtml(entry.statement)}</code>` +
          `<span class="outcome">${escapeHtml(entry.summary)}</span></li>`,
      );
    }
    parts.push('</ol>');
  }
  parts.push('</section>');
  return parts.join('\n');
}

export function renderDiagnostics(draft: string, view: ViewState): string {
  const diag = view.diagnostics;
  if (!diag) {
    return '';
  }
  const lines = draft.split('\n');
  const offending = lines[Math.min(diag.line, lines.length) - 1] ?? '';
  const caret = ' '.repeat(Math.max(diag.column - 1, 0)) + '^';
  return (
    '<div class="diagnostics" role="alert">' +
    `<p>line ${diag.line}, column ${diag.column}: ${escapeHtml(diag.message)}</p>` +
    `<pre>${escapeHtml(offending)}\n${caret}</pre></div>`
  );
}

function renderArgument(arg: PoolArgument, trace: TraceOut): string {
  const justified =
    arg.label === 'UNDEFEATED' && arg.conclusion === trace.goal ? ' justified' : '';
  const rules = arg.rules.length
    ? `<ul class="rules">${arg.rules
        .map((r) => `<li><code>${escapeHtml(r)}</code></li>`)
        .join('')}</ul>`
    : '<p class="evidence-only">evidence</p>';
  return (
    `<article class="argument label-${arg.label.toLowerCase()}${justified}" data-id="${arg.id}">` +
    `<header><span class="arg-id">${arg.id}</span>` +
    `<button class="inspect-link" data-literal="${escapeHtml(arg.conclusion)}">` +
    `${escapeHtml(arg.conclusion)}</button>` +
    `<span class="label">${arg.label}</span></header>` +
    rules +
    '</article>'
  );
}

function renderEdge(edge: DisplayEdge): string {
  if (edge.kind === 'defeat') {
    return (
      `<li class="edge edge-defeat">` +
      `<code>${escapeHtml(edge.source)}</code> defeats ` +
      `<code>${escapeHtml(edge.point)}</code>` +
      ` <span class="arrow">(${edge.attacker} ➤ ${edge.target})</span></li>`
    );
  }
  const arrow = edge.bidirectional ? '⟷' : '→';
  return (
    `<li class="edge edge-interference">` +
    `<code>${escapeHtml(edge.source)}</code> interferes with ` +
    `<code>${escapeHtml(edge.point)}</code>` +
    ` <span class="arrow">(${edge.attacker} ${arrow} ${edge.target})</span></li>`
  );
}

export function renderInspect(inspect: InspectState | null): string {
  const parts: string[] = ['<section class="panel" id="inspect">'];
  parts.push('<h2>Inspect</h2>');
  if (inspect === null) {
    parts.push('<p class="empty">Query a literal to see its dialectic.</p>');
    parts.push('</section>');
    return parts.join('\n');
  }
  const { query } = inspect;
  const trace = query.trace;
  parts.push(
    `<p><code>${escapeHtml(query.literal)}</code> ` +
      `<span class="${verdictClass(query.verdict)}">${escapeHtml(query.verdict)}</span></p>`,
  );
  if (query.verdict === 'NO_ARGUMENT' && trace.pool.length === 0) {
    parts.push(
      '<p class="empty no-argument">No argument bears on this literal in the current model.</p>',
    );
    parts.push('</section>');
    return parts.join('\n');
  }
  const byId = new Map(trace.pool.map((a) => [a.id, a]));
  const shown = trace.display.clusters
    .map((id) => byId.get(id))
    .filter((a): a is PoolArgument => a !== undefined);
  parts.push('<div class="arguments">');
  for (const arg of shown) {
    parts.push(renderArgument(arg, trace));
  }
  parts.push('</div>');
  if (trace.display.edges.length > 0) {
    parts.push('<ul class="edges">');
    for (const edge of trace.display.edges) {
      parts.push(renderEdge(edge));
    }
    parts.push('</ul>');
  }
  if (trace.partial) {
    parts.push('<p class="partial">budget exhausted: this dialectic is partial</p>');
  }
  parts.push('</section>');
  return parts.join('\n');
}

export function renderBanner(view: ViewState): string {
  if (!view.banner) {
    return '';
  }
  return (
    `<div class="banner banner-${view.banner.kind}" role="alert">` +
    `${escapeHtml(view.banner.text)}` +
    (view.banner.kind === 'conflict'
      ? ' <button id="retry">retry draft</button>'
      : '') +
    '</div>'
  );
}

export function renderApp(view: ViewState): string {
  const session = view.snapshot;
  const header = session
    ? `<header id="top"><h1>deliberator</h1>` +
      `<span class="revision">revision ${session.revision}</span></header>`
    : '<header id="top"><h1>deliberator</h1><span class="revision">connecting…</span></header>';
  const entry =
    '<section class="panel" id="entry">' +
    '<h2>Refine the model</h2>' +
    `<textarea id="draft" rows="2" placeholder="one statement, ending with '.'">${escapeHtml(view.draft)}</textarea>` +
    renderDiagnostics(view.draft, view) +
    '<div class="actions">' +
    '<button id="submit">add statement</button>' +
    '<button id="undo">undo</button>' +
    '<input id="inspect-literal" placeholder="u(sA0) = 3.4" />' +
    '<button id="inspect-go">inspect</button>' +
    '</div></section>';
  return [
    header,
    renderBanner(view),
    renderRecommendation(session?.recommendation ?? null, view.flip),
    entry,
    renderInspect(view.inspect),
    renderHistory(session?.history ?? []),
  ].join('\n');
}
