/**
 * Dialectic inspection: the reinstatement scenario renders one defeat
 * edge and one interference pair, defeat visually distinct, justified
 * conclusion emphasized; a literal with no arguments gets an explicit
 * empty state.
 */

import { describe, expect, it } from 'vitest';
import { ApiClient } from '../src/api';
import { Controller } from '../src/controller';
import { renderApp, renderInspect } from '../src/render';
import type { QueryOut } from '../src/types';
import { ReplayFetch, fixture } from './replay';

async function inspected(fixtureName: string, literal: string): Promise<Controller> {
  const replay = new ReplayFetch([
    { method: 'GET', path: '/session', status: 200, payload: fixture('alfa_session_0') },
    {
      method: 'POST',
      path: '/query',
      body: { literal },
      status: 200,
      payload: fixture(fixtureName),
    },
  ]);
  const controller = new Controller(new ApiClient('', replay.fetch));
  await controller.refresh();
  await controller.inspect(literal);
  return controller;
}

describe('inspecting the reinstatement scenario', () => {
  it('renders one defeat edge and one interference pair', async () => {
    const controller = await inspected('reinstatement_query_do_a1', 'do(a1)');
    const html = renderApp(controller.state);
    expect(html.match(/edge-defeat/g)).toHaveLength(1);
    expect(html.match(/edge-interference/g)).toHaveLength(1);
    expect(html).toContain('⟷'); // the pair reads as one two-headed conflict
  });

  it('shows the fuller valuation defeating the weaker one', async () => {
    const controller = await inspected('reinstatement_query_do_a1', 'do(a1)');
    const html = renderApp(controller.state);
    const defeat = html.slice(html.indexOf('edge-defeat'));
    expect(defeat).toContain('u(n3) = 2');
    expect(defeat).toContain('u(n3) = 5');
  });

  it('emphasizes the justified conclusion and greys the defeated case', async () => {
    const controller = await inspected('reinstatement_query_do_a1', 'do(a1)');
    const html = renderApp(controller.state);
    expect(html).toContain('justified');
    expect(html).toContain('label-defeated');
    const query = fixture<QueryOut>('reinstatement_query_do_a1');
    expect(query.verdict).toBe('JUSTIFIED');
    // only maximal arguments become cards
    expect(html.match(/<article/g)).toHaveLength(query.trace.display.clusters.length);
  });

  it('renders an explicit empty state for NO_ARGUMENT', async () => {
    const controller = await inspected('reinstatement_query_empty', 'desir(p)');
    const html = renderApp(controller.state);
    expect(html).toContain('no-argument');
    expect(html).toContain('No argument bears on this literal');
  });

  it('renders a single argument without edges as one card', () => {
    const query = fixture<QueryOut>('reinstatement_query_empty');
    const single: QueryOut = {
      ...query,
      verdict: 'JUSTIFIED',
      trace: {
        ...query.trace,
        verdict: 'JUSTIFIED',
        goal: 'u(n1) = 3',
        pool: [
          {
            id: 'A1',
            conclusion: 'u(n1) = 3',
            rules: ['ax2:n1:p:3'],
            contingent_base: ['holds(p, n1)'],
            sub_conclusions: ['u(n1) = 3'],
            label: 'UNDEFEATED',
          },
        ],
        edges: [],
        display: { clusters: ['A1'], edges: [], defeat_edges: 0, interference_pairs: 0 },
      },
    };
    const html = renderInspect({ literal: 'u(n1) = 3', query: single });
    expect(html.match(/<article/g)).toHaveLength(1);
    expect(html).not.toContain('edge-');
  });
});
