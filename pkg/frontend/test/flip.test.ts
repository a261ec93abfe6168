/**
 * The canonical refinement conversation, driven through the client
 * against recorded server traffic: the recommendation starts at
 * rent_alfa with 3.4 utils, two wider-based assessments flip it to
 * rent_econo at 0.8, and every number on screen comes from a response.
 */

import { describe, expect, it } from 'vitest';
import { ApiClient } from '../src/api';
import { Controller } from '../src/controller';
import { renderApp } from '../src/render';
import type { SessionOut, StatementOut } from '../src/types';
import { CHAIRMAN_1, CHAIRMAN_2, Exchange, ReplayFetch, fixture } from './replay';

function flipExchanges(): Exchange[] {
  return [
    { method: 'GET', path: '/session', status: 200, payload: fixture('alfa_session_0') },
    {
      method: 'POST',
      path: '/statements',
      body: { statement: CHAIRMAN_1, revision: 0 },
      status: 200,
      payload: fixture('alfa_statement_1'),
    },
    { method: 'GET', path: '/session', status: 200, payload: fixture('alfa_session_1') },
    {
      method: 'POST',
      path: '/statements',
      body: { statement: CHAIRMAN_2, revision: 1 },
      status: 200,
      payload: fixture('alfa_statement_2'),
    },
    { method: 'GET', path: '/session', status: 200, payload: fixture('alfa_session_2') },
  ];
}

async function driveFlip(replay: ReplayFetch): Promise<Controller> {
  const controller = new Controller(new ApiClient('', replay.fetch));
  await controller.refresh();
  await controller.submitStatement(CHAIRMAN_1);
  await controller.submitStatement(CHAIRMAN_2);
  return controller;
}

describe('the recommendation flip', () => {
  it('starts from the narrow model at 3.4 utils', async () => {
    const replay = new ReplayFetch(flipExchanges());
    const controller = new Controller(new ApiClient('', replay.fetch));
    await controller.refresh();
    const html = renderApp(controller.state);
    expect(html).toContain('ACT rent_alfa (u=3.4 vs 2)');
    expect(html).toContain('revision 0');
  });

  it('shows the verdict chip changing rent_alfa to rent_econo with 3.4 to 0.8', async () => {
    const replay = new ReplayFetch(flipExchanges());
    const controller = await driveFlip(replay);
    const html = renderApp(controller.state);
    expect(html).toContain('ACT rent_econo (u=2 vs 0.8)');
    expect(html).toContain('flip-old');
    expect(html).toContain('verdict changed');
    expect(html).toContain('0.8');
    expect(html).toContain('revision 2');
    const oldChip = html.match(/<span class="flip-old">([^<]*)<\/span>/);
    expect(oldChip?.[1]).toContain('rent_alfa');
    const newChip = html.match(/<span class="flip-new">([^<]*)<\/span>/);
    expect(newChip?.[1]).toContain('rent_econo');
  });

  it('renders the history timeline exactly as the server recorded it', async () => {
    const replay = new ReplayFetch(flipExchanges());
    const controller = await driveFlip(replay);
    const html = renderApp(controller.state);
    const session = fixture<SessionOut>('alfa_session_2');
    for (const entry of session.history) {
      expect(html).toContain(entry.summary.replace(/&/g, '&amp;'));
    }
    expect(session.history.map((h) => h.statement)).toEqual([CHAIRMAN_1, CHAIRMAN_2]);
  });

  it('sources every displayed value from server responses, not local math', async () => {
    // corrupt the recorded utility; the client must faithfully show the
    // corruption, proving it computes nothing itself
    const tampered = fixture<SessionOut>('alfa_session_2');
    tampered.recommendation!.utilities['rent_alfa'] = '123456789';
    tampered.recommendation!.summary = 'ACT rent_econo (u=2 vs 123456789)';
    const exchanges = flipExchanges();
    exchanges[4] = { method: 'GET', path: '/session', status: 200, payload: tampered };
    const replay = new ReplayFetch(exchanges);
    const controller = await driveFlip(replay);
    const html = renderApp(controller.state);
    const summary = html.match(/<strong class="summary">([^<]*)<\/strong>/);
    expect(summary?.[1]).toBe('ACT rent_econo (u=2 vs 123456789)');
    const utilities = html.slice(html.indexOf('<table class="utilities"'), html.indexOf('</table>'));
    expect(utilities).toContain('123456789');
    expect(utilities).not.toContain('0.8');
  });

  it('never invents requests beyond the recorded conversation', async () => {
    const replay = new ReplayFetch(flipExchanges());
    await driveFlip(replay);
    expect(replay.served).toHaveLength(5);
  });

  it('threads the snapshot revision into each write', async () => {
    const second = fixture<StatementOut>('alfa_statement_2');
    expect(second.revision).toBe(2);
    const replay = new ReplayFetch(flipExchanges());
    const controller = await driveFlip(replay);
    // body mismatches would have rejected inside the replay stub
    expect(controller.state.snapshot?.revision).toBe(2);
  });
});
