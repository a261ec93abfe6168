/**
 * Test harness: a fetch stub that replays captured server traffic.
 * Requests are matched by method and path (plus body for writes); the
 * stub records everything it serves so tests can assert provenance.
 */

import { readFileSync } from 'node:fs';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';
import type { FetchLike } from '../src/api';

const here = dirname(fileURLToPath(import.meta.url));

export function fixture<T>(name: string): T {
  return JSON.parse(readFileSync(join(here, 'fixtures', `${name}.json`), 'utf-8')) as T;
}

export interface Exchange {
  method: string;
  path: string;
  body?: unknown;
  status: number;
  payload: unknown;
}

export class ReplayFetch {
  served: Exchange[] = [];
  private queue: Exchange[];

  constructor(exchanges: Exchange[]) {
    this.queue = [...exchanges];
  }

  fetch: FetchLike = (url, init) => {
    const method = init?.method ?? 'GET';
    const path = url.replace(/^https?:\/\/[^/]+/, '');
    const index = this.queue.findIndex(
      (e) => e.method === method && e.path === path,
    );
    if (index < 0) {
      return Promise.reject(
        new Error(`unexpected request ${method} ${path}; nothing recorded`),
      );
    }
    const exchange = this.queue.splice(index, 1)[0];
    if (exchange.body !== undefined) {
      const sent = JSON.parse((init?.body as string) ?? 'null');
      const want = JSON.stringify(exchange.body);
      if (JSON.stringify(sent) !== want) {
        return Promise.reject(
          new Error(
            `request body mismatch on ${path}: sent ${JSON.stringify(sent)}, recorded ${want}`,
          ),
        );
      }
    }
    this.served.push(exchange);
    const response = new Response(JSON.stringify(exchange.payload), {
      status: exchange.status,
      headers: { 'Content-Type': 'application/json' },
    });
    return Promise.resolve(response);
  };
}

export const CHAIRMAN_1 =
  'assess u(sA1 | expense, whether_drove_alfa, how_chairman_reacts) = 8.';
export const CHAIRMAN_2 =
  'assess u(sA2 | expense, whether_drove_alfa, how_chairman_reacts) = -4.';
