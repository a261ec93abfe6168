/**
 * Thin typed wrapper over the session endpoints.  The fetch function is
 * injected so tests can replay captured server traffic byte for byte.
 */

import type {
  ConflictDetail,
  ParseDiagnostics,
  QueryOut,
  SessionOut,
  StatementOut,
} from './types';

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ParseRejection extends Error {
  constructor(public diagnostics: ParseDiagnostics) {
    super(diagnostics.message);
  }
}

export class RevisionConflict extends Error {
  constructor(public detail: ConflictDetail) {
    super('stale revision');
  }
}

export class ApiClient {
  constructor(
    private baseUrl: string,
    private fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path, init);
    if (response.status === 400) {
      const body = await response.json();
      throw new ParseRejection(body.detail as ParseDiagnostics);
    }
    if (response.status === 409) {
      const body = await response.json();
      throw new RevisionConflict(body.detail as ConflictDetail);
    }
    if (!response.ok) {
      throw new Error(`${path}: HTTP ${response.status}`);
    }
    return (await response.json()) as T;
  }

  getSession(): Promise<SessionOut> {
    return this.request<SessionOut>('/session');
  }

  postStatement(statement: string, revision: number): Promise<StatementOut> {
    return this.request<StatementOut>('/statements', {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ statement, revision }),
    });
  }

  query(literal: string): Promise<QueryOut> {
    return this.request<QueryOut>('/query', {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ literal }),
    });
  }

  undo(revision: number): Promise<StatementOut> {
    return this.request<StatementOut>('/undo', {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ revision }),
    });
  }

  async graphDot(literal: string): Promise<string> {
    const response = await this.fetchFn(
      `${this.baseUrl}/graph.dot?literal=${encodeURIComponent(literal)}`,
    );
    if (!response.ok) {
      throw new Error(`/graph.dot: HTTP ${response.status}`);
    }
    return response.text();
  }
}
