/**
 * Orchestrates client calls against the view state.  Writes carry the
 * revision the snapshot was read at; a conflict refreshes and keeps the
 * draft so the deliberator can reconsider and retry.
 */

import { ApiClient, ParseRejection, RevisionConflict } from './api';
import {
  ViewState,
  afterConflict,
  afterWrite,
  initialState,
  withDiagnostics,
  withDraft,
  withInspect,
  withSession,
} from './state';

export class Controller {
  state: ViewState = initialState();

  constructor(private api: ApiClient) {}

  async refresh(): Promise<ViewState> {
    this.state = withSession(this.state, await this.api.getSession());
    return this.state;
  }

  setDraft(draft: string): ViewState {
    this.state = withDraft(this.state, draft);
    return this.state;
  }

  async submitStatement(draft: string): Promise<ViewState> {
    this.state = withDraft(this.state, draft);
    const revision = this.state.snapshot?.revision ?? 0;
    try {
      const result = await this.api.postStatement(draft, revision);
      const session = await this.api.getSession();
      this.state = afterWrite(this.state, session, result.flip);
    } catch (err) {
      if (err instanceof ParseRejection) {
        this.state = withDiagnostics(this.state, err.diagnostics);
      } else if (err instanceof RevisionConflict) {
        this.state = afterConflict(this.state, await this.api.getSession());
      } else {
        throw err;
      }
    }
    return this.state;
  }

  async undo(): Promise<ViewState> {
    const revision = this.state.snapshot?.revision ?? 0;
    try {
      const result = await this.api.undo(revision);
      const session = await this.api.getSession();
      this.state = afterWrite(this.state, session, result.flip);
    } catch (err) {
      if (err instanceof RevisionConflict) {
        this.state = afterConflict(this.state, await this.api.getSession());
      } else if (err instanceof ParseRejection) {
        this.state = withDiagnostics(this.state, err.diagnostics);
      } else {
        throw err;
      }
    }
    return this.state;
  }

  async inspect(literal: string): Promise<ViewState> {
    try {
      this.state = withInspect(this.state, await this.api.query(literal));
    } catch (err) {
      if (err instanceof ParseRejection) {
        this.state = withDiagnostics(this.state, err.diagnostics);
      } else {
        throw err;
      }
    }
    return this.state;
  }
}
