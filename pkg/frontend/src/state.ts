/**
 * View state and its transitions.  Every field traces back to a server
 * response; transitions only rearrange what the server said.
 */

import type {
  FlipReport,
  ParseDiagnostics,
  QueryOut,
  SessionOut,
} from './types';

export interface InspectState {
  literal: string;
  query: QueryOut;
}

export interface Banner {
  kind: 'conflict' | 'error' | 'info';
  text: string;
}

export interface ViewState {
  snapshot: SessionOut | null;
  flip: FlipReport | null;
  inspect: InspectState | null;
  draft: string;
  diagnostics: ParseDiagnostics | null;
  banner: Banner | null;
}

export function initialState(): ViewState {
  return {
    snapshot: null,
    flip: null,
    inspect: null,
    draft: '',
    diagnostics: null,
    banner: null,
  };
}

export function withSession(state: ViewState, session: SessionOut): ViewState {
  return { ...state, snapshot: session, banner: null };
}

/** A successful write: fresh snapshot plus the server's flip report. */
export function afterWrite(
  state: ViewState,
  session: SessionOut,
  flip: FlipReport,
): ViewState {
  return {
    ...state,
    snapshot: session,
    flip,
    draft: '',
    diagnostics: null,
    banner: null,
  };
}

export function withDraft(state: ViewState, draft: string): ViewState {
  return { ...state, draft };
}

export function withDiagnostics(
  state: ViewState,
  diagnostics: ParseDiagnostics,
): ViewState {
  return { ...state, diagnostics, banner: null };
}

/** Stale write: show the refreshed snapshot, keep the draft for retry. */
export function afterConflict(state: ViewState, refreshed: SessionOut): ViewState {
  return {
    ...state,
    snapshot: refreshed,
    diagnostics: null,
    banner: {
      kind: 'conflict',
      text:
        'Another write advanced the session to revision ' +
        `${refreshed.revision}; review the refreshed state and retry.`,
    },
  };
}

export function withInspect(state: ViewState, query: QueryOut): ViewState {
  return { ...state, inspect: { literal: query.literal, query } };
}
