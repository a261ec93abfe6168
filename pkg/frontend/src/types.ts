/**
 * Server response shapes, mirrored from the deliberation service.
 * The client renders these verbatim; it never computes a verdict or a
 * utility on its own.
 */

export interface RecommendationOut {
  verdict: 'ACT' | 'INTERFERENCE' | 'NO_ARGUMENT';
  act: string | null;
  contenders: string[];
  fallback_used: boolean;
  utilities: Record<string, string | null>;
  summary: string;
}

export interface HistoryEntryOut {
  statement: string;
  revision: number;
  verdict: string;
  summary: string;
}

export interface SessionOut {
  id: string;
  revision: number;
  document: string;
  statements: string[];
  recommendation: RecommendationOut | null;
  history: HistoryEntryOut[];
}

export interface FlipReport {
  old: string | null;
  new: string | null;
  changed: boolean;
}

export interface StatementOut {
  revision: number;
  recommendation: RecommendationOut | null;
  flip: FlipReport;
}

export interface PoolArgument {
  id: string;
  conclusion: string;
  rules: string[];
  contingent_base: string[];
  sub_conclusions: string[];
  label: 'UNDEFEATED' | 'DEFEATED' | 'UNDECIDED';
}

export interface TraceEdge {
  attacker: string;
  target: string;
  point: string;
  kind: 'defeat' | 'interference';
}

export interface DisplayEdge extends TraceEdge {
  source: string;
  bidirectional: boolean;
}

export interface DisplayView {
  clusters: string[];
  edges: DisplayEdge[];
  defeat_edges: number;
  interference_pairs: number;
}

export interface TraceOut {
  schema: string;
  goal: string;
  verdict: 'JUSTIFIED' | 'DENIED' | 'INTERFERENCE' | 'NO_ARGUMENT';
  partial: boolean;
  budget_used: number;
  pool: PoolArgument[];
  edges: TraceEdge[];
  display: DisplayView;
}

export interface QueryOut {
  revision: number;
  literal: string;
  verdict: TraceOut['verdict'];
  trace: TraceOut;
}

export interface ParseDiagnostics {
  error: string;
  message: string;
  line: number;
  column: number;
}

export interface ConflictDetail {
  error: string;
  expected: number;
  got: number;
}
