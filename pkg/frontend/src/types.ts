// Shapes mirrored from the session service's JSON responses.

export type Scale = 'crisp_1_9' | 'fuzzy_01_09';

export interface GradeDef {
  label: string;
  score: number;
}

export interface HierarchyNode {
  id: string;
  label: string;
  description?: string;
  metric_kind?: string;
  children: HierarchyNode[];
}

export interface MissingJudgments {
  expert: string;
  node: string;
  pairs: [number, number][];
}

export interface MissingRating {
  expert: string;
  leaf: string;
}

export type MissingItem = MissingJudgments | MissingRating;

export function isMissingJudgments(m: MissingItem): m is MissingJudgments {
  return 'node' in m;
}

export interface ExpertProgress {
  missing: MissingItem[];
  complete: boolean;
}

export interface SessionView {
  session_id: string;
  scale: Scale;
  revision: number;
  hierarchy: HierarchyNode;
  evaluation_set: GradeDef[];
  experts: Record<string, ExpertProgress>;
  complete: boolean;
}

export interface WorstTriad {
  i: number;
  j: number;
  k: number;
  deviation: number;
  labels?: string[];
}

export interface ConsistencySnapshot {
  expert: string;
  node: string;
  revision: number;
  complete: boolean;
  missing_pairs?: [number, number][];
  lambda_max?: number;
  ci?: number;
  ri?: number;
  cr?: number;
  consistent?: boolean;
  worst_triad?: WorstTriad;
}

export interface NodeResult {
  label: string;
  distribution: number[];
  score: number;
  verdict: number;
  verdict_ties: number[];
}

export interface WeightBundle {
  node_id: string;
  label: string;
  children: string[];
  method: string;
  weights: number[];
}

export interface Report {
  session_id: string;
  scale: Scale;
  method: string;
  root: string;
  evaluation_set: GradeDef[];
  environment_warnings: string[];
  weights: Record<string, WeightBundle>;
  results: Record<string, NodeResult>;
}

export interface ExportedExpert {
  expert_id: string;
  judgments: Record<string, [number, number, number][]>;
  ratings: Record<string, number>;
}

export interface ExportedSession {
  session_id: string;
  scale: Scale;
  hierarchy: HierarchyNode;
  evaluation_set: GradeDef[];
  experts: ExportedExpert[];
}

export type ResultsResponse =
  | { status: 'complete'; report: Report }
  | { status: 'incomplete'; missing: MissingItem[] };
