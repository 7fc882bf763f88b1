import type { ApiClient } from './api';
import type { GradeDef, HierarchyNode } from './types';

export interface LeafRow {
  id: string;
  label: string;
  grade?: number;
}

function collectLeaves(root: HierarchyNode): { id: string; label: string }[] {
  if (root.children.length === 0) {
    return [{ id: root.id, label: root.label }];
  }
  return root.children.flatMap(collectLeaves);
}

/**
 * One grade vote per leaf. Votes PUT immediately and are read back from the
 * service export on load, so nothing is lost across page reloads.
 */
export class RatingGrid {
  private rows: LeafRow[] = [];
  grades: GradeDef[] = [];

  constructor(
    private readonly api: ApiClient,
    private readonly sessionId: string,
    private readonly expertId: string,
  ) {}

  async load(): Promise<void> {
    const session = await this.api.getSession(this.sessionId);
    this.grades = session.evaluation_set;
    const exported = await this.api.getExport(this.sessionId);
    const mine = exported.experts.find((e) => e.expert_id === this.expertId);
    this.rows = collectLeaves(session.hierarchy).map((leaf) => ({
      ...leaf,
      grade: mine?.ratings[leaf.id],
    }));
  }

  leaves(): readonly LeafRow[] {
    return this.rows;
  }

  selection(leafId: string): number | undefined {
    return this.rows.find((r) => r.id === leafId)?.grade;
  }

  get complete(): boolean {
    return this.rows.length > 0 && this.rows.every((r) => r.grade !== undefined);
  }

  async select(leafId: string, grade: number): Promise<void> {
    await this.api.putRating(this.sessionId, this.expertId, leafId, grade);
    const row = this.rows.find((r) => r.id === leafId);
    if (row) row.grade = grade;
  }
}
