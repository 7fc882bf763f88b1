import type { ApiClient } from './api';
import { badgeFromSnapshot, triadPairs, type ConsistencyBadge } from './badge';
import { buildQueue, type ComparisonQueue, type PendingPair } from './queue';
import type { HierarchyNode, SessionView } from './types';

function findNode(root: HierarchyNode, id: string): HierarchyNode | undefined {
  if (root.id === id) return root;
  for (const child of root.children) {
    const hit = findNode(child, id);
    if (hit) return hit;
  }
  return undefined;
}

/**
 * Pairwise-comparison flow for one expert. All state of record lives on the
 * service: load() rebuilds the queue from the current session snapshot, so
 * reloading the page resumes exactly where the expert left off.
 */
export class ComparisonWizard {
  private session!: SessionView;
  private queue: ComparisonQueue = { pending: [], total: 0, progress: 1 };
  readonly badges = new Map<string, ConsistencyBadge>();

  constructor(
    private readonly api: ApiClient,
    private readonly sessionId: string,
    private readonly expertId: string,
  ) {}

  async load(): Promise<void> {
    this.session = await this.api.getSession(this.sessionId);
    this.queue = buildQueue(this.session, this.expertId);
  }

  get scale() {
    return this.session.scale;
  }

  get progress(): number {
    return this.queue.progress;
  }

  get done(): boolean {
    return this.queue.pending.length === 0;
  }

  current(): PendingPair | undefined {
    return this.queue.pending[0];
  }

  pendingPairs(): readonly PendingPair[] {
    return this.queue.pending;
  }

  /** Submit the answer for the current pair; returns the node's fresh badge. */
  async submit(value: number): Promise<ConsistencyBadge> {
    const pair = this.current();
    if (!pair) {
      throw new Error('nothing left to compare');
    }
    const { snapshot } = await this.api.putJudgment(
      this.sessionId,
      this.expertId,
      pair.node,
      pair.i,
      pair.j,
      value,
    );
    this.queue.pending.shift();
    this.queue.progress =
      this.queue.total === 0
        ? 1
        : (this.queue.total - this.queue.pending.length) / this.queue.total;
    const badge = badgeFromSnapshot(snapshot);
    this.badges.set(pair.node, badge);
    return badge;
  }

  /**
   * One-click revision: requeue the three comparisons implicated by a
   * failing badge's worst triad, in front of everything else.
   */
  reviseWorstTriad(nodeId: string): PendingPair[] {
    const badge = this.badges.get(nodeId);
    if (!badge || badge.state !== 'fail' || !badge.triad) {
      return [];
    }
    const node = findNode(this.session.hierarchy, nodeId);
    if (!node) return [];
    const requeued = triadPairs(badge.triad).map(([i, j]) => ({
      node: nodeId,
      nodeLabel: node.label,
      i,
      j,
      leftLabel: node.children[i - 1].label,
      rightLabel: node.children[j - 1].label,
    }));
    this.queue.pending = [
      ...requeued,
      ...this.queue.pending.filter(
        (p) => !requeued.some((r) => r.node === p.node && r.i === p.i && r.j === p.j),
      ),
    ];
    return requeued;
  }
}
