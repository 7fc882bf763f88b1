import type { HierarchyNode, SessionView } from './types';
import { isMissingJudgments } from './types';

export interface PendingPair {
  node: string;
  nodeLabel: string;
  i: number;
  j: number;
  leftLabel: string;
  rightLabel: string;
}

export interface ComparisonQueue {
  pending: PendingPair[];
  /** total upper-triangle pairs for this expert across all non-leaf nodes */
  total: number;
  /** answered / total, in [0, 1] */
  progress: number;
}

function nonLeaves(root: HierarchyNode): HierarchyNode[] {
  const out: HierarchyNode[] = [];
  const stack = [root];
  while (stack.length > 0) {
    const node = stack.shift()!;
    if (node.children.length > 0) {
      out.push(node);
      stack.unshift(...node.children);
    }
  }
  return out;
}

export function pairCount(n: number): number {
  return (n * (n - 1)) / 2;
}

/**
 * The queue is derived purely from the service's view of the session, so a
 * reloaded page rebuilds exactly the pairs still unanswered.
 */
export function buildQueue(session: SessionView, expertId: string): ComparisonQueue {
  const progress = session.experts[expertId];
  if (!progress) {
    throw new Error(`expert ${expertId} is not on the session roster`);
  }
  const nodes = nonLeaves(session.hierarchy);
  const total = nodes.reduce((acc, n) => acc + pairCount(n.children.length), 0);

  const missingByNode = new Map<string, Set<string>>();
  for (const item of progress.missing) {
    if (isMissingJudgments(item)) {
      missingByNode.set(item.node, new Set(item.pairs.map(([i, j]) => `${i},${j}`)));
    }
  }

  const pending: PendingPair[] = [];
  for (const node of nodes) {
    const missing = missingByNode.get(node.id);
    if (!missing) continue;
    const n = node.children.length;
    for (let i = 1; i <= n; i++) {
      for (let j = i + 1; j <= n; j++) {
        if (missing.has(`${i},${j}`)) {
          pending.push({
            node: node.id,
            nodeLabel: node.label,
            i,
            j,
            leftLabel: node.children[i - 1].label,
            rightLabel: node.children[j - 1].label,
          });
        }
      }
    }
  }
  return { pending, total, progress: total === 0 ? 1 : (total - pending.length) / total };
}
