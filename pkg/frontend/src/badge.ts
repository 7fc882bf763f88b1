import type { ConsistencySnapshot, WorstTriad } from './types';

export type BadgeState = 'pending' | 'pass' | 'fail';

export interface ConsistencyBadge {
  state: BadgeState;
  node: string;
  cr?: number;
  triad?: WorstTriad;
}

export function badgeFromSnapshot(snapshot: ConsistencySnapshot): ConsistencyBadge {
  if (!snapshot.complete) {
    return { state: 'pending', node: snapshot.node };
  }
  return {
    state: snapshot.consistent ? 'pass' : 'fail',
    node: snapshot.node,
    cr: snapshot.cr,
    triad: snapshot.worst_triad,
  };
}

/** The three comparisons implicated by the worst triad, for one-click revision. */
export function triadPairs(triad: WorstTriad): [number, number][] {
  return [
    [triad.i, triad.j],
    [triad.i, triad.k],
    [triad.j, triad.k],
  ];
}

export function renderBadge(badge: ConsistencyBadge): string {
  if (badge.state === 'pending') {
    return `<span class="badge badge-pending" data-node="${badge.node}">matrix incomplete</span>`;
  }
  const cr = badge.cr === undefined ? '' : ` CR ${badge.cr.toFixed(4)}`;
  if (badge.state === 'pass') {
    return `<span class="badge badge-pass" data-node="${badge.node}">consistent${cr}</span>`;
  }
  const names = badge.triad?.labels?.join(', ') ?? '';
  return (
    `<span class="badge badge-fail" data-node="${badge.node}">` +
    `inconsistent${cr}; worst triad: ${names}` +
    `</span>`
  );
}
