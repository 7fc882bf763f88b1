import { describe, expect, it } from 'vitest';

import { badgeFromSnapshot, renderBadge, triadPairs } from '../src/badge';
import type { ConsistencySnapshot } from '../src/types';

const base = { expert: 'e1', node: 'cognition', revision: 7 };

describe('badgeFromSnapshot', () => {
  it('is pending while pairs are missing', () => {
    const snap: ConsistencySnapshot = {
      ...base,
      complete: false,
      missing_pairs: [[1, 3]],
    };
    expect(badgeFromSnapshot(snap).state).toBe('pending');
  });

  it('passes on a consistent matrix', () => {
    const snap: ConsistencySnapshot = {
      ...base,
      complete: true,
      cr: 0.02,
      consistent: true,
    };
    const badge = badgeFromSnapshot(snap);
    expect(badge.state).toBe('pass');
    expect(badge.cr).toBe(0.02);
  });

  it('fails on a preference cycle and keeps the worst triad', () => {
    const snap: ConsistencySnapshot = {
      ...base,
      complete: true,
      cr: 1.58,
      consistent: false,
      worst_triad: {
        i: 1,
        j: 2,
        k: 3,
        deviation: 3.8,
        labels: ['NLP', 'Knowledge Reasoning', 'Intent Recognition'],
      },
    };
    const badge = badgeFromSnapshot(snap);
    expect(badge.state).toBe('fail');
    expect(badge.triad?.labels).toHaveLength(3);
  });
});

describe('renderBadge', () => {
  it('names all three implicated indicators on failure', () => {
    const html = renderBadge({
      state: 'fail',
      node: 'cognition',
      cr: 1.58,
      triad: {
        i: 1,
        j: 2,
        k: 3,
        deviation: 3.8,
        labels: ['NLP', 'Knowledge Reasoning', 'Intent Recognition'],
      },
    });
    expect(html).toContain('badge-fail');
    expect(html).toContain('NLP');
    expect(html).toContain('Knowledge Reasoning');
    expect(html).toContain('Intent Recognition');
  });

  it('renders a green badge for consistent matrices', () => {
    const html = renderBadge({ state: 'pass', node: 'cognition', cr: 0 });
    expect(html).toContain('badge-pass');
    expect(html).toContain('CR 0.0000');
  });
});

describe('triadPairs', () => {
  it('expands a triad into its three comparisons', () => {
    expect(triadPairs({ i: 1, j: 2, k: 4, deviation: 1 })).toEqual([
      [1, 2],
      [1, 4],
      [2, 4],
    ]);
  });
});
