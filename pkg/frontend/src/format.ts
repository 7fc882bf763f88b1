/** Scores are displayed to two decimals everywhere in the UI. */
export function formatScore(score: number): string {
  return score.toFixed(2);
}

export function formatWeight(weight: number): string {
  return weight.toFixed(3);
}

export function formatPercent(fraction: number): string {
  return `${(fraction * 100).toFixed(1)}%`;
}
