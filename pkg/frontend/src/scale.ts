import type { Scale } from './types';

export interface ScaleTick {
  value: number;
  label: string;
}

// Discrete snap control: experts pick ticks, never free-type values, so
// out-of-scale entries cannot be produced in the first place.

export const FUZZY_TICKS: ScaleTick[] = [
  { value: 0.1, label: 'Opposite: extremely important' },
  { value: 0.2, label: 'Opposite: significantly more important' },
  { value: 0.3, label: 'Opposite: more important' },
  { value: 0.4, label: 'Opposite: slightly more important' },
  { value: 0.5, label: 'Equally important' },
  { value: 0.6, label: 'Slightly more important' },
  { value: 0.7, label: 'More important' },
  { value: 0.8, label: 'Significantly more important' },
  { value: 0.9, label: 'Extremely important' },
];

const CRISP_STATEMENTS: Record<number, string> = {
  1: 'Two factors contribute equally to the objective',
  3: 'One factor is moderately important than the other',
  5: 'One factor is strongly important than the other',
  7: 'One factor is very strongly important than the other',
  9: 'One factor is extremely important than the other',
};

function crispLabel(level: number, reciprocal: boolean): string {
  const base =
    CRISP_STATEMENTS[level] ??
    `Intermediate importance between ${level - 1} and ${level + 1}`;
  return reciprocal ? `Opposite: ${base.toLowerCase()}` : base;
}

export const CRISP_TICKS: ScaleTick[] = [
  ...[9, 8, 7, 6, 5, 4, 3, 2]
    .map((level) => ({ value: 1 / level, label: crispLabel(level, true) })),
  { value: 1, label: crispLabel(1, false) },
  ...[2, 3, 4, 5, 6, 7, 8, 9]
    .map((level) => ({ value: level, label: crispLabel(level, false) })),
];

export function ticksFor(scale: Scale): ScaleTick[] {
  return scale === 'crisp_1_9' ? CRISP_TICKS : FUZZY_TICKS;
}

/** Nearest tick to a raw slider position; the control can only emit ticks. */
export function snapToTick(scale: Scale, raw: number): ScaleTick {
  const ticks = ticksFor(scale);
  let best = ticks[0];
  for (const tick of ticks) {
    if (Math.abs(tick.value - raw) < Math.abs(best.value - raw)) {
      best = tick;
    }
  }
  return best;
}

export function labelFor(scale: Scale, value: number): string {
  const tick = ticksFor(scale).find((t) => Math.abs(t.value - value) < 1e-9);
  if (!tick) {
    throw new Error(`value ${value} is not a tick on the ${scale} scale`);
  }
  return tick.label;
}
