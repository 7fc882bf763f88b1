export { ApiClient, ServiceError } from './api';
export { badgeFromSnapshot, renderBadge, triadPairs } from './badge';
export { Dashboard, renderDashboard } from './dashboard';
export { formatPercent, formatScore, formatWeight } from './format';
export { RatingGrid } from './grid';
export { buildQueue, pairCount } from './queue';
export { CRISP_TICKS, FUZZY_TICKS, labelFor, snapToTick, ticksFor } from './scale';
export { ComparisonWizard } from './wizard';
export * from './types';
