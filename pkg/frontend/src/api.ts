import type {
  ConsistencySnapshot,
  ExportedSession,
  MissingItem,
  Report,
  ResultsResponse,
  SessionView,
} from './types';

export class ServiceError extends Error {
  constructor(
    public readonly status: number,
    public readonly error: string,
    public readonly detail: unknown,
  ) {
    super(`${error}: ${JSON.stringify(detail)}`);
  }
}

export interface ResultsQuery {
  method?: string;
  theta?: number;
}

/** Thin typed wrapper over the session service HTTP API. */
export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: typeof fetch = fetch,
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const resp = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method,
      headers: body === undefined ? {} : { 'content-type': 'application/json' },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await resp.json();
    if (!resp.ok) {
      throw new ServiceError(resp.status, payload.error ?? 'unknown', payload.detail);
    }
    return payload as T;
  }

  createSession(body: {
    hierarchy: unknown;
    scale: string;
    evaluation_set: unknown[];
    experts: string[];
    environment?: unknown;
  }): Promise<{ session_id: string; revision: number }> {
    return this.request('POST', '/sessions', body);
  }

  getSession(sessionId: string): Promise<SessionView> {
    return this.request('GET', `/sessions/${sessionId}`);
  }

  putJudgment(
    sessionId: string,
    expertId: string,
    nodeId: string,
    i: number,
    j: number,
    value: number,
  ): Promise<{ revision: number; snapshot: ConsistencySnapshot }> {
    return this.request(
      'PUT',
      `/sessions/${sessionId}/experts/${expertId}/judgments/${nodeId}`,
      { i, j, value },
    );
  }

  putRating(
    sessionId: string,
    expertId: string,
    leafId: string,
    grade: number,
  ): Promise<{ revision: number }> {
    return this.request(
      'PUT',
      `/sessions/${sessionId}/experts/${expertId}/ratings/${leafId}`,
      { grade },
    );
  }

  getConsistency(
    sessionId: string,
    expert: string,
    node: string,
  ): Promise<ConsistencySnapshot> {
    const q = new URLSearchParams({ expert, node });
    return this.request('GET', `/sessions/${sessionId}/consistency?${q}`);
  }

  async getResults(sessionId: string, query: ResultsQuery = {}): Promise<ResultsResponse> {
    const q = new URLSearchParams();
    if (query.method) q.set('method', query.method);
    if (query.theta !== undefined) q.set('theta', String(query.theta));
    const suffix = q.size > 0 ? `?${q}` : '';
    try {
      const report = await this.request<Report>(
        'GET',
        `/sessions/${sessionId}/results${suffix}`,
      );
      return { status: 'complete', report };
    } catch (err) {
      if (err instanceof ServiceError && err.status === 409) {
        return { status: 'incomplete', missing: err.detail as MissingItem[] };
      }
      throw err;
    }
  }

  getExport(sessionId: string): Promise<ExportedSession> {
    return this.request('GET', `/sessions/${sessionId}/export`);
  }
}
