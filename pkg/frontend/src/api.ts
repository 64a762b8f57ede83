/**
 * Typed client for the composer HTTP API. This is the only place the UI
 * touches the network; every number the UI displays originates from one
 * of these response types.
 */

export interface RowNote {
  letter: string
  pitch_index: number
  octave: number
  duration_ticks: number
  frequency_hz: number
}

export interface Row {
  length: number
  vowel_count: number
  consonant_count: number
  block_count: number
  total_ticks: number
  notes: RowNote[]
}

export interface ScoreSummary {
  voices: number
  mode: string
  repeats: number
  measure_ticks: number
  total_ticks: number
  event_count: number
  duration_seconds: number
}

export interface SessionConfig {
  voices: number
  mode: string
  repeats: number
  instrument: string
  tick_seconds: number
}

export interface NoteEvent {
  voice: number
  start_tick: number
  duration_ticks: number
  frequency_hz: number
  pitch_index: number
  octave: number
  letter: string
  block: number
}

export interface Session {
  id: string
  created_at: string
  text: string
  block_count: number
  log: string[]
  row: Row
  score: ScoreSummary
  config: SessionConfig
}

export interface SessionDetail extends Session {
  events: NoteEvent[]
}

export interface ScoreUpdate {
  id: string
  score: ScoreSummary
  config: SessionConfig
}

export interface ConfigPatch {
  voices?: number
  mode?: 'canon' | 'fugue'
  repeats?: number
  instrument?: string
  tick_seconds?: number
}

/** Structured error body the service returns for every 4xx. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string
  ) {
    super(message)
    this.name = 'ApiError'
  }
}

export type FetchLike = (
  input: string,
  init?: RequestInit
) => Promise<Response>

async function throwApiError(response: Response): Promise<never> {
  let code = 'unknown_error'
  let message = `${response.status} ${response.statusText}`
  try {
    const body = (await response.json()) as { code?: string; message?: string }
    if (body.code) code = body.code
    if (body.message) message = body.message
  } catch {
    // non-JSON error body; keep the status line
  }
  throw new ApiError(response.status, code, message)
}

export class ApiClient {
  constructor(
    readonly baseUrl: string = '',
    private readonly fetchImpl: FetchLike = (input, init) =>
      globalThis.fetch(input, init)
  ) {}

  private async requestJson<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, init)
    if (!response.ok) await throwApiError(response)
    return (await response.json()) as T
  }

  health(): Promise<{ status: string }> {
    return this.requestJson('/api/health')
  }

  createSession(text: string): Promise<Session> {
    return this.requestJson('/api/sessions', {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ text })
    })
  }

  getSession(id: string): Promise<SessionDetail> {
    return this.requestJson(`/api/sessions/${id}`)
  }

  updateConfig(id: string, patch: ConfigPatch): Promise<ScoreUpdate> {
    return this.requestJson(`/api/sessions/${id}/config`, {
      method: 'PUT',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(patch)
    })
  }

  async render(id: string, signal?: AbortSignal): Promise<ArrayBuffer> {
    const response = await this.fetchImpl(
      `${this.baseUrl}/api/sessions/${id}/render`,
      { method: 'POST', signal }
    )
    if (!response.ok) await throwApiError(response)
    return response.arrayBuffer()
  }

  async exportCsv(id: string, monophonic = true): Promise<string> {
    const response = await this.fetchImpl(this.exportCsvPath(id, monophonic))
    if (!response.ok) await throwApiError(response)
    return response.text()
  }

  exportCsvPath(id: string, monophonic = true): string {
    return `${this.baseUrl}/api/sessions/${id}/export.csv?monophonic=${monophonic}`
  }
}
