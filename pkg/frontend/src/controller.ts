/**
 * DOM-free state machine for the three-screen composer flow:
 * entry (type text) → processing (log + piano roll) → rendering
 * (options + playback + export) → back to entry.
 *
 * The controller owns the server session and never recomputes pipeline
 * results: its state is always the last API response. An in-flight
 * render is aborted whenever options change underneath it.
 */

import {
  ApiClient,
  ApiError,
  type ConfigPatch,
  type Session,
  type ScoreUpdate
} from './api.js'

export type Screen = 'entry' | 'processing' | 'rendering'

export interface ComposerState {
  screen: Screen
  textDraft: string
  session: Session | null
  error: string | null
  busy: boolean
  /** bytes of the last successful render, null until one completes */
  audio: ArrayBuffer | null
}

type Listener = (state: ComposerState) => void

export class ComposerController {
  private state: ComposerState = {
    screen: 'entry',
    textDraft: '',
    session: null,
    error: null,
    busy: false,
    audio: null
  }

  private listeners: Listener[] = []
  private renderAbort: AbortController | null = null

  constructor(private readonly api: ApiClient) {}

  getState(): ComposerState {
    return this.state
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener)
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener)
    }
  }

  private setState(patch: Partial<ComposerState>): void {
    this.state = { ...this.state, ...patch }
    for (const listener of this.listeners) listener(this.state)
  }

  setTextDraft(text: string): void {
    this.setState({ textDraft: text })
  }

  /** Entry screen: submit text, creating (or replacing) the session. */
  async submitText(text?: string): Promise<void> {
    const draft = text ?? this.state.textDraft
    this.setState({ textDraft: draft, busy: true, error: null })
    try {
      const session = await this.api.createSession(draft)
      this.setState({
        session,
        screen: 'processing',
        busy: false,
        audio: null
      })
    } catch (err) {
      this.setState({ busy: false, error: this.describe(err) })
    }
  }

  /** Processing screen: advance to the rendering options. */
  continueToRendering(): void {
    if (this.state.session) this.setState({ screen: 'rendering' })
  }

  /** Any screen: return to text entry for another what-if round. */
  back(): void {
    this.cancelRender()
    this.setState({ screen: 'entry', error: null })
  }

  /**
   * Rendering screen: apply a config change. Cancels any render still
   * in flight, since its audio would no longer match the options.
   */
  async applyOptions(patch: ConfigPatch): Promise<ScoreUpdate | null> {
    const session = this.state.session
    if (!session) return null
    this.cancelRender()
    this.setState({ busy: true, error: null })
    try {
      const update = await this.api.updateConfig(session.id, patch)
      this.setState({
        session: { ...session, score: update.score, config: update.config },
        busy: false,
        audio: null
      })
      return update
    } catch (err) {
      this.setState({ busy: false, error: this.describe(err) })
      return null
    }
  }

  /** Rendering screen: fetch WAV bytes for the current options. */
  async renderAudio(): Promise<ArrayBuffer | null> {
    const session = this.state.session
    if (!session) return null
    this.cancelRender()
    const abort = new AbortController()
    this.renderAbort = abort
    this.setState({ busy: true, error: null })
    try {
      const audio = await this.api.render(session.id, abort.signal)
      if (abort.signal.aborted) return null
      this.setState({ audio, busy: false })
      return audio
    } catch (err) {
      if (abort.signal.aborted) return null
      this.setState({ busy: false, error: this.describe(err) })
      return null
    } finally {
      if (this.renderAbort === abort) this.renderAbort = null
    }
  }

  cancelRender(): void {
    if (this.renderAbort) {
      this.renderAbort.abort()
      this.renderAbort = null
    }
  }

  refreshSession(): Promise<void> {
    const session = this.state.session
    if (!session) return Promise.resolve()
    return this.api.getSession(session.id).then(
      (detail) => this.setState({ session: detail }),
      (err) => {
        // a vanished session sends the user back to the entry screen
        if (err instanceof ApiError && err.status === 404) {
          this.setState({ session: null, screen: 'entry', error: this.describe(err) })
        } else {
          this.setState({ error: this.describe(err) })
        }
      }
    )
  }

  exportCsvPath(monophonic = true): string | null {
    const session = this.state.session
    return session ? this.api.exportCsvPath(session.id, monophonic) : null
  }

  private describe(err: unknown): string {
    if (err instanceof ApiError) return `${err.code}: ${err.message}`
    return err instanceof Error ? err.message : String(err)
  }
}
