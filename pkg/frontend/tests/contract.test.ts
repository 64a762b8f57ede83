/**
 * Contract tests against recorded API fixtures: everything the UI would
 * display must equal the value the service sent, with no recomputation.
 * Fixtures were captured from a live service by scripts/record-fixtures.mjs.
 */

import { readFileSync } from 'node:fs'
import { describe, expect, it } from 'vitest'

import { ApiClient, type FetchLike, type Session, type ScoreUpdate } from '../src/api.js'
import { ComposerController } from '../src/controller.js'
import {
  buildRollRects,
  formatHz,
  formatSeconds,
  rowSummary,
  scoreSummary
} from '../src/viewmodel.js'

function fixture<T>(name: string): T {
  const url = new URL(`./fixtures/${name}.json`, import.meta.url)
  return JSON.parse(readFileSync(url, 'utf-8')) as T
}

const sessionFixture = fixture<Session>('session_create')
const updateFixture = fixture<ScoreUpdate>('config_update')
const errorFixture = fixture<{ status: number; body: { code: string; message: string } }>(
  'error_empty_input'
)

type Route = (init?: RequestInit) => Response

function stubFetch(routes: Record<string, Route>): FetchLike {
  return async (input, init) => {
    const key = `${init?.method ?? 'GET'} ${input}`
    const route = routes[key]
    if (!route) throw new Error(`unexpected request: ${key}`)
    return route(init)
  }
}

const json = (payload: unknown, status = 200): Response =>
  new Response(JSON.stringify(payload), {
    status,
    headers: { 'Content-Type': 'application/json' }
  })

function makeController(routes: Record<string, Route>) {
  return new ComposerController(new ApiClient('', stubFetch(routes)))
}

describe('displayed values equal the API values', () => {
  it('every piano-roll width is the API duration, scaled only', () => {
    const notes = sessionFixture.row.notes
    const rects = buildRollRects(notes, 10)
    expect(rects).toHaveLength(notes.length)
    notes.forEach((note, i) => {
      expect(rects[i].width / 10).toBe(note.duration_ticks)
    })
  })

  it('every piano-roll frequency label is the API frequency at 2 decimals', () => {
    const notes = sessionFixture.row.notes
    const rects = buildRollRects(notes, 10)
    notes.forEach((note, i) => {
      expect(rects[i].frequencyLabel).toBe(`${note.frequency_hz.toFixed(2)} Hz`)
      expect(rects[i].letter).toBe(note.letter)
    })
  })

  it('roll frequencies also appear verbatim in the server log lines', () => {
    sessionFixture.row.notes.forEach((note, i) => {
      expect(sessionFixture.log[i]).toContain(formatHz(note.frequency_hz))
      expect(sessionFixture.log[i]).toContain(`note ${i + 1}: ${note.letter}`)
    })
  })

  it('playback duration comes straight from score.duration_seconds', () => {
    const shown = formatSeconds(sessionFixture.score.duration_seconds)
    expect(shown).toBe(`${sessionFixture.score.duration_seconds.toFixed(2)} s`)
    expect(scoreSummary(sessionFixture.score)).toContain(shown)
    expect(scoreSummary(sessionFixture.score)).toContain(
      `${sessionFixture.score.total_ticks} ticks total`
    )
  })

  it('row summary shows the API tallies unchanged', () => {
    const row = sessionFixture.row
    const shown = rowSummary(row)
    expect(shown).toContain(`${row.length} notes`)
    expect(shown).toContain(`${row.vowel_count} vowels`)
    expect(shown).toContain(`${row.consonant_count} consonants`)
    expect(shown).toContain(`${row.total_ticks} ticks`)
  })

  it('log line count satisfies the documented invariant', () => {
    expect(sessionFixture.log).toHaveLength(
      sessionFixture.row.length + sessionFixture.block_count + 2
    )
  })

  it('voices 1→3 grew the recorded score by exactly two measures', () => {
    expect(updateFixture.score.voices).toBe(3)
    expect(updateFixture.score.total_ticks).toBe(
      sessionFixture.score.total_ticks + 2 * updateFixture.score.measure_ticks
    )
  })
})

describe('three-screen controller against fixtures', () => {
  it('entry → processing keeps the server log verbatim', async () => {
    const controller = makeController({
      'POST /api/sessions': () => json(sessionFixture, 201)
    })
    await controller.submitText('MUSIC IS MATHEMATICS')
    const state = controller.getState()
    expect(state.screen).toBe('processing')
    expect(state.session?.log).toEqual(sessionFixture.log)
    expect(state.session?.row).toEqual(sessionFixture.row)
    expect(state.error).toBeNull()
  })

  it('empty text shows the server message inline and stays on entry', async () => {
    const controller = makeController({
      'POST /api/sessions': () => json(errorFixture.body, errorFixture.status)
    })
    await controller.submitText('123 !?')
    const state = controller.getState()
    expect(state.screen).toBe('entry')
    expect(state.session).toBeNull()
    expect(state.error).toContain(errorFixture.body.code)
  })

  it('option change swaps in the server score unmodified', async () => {
    const controller = makeController({
      'POST /api/sessions': () => json(sessionFixture, 201),
      [`PUT /api/sessions/${sessionFixture.id}/config`]: () => json(updateFixture)
    })
    await controller.submitText('MUSIC IS MATHEMATICS')
    controller.continueToRendering()
    const update = await controller.applyOptions({ voices: 3, mode: 'fugue' })
    expect(update?.score).toEqual(updateFixture.score)
    const state = controller.getState()
    expect(state.screen).toBe('rendering')
    expect(state.session?.score).toEqual(updateFixture.score)
    expect(state.session?.config).toEqual(updateFixture.config)
  })

  it('an option change aborts an in-flight render without surfacing an error', async () => {
    let renderCalls = 0
    // hand-rolled fetch: render hangs until its signal aborts
    const fetchImpl: FetchLike = (input, init) => {
      const key = `${init?.method ?? 'GET'} ${input}`
      if (key === 'POST /api/sessions') {
        return Promise.resolve(json(sessionFixture, 201))
      }
      if (key === `PUT /api/sessions/${sessionFixture.id}/config`) {
        return Promise.resolve(json(updateFixture))
      }
      if (key === `POST /api/sessions/${sessionFixture.id}/render`) {
        renderCalls += 1
        return new Promise((_resolve, reject) => {
          init?.signal?.addEventListener('abort', () =>
            reject(new DOMException('render aborted', 'AbortError'))
          )
        })
      }
      return Promise.reject(new Error(`unexpected request: ${key}`))
    }
    const controller = new ComposerController(new ApiClient('', fetchImpl))
    await controller.submitText('MUSIC IS MATHEMATICS')
    const pending = controller.renderAudio()
    const update = await controller.applyOptions({ voices: 2 })
    expect(update).not.toBeNull()
    expect(await pending).toBeNull()
    const state = controller.getState()
    expect(state.error).toBeNull()
    expect(state.audio).toBeNull()
    expect(renderCalls).toBe(1)
  })

  it('back returns to entry for another round', async () => {
    const controller = makeController({
      'POST /api/sessions': () => json(sessionFixture, 201)
    })
    await controller.submitText('MUSIC IS MATHEMATICS')
    controller.continueToRendering()
    controller.back()
    expect(controller.getState().screen).toBe('entry')
  })
})
