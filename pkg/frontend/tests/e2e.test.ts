/**
 * End-to-end: spawn the real Python service and drive the full
 * entry → processing → rendering → back loop through the controller,
 * exactly as the browser UI would.
 */

import { type ChildProcess, spawn } from 'node:child_process'
import { mkdtempSync } from 'node:fs'
import { createServer } from 'node:net'
import { tmpdir } from 'node:os'
import { join } from 'node:path'
import { afterAll, beforeAll, describe, expect, it } from 'vitest'

import { ApiClient } from '../src/api.js'
import { ComposerController } from '../src/controller.js'

const SAMPLE_RATE = 44100
const WAV_HEADER_BYTES = 44

let server: ChildProcess
let api: ApiClient
let base: string

function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const probe = createServer()
    probe.once('error', reject)
    probe.listen(0, '127.0.0.1', () => {
      const address = probe.address()
      if (address === null || typeof address === 'string') {
        reject(new Error('no port assigned'))
        return
      }
      probe.close(() => resolve(address.port))
    })
  })
}

async function waitForHealth(url: string, timeoutMs = 30_000): Promise<void> {
  const deadline = Date.now() + timeoutMs
  for (;;) {
    try {
      const response = await fetch(`${url}/api/health`)
      if (response.ok) return
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) {
      throw new Error(`service at ${url} did not come up in ${timeoutMs} ms`)
    }
    await new Promise((r) => setTimeout(r, 250))
  }
}

function expectedWavBytes(totalTicks: number, tickSeconds: number): number {
  return WAV_HEADER_BYTES + 2 * Math.ceil(totalTicks * tickSeconds * SAMPLE_RATE)
}

beforeAll(async () => {
  const port = await freePort()
  const samplesDir = mkdtempSync(join(tmpdir(), 'composer-ui-samples-'))
  server = spawn(
    'python3',
    ['-m', 'padberg.cli', 'serve', '--port', String(port), '--samples-dir', samplesDir],
    { stdio: 'ignore' }
  )
  base = `http://127.0.0.1:${port}`
  api = new ApiClient(base)
  await waitForHealth(base)
}, 40_000)

afterAll(() => {
  server?.kill('SIGTERM')
})

describe('three-screen loop against the live service', () => {
  it('completes entry → processing → rendering → back, re-rendering on the way', async () => {
    const controller = new ComposerController(api)

    // entry
    await controller.submitText('MUSIC IS MATHEMATICS')
    let state = controller.getState()
    expect(state.screen).toBe('processing')
    expect(state.error).toBeNull()
    const session = state.session!
    expect(session.log).toHaveLength(session.row.length + session.block_count + 2)

    // processing → rendering
    controller.continueToRendering()
    expect(controller.getState().screen).toBe('rendering')

    // first render at the default single voice
    const ticksBefore = session.score.total_ticks
    const tick = session.config.tick_seconds
    const audio1 = await controller.renderAudio()
    expect(audio1).not.toBeNull()
    expect(audio1!.byteLength).toBe(expectedWavBytes(ticksBefore, tick))

    // voices 1 → 3: the score grows by exactly two measures of ticks
    const update = await controller.applyOptions({ voices: 3 })
    expect(update).not.toBeNull()
    expect(update!.score.total_ticks).toBe(
      ticksBefore + 2 * update!.score.measure_ticks
    )

    // re-render reflects the longer score
    const audio3 = await controller.renderAudio()
    expect(audio3).not.toBeNull()
    expect(audio3!.byteLength).toBe(
      expectedWavBytes(update!.score.total_ticks, tick)
    )
    expect(audio3!.byteLength).toBeGreaterThan(audio1!.byteLength)

    // back to entry, a new submission replaces the session
    controller.back()
    expect(controller.getState().screen).toBe('entry')
    await controller.submitText('so deep is the night')
    state = controller.getState()
    expect(state.screen).toBe('processing')
    expect(state.session!.id).not.toBe(session.id)
  }, 60_000)

  it('keeps the CSV identical when only the instrument changes', async () => {
    const controller = new ComposerController(api)
    await controller.submitText('Ave Maria')
    const id = controller.getState().session!.id
    const before = await api.exportCsv(id, false)
    const update = await controller.applyOptions({ instrument: 'sample:one' })
    expect(update?.config.instrument).toBe('sample:one')
    const after = await api.exportCsv(id, false)
    expect(after).toBe(before)
    expect(before.split('\n')[0]).toBe(
      'voice,start_tick,duration_ticks,frequency_hz,pitch_index,octave,letter,block'
    )
  }, 30_000)

  it('surfaces the structured error for empty text without leaving entry', async () => {
    const controller = new ComposerController(api)
    await controller.submitText('12345 !?')
    const state = controller.getState()
    expect(state.screen).toBe('entry')
    expect(state.error).toContain('empty_input')
  }, 30_000)
})
