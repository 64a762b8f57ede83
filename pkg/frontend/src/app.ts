/**
 * DOM wiring for the three-screen composer. All state transitions live
 * in ComposerController; this file only reads controller state into the
 * page and forwards user input back. Audio playback uses the native
 * <audio> element on a blob URL of the server's WAV bytes.
 */

import { ApiClient } from './api.js'
import { ComposerController, type ComposerState } from './controller.js'
import {
  buildRollRects,
  formatSeconds,
  rollSize,
  rowSummary,
  scoreSummary
} from './viewmodel.js'

const api = new ApiClient('')
const controller = new ComposerController(api)

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id)
  if (!node) throw new Error(`missing element #${id}`)
  return node as T
}

const screens = {
  entry: el<HTMLElement>('screen-entry'),
  processing: el<HTMLElement>('screen-processing'),
  rendering: el<HTMLElement>('screen-rendering')
}

const textInput = el<HTMLTextAreaElement>('text-input')
const errorBox = el<HTMLElement>('error-box')
const logList = el<HTMLOListElement>('log-list')
const rollBox = el<HTMLElement>('piano-roll')
const rowInfo = el<HTMLElement>('row-summary')
const scoreInfo = el<HTMLElement>('score-summary')
const voicesSelect = el<HTMLSelectElement>('voices-select')
const modeSelect = el<HTMLSelectElement>('mode-select')
const repeatsInput = el<HTMLInputElement>('repeats-input')
const instrumentSelect = el<HTMLSelectElement>('instrument-select')
const tickInput = el<HTMLInputElement>('tick-input')
const tickLabel = el<HTMLElement>('tick-label')
const player = el<HTMLAudioElement>('player')
const playStatus = el<HTMLElement>('play-status')
const csvLink = el<HTMLAnchorElement>('csv-link')
const csvAllLink = el<HTMLAnchorElement>('csv-all-link')
const wavLink = el<HTMLAnchorElement>('wav-link')

let audioUrl: string | null = null

function renderPianoRoll(state: ComposerState): void {
  rollBox.textContent = ''
  if (!state.session) return
  const notes = state.session.row.notes
  const size = rollSize(notes)
  rollBox.style.width = `${size.width}px`
  rollBox.style.height = `${size.height}px`
  for (const rect of buildRollRects(notes)) {
    const div = document.createElement('div')
    div.className = 'note'
    div.style.left = `${rect.x}px`
    div.style.top = `${rect.y}px`
    div.style.width = `${rect.width}px`
    div.style.height = `${rect.height}px`
    div.title = rect.title
    div.textContent = rect.letter
    const hz = document.createElement('span')
    hz.className = 'hz'
    hz.textContent = rect.frequencyLabel
    div.appendChild(hz)
    rollBox.appendChild(div)
  }
}

function render(state: ComposerState): void {
  for (const [name, section] of Object.entries(screens)) {
    section.hidden = name !== state.screen
  }
  errorBox.textContent = state.error ?? ''
  errorBox.hidden = !state.error
  document.body.classList.toggle('busy', state.busy)

  if (state.session) {
    logList.textContent = ''
    for (const line of state.session.log) {
      const item = document.createElement('li')
      item.textContent = line
      logList.appendChild(item)
    }
    renderPianoRoll(state)
    rowInfo.textContent = rowSummary(state.session.row)
    scoreInfo.textContent = scoreSummary(state.session.score)
    playStatus.textContent = `playback: ${formatSeconds(
      state.session.score.duration_seconds
    )}`
    voicesSelect.value = String(state.session.config.voices)
    modeSelect.value = state.session.config.mode
    repeatsInput.value = String(state.session.config.repeats)
    instrumentSelect.value = state.session.config.instrument
    tickInput.value = String(state.session.config.tick_seconds)
    tickLabel.textContent = `${state.session.config.tick_seconds.toFixed(4)} s/tick`
    const mono = controller.exportCsvPath(true)
    const all = controller.exportCsvPath(false)
    if (mono) csvLink.href = mono
    if (all) csvAllLink.href = all
  }

  if (state.audio) {
    if (audioUrl) URL.revokeObjectURL(audioUrl)
    audioUrl = URL.createObjectURL(new Blob([state.audio], { type: 'audio/wav' }))
    player.src = audioUrl
    player.hidden = false
    wavLink.href = audioUrl
    wavLink.hidden = false
  } else {
    player.hidden = true
    wavLink.hidden = true
  }
}

function currentOptions() {
  return {
    voices: Number(voicesSelect.value),
    mode: modeSelect.value as 'canon' | 'fugue',
    repeats: Number(repeatsInput.value),
    instrument: instrumentSelect.value,
    tick_seconds: Number(tickInput.value)
  }
}

el<HTMLFormElement>('entry-form').addEventListener('submit', (event) => {
  event.preventDefault()
  void controller.submitText(textInput.value)
})

el<HTMLButtonElement>('continue-button').addEventListener('click', () => {
  controller.continueToRendering()
})

for (const id of ['back-button-processing', 'back-button-rendering']) {
  el<HTMLButtonElement>(id).addEventListener('click', () => controller.back())
}

for (const input of [voicesSelect, modeSelect, repeatsInput, instrumentSelect, tickInput]) {
  input.addEventListener('change', () => {
    void controller.applyOptions(currentOptions())
  })
}

el<HTMLButtonElement>('render-button').addEventListener('click', () => {
  void controller.renderAudio().then((audio) => {
    if (audio) void player.play().catch(() => undefined)
  })
})

controller.subscribe(render)
render(controller.getState())
textInput.focus()
