/**
 * Pure display mapping: API payloads in, strings and layout rectangles
 * out. No pitch or rhythm math happens here — every number shown comes
 * straight from a server response; this module only formats and places.
 */

import type { Row, RowNote, ScoreSummary } from './api.js'

export const PX_PER_TICK = 24
export const LANE_HEIGHT = 18
export const LANE_GAP = 2

export function formatHz(hz: number): string {
  return `${hz.toFixed(2)} Hz`
}

export function formatSeconds(seconds: number): string {
  return `${seconds.toFixed(2)} s`
}

export function formatTicks(ticks: number): string {
  return ticks === 1 ? '1 tick' : `${ticks} ticks`
}

export interface RollRect {
  x: number
  y: number
  width: number
  height: number
  letter: string
  frequencyLabel: string
  title: string
}

/** Start tick of each row note: a running sum of the previous durations. */
export function rowStartTicks(notes: RowNote[]): number[] {
  const starts: number[] = []
  let tick = 0
  for (const note of notes) {
    starts.push(tick)
    tick += note.duration_ticks
  }
  return starts
}

/**
 * Piano-roll rectangles for the tone row: one lane per distinct
 * frequency (highest on top), width strictly proportional to the note's
 * duration in ticks.
 */
export function buildRollRects(
  notes: RowNote[],
  pxPerTick: number = PX_PER_TICK
): RollRect[] {
  const lanes = [...new Set(notes.map((n) => n.frequency_hz))].sort(
    (a, b) => b - a
  )
  const laneOf = new Map(lanes.map((hz, i) => [hz, i]))
  const starts = rowStartTicks(notes)
  return notes.map((note, i) => ({
    x: starts[i] * pxPerTick,
    y: laneOf.get(note.frequency_hz)! * (LANE_HEIGHT + LANE_GAP),
    width: note.duration_ticks * pxPerTick,
    height: LANE_HEIGHT,
    letter: note.letter,
    frequencyLabel: formatHz(note.frequency_hz),
    title: `${note.letter} · ${formatHz(note.frequency_hz)} · ${formatTicks(
      note.duration_ticks
    )}`
  }))
}

export function rollSize(
  notes: RowNote[],
  pxPerTick: number = PX_PER_TICK
): { width: number; height: number } {
  const rects = buildRollRects(notes, pxPerTick)
  return {
    width: Math.max(0, ...rects.map((r) => r.x + r.width)),
    height: Math.max(0, ...rects.map((r) => r.y + r.height))
  }
}

export function rowSummary(row: Row): string {
  return (
    `${row.length} notes · ${row.vowel_count} vowels / ` +
    `${row.consonant_count} consonants · ${row.block_count} block(s) · ` +
    `${formatTicks(row.total_ticks)}`
  )
}

export function scoreSummary(score: ScoreSummary): string {
  return (
    `${score.voices} voice(s) · ${score.mode} · ${score.repeats} repeat(s) · ` +
    `measure ${formatTicks(score.measure_ticks)} · ` +
    `${formatTicks(score.total_ticks)} total · ` +
    `${formatSeconds(score.duration_seconds)}`
  )
}
