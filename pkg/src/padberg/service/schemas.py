"""Pydantic request/response models for the composer HTTP API."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel

from ..exchange import ComposeConfig
from ..melodygen import Score, ToneRow
from ..pipeline import Composition


class SessionCreateRequest(BaseModel):
    text: str


class ConfigUpdateRequest(BaseModel):
    """Partial update; omitted fields keep their current values."""

    voices: int | None = None
    mode: Literal["canon", "fugue"] | None = None
    repeats: int | None = None
    instrument: str | None = None
    tick_seconds: float | None = None


class RowNoteOut(BaseModel):
    letter: str
    pitch_index: int
    octave: int
    duration_ticks: int
    frequency_hz: float


class RowOut(BaseModel):
    length: int
    vowel_count: int
    consonant_count: int
    block_count: int
    total_ticks: int
    notes: list[RowNoteOut]


class ScoreOut(BaseModel):
    voices: int
    mode: str
    repeats: int
    measure_ticks: int
    total_ticks: int
    event_count: int
    duration_seconds: float


class ConfigOut(BaseModel):
    voices: int
    mode: str
    repeats: int
    instrument: str
    tick_seconds: float


class EventOut(BaseModel):
    voice: int
    start_tick: int
    duration_ticks: int
    frequency_hz: float
    pitch_index: int
    octave: int
    letter: str
    block: int


class SessionOut(BaseModel):
    id: str
    created_at: str
    text: str
    block_count: int
    log: list[str]
    row: RowOut
    score: ScoreOut
    config: ConfigOut


class SessionDetailOut(SessionOut):
    events: list[EventOut]


class ScoreUpdateOut(BaseModel):
    id: str
    score: ScoreOut
    config: ConfigOut


class HealthOut(BaseModel):
    status: str


class ErrorOut(BaseModel):
    code: str
    message: str


def row_to_schema(row: ToneRow) -> RowOut:
    return RowOut(
        length=row.length,
        vowel_count=row.vowel_count,
        consonant_count=row.consonant_count,
        block_count=row.block_count,
        total_ticks=row.total_ticks,
        notes=[
            RowNoteOut(
                letter=note.source.letter,
                pitch_index=note.pitch_index,
                octave=note.octave_displacement,
                duration_ticks=note.duration_ticks,
                frequency_hz=note.frequency_hz,
            )
            for note in row.notes
        ],
    )


def score_to_schema(score: Score, tick_seconds: float) -> ScoreOut:
    return ScoreOut(
        voices=score.voices,
        mode=score.mode,
        repeats=score.repeats,
        measure_ticks=score.measure_ticks,
        total_ticks=score.total_ticks,
        event_count=len(score.events),
        duration_seconds=score.total_ticks * tick_seconds,
    )


def config_to_schema(config: ComposeConfig) -> ConfigOut:
    return ConfigOut(
        voices=config.voices,
        mode=config.mode,
        repeats=config.repeats,
        instrument=config.render.instrument,
        tick_seconds=config.render.tick_seconds,
    )


def events_to_schema(composition: Composition) -> list[EventOut]:
    return [
        EventOut(
            voice=ev.voice,
            start_tick=ev.start_tick,
            duration_ticks=ev.duration_ticks,
            frequency_hz=ev.frequency_hz,
            pitch_index=ev.pitch_index,
            octave=ev.octave_displacement,
            letter=ev.letter,
            block=ev.block,
        )
        for ev in composition.score.events
    ]
