"""Letter-to-pitch mapping, tone-row derivation, and canon/fugue assembly.

The pitch table holds partials 24 through 47 of the overtone series on a
440/24 Hz fundamental: 24 arithmetically spaced frequencies filling the
octave below 880 Hz, one per letter row of the alphabet mapping. Pitches
are kept as exact rationals; they only become floats inside note events.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Sequence

from .textparse import BlockSet, LetterEvent, NormalizedText

TABLE_SIZE = 24
FIRST_PARTIAL = 24
STEP_HZ = Fraction(440, FIRST_PARTIAL)
PITCH_TABLE: tuple[Fraction, ...] = tuple(
    STEP_HZ * (FIRST_PARTIAL + i) for i in range(TABLE_SIZE)
)

MAX_ROW_LENGTH = 24
VOWEL_TICKS = 2
CONSONANT_TICKS = 1

# Interval-class 11 generates the full 24-class cycle (the "fourth" of the
# 24-class system); fugue voice v is transposed by 11*v steps.
FUGUE_GENERATOR = 11

Mode = Literal["canon", "fugue"]
MODES = ("canon", "fugue")


class NonLetterError(ValueError):
    """Character outside A-Z reached the pitch mapper."""


class InvalidVoicesError(ValueError):
    """Voice count outside the supported 1..3 range."""


def _build_letter_index() -> dict[str, int]:
    index = {letter: i for i, letter in enumerate("ABCDEFGHIJKLMNOPQRSTU")}
    index["V"] = 21
    index["W"] = 21  # shares V's frequency
    index["X"] = 22
    index["Z"] = 23
    return index


_LETTER_INDEX = _build_letter_index()


def letter_to_index(letter: str, y_seen_before: bool = False) -> int:
    """Map an uppercase letter to its pitch-table index.

    Y borrows I's row on its first appearance and Z's row afterwards, so
    callers must say whether a Y has already been seen.
    """
    if letter == "Y":
        return _LETTER_INDEX["Z"] if y_seen_before else _LETTER_INDEX["I"]
    try:
        return _LETTER_INDEX[letter]
    except KeyError:
        raise NonLetterError(f"not an uppercase letter: {letter!r}") from None


def pitch_frequency(pitch_index: int, octave_displacement: int = 0) -> float:
    """Frequency in Hz of a table entry shifted by whole octaves."""
    return float(PITCH_TABLE[pitch_index]) * 2.0**octave_displacement


@dataclass(frozen=True)
class RowNote:
    pitch_index: int
    octave_displacement: int
    duration_ticks: int
    source: LetterEvent

    @property
    def frequency_hz(self) -> float:
        return pitch_frequency(self.pitch_index, self.octave_displacement)


@dataclass(frozen=True)
class ToneRow:
    """Melody seed: every (pitch, octave) pair in it is unique."""

    notes: tuple[RowNote, ...]
    length: int
    vowel_count: int
    consonant_count: int
    block_count: int

    @property
    def total_ticks(self) -> int:
        return sum(note.duration_ticks for note in self.notes)


@dataclass(frozen=True)
class NoteEvent:
    voice: int
    start_tick: int
    duration_ticks: int
    frequency_hz: float
    pitch_index: int
    octave_displacement: int
    letter: str
    block: int

    @property
    def end_tick(self) -> int:
        return self.start_tick + self.duration_ticks


@dataclass(frozen=True)
class Score:
    voices: int
    mode: Mode
    measure_ticks: int
    events: tuple[NoteEvent, ...]
    repeats: int

    @property
    def total_ticks(self) -> int:
        return max((ev.end_tick for ev in self.events), default=0)

    def voice_events(self, voice: int) -> tuple[NoteEvent, ...]:
        return tuple(ev for ev in self.events if ev.voice == voice)


def displace_repeats(indices: Sequence[int]) -> tuple[int, ...]:
    """Octave displacement per note so repeated pitch indices stay unique.

    The k-th occurrence of an index lands at 0, +1, -1, +2, -2, ... for
    k = 1, 2, 3, 4, 5, ...: even repetition counts go up, odd go down.
    """
    seen: dict[int, int] = {}
    displacements: list[int] = []
    for index in indices:
        k = seen.get(index, 0) + 1
        seen[index] = k
        if k == 1:
            displacements.append(0)
        elif k % 2 == 0:
            displacements.append(k // 2)
        else:
            displacements.append(-((k - 1) // 2))
    return tuple(displacements)


def derive_rhythm(letters: Sequence[LetterEvent]) -> tuple[int, ...]:
    """Tick duration per row letter.

    Vowels get 2 ticks and consonants 1. When the row length is coprime
    with its vowel count, the last note of every block gains a tick; when
    it is coprime with its block count, the final note gains another.
    """
    durations = [
        VOWEL_TICKS if ev.is_vowel else CONSONANT_TICKS for ev in letters
    ]
    length = len(letters)
    vowel_count = sum(1 for ev in letters if ev.is_vowel)
    block_last = {ev.block: i for i, ev in enumerate(letters)}
    if math.gcd(length, vowel_count) == 1:
        for i in block_last.values():
            durations[i] += 1
    if math.gcd(length, len(block_last)) == 1:
        durations[-1] += 1
    return tuple(durations)


def build_tone_row(block_set: BlockSet, normalized: NormalizedText) -> ToneRow:
    """Derive the tone row from the leading blocks of the text.

    Takes the longest prefix of whole blocks totalling at most 24 letters;
    if the first block alone is bigger, its first 24 letters stand in.
    """
    total = 0
    block_count = 0
    for block in block_set.blocks:
        if total + block.letter_count > MAX_ROW_LENGTH:
            break
        total += block.letter_count
        block_count += 1
    if block_count == 0:
        selected = normalized.letters[:MAX_ROW_LENGTH]
        block_count = 1
    else:
        selected = normalized.letters[:total]

    indices: list[int] = []
    y_seen = False
    for ev in selected:
        indices.append(letter_to_index(ev.letter, y_seen))
        if ev.letter == "Y":
            y_seen = True
    displacements = displace_repeats(indices)
    durations = derive_rhythm(selected)

    notes = tuple(
        RowNote(
            pitch_index=indices[i],
            octave_displacement=displacements[i],
            duration_ticks=durations[i],
            source=selected[i],
        )
        for i in range(len(selected))
    )
    vowel_count = sum(1 for ev in selected if ev.is_vowel)
    return ToneRow(
        notes=notes,
        length=len(selected),
        vowel_count=vowel_count,
        consonant_count=len(selected) - vowel_count,
        block_count=block_count,
    )


def assemble_score(
    row: ToneRow,
    voices: int = 1,
    mode: Mode = "canon",
    repeats: int = 2,
) -> Score:
    """Lay the row out as an overlapping canon or fugue.

    Voice v enters one measure after voice v-1 and plays the row
    ``repeats`` times back to back. A measure is the row's tick total
    divided by its block count, rounded up. Fugue voices are additionally
    transposed by 11 pitch classes per voice, octaves preserved.
    """
    if voices not in (1, 2, 3):
        raise InvalidVoicesError(f"voices must be 1, 2 or 3, got {voices}")
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if repeats < 1:
        raise ValueError(f"repeats must be positive, got {repeats}")

    measure_ticks = -(-row.total_ticks // row.block_count)
    events: list[NoteEvent] = []
    for voice in range(voices):
        transpose = (FUGUE_GENERATOR * voice) % TABLE_SIZE if mode == "fugue" else 0
        tick = voice * measure_ticks
        for _ in range(repeats):
            for note in row.notes:
                pitch_index = (note.pitch_index + transpose) % TABLE_SIZE
                events.append(
                    NoteEvent(
                        voice=voice,
                        start_tick=tick,
                        duration_ticks=note.duration_ticks,
                        frequency_hz=pitch_frequency(
                            pitch_index, note.octave_displacement
                        ),
                        pitch_index=pitch_index,
                        octave_displacement=note.octave_displacement,
                        letter=note.source.letter,
                        block=note.source.block,
                    )
                )
                tick += note.duration_ticks
    return Score(
        voices=voices,
        mode=mode,
        measure_ticks=measure_ticks,
        events=tuple(events),
        repeats=repeats,
    )
