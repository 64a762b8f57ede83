"""Serialization: processing log, piano-roll CSV, and project files.

The CSV carries the paper-roll event list plus provenance columns (source
letter and block) so a file is self-checking: every row's frequency must
equal the pitch-table entry shifted by its octave column. Project files
are versioned JSON holding the source text, the composition settings and
the derived score.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path

from .melodygen import Mode, MODES, NoteEvent, Score, ToneRow, pitch_frequency
from .render import RenderConfig
from .textparse import BlockSet, TextMetadata

CSV_HEADER = (
    "voice",
    "start_tick",
    "duration_ticks",
    "frequency_hz",
    "pitch_index",
    "octave",
    "letter",
    "block",
)
FREQUENCY_TOLERANCE_HZ = 1e-4
SCHEMA_VERSION = 1


class ParseError(ValueError):
    """Malformed CSV or project file; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvariantViolationError(ValueError):
    """Imported data contradicts the pitch-table frequency invariant."""


class VersionMismatchError(ValueError):
    """Project file was written by a newer schema."""


@dataclass(frozen=True)
class ComposeConfig:
    """User-facing composition settings, persisted in project files."""

    voices: int = 1
    mode: Mode = "canon"
    repeats: int = 2
    render: RenderConfig = RenderConfig()


@dataclass(frozen=True)
class ProjectFile:
    text: str
    config: ComposeConfig
    score: Score
    schema_version: int = SCHEMA_VERSION


def build_processing_log(
    block_set: BlockSet, row: ToneRow, metadata: TextMetadata
) -> tuple[str, ...]:
    """Human-readable trace: one line per row note, per block, plus two summaries."""

    def ticks(n: int) -> str:
        return f"{n} tick" + ("" if n == 1 else "s")

    lines = [
        f"note {i + 1}: {note.source.letter} -> {note.frequency_hz:.2f} Hz, "
        f"{ticks(note.duration_ticks)}"
        for i, note in enumerate(row.notes)
    ]
    for block in block_set.blocks:
        lines.append(
            f"block {block.block_id}: {block.letter_count} letters, "
            f"{block.vowel_count} vowels, {block.consonant_count} consonants"
        )
    lines.append(
        f"tone row: {row.length} notes across {row.block_count} block(s), "
        f"{row.total_ticks} ticks"
    )
    octaves = ", ".join(
        f"{disp:+d}: {count}" if disp else f"0: {count}"
        for disp, count in metadata.notes_per_octave.items()
    )
    lines.append(
        f"text totals: {metadata.total_vowels} vowels, "
        f"{metadata.total_consonants} consonants; notes per octave {{{octaves}}}"
    )
    return tuple(lines)


def score_to_csv(score: Score, monophonic: bool = True) -> str:
    """Render a score as CSV text (UTF-8 content, LF line endings)."""
    events = score.events if not monophonic else score.voice_events(0)
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for ev in sorted(events, key=lambda e: (e.voice, e.start_tick)):
        writer.writerow(
            [
                ev.voice,
                ev.start_tick,
                ev.duration_ticks,
                f"{ev.frequency_hz:.4f}",
                ev.pitch_index,
                ev.octave_displacement,
                ev.letter,
                ev.block,
            ]
        )
    return out.getvalue()


def export_csv(score: Score, monophonic: bool, path: str | Path) -> None:
    """Write the piano-roll CSV; monophonic keeps voice 0 only."""
    Path(path).write_text(score_to_csv(score, monophonic), encoding="utf-8")


def csv_to_score(text: str) -> Score:
    """Parse CSV text back into a score.

    Frequencies are validated against the pitch-table invariant and then
    reconstructed exactly from (pitch_index, octave). Mode and repeats are
    not recoverable from a CSV; they come back as defaults.
    """
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("empty file", line=1) from None
    if tuple(header) != CSV_HEADER:
        raise ParseError(f"unexpected header {header!r}", line=1)

    events: list[NoteEvent] = []
    for lineno, rowvals in enumerate(reader, start=2):
        if not rowvals:
            continue
        if len(rowvals) != len(CSV_HEADER):
            raise ParseError(
                f"expected {len(CSV_HEADER)} fields, got {len(rowvals)}", line=lineno
            )
        try:
            voice = int(rowvals[0])
            start_tick = int(rowvals[1])
            duration = int(rowvals[2])
            frequency = float(rowvals[3])
            pitch_index = int(rowvals[4])
            octave = int(rowvals[5])
            letter = rowvals[6]
            block = int(rowvals[7])
        except ValueError as exc:
            raise ParseError(str(exc), line=lineno) from None
        if not 0 <= pitch_index < 24:
            raise ParseError(f"pitch_index out of range: {pitch_index}", line=lineno)
        if duration <= 0 or start_tick < 0 or voice < 0:
            raise ParseError("negative or zero tick fields", line=lineno)
        expected = pitch_frequency(pitch_index, octave)
        if abs(frequency - expected) > FREQUENCY_TOLERANCE_HZ:
            raise InvariantViolationError(
                f"line {lineno}: frequency {frequency} does not match "
                f"pitch {pitch_index} at octave {octave} ({expected:.4f} Hz)"
            )
        events.append(
            NoteEvent(
                voice=voice,
                start_tick=start_tick,
                duration_ticks=duration,
                frequency_hz=expected,
                pitch_index=pitch_index,
                octave_displacement=octave,
                letter=letter,
                block=block,
            )
        )
    if not events:
        raise ParseError("no events in file", line=2)

    voices = max(ev.voice for ev in events) + 1
    total = max(ev.end_tick for ev in events)
    measure = total
    if voices > 1:
        offset = min(ev.start_tick for ev in events if ev.voice == 1) - min(
            ev.start_tick for ev in events if ev.voice == 0
        )
        if offset > 0:
            measure = offset
    return Score(
        voices=voices,
        mode="canon",
        measure_ticks=measure,
        events=tuple(events),
        repeats=1,
    )


def import_csv(path: str | Path) -> Score:
    return csv_to_score(Path(path).read_text(encoding="utf-8"))


def _render_to_dict(cfg: RenderConfig) -> dict:
    return {
        "sample_rate": cfg.sample_rate,
        "bit_depth": cfg.bit_depth,
        "tick_seconds": cfg.tick_seconds,
        "instrument": cfg.instrument,
        "gain": cfg.gain,
        "fade_ms": cfg.fade_ms,
        "sample_root_hz": cfg.sample_root_hz,
        "assets_dir": str(cfg.assets_dir) if cfg.assets_dir is not None else None,
    }


def _render_from_dict(data: dict) -> RenderConfig:
    assets = data.get("assets_dir")
    return RenderConfig(
        sample_rate=data["sample_rate"],
        bit_depth=data["bit_depth"],
        tick_seconds=data["tick_seconds"],
        instrument=data["instrument"],
        gain=data["gain"],
        fade_ms=data["fade_ms"],
        sample_root_hz=data["sample_root_hz"],
        assets_dir=Path(assets) if assets else None,
    )


def _score_to_dict(score: Score) -> dict:
    return {
        "voices": score.voices,
        "mode": score.mode,
        "measure_ticks": score.measure_ticks,
        "repeats": score.repeats,
        "events": [
            [
                ev.voice,
                ev.start_tick,
                ev.duration_ticks,
                ev.pitch_index,
                ev.octave_displacement,
                ev.letter,
                ev.block,
            ]
            for ev in score.events
        ],
    }


def _score_from_dict(data: dict) -> Score:
    events = tuple(
        NoteEvent(
            voice=voice,
            start_tick=start,
            duration_ticks=duration,
            frequency_hz=pitch_frequency(pitch, octave),
            pitch_index=pitch,
            octave_displacement=octave,
            letter=letter,
            block=block,
        )
        for voice, start, duration, pitch, octave, letter, block in data["events"]
    )
    mode = data["mode"]
    if mode not in MODES:
        raise ParseError(f"unknown mode {mode!r}")
    return Score(
        voices=data["voices"],
        mode=mode,
        measure_ticks=data["measure_ticks"],
        events=events,
        repeats=data["repeats"],
    )


def project_to_json(project: ProjectFile) -> str:
    payload = {
        "schema_version": project.schema_version,
        "text": project.text,
        "config": {
            "voices": project.config.voices,
            "mode": project.config.mode,
            "repeats": project.config.repeats,
            "render": _render_to_dict(project.config.render),
        },
        "score": _score_to_dict(project.score),
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def save_project(project: ProjectFile, path: str | Path) -> None:
    Path(path).write_text(project_to_json(project), encoding="utf-8")


def load_project(path: str | Path) -> ProjectFile:
    """Load a project file; refuses files written by a newer schema."""
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(str(exc), line=exc.lineno) from None
    try:
        version = payload["schema_version"]
        if not isinstance(version, int):
            raise ParseError(f"schema_version must be an integer, got {version!r}")
        if version > SCHEMA_VERSION:
            raise VersionMismatchError(
                f"project schema {version} is newer than supported {SCHEMA_VERSION}"
            )
        config = payload["config"]
        compose = ComposeConfig(
            voices=config["voices"],
            mode=config["mode"],
            repeats=config["repeats"],
            render=_render_from_dict(config["render"]),
        )
        return ProjectFile(
            text=payload["text"],
            config=compose,
            score=_score_from_dict(payload["score"]),
            schema_version=version,
        )
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed project file: {exc}") from None
