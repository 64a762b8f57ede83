"""Deterministic text-to-music composition engine.

Text becomes a microtonal tone row on a 24-step harmonic-series scale,
the row becomes an overlapping canon or free fugue, and the score renders
to CSV and WAV. A mod-24 pitch-class system (interval classes, generator
circles, a 13-note scale with 5-note functional chords) rides on the same
frequency table.
"""

from .exchange import ComposeConfig, ProjectFile
from .melodygen import (
    PITCH_TABLE,
    NoteEvent,
    Score,
    ToneRow,
    assemble_score,
    build_tone_row,
    letter_to_index,
    pitch_frequency,
)
from .pipeline import Composition, compose
from .render import AudioBuffer, RenderConfig, render_score, write_wav
from .textparse import BlockSet, NormalizedText, normalize, segment_blocks

__version__ = "0.1.0"

__all__ = [
    "AudioBuffer",
    "BlockSet",
    "ComposeConfig",
    "Composition",
    "NormalizedText",
    "NoteEvent",
    "PITCH_TABLE",
    "ProjectFile",
    "RenderConfig",
    "Score",
    "ToneRow",
    "assemble_score",
    "build_tone_row",
    "compose",
    "letter_to_index",
    "normalize",
    "pitch_frequency",
    "render_score",
    "segment_blocks",
    "write_wav",
    "__version__",
]
