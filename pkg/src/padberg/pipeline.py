"""End-to-end composition pipeline shared by the CLI and the HTTP service.

Everything derived from (text, config) is pure and deterministic: the same
inputs always produce the same composition, event for event.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import exchange, melodygen, textparse
from .exchange import ComposeConfig, ProjectFile
from .melodygen import Score, ToneRow
from .textparse import BlockSet, NormalizedText, TextMetadata


@dataclass(frozen=True)
class Composition:
    """Every derived stage of one text, bundled."""

    text: str
    config: ComposeConfig
    normalized: NormalizedText
    block_set: BlockSet
    row: ToneRow
    metadata: TextMetadata
    score: Score
    log: tuple[str, ...]


def compose(text: str, config: ComposeConfig | None = None) -> Composition:
    """Run the full pipeline: normalize, segment, derive row, assemble score."""
    config = config or ComposeConfig()
    normalized = textparse.normalize(text)
    block_set = textparse.segment_blocks(normalized)
    row = melodygen.build_tone_row(block_set, normalized)
    metadata = textparse.extract_metadata(block_set, row)
    score = melodygen.assemble_score(
        row, voices=config.voices, mode=config.mode, repeats=config.repeats
    )
    log = exchange.build_processing_log(block_set, row, metadata)
    return Composition(
        text=text,
        config=config,
        normalized=normalized,
        block_set=block_set,
        row=row,
        metadata=metadata,
        score=score,
        log=log,
    )


def to_project(composition: Composition) -> ProjectFile:
    return ProjectFile(
        text=composition.text,
        config=composition.config,
        score=composition.score,
    )
