"""Text normalization and block segmentation for the composition pipeline.

Raw input is reduced to its uppercase A-Z letters, grouped into words, and
the words grouped into "blocks" of five or more letters. Blocks are the
structural unit the melody generator draws on.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

if TYPE_CHECKING:
    from .melodygen import ToneRow

VOWELS = frozenset("AEIOU")
MIN_BLOCK_LETTERS = 5

# Deleted in place without splitting the word, so "don't" stays one word.
_JOINERS = frozenset("'-’‐‑")


class EmptyInputError(ValueError):
    """No alphabetic character survived normalization."""


@dataclass(frozen=True)
class LetterEvent:
    """One normalized input letter with its position and block coordinates."""

    letter: str
    position: int      # index in the normalized letter stream
    block: int
    block_index: int   # index within the block
    is_vowel: bool


@dataclass(frozen=True)
class NormalizedText:
    letters: tuple[LetterEvent, ...]
    words: tuple[tuple[int, int], ...]  # [start, end) letter positions per word
    source: str

    def letter_string(self) -> str:
        return "".join(ev.letter for ev in self.letters)


@dataclass(frozen=True)
class Block:
    block_id: int
    letter_count: int
    vowel_count: int
    consonant_count: int
    word_spans: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class BlockSet:
    blocks: tuple[Block, ...]


@dataclass(frozen=True)
class TextMetadata:
    vowels_per_block: tuple[int, ...]
    consonants_per_block: tuple[int, ...]
    total_vowels: int
    total_consonants: int
    notes_per_octave: dict[int, int]  # octave displacement -> note count


def _split_words(text: str) -> list[str]:
    """Uppercase words of A-Z letters; joiners vanish, everything else separates."""
    words: list[str] = []
    current: list[str] = []
    for ch in text:
        if "A" <= ch <= "Z" or "a" <= ch <= "z":
            current.append(ch.upper())
        elif ch in _JOINERS:
            continue
        elif current:
            words.append("".join(current))
            current = []
    if current:
        words.append("".join(current))
    return words


def _group_words(word_lengths: Sequence[int]) -> list[list[int]]:
    """Greedy left-to-right grouping of word indices into blocks.

    Words accumulate until the running block reaches MIN_BLOCK_LETTERS; a
    trailing short run merges into the previous block, or stands alone when
    it is the only one.
    """
    groups: list[list[int]] = []
    current: list[int] = []
    size = 0
    for i, n in enumerate(word_lengths):
        current.append(i)
        size += n
        if size >= MIN_BLOCK_LETTERS:
            groups.append(current)
            current = []
            size = 0
    if current:
        if groups:
            groups[-1].extend(current)
        else:
            groups.append(current)
    return groups


def normalize(text: str) -> NormalizedText:
    """Reduce arbitrary text to its letter stream with block assignments.

    The first Y in the stream counts as a vowel (it borrows I's pitch);
    every later Y is a consonant.
    """
    words = _split_words(text)
    if not words:
        raise EmptyInputError("input contains no letters")

    spans: list[tuple[int, int]] = []
    start = 0
    for word in words:
        spans.append((start, start + len(word)))
        start += len(word)

    groups = _group_words([len(w) for w in words])

    letters: list[LetterEvent] = []
    position = 0
    y_seen = False
    for block_id, word_ids in enumerate(groups):
        block_index = 0
        for wi in word_ids:
            for ch in words[wi]:
                if ch == "Y":
                    vowel = not y_seen
                    y_seen = True
                else:
                    vowel = ch in VOWELS
                letters.append(
                    LetterEvent(
                        letter=ch,
                        position=position,
                        block=block_id,
                        block_index=block_index,
                        is_vowel=vowel,
                    )
                )
                position += 1
                block_index += 1
    return NormalizedText(letters=tuple(letters), words=tuple(spans), source=text)


def segment_blocks(normalized: NormalizedText) -> BlockSet:
    """Summarize the block partition of a normalized letter stream."""
    if not normalized.letters:
        raise EmptyInputError("normalized text is empty")

    block_ids = sorted({ev.block for ev in normalized.letters})
    blocks: list[Block] = []
    for bid in block_ids:
        members = [ev for ev in normalized.letters if ev.block == bid]
        positions = {ev.position for ev in members}
        word_spans = tuple(
            (lo, hi) for lo, hi in normalized.words if lo in positions
        )
        vowels = sum(1 for ev in members if ev.is_vowel)
        blocks.append(
            Block(
                block_id=bid,
                letter_count=len(members),
                vowel_count=vowels,
                consonant_count=len(members) - vowels,
                word_spans=word_spans,
            )
        )
    return BlockSet(blocks=tuple(blocks))


def extract_metadata(block_set: BlockSet, row: "ToneRow") -> TextMetadata:
    """Vowel/consonant tallies per block plus the row's octave histogram."""
    vowels = tuple(b.vowel_count for b in block_set.blocks)
    consonants = tuple(b.consonant_count for b in block_set.blocks)
    histogram = Counter(note.octave_displacement for note in row.notes)
    return TextMetadata(
        vowels_per_block=vowels,
        consonants_per_block=consonants,
        total_vowels=sum(vowels),
        total_consonants=sum(consonants),
        notes_per_octave=dict(sorted(histogram.items())),
    )
