"""Mod-24 pitch-class system built on the 24-letter frequency table.

Letters name pitch classes in table order (A=0 ... L=11, M=12 ... U=20,
V=21, X=22, Z=23). The system carries the usual set-theory apparatus up
from mod 12: interval classes top out at 12, the circle of fourths uses
generator 11 (or its inversion 13), the diatonic analog is a 13-note
scale of whole and half steps, and functional chords stack five scale
degrees instead of three.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .melodygen import PITCH_TABLE, TABLE_SIZE

MODULUS = TABLE_SIZE
PC_LETTERS = tuple("ABCDEFGHIJKLMNOPQRSTUV") + ("X", "Z")

SCALE_SIZE = 13
# Ascending steps between consecutive scale members; the closing half step
# back to the tonic is implied (total 24).
SCALE_STEPS = (2, 2, 2, 2, 2, 1, 2, 2, 2, 2, 2, 2)

CHORD_SIZE = 5

# Scale-degree translation from the 7-degree major scale into the 13-degree
# scale, chosen to preserve tonic/dominant/subdominant function.
DEGREE_MAP = {1: 1, 2: 2, 3: 5, 4: 6, 5: 9, 6: 11, 7: 12}


class NotAGeneratorError(ValueError):
    """Step size shares a factor with the modulus, so it cannot cycle."""


class DegreeOutOfRangeError(ValueError):
    """Scale degree outside the valid range."""


def pc_letter(pc: int) -> str:
    """Canonical letter for a pitch class (W and Y are aliases of V and Z)."""
    return PC_LETTERS[pc % MODULUS]


def letter_to_pc(letter: str) -> int:
    """Pitch class of a letter; Y here always means the Z row."""
    up = letter.upper()
    if up == "W":
        return 21
    if up == "Y":
        return 23
    try:
        return PC_LETTERS.index(up)
    except ValueError:
        raise KeyError(f"not a pitch-class letter: {letter!r}") from None


def interval_class(a: int, b: int) -> int:
    """Undirected distance between two pitch classes, 0..12."""
    d = (b - a) % MODULUS
    return min(d, MODULUS - d)


@dataclass(frozen=True)
class Circle:
    generator: int
    modulus: int
    ordering: tuple[int, ...]


def build_circle(generator: int, modulus: int = MODULUS) -> Circle:
    """Order all residues by repeatedly adding the generator."""
    if modulus not in (12, 24):
        raise ValueError(f"modulus must be 12 or 24, got {modulus}")
    if math.gcd(generator, modulus) != 1:
        raise NotAGeneratorError(
            f"{generator} does not generate the mod-{modulus} cycle"
        )
    ordering = tuple((i * generator) % modulus for i in range(modulus))
    return Circle(generator=generator, modulus=modulus, ordering=ordering)


@dataclass(frozen=True)
class Scale13:
    tonic: int
    members: tuple[int, ...]  # ascending from the tonic

    def degree(self, degree: int) -> int:
        """Pitch class at a 1-based scale degree."""
        if not 1 <= degree <= SCALE_SIZE:
            raise DegreeOutOfRangeError(
                f"degree must be 1..{SCALE_SIZE}, got {degree}"
            )
        return self.members[degree - 1]

    def letters(self) -> tuple[str, ...]:
        return tuple(pc_letter(pc) for pc in self.members)


def build_scale(tonic: int) -> Scale13:
    """13-note scale on a tonic; other tonics are rigid transpositions of B's."""
    tonic %= MODULUS
    members = [tonic]
    for step in SCALE_STEPS:
        members.append((members[-1] + step) % MODULUS)
    return Scale13(tonic=tonic, members=tuple(members))


@dataclass(frozen=True)
class Chord5:
    root_degree: int
    members: tuple[int, ...]  # stacked every-other scale degree

    def letters(self) -> tuple[str, ...]:
        return tuple(pc_letter(pc) for pc in self.members)


def build_chord(scale: Scale13, degree: int) -> Chord5:
    """Five-note chord stacking alternate scale degrees from a root degree."""
    if not 1 <= degree <= SCALE_SIZE:
        raise DegreeOutOfRangeError(
            f"degree must be 1..{SCALE_SIZE}, got {degree}"
        )
    members = tuple(
        scale.members[(degree - 1 + 2 * k) % SCALE_SIZE] for k in range(CHORD_SIZE)
    )
    return Chord5(root_degree=degree, members=members)


def translate_degree(bach_degree: int) -> int:
    """Map a 7-degree scale degree onto the 13-degree scale."""
    try:
        return DEGREE_MAP[bach_degree]
    except KeyError:
        raise DegreeOutOfRangeError(
            f"degree must be 1..7, got {bach_degree}"
        ) from None


def keyboard_to_frequency(key: int) -> float:
    """Frequency of a key on the 24-per-octave keyboard; key 0 is A at 440 Hz."""
    if key < 0:
        raise ValueError(f"key must be nonnegative, got {key}")
    return float(PITCH_TABLE[key % MODULUS]) * 2.0 ** (key // MODULUS)
