"""Score-to-audio rendering and WAV file I/O.

Two instrument modes: additive sine synthesis, and a simple sample player
that pitch-shifts a WAV clip by resampling and loops or truncates it to
the note length. Output is mono 16-bit PCM, peak-normalized to the
configured gain, with short linear fades on every note to avoid clicks.
"""

from __future__ import annotations

import io
import math
import wave
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .melodygen import NoteEvent, Score

FULL_SCALE = 32767
DEFAULT_SAMPLE_NAMES = ("one", "two", "three")


class EmptyScoreError(ValueError):
    """Score has no events to render."""


class MissingSampleError(FileNotFoundError):
    """Sample-mode instrument names a clip that is not available."""


@dataclass(frozen=True)
class RenderConfig:
    sample_rate: int = 44100
    bit_depth: int = 16
    tick_seconds: float = 0.125
    instrument: str = "sine"  # "sine" or "sample:<name>"
    gain: float = 0.8
    fade_ms: float = 10.0
    sample_root_hz: float = 440.0  # assumed pitch of user-supplied clips
    assets_dir: Path | None = None

    def __post_init__(self) -> None:
        if self.tick_seconds <= 0:
            raise ValueError(f"tick_seconds must be positive, got {self.tick_seconds}")
        if not 0.0 <= self.gain <= 1.0:
            raise ValueError(f"gain must be in [0, 1], got {self.gain}")
        if self.bit_depth != 16:
            raise ValueError("only 16-bit output is supported")

    @property
    def sample_name(self) -> str | None:
        if self.instrument.startswith("sample:"):
            return self.instrument.split(":", 1)[1]
        return None


@dataclass(frozen=True, eq=False)
class AudioBuffer:
    samples: np.ndarray  # int16, mono
    sample_rate: int

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AudioBuffer):
            return NotImplemented
        return self.sample_rate == other.sample_rate and np.array_equal(
            self.samples, other.samples
        )

    @property
    def duration_seconds(self) -> float:
        return len(self.samples) / self.sample_rate


def _fade(tone: np.ndarray, fade_samples: int) -> np.ndarray:
    k = min(fade_samples, len(tone) // 2)
    if k > 0:
        ramp = np.linspace(0.0, 1.0, k, endpoint=False)
        tone[:k] *= ramp
        tone[-k:] *= ramp[::-1]
    return tone


def _sine_tone(frequency: float, n: int, sample_rate: int) -> np.ndarray:
    t = np.arange(n, dtype=np.float64) / sample_rate
    return np.sin(2.0 * np.pi * frequency * t)


def _shift_clip(clip: np.ndarray, ratio: float) -> np.ndarray:
    """Resample a clip by a playback ratio (>1 raises pitch, shortens it)."""
    out_len = max(1, math.ceil(len(clip) / ratio))
    positions = np.arange(out_len, dtype=np.float64) * ratio
    positions = np.minimum(positions, len(clip) - 1)
    return np.interp(positions, np.arange(len(clip), dtype=np.float64), clip)


def _sample_tone(
    clip: np.ndarray, frequency: float, root_hz: float, n: int
) -> np.ndarray:
    shifted = _shift_clip(clip, frequency / root_hz)
    reps = -(-n // len(shifted))
    return np.tile(shifted, reps)[:n]


def load_sample(cfg: RenderConfig) -> np.ndarray:
    """Load the configured sample clip as float64 in [-1, 1]."""
    name = cfg.sample_name
    if name is None:
        raise MissingSampleError("instrument is not in sample mode")
    if cfg.assets_dir is None:
        raise MissingSampleError(f"no assets directory configured for sample {name!r}")
    path = Path(cfg.assets_dir) / f"{name}.wav"
    if not path.is_file():
        raise MissingSampleError(f"sample clip not found: {path}")
    clip = read_wav(path)
    if len(clip.samples) == 0:
        raise MissingSampleError(f"sample clip is empty: {path}")
    return clip.samples.astype(np.float64) / FULL_SCALE


def mix_events(events: Sequence[NoteEvent], cfg: RenderConfig) -> np.ndarray:
    """Sum events into one float buffer, before any normalization."""
    total_ticks = max(ev.end_tick for ev in events)
    samples_per_tick = cfg.tick_seconds * cfg.sample_rate
    length = math.ceil(total_ticks * samples_per_tick)
    mix = np.zeros(length, dtype=np.float64)

    clip = load_sample(cfg) if cfg.sample_name is not None else None
    fade_samples = int(round(cfg.fade_ms / 1000.0 * cfg.sample_rate))

    for ev in events:
        start = round(ev.start_tick * samples_per_tick)
        end = round(ev.end_tick * samples_per_tick)
        n = end - start
        if n <= 0:
            continue
        if clip is None:
            tone = _sine_tone(ev.frequency_hz, n, cfg.sample_rate)
        else:
            tone = _sample_tone(clip, ev.frequency_hz, cfg.sample_root_hz, n)
        mix[start:end] += _fade(tone, fade_samples)
    return mix


def render_score(score: Score, cfg: RenderConfig | None = None) -> AudioBuffer:
    """Render a score to 16-bit PCM, peak-normalized to cfg.gain."""
    cfg = cfg or RenderConfig()
    if not score.events:
        raise EmptyScoreError("score has no events")
    mix = mix_events(score.events, cfg)
    peak = float(np.max(np.abs(mix)))
    target = int(cfg.gain * FULL_SCALE)
    scale = target / peak if peak > 0.0 else 0.0
    samples = np.round(mix * scale).astype(np.int16)
    return AudioBuffer(samples=samples, sample_rate=cfg.sample_rate)


def write_wav(buf: AudioBuffer, path: str | Path) -> None:
    """Write mono 16-bit little-endian PCM RIFF/WAVE."""
    with open(path, "wb") as handle:
        handle.write(wav_bytes(buf))


def wav_bytes(buf: AudioBuffer) -> bytes:
    out = io.BytesIO()
    with wave.open(out, "wb") as w:
        w.setnchannels(1)
        w.setsampwidth(2)
        w.setframerate(buf.sample_rate)
        w.writeframes(buf.samples.astype("<i2").tobytes())
    return out.getvalue()


def read_wav(path: str | Path) -> AudioBuffer:
    """Read back a mono 16-bit PCM WAV file."""
    with wave.open(str(path), "rb") as w:
        if w.getnchannels() != 1 or w.getsampwidth() != 2:
            raise ValueError(f"expected mono 16-bit PCM: {path}")
        frames = w.readframes(w.getnframes())
        rate = w.getframerate()
    return AudioBuffer(samples=np.frombuffer(frames, dtype="<i2"), sample_rate=rate)


def _default_clip(name: str, sample_rate: int = 44100) -> np.ndarray:
    """Synthesize one of the built-in clips (root pitch 440 Hz, one second)."""
    n = sample_rate
    t = np.arange(n, dtype=np.float64) / sample_rate
    if name == "one":
        # bowed-string flavor: decaying harmonic stack
        amps = (1.0, 0.55, 0.35, 0.22, 0.14, 0.09)
        tone = sum(a * np.sin(2.0 * np.pi * 440.0 * (k + 1) * t) for k, a in enumerate(amps))
        tone *= np.exp(-1.5 * t)
    elif name == "two":
        tone = np.sin(2.0 * np.pi * 440.0 * t)
    else:
        # 8-bit flavor: square wave at reduced depth
        tone = np.sign(np.sin(2.0 * np.pi * 440.0 * t)) * 0.6
    tone = _fade(tone / np.max(np.abs(tone)), int(0.01 * sample_rate))
    return np.round(tone * 0.9 * FULL_SCALE).astype(np.int16)


def ensure_default_samples(assets_dir: str | Path, sample_rate: int = 44100) -> None:
    """Create the built-in clips one/two/three.wav unless already present."""
    directory = Path(assets_dir)
    directory.mkdir(parents=True, exist_ok=True)
    for name in DEFAULT_SAMPLE_NAMES:
        path = directory / f"{name}.wav"
        if not path.exists():
            write_wav(AudioBuffer(_default_clip(name, sample_rate), sample_rate), path)
