"""Command-line front end: compose, tonal-system queries, and the local service.

The CLI is a thin layer over the library; all pitch and rhythm math lives
in the core modules. Exit codes: 0 success, 1 empty input, 2 usage or I/O
failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import exchange, render, tonal24
from .exchange import ComposeConfig
from .pipeline import compose, to_project
from .render import RenderConfig
from .textparse import EmptyInputError

DEFAULT_SAMPLES_DIR = Path("assets") / "audio"
DEFAULT_UI_DIR = Path("frontend") / "dist"


def _parse_tonic(value: str) -> int:
    if value.isalpha() and len(value) == 1:
        return tonal24.letter_to_pc(value)
    return int(value) % tonal24.MODULUS


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="padberg",
        description="Deterministic text-to-music composer: text to tone row "
        "to canon or free fugue, with CSV/WAV export.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    comp = sub.add_parser("compose", help="run the text-to-score pipeline")
    comp.add_argument("text", help="input text (letters drive the melody)")
    comp.add_argument("--voices", type=int, default=1, choices=(1, 2, 3))
    comp.add_argument("--mode", choices=("canon", "fugue"), default="canon")
    comp.add_argument("--repeats", type=int, default=2)
    comp.add_argument("--csv", type=Path, help="write piano-roll CSV here")
    comp.add_argument(
        "--all-voices",
        action="store_true",
        help="include every voice in the CSV instead of the monophonic melody",
    )
    comp.add_argument("--wav", type=Path, help="render audio and write WAV here")
    comp.add_argument("--project", type=Path, help="write a project file here")
    comp.add_argument("--instrument", default="sine", help="sine or sample:<name>")
    comp.add_argument("--tick-seconds", type=float, default=0.125)
    comp.add_argument("--gain", type=float, default=0.8)
    comp.add_argument(
        "--samples-dir",
        type=Path,
        default=None,
        help="directory of sample clips (default: assets/audio)",
    )

    tonal = sub.add_parser("tonal", help="query the 24-pitch-class tonal system")
    tonal_sub = tonal.add_subparsers(dest="tonal_command", required=True)

    scale = tonal_sub.add_parser("scale", help="13-note scale on a tonic")
    scale.add_argument("--tonic", default="B", help="tonic letter or pitch class")

    chord = tonal_sub.add_parser("chord", help="5-note chord on a scale degree")
    chord.add_argument("--tonic", default="B")
    chord.add_argument("--degree", type=int, required=True)

    circle = tonal_sub.add_parser("circle", help="generator ordering of a cycle")
    circle.add_argument("--generator", type=int, required=True)
    circle.add_argument("--modulus", type=int, default=24, choices=(12, 24))

    translate = tonal_sub.add_parser(
        "translate", help="map a 7-degree scale degree into the 13-degree scale"
    )
    translate.add_argument("degree", type=int)

    serve = sub.add_parser("serve", help="run the local composer service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8642)
    serve.add_argument(
        "--samples-dir",
        type=Path,
        default=None,
        help="sample clip directory (env PADBERG_SAMPLES_DIR, default assets/audio)",
    )
    serve.add_argument(
        "--ui-dir",
        type=Path,
        default=None,
        help="static UI directory (env PADBERG_UI_DIR, default frontend/dist)",
    )
    return parser


def _cmd_compose(args: argparse.Namespace) -> int:
    samples_dir = args.samples_dir or Path(
        os.environ.get("PADBERG_SAMPLES_DIR", DEFAULT_SAMPLES_DIR)
    )
    config = ComposeConfig(
        voices=args.voices,
        mode=args.mode,
        repeats=args.repeats,
        render=RenderConfig(
            tick_seconds=args.tick_seconds,
            instrument=args.instrument,
            gain=args.gain,
            assets_dir=samples_dir,
        ),
    )
    try:
        composition = compose(args.text, config)
    except EmptyInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    for line in composition.log:
        print(line)
    score = composition.score
    print(
        f"score: {score.voices} voice(s), {score.mode}, {score.repeats} repeat(s), "
        f"measure {score.measure_ticks} ticks, {score.total_ticks} ticks total"
    )

    try:
        if args.csv:
            exchange.export_csv(score, not args.all_voices, args.csv)
            print(f"wrote {args.csv}")
        if args.wav:
            buf = render.render_score(score, config.render)
            render.write_wav(buf, args.wav)
            print(f"wrote {args.wav}")
        if args.project:
            exchange.save_project(to_project(composition), args.project)
            print(f"wrote {args.project}")
    except (OSError, render.MissingSampleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def _cmd_tonal(args: argparse.Namespace) -> int:
    try:
        if args.tonal_command == "scale":
            scale = tonal24.build_scale(_parse_tonic(args.tonic))
            print(" ".join(scale.letters()))
        elif args.tonal_command == "chord":
            scale = tonal24.build_scale(_parse_tonic(args.tonic))
            chord = tonal24.build_chord(scale, args.degree)
            print(" ".join(chord.letters()))
        elif args.tonal_command == "circle":
            circle = tonal24.build_circle(args.generator, args.modulus)
            print(" ".join(str(pc) for pc in circle.ordering))
        elif args.tonal_command == "translate":
            print(tonal24.translate_degree(args.degree))
    except (
        tonal24.NotAGeneratorError,
        tonal24.DegreeOutOfRangeError,
        KeyError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    samples_dir = args.samples_dir or Path(
        os.environ.get("PADBERG_SAMPLES_DIR", DEFAULT_SAMPLES_DIR)
    )
    ui_dir = args.ui_dir or Path(os.environ.get("PADBERG_UI_DIR", DEFAULT_UI_DIR))
    render.ensure_default_samples(samples_dir)
    app = create_app(
        samples_dir=samples_dir, ui_dir=ui_dir if ui_dir.is_dir() else None
    )
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "compose":
        return _cmd_compose(args)
    if args.command == "tonal":
        return _cmd_tonal(args)
    return _cmd_serve(args)


if __name__ == "__main__":
    sys.exit(main())
