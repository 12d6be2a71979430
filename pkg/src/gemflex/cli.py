"""Command-line entry point.

Subcommands: recognize, simulate, synth, profiles, serve. Exit codes:
0 success, 2 usage, 3 I/O, 4 malformed input file, 5 session or protocol
error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from .game import SubLevelId
from .profiles import ProfileStore, StoreError, StoreFormatError
from .recognizer import run_stream
from .report import (
    recognize_report,
    render_recognize_text,
    render_simulate_text,
    session_event_entry,
    simulate_report,
    to_machine,
)
from .rules import Arm, ExerciseKind, RuleConstants
from .runner import SessionRunner
from .service import ARM_BY_WIRE, EXERCISE_BY_WIRE, WIRE_BY_ARM, WIRE_BY_EXERCISE
from .skeleton import (
    SkeletonFrame,
    StreamFormatError,
    ValidationStatus,
    parse_stream,
    serialize_stream,
    validate_frame,
)
from .synth import OverheadBeyondK, StallInUp, SynthSpec, TooWideX, synthesize

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_FORMAT = 4
EXIT_SESSION = 5


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _constants_from_args(args: argparse.Namespace) -> RuleConstants:
    try:
        return RuleConstants(
            carrying_angle_deg=args.carrying_angle,
            hand_over_shoulder_m=args.k,
            window_size=args.window,
            grace_frames=args.grace,
        )
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc


def _add_rule_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--window", type=int, default=100, help="per-segment frame budget")
    parser.add_argument("--grace", type=int, default=5, help="tolerated consecutive invalid frames")
    parser.add_argument("--carrying-angle", type=float, default=15.0, dest="carrying_angle",
                        help="lateral elbow cone, degrees")
    parser.add_argument("--k", type=float, default=0.2,
                        help="overhead allowance above shoulder height, meters")


def _add_exercise_flags(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument("--exercise", choices=sorted(EXERCISE_BY_WIRE), required=required)
    parser.add_argument("--arm", choices=sorted(ARM_BY_WIRE), required=required)


def _read_stream(path: str) -> list[SkeletonFrame]:
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_IO) from exc
    try:
        return parse_stream(data)
    except StreamFormatError as exc:
        raise CliError(f"{path}: {exc}", EXIT_FORMAT) from exc


def _spec_from_json(doc: dict[str, Any]) -> SynthSpec:
    defects: list[Any] = []
    for item in doc.get("defects", []):
        kind = item.get("kind")
        if kind == "too-wide-x":
            defects.append(TooWideX(int(item["start"]), int(item["end"])))
        elif kind == "overhead":
            defects.append(OverheadBeyondK())
        elif kind == "stall":
            defects.append(StallInUp(float(item["duration"])))
        else:
            raise ValueError(f"unknown defect kind {kind!r}")
    segments = doc.get("segments", [0.5, 1.5, 1.27])
    return SynthSpec(
        exercise=EXERCISE_BY_WIRE[doc["exercise"]],
        arm=ARM_BY_WIRE[doc["arm"]],
        fps=float(doc.get("fps", 30.0)),
        segment_durations=(float(segments[0]), float(segments[1]), float(segments[2])),
        repetitions=int(doc.get("repetitions", 1)),
        noise_amp=float(doc.get("noise", 0.0)),
        defects=tuple(defects),
        seed=int(doc.get("seed", 0)),
    )


def _parse_defect_flag(text: str) -> TooWideX | OverheadBeyondK | StallInUp:
    parts = text.split(":")
    if parts[0] == "too-wide-x" and len(parts) == 3:
        return TooWideX(int(parts[1]), int(parts[2]))
    if parts[0] == "overhead" and len(parts) == 1:
        return OverheadBeyondK()
    if parts[0] == "stall" and len(parts) == 2:
        return StallInUp(float(parts[1]))
    raise argparse.ArgumentTypeError(
        f"bad defect {text!r}; use too-wide-x:START:END, overhead, or stall:SECONDS"
    )


def cmd_recognize(args: argparse.Namespace) -> int:
    frames = _read_stream(args.stream)
    consts = _constants_from_args(args)
    exercise = EXERCISE_BY_WIRE[args.exercise]
    arm = ARM_BY_WIRE[args.arm]
    events = run_stream(exercise, arm, consts, frames)
    warnings = []
    for index, frame in enumerate(frames):
        validation = validate_frame(frame)
        if validation.status is ValidationStatus.WARN:
            warnings.extend((index, note) for note in validation.notes)
    report = recognize_report(args.exercise, args.arm, len(frames), events, warnings)
    _emit(report, args.format, render_recognize_text)
    return EXIT_OK


def _simulate_config(args: argparse.Namespace) -> tuple[ExerciseKind, Arm, int, SubLevelId, ProfileStore | None, str | None]:
    if args.profile:
        store = ProfileStore(args.store)
        try:
            profile = store.get(args.profile)
        except StoreFormatError as exc:
            raise CliError(str(exc), EXIT_FORMAT) from exc
        except StoreError as exc:
            raise CliError(str(exc), EXIT_IO) from exc
        sublevel = profile.progress.next() if profile.progress else None
        if profile.progress == SubLevelId(2, 12):
            sublevel = SubLevelId(2, 12)
        return (
            profile.exercise,
            profile.arm,
            profile.repetitions,
            sublevel or SubLevelId(1, 1),
            store,
            profile.id,
        )
    if not (args.exercise and args.arm and args.n):
        raise CliError("simulate needs --profile or all of --exercise/--arm/--n", EXIT_USAGE)
    return (
        EXERCISE_BY_WIRE[args.exercise],
        ARM_BY_WIRE[args.arm],
        args.n,
        SubLevelId(1, 1),
        None,
        None,
    )


def cmd_simulate(args: argparse.Namespace) -> int:
    exercise, arm, reps, sublevel, store, profile_id = _simulate_config(args)
    if args.stream:
        frames = _read_stream(args.stream)
    else:
        try:
            with open(args.spec, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
            spec = _spec_from_json(doc)
        except OSError as exc:
            raise CliError(f"cannot read {args.spec}: {exc}", EXIT_IO) from exc
        except (ValueError, KeyError, json.JSONDecodeError) as exc:
            raise CliError(f"{args.spec}: {exc}", EXIT_FORMAT) from exc
        frames = synthesize(spec)

    consts = _constants_from_args(args)
    runner = SessionRunner(exercise, arm, reps, consts, sublevel=sublevel, session_seed=args.seed)
    try:
        for frame in frames:
            runner.process_frame(frame)
        runner.drain()
    except Exception as exc:
        raise CliError(str(exc), EXIT_SESSION) from exc

    if store is not None and profile_id is not None:
        best = runner.highest_won()
        if best is not None:
            store.record_progress(profile_id, best)

    summary = runner.summary()
    report = simulate_report(
        summary.outcome.value,
        summary.score,
        summary.exercises_done,
        (summary.sublevel.level, summary.sublevel.stage),
        runner.game_complete,
        [session_event_entry(i, e) for i, e in runner.events],
    )
    _emit(report, args.format, render_simulate_text)
    return EXIT_OK


def cmd_synth(args: argparse.Namespace) -> int:
    segments = tuple(float(s) for s in args.segments.split(","))
    if len(segments) != 3:
        raise CliError("--segments needs three comma-separated durations", EXIT_USAGE)
    try:
        spec = SynthSpec(
            exercise=EXERCISE_BY_WIRE[args.exercise],
            arm=ARM_BY_WIRE[args.arm],
            fps=args.fps,
            segment_durations=segments,  # type: ignore[arg-type]
            repetitions=args.reps,
            noise_amp=args.noise,
            defects=tuple(args.defect or ()),
            seed=args.seed,
        )
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc
    text = serialize_stream(synthesize(spec))
    try:
        if args.out == "-":
            sys.stdout.write(text)
        else:
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
    except OSError as exc:
        raise CliError(f"cannot write {args.out}: {exc}", EXIT_IO) from exc
    return EXIT_OK


def _profile_dict(profile) -> dict[str, Any]:
    return {
        "id": profile.id,
        "name": profile.name,
        "age": profile.age,
        "exercise": WIRE_BY_EXERCISE[profile.exercise],
        "arm": WIRE_BY_ARM[profile.arm],
        "repetitions": profile.repetitions,
        "progress": [profile.progress.level, profile.progress.stage] if profile.progress else None,
    }


def cmd_profiles(args: argparse.Namespace) -> int:
    store = ProfileStore(args.store)
    try:
        if args.action == "create":
            if not (args.name and args.exercise and args.arm and args.n):
                raise CliError("create needs --name, --exercise, --arm, --n", EXIT_USAGE)
            profile = store.create(
                args.name,
                EXERCISE_BY_WIRE[args.exercise],
                ARM_BY_WIRE[args.arm],
                args.n,
                age=args.age,
                profile_id=args.id,
            )
            payload: Any = _profile_dict(profile)
        elif args.action == "list":
            payload = [_profile_dict(p) for p in store.list()]
        elif args.action == "get":
            payload = _profile_dict(store.get(_require_id(args)))
        elif args.action == "update":
            changes: dict[str, Any] = {}
            if args.name:
                changes["name"] = args.name
            if args.age is not None:
                changes["age"] = args.age
            if args.exercise:
                changes["exercise"] = EXERCISE_BY_WIRE[args.exercise]
            if args.arm:
                changes["arm"] = ARM_BY_WIRE[args.arm]
            if args.n:
                changes["repetitions"] = args.n
            if not changes:
                raise CliError("update needs at least one field flag", EXIT_USAGE)
            payload = _profile_dict(store.update(_require_id(args), **changes))
        else:
            store.delete(_require_id(args))
            payload = {"deleted": args.id}
    except StoreFormatError as exc:
        raise CliError(str(exc), EXIT_FORMAT) from exc
    except (StoreError, ValueError) as exc:
        raise CliError(str(exc), EXIT_IO) from exc

    if args.format == "machine":
        sys.stdout.write(to_machine(payload))
    else:
        rows = payload if isinstance(payload, list) else [payload]
        for row in rows:
            sys.stdout.write(json.dumps(row, sort_keys=True) + "\n")
    return EXIT_OK


def _require_id(args: argparse.Namespace) -> str:
    if not args.id:
        raise CliError(f"profiles {args.action} needs --id", EXIT_USAGE)
    return args.id


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    host, _, port_text = args.bind.rpartition(":")
    if not host or not port_text.isdigit():
        raise CliError(f"--bind must be host:port, got {args.bind!r}", EXIT_USAGE)
    app = create_app(store_path=args.store, ui_dir=args.ui_dir)
    try:
        uvicorn.run(app, host=host, port=int(port_text), log_level="warning")
    except (OSError, SystemExit) as exc:
        raise CliError(f"cannot bind {args.bind}: {exc}", EXIT_IO) from exc
    return EXIT_OK


def _emit(report: dict[str, Any], fmt: str, render_text) -> None:
    if fmt == "machine":
        sys.stdout.write(to_machine(report))
    else:
        sys.stdout.write(render_text(report))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gemflex")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("recognize", help="run gesture recognition over a stream file")
    p.add_argument("stream")
    _add_exercise_flags(p)
    _add_rule_flags(p)
    p.add_argument("--format", choices=["text", "machine"], default="text")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("simulate", help="run a full headless game session")
    p.add_argument("--profile", help="profile id (uses --store)")
    p.add_argument("--store", default="profiles.json")
    _add_exercise_flags(p, required=False)
    p.add_argument("--n", type=int, help="prescribed repetitions (inline config)")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--stream", help="skeleton stream file driving the session")
    src.add_argument("--spec", help="JSON synth spec file driving the session")
    p.add_argument("--seed", type=int, default=0, help="session seed for level-2 layouts")
    _add_rule_flags(p)
    p.add_argument("--format", choices=["text", "machine"], default="text")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("synth", help="write a synthetic skeleton stream")
    p.add_argument("out", help="output path, or - for stdout")
    _add_exercise_flags(p)
    p.add_argument("--fps", type=float, default=30.0)
    p.add_argument("--segments", default="0.5,1.5,1.27", help="down,up,return durations in seconds")
    p.add_argument("--reps", type=int, default=1)
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--defect", action="append", type=_parse_defect_flag,
                   help="too-wide-x:START:END | overhead | stall:SECONDS (repeatable)")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("profiles", help="manage player profiles")
    p.add_argument("action", choices=["create", "list", "get", "update", "delete"])
    p.add_argument("--store", default="profiles.json")
    p.add_argument("--id")
    p.add_argument("--name")
    p.add_argument("--age", type=int)
    _add_exercise_flags(p, required=False)
    p.add_argument("--n", type=int)
    p.add_argument("--format", choices=["text", "machine"], default="text")
    p.set_defaults(func=cmd_profiles)

    p = sub.add_parser("serve", help="run the live session service")
    p.add_argument("--bind", default="127.0.0.1:8765")
    p.add_argument("--store", default="profiles.json")
    p.add_argument("--ui-dir", dest="ui_dir", default="frontend/dist")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
