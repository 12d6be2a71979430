"""Report assembly and rendering.

Reports exist once as plain dicts; the machine rendering is canonical JSON
and the human rendering prints the same numbers, so the two always agree.
"""

from __future__ import annotations

import json
from typing import Any

from .recognizer import Aborted, Completed, GestureEvent


def event_entry(index: int, event: GestureEvent) -> dict[str, Any]:
    if isinstance(event, Completed):
        total = event.finished_at - event.started_at
        return {
            "frame": index,
            "event": "Completed",
            "downToUpS": round(event.up_at - event.started_at, 3),
            "upToDownS": round(event.finished_at - event.up_at, 3),
            "totalS": round(total, 3),
        }
    assert isinstance(event, Aborted)
    return {"frame": index, "event": "Aborted", "reason": event.reason.value}


def recognize_report(
    exercise: str,
    arm: str,
    frame_count: int,
    events: list[tuple[int, GestureEvent]],
    warnings: list[tuple[int, str]],
) -> dict[str, Any]:
    entries = [event_entry(i, e) for i, e in events]
    return {
        "kind": "recognize",
        "exercise": exercise,
        "arm": arm,
        "frames": frame_count,
        "repetitions": sum(1 for e in entries if e["event"] == "Completed"),
        "events": entries,
        "warnings": [{"frame": i, "code": c} for i, c in warnings],
    }


def simulate_report(
    outcome: str,
    score: int,
    exercises_done: int,
    sublevel: tuple[int, int],
    game_complete: bool,
    events: list[dict[str, Any]],
) -> dict[str, Any]:
    """Session report. Events carry only frame/kind/reason so that a report
    rebuilt from the service's message trace is byte-identical."""
    return {
        "kind": "simulate",
        "outcome": outcome,
        "score": score,
        "exercisesCompleted": exercises_done,
        "sublevel": [sublevel[0], sublevel[1]],
        "gameComplete": game_complete,
        "events": events,
    }


def session_event_entry(index: int, event: GestureEvent) -> dict[str, Any]:
    if isinstance(event, Completed):
        return {"frame": index, "event": "Completed"}
    assert isinstance(event, Aborted)
    return {"frame": index, "event": "Aborted", "reason": event.reason.value}


def to_machine(report: dict[str, Any]) -> str:
    return json.dumps(report, sort_keys=True, separators=(",", ":")) + "\n"


def render_recognize_text(report: dict[str, Any]) -> str:
    lines = [
        f"stream: {report['frames']} frames, exercise={report['exercise']}, arm={report['arm']}",
        f"repetitions recognized: {report['repetitions']}",
    ]
    if report["events"]:
        lines.append("")
        lines.append(f"{'frame':>7}  {'t (s)':>8}  status")
        for entry in report["events"]:
            if entry["event"] == "Completed":
                lines.append(f"{entry['frame']:>7}  {entry['totalS']:>8}  Succeeded")
                lines.append(
                    f"{'':>7}  {'':>8}  segments: down-to-up {entry['downToUpS']} s, "
                    f"up-to-down {entry['upToDownS']} s"
                )
            else:
                lines.append(f"{entry['frame']:>7}  {'-':>8}  Aborted({entry['reason']})")
    if report["warnings"]:
        lines.append("")
        lines.append("validation warnings:")
        seen: dict[str, int] = {}
        for w in report["warnings"]:
            seen[w["code"]] = seen.get(w["code"], 0) + 1
        for code, count in sorted(seen.items()):
            lines.append(f"  {code}: {count} frame(s)")
    return "\n".join(lines) + "\n"


def render_simulate_text(report: dict[str, Any]) -> str:
    level, stage = report["sublevel"]
    lines = [
        f"outcome: {report['outcome']}"
        + (" (game complete)" if report["gameComplete"] else ""),
        f"score: {report['score']}",
        f"exercises completed: {report['exercisesCompleted']}",
        f"sublevel reached: level {level}, stage {stage}",
    ]
    completed = sum(1 for e in report["events"] if e["event"] == "Completed")
    aborted = len(report["events"]) - completed
    lines.append(f"gesture events: {completed} completed, {aborted} aborted")
    return "\n".join(lines) + "\n"
