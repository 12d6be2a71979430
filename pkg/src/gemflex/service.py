"""Live session endpoint.

A client opens one WebSocket at /session, handshakes with Hello, starts a
session, and streams skeleton frames; the server answers every frame with a
State message plus gesture feedback and outcome banners as they happen. The
world clock is frame arrival: with no frames nothing moves, which makes
replays deterministic and the protocol equivalent to the headless CLI.

Message schemas are JSON, documented in the repository README.
"""

import json
import os
from typing import Any

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.staticfiles import StaticFiles

from . import __version__
from .game import SubLevelId
from .profiles import ProfileStore, StoreError
from .recognizer import Aborted, Completed
from .report import session_event_entry
from .rules import Arm, ExerciseKind, RuleConstants
from .runner import AttemptResult, SessionRunner, StateSnapshot, StreamOrderError
from .skeleton import JOINT_BY_NAME, JointId, SkeletonFrame

PROTOCOL_VERSION = 1

EXERCISE_BY_WIRE = {"elbow": ExerciseKind.ELBOW_FLEX_EXT, "shoulder": ExerciseKind.SHOULDER_FLEX}
ARM_BY_WIRE = {"left": Arm.LEFT, "right": Arm.RIGHT}
WIRE_BY_EXERCISE = {v: k for k, v in EXERCISE_BY_WIRE.items()}
WIRE_BY_ARM = {v: k for k, v in ARM_BY_WIRE.items()}


def frame_from_wire(payload: Any) -> SkeletonFrame:
    if not isinstance(payload, dict):
        raise ValueError("frame payload must be an object")
    joints_obj = payload.get("joints")
    if not isinstance(joints_obj, dict):
        raise ValueError("frame payload needs a joints object")
    joints: dict[JointId, tuple[float, float, float]] = {}
    for name, coords in joints_obj.items():
        joint = JOINT_BY_NAME.get(name)
        if joint is None:
            raise ValueError(f"unknown joint {name!r}")
        if not isinstance(coords, (list, tuple)) or len(coords) != 3:
            raise ValueError(f"joint {name!r} needs [x, y, z]")
        joints[joint] = (float(coords[0]), float(coords[1]), float(coords[2]))
    return SkeletonFrame(float(payload.get("t", 0.0)), joints)


def frame_to_wire(frame: SkeletonFrame) -> dict[str, Any]:
    return {
        "t": frame.timestamp,
        "joints": {j.value: list(pos) for j, pos in frame.joints.items()},
    }


def _state_message(snapshot: StateSnapshot) -> dict[str, Any]:
    return {
        "type": "State",
        "segment": snapshot.segment,
        "framesInSegment": snapshot.frames_in_segment,
        "hook": {
            "anchorX": snapshot.anchor_x,
            "extension": snapshot.extension,
            "phase": snapshot.hook_phase,
        },
        "score": snapshot.score,
        "exercisesCompleted": snapshot.exercises_done,
        "outcome": snapshot.outcome,
        "sublevel": [snapshot.sublevel.level, snapshot.sublevel.stage],
        "collectedJewels": list(snapshot.collected),
    }


def _error(code: str, message: str) -> dict[str, Any]:
    return {"type": "Error", "code": code, "message": message}


class SessionProtocol:
    """Message-driven state machine for one connection.

    Deterministic: the reply list for a message depends only on the session
    state and the message itself. Set `closed` means the transport should
    close after flushing the replies.
    """

    def __init__(self, store: ProfileStore | None = None):
        self.store = store
        self.closed = False
        self._phase = "awaiting-hello"
        self._runner: SessionRunner | None = None
        self._profile_id: str | None = None
        self._started_messages = 0

    def _session_started(self) -> dict[str, Any]:
        assert self._runner is not None
        session = self._runner.session
        return {
            "type": "SessionStarted",
            "sublevel": [session.sublevel.level, session.sublevel.stage],
            "requiredScore": session.required_score,
            "requiredReps": session.required_reps,
            "layout": [
                {"index": j.jewel_index, "size": j.size, "x": j.x, "y": j.y, "value": j.value}
                for j in session.jewels
            ],
        }

    def _banner(self, result: AttemptResult) -> dict[str, Any]:
        msg: dict[str, Any] = {
            "type": "OutcomeBanner",
            "outcome": result.outcome.value,
            "score": result.score,
            "exercisesCompleted": result.exercises_done,
            "sublevel": [result.sublevel.level, result.sublevel.stage],
        }
        if self._runner is not None and self._runner.game_complete:
            msg["gameComplete"] = True
        return msg

    def handle_message(self, msg: dict[str, Any]) -> list[dict[str, Any]]:
        if not isinstance(msg, dict) or "type" not in msg:
            return [_error("bad-message", "messages must be objects with a type field")]
        kind = msg["type"]

        if self._phase == "awaiting-hello":
            if kind != "Hello":
                return [_error("protocol", "expected Hello first")]
            version = msg.get("protocolVersion")
            if version != PROTOCOL_VERSION:
                self.closed = True
                return [_error("version", f"unsupported protocolVersion {version!r}")]
            self._phase = "ready"
            return [{"type": "Hello", "protocolVersion": PROTOCOL_VERSION, "service": "gemflex"}]

        if kind == "Hello":
            return [_error("protocol", "Hello already exchanged")]

        if kind == "StartSession":
            return self._start_session(msg)
        if kind == "Frame":
            return self._frame(msg)
        if kind == "Pause":
            if self._phase != "running":
                return [_error("protocol", "no running session to pause")]
            self._phase = "paused"
            return []
        if kind == "Resume":
            if self._phase != "paused":
                return [_error("protocol", "no paused session to resume")]
            self._phase = "running"
            return []
        if kind == "EndSession":
            return self._end_session()
        return [_error("protocol", f"unknown message type {kind!r}")]

    def _start_session(self, msg: dict[str, Any]) -> list[dict[str, Any]]:
        if self._phase != "ready":
            return [_error("protocol", "session already started")]
        session_seed = int(msg.get("sessionSeed", 0))
        try:
            if "profileId" in msg:
                if self.store is None:
                    return [_error("config", "no profile store configured")]
                profile = self.store.get(str(msg["profileId"]))
                exercise, arm, reps = profile.exercise, profile.arm, profile.repetitions
                sublevel = profile.progress.next() if profile.progress else None
                sublevel = sublevel or SubLevelId(1, 1)
                if profile.progress == SubLevelId(2, 12):
                    sublevel = SubLevelId(2, 12)
                self._profile_id = profile.id
            else:
                config = msg.get("config")
                if not isinstance(config, dict):
                    return [_error("config", "StartSession needs profileId or config")]
                exercise = EXERCISE_BY_WIRE[str(config["exercise"])]
                arm = ARM_BY_WIRE[str(config["arm"])]
                reps = int(config["repetitions"])
                sublevel = SubLevelId(1, 1)
            consts = RuleConstants()
            self._runner = SessionRunner(
                exercise, arm, reps, consts, sublevel=sublevel, session_seed=session_seed
            )
        except (KeyError, ValueError, StoreError) as exc:
            return [_error("config", str(exc))]
        self._phase = "running"
        return [self._session_started()]

    def _frame(self, msg: dict[str, Any]) -> list[dict[str, Any]]:
        if self._phase == "paused":
            return [_error("paused", "session is paused; frame ignored")]
        if self._phase != "running" or self._runner is None:
            return [_error("protocol", "no running session")]
        try:
            frame = frame_from_wire(msg.get("frame"))
        except ValueError as exc:
            return [_error("bad-frame", str(exc))]
        try:
            result = self._runner.process_frame(frame)
        except StreamOrderError as exc:
            return [_error("bad-frame", str(exc))]

        replies: list[dict[str, Any]] = [_state_message(result.state)]
        if isinstance(result.event, (Completed, Aborted)):
            entry = session_event_entry(result.index, result.event)
            replies.append({"type": "GestureFeedback", **entry})
        if result.decided is not None:
            replies.append(self._banner(result.decided))
            if result.advanced:
                replies.append(self._session_started())
        return replies

    def _end_session(self) -> list[dict[str, Any]]:
        if self._phase not in ("running", "paused") or self._runner is None:
            self.closed = True
            if self._phase == "ready":
                return []
            return [_error("protocol", "no session to end")]
        settled = self._runner.drain()
        replies: list[dict[str, Any]] = [_state_message(self._runner.final_state())]
        for result in settled:
            replies.append(self._banner(result))
        if self.store is not None and self._profile_id is not None:
            best = self._runner.highest_won()
            if best is not None:
                self.store.record_progress(self._profile_id, best)
        self._phase = "ended"
        self.closed = True
        return replies


def create_app(store_path: str | None = None, ui_dir: str | None = None) -> FastAPI:
    """FastAPI application: WebSocket /session, GET /health, static UI files."""
    app = FastAPI(title="gemflex session service")
    store = ProfileStore(store_path) if store_path else None

    @app.get("/health")
    def health() -> dict[str, Any]:
        return {"service": "gemflex", "version": __version__, "protocolVersion": PROTOCOL_VERSION}

    @app.websocket("/session")
    async def session_socket(ws: WebSocket) -> None:
        await ws.accept()
        proto = SessionProtocol(store)
        try:
            while not proto.closed:
                text = await ws.receive_text()
                try:
                    msg = json.loads(text)
                except json.JSONDecodeError:
                    await ws.send_text(json.dumps(_error("bad-message", "not valid JSON")))
                    continue
                for reply in proto.handle_message(msg):
                    await ws.send_text(json.dumps(reply, sort_keys=True))
        except WebSocketDisconnect:
            return
        await ws.close()

    if ui_dir and os.path.isdir(ui_dir):
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")
    return app
