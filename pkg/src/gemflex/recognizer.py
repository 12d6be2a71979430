"""Windowed three-segment gesture recognizer.

A repetition is the pose sequence down, up, down. Entering the start pose
arms the machine instantly; each of the two following transitions must then
arrive within a per-segment frame budget. Rule-violating frames are
tolerated up to a consecutive grace budget, after which the attempt aborts.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .rules import (
    DEFAULT_CONSTANTS,
    Arm,
    ExerciseKind,
    PoseClass,
    RuleConstants,
    classify_pose,
)
from .skeleton import SkeletonFrame


class Segment(Enum):
    IDLE = "Idle"
    AWAIT_UP = "AwaitUp"
    AWAIT_DOWN_AGAIN = "AwaitDownAgain"


class AbortReason(Enum):
    TIMEOUT = "Timeout"
    INVALID_MOVEMENT = "InvalidMovement"


@dataclass(frozen=True)
class GestureEvent:
    """Outcome of feeding one frame; exactly one per fed frame."""


@dataclass(frozen=True)
class InProgress(GestureEvent):
    pass


@dataclass(frozen=True)
class Completed(GestureEvent):
    """A full repetition. Timestamps delimit its down/up/down segments."""

    started_at: float
    up_at: float
    finished_at: float


@dataclass(frozen=True)
class Aborted(GestureEvent):
    reason: AbortReason


IN_PROGRESS = InProgress()


class Recognizer:
    """Single-owner mutable recognizer for one (exercise, arm) configuration.

    Feed frames in timestamp order; each feed returns exactly one event.
    There is no timeout while idle: resting outside the start pose for any
    length of time is not a movement.
    """

    def __init__(
        self,
        exercise: ExerciseKind,
        arm: Arm,
        consts: RuleConstants = DEFAULT_CONSTANTS,
    ):
        if not isinstance(consts, RuleConstants):
            consts = RuleConstants(*consts)
        self.exercise = exercise
        self.arm = arm
        self.consts = consts
        self.segment = Segment.IDLE
        self.frames_in_segment = 0
        self.invalid_run = 0
        self._started_at = 0.0
        self._up_at = 0.0

    def reset(self) -> None:
        self.segment = Segment.IDLE
        self.frames_in_segment = 0
        self.invalid_run = 0

    def _enter(self, segment: Segment) -> None:
        self.segment = segment
        self.frames_in_segment = 0
        self.invalid_run = 0

    def _hold(self, pose_ok: bool) -> GestureEvent:
        """Stay in the current segment for one more frame, aborting on budget overrun."""
        if pose_ok:
            self.invalid_run = 0
        else:
            self.invalid_run += 1
            if self.invalid_run > self.consts.grace_frames:
                self.reset()
                return Aborted(AbortReason.INVALID_MOVEMENT)
        self.frames_in_segment += 1
        if self.frames_in_segment >= self.consts.window_size:
            self.reset()
            return Aborted(AbortReason.TIMEOUT)
        return IN_PROGRESS

    def feed(self, frame: SkeletonFrame) -> GestureEvent:
        pose = classify_pose(frame, self.exercise, self.arm, self.consts)

        if self.segment is Segment.IDLE:
            if pose is PoseClass.DOWN:
                self._started_at = frame.timestamp
                self._enter(Segment.AWAIT_UP)
            return IN_PROGRESS

        if self.segment is Segment.AWAIT_UP:
            if pose is PoseClass.UP:
                self._up_at = frame.timestamp
                self._enter(Segment.AWAIT_DOWN_AGAIN)
                return IN_PROGRESS
            return self._hold(pose is PoseClass.DOWN)

        if pose is PoseClass.DOWN:
            event = Completed(self._started_at, self._up_at, frame.timestamp)
            self.reset()
            return event
        return self._hold(pose is PoseClass.UP)


def run_stream(
    exercise: ExerciseKind,
    arm: Arm,
    consts: RuleConstants,
    frames: list[SkeletonFrame],
) -> list[tuple[int, GestureEvent]]:
    """Fold a recognizer over a stream, keeping only terminal events.

    Returns (frame index, event) pairs for every Completed and Aborted;
    the Completed count is the number of recognized repetitions.
    """
    recognizer = Recognizer(exercise, arm, consts)
    events: list[tuple[int, GestureEvent]] = []
    last_t: float | None = None
    for index, frame in enumerate(frames):
        if last_t is not None and frame.timestamp <= last_t:
            raise ValueError(
                f"frame {index}: timestamp {frame.timestamp} does not increase past {last_t}"
            )
        last_t = frame.timestamp
        event = recognizer.feed(frame)
        if not isinstance(event, InProgress):
            events.append((index, event))
    return events
