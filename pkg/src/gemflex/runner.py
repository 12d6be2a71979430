"""Headless session driver shared by the CLI and the live service.

One skeleton frame advances the recognizer by one feed and the game by one
hook tick; the two therefore share a single deterministic clock. Both entry
points drive this runner, which is what makes their reports byte-equal.
"""

from __future__ import annotations

from dataclasses import dataclass

from .game import FIRST_SUBLEVEL, GameSession, HookPhase, Jewel, Outcome, SubLevelId
from .recognizer import Aborted, Completed, GestureEvent, InProgress, Recognizer
from .rules import DEFAULT_CONSTANTS, Arm, ExerciseKind, RuleConstants
from .skeleton import FrameValidation, SkeletonFrame, ValidationStatus, validate_frame


class StreamOrderError(ValueError):
    """Frames arrived out of timestamp order."""


@dataclass(frozen=True)
class AttemptResult:
    sublevel: SubLevelId
    outcome: Outcome
    score: int
    exercises_done: int


@dataclass(frozen=True)
class StateSnapshot:
    """Observable session state after one processed frame, before any advance."""

    segment: str
    frames_in_segment: int
    anchor_x: float
    extension: float
    hook_phase: str
    score: int
    exercises_done: int
    outcome: str
    sublevel: SubLevelId
    collected: tuple[int, ...]  # layout indices of jewels already caught


@dataclass(frozen=True)
class FrameResult:
    index: int
    validation: FrameValidation
    event: GestureEvent
    state: StateSnapshot
    decided: AttemptResult | None  # set when this frame settled the attempt
    advanced: bool  # a fresh attempt began (new layout, reset counters)


class SessionRunner:
    def __init__(
        self,
        exercise: ExerciseKind,
        arm: Arm,
        required_reps: int,
        consts: RuleConstants = DEFAULT_CONSTANTS,
        sublevel: SubLevelId = FIRST_SUBLEVEL,
        session_seed: int = 0,
        jewels: list[Jewel] | None = None,
    ):
        self.recognizer = Recognizer(exercise, arm, consts)
        self.session = GameSession(required_reps, sublevel, session_seed, jewels)
        self.events: list[tuple[int, GestureEvent]] = []
        self.decided: list[AttemptResult] = []
        self.warnings: list[tuple[int, str]] = []
        self.frames_seen = 0
        self._last_t: float | None = None

    def _snapshot(self) -> StateSnapshot:
        s = self.session
        return StateSnapshot(
            segment=self.recognizer.segment.value,
            frames_in_segment=self.recognizer.frames_in_segment,
            anchor_x=s.hook.anchor_x,
            extension=s.hook.extension,
            hook_phase=s.hook.phase.value,
            score=s.collected_score,
            exercises_done=s.exercises_done,
            outcome=s.outcome.value,
            sublevel=s.sublevel,
            collected=tuple(i for i, j in enumerate(s.jewels) if j.collected),
        )

    def _settle(self) -> tuple[AttemptResult | None, bool]:
        """Record a decided attempt and start the next one, if any."""
        s = self.session
        if s.outcome is Outcome.ONGOING:
            return None, False
        result = AttemptResult(s.sublevel, s.outcome, s.collected_score, s.exercises_done)
        self.decided.append(result)
        s.advance_after_outcome()
        self.recognizer.reset()
        return result, not s.game_complete

    def process_frame(self, frame: SkeletonFrame) -> FrameResult:
        index = self.frames_seen
        if self._last_t is not None and frame.timestamp <= self._last_t:
            raise StreamOrderError(
                f"frame {index}: timestamp {frame.timestamp} does not increase past {self._last_t}"
            )
        self._last_t = frame.timestamp
        self.frames_seen += 1

        validation = validate_frame(frame)
        if validation.status is ValidationStatus.WARN:
            for note in validation.notes:
                self.warnings.append((index, note))

        if self.session.game_complete:
            snapshot = self._snapshot()
            return FrameResult(index, validation, InProgress(), snapshot, None, False)

        event = self.recognizer.feed(frame)
        if not isinstance(event, InProgress):
            self.events.append((index, event))
        self.session.on_gesture_event(event)
        self.session.tick_hook()
        snapshot = self._snapshot()
        decided, advanced = self._settle()
        return FrameResult(index, validation, event, snapshot, decided, advanced)

    def drain(self) -> list[AttemptResult]:
        """Resolve queued hook drops after the last frame.

        Every counted exercise keeps its scoring chance even when the stream
        ends mid-drop; without this the worst-case win bound would break.
        Returns any attempts decided while draining.
        """
        settled: list[AttemptResult] = []
        while (
            not self.session.game_complete
            and self.session.outcome is Outcome.ONGOING
            and (self.session.pending_drops > 0 or self.session.hook.phase is not HookPhase.SWINGING)
        ):
            self.session.tick_hook()
            if self.session.outcome is not Outcome.ONGOING:
                result, _ = self._settle()
                assert result is not None
                settled.append(result)
        return settled

    def final_state(self) -> StateSnapshot:
        return self._snapshot()

    def summary(self) -> AttemptResult:
        """The run's outcome: the last decided attempt, else the live one.

        The sublevel is always the one currently reached, which for a win is
        the next stage the player would enter.
        """
        if self.decided:
            last = self.decided[-1]
            return AttemptResult(self.session.sublevel, last.outcome, last.score, last.exercises_done)
        s = self.session
        return AttemptResult(s.sublevel, s.outcome, s.collected_score, s.exercises_done)

    @property
    def game_complete(self) -> bool:
        return self.session.game_complete

    def highest_won(self) -> SubLevelId | None:
        won = [r.sublevel for r in self.decided if r.outcome is Outcome.WON]
        return max(won) if won else None
