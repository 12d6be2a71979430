"""Jewel-collecting game core.

Scoring, deterministic jewel layouts, the pendulum hook with its queued
drops, win/lose evaluation, and level progression. One session is a
single-owner state machine advanced by one driver; the hook advances one
tick per skeleton frame so recognition and game share a clock.
"""

from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass, field
from enum import Enum

from .recognizer import Aborted, Completed, GestureEvent

JEWEL_COUNT = 8
LAYOUT_VALUE_FLOOR = 200  # covers prescriptions up to 20 at minimum-value hits

HOOK_ANCHOR_Y = 2.5
HOOK_AMPLITUDE = 1.0
HOOK_PERIOD_TICKS = 120
HOOK_EXT_PER_TICK = 0.01
HOOK_EXT_MAX_TICKS = 200
HIT_RADII = (0.15, 0.25, 0.35)  # lateral catch radius by jewel size

MIN_LEVEL, MAX_LEVEL = 1, 2
STAGES_PER_LEVEL = 12


def jewel_value(jewel_index: int, size: int) -> int:
    """Point value of a jewel: bigger and rarer kinds score more."""
    if not 0 <= jewel_index <= 5:
        raise ValueError(f"jewel_index must be in [0, 5], got {jewel_index}")
    if not 0 <= size <= 2:
        raise ValueError(f"size must be in [0, 2], got {size}")
    return (size + 1) * 10 + jewel_index * 10


@dataclass
class Jewel:
    jewel_index: int
    size: int
    x: float
    y: float
    collected: bool = False

    def __post_init__(self):
        jewel_value(self.jewel_index, self.size)  # range check
        if not -1.0 <= self.x <= 1.0:
            raise ValueError(f"jewel x must be in [-1, 1], got {self.x}")
        if not 0.0 <= self.y <= 0.6:
            raise ValueError(f"jewel y must be in [0, 0.6], got {self.y}")

    @property
    def value(self) -> int:
        return jewel_value(self.jewel_index, self.size)


@dataclass(frozen=True, order=True)
class SubLevelId:
    level: int
    stage: int

    def __post_init__(self):
        if not MIN_LEVEL <= self.level <= MAX_LEVEL:
            raise ValueError(f"level must be in [{MIN_LEVEL}, {MAX_LEVEL}], got {self.level}")
        if not 1 <= self.stage <= STAGES_PER_LEVEL:
            raise ValueError(f"stage must be in [1, {STAGES_PER_LEVEL}], got {self.stage}")

    def next(self) -> SubLevelId | None:
        """Successor in play order, or None after the final stage."""
        if self.stage < STAGES_PER_LEVEL:
            return SubLevelId(self.level, self.stage + 1)
        if self.level < MAX_LEVEL:
            return SubLevelId(self.level + 1, 1)
        return None


FIRST_SUBLEVEL = SubLevelId(1, 1)
LAST_SUBLEVEL = SubLevelId(MAX_LEVEL, STAGES_PER_LEVEL)


def generate_layout(sublevel: SubLevelId, session_seed: int = 0) -> list[Jewel]:
    """Deterministic pseudo-random layout of eight jewels.

    Level 1 layouts depend on the stage alone and are identical across
    sessions; level 2 layouts also mix in the session seed. Jewels sit in
    eight lateral slots; most stay in the hook's reachable band (y >= 0.5),
    near the side walls always, while two slots may sink deeper. The total
    value is topped up to the floor that keeps every prescription winnable.
    """
    if sublevel.level == 1:
        key = f"layout:{sublevel.level}:{sublevel.stage}"
    else:
        key = f"layout:{sublevel.level}:{sublevel.stage}:{session_seed}"
    digest = hashlib.sha256(key.encode("utf-8")).digest()
    rng = random.Random(int.from_bytes(digest[:8], "big"))

    jewels: list[Jewel] = []
    for slot in range(JEWEL_COUNT):
        x = -0.875 + slot * 0.25 + rng.uniform(-0.1, 0.1)
        if slot < JEWEL_COUNT - 2 or abs(x) > 0.9:
            y = rng.uniform(0.5, 0.6)
        else:
            y = rng.uniform(0.0, 0.6)
        jewels.append(Jewel(rng.randrange(6), rng.randrange(3), x, y))

    upgrade = 0
    while sum(j.value for j in jewels) < LAYOUT_VALUE_FLOOR:
        jewels[upgrade % JEWEL_COUNT].jewel_index = 5
        jewels[upgrade % JEWEL_COUNT].size = 2
        upgrade += 1
    return jewels


class Outcome(Enum):
    ONGOING = "Ongoing"
    WON = "Won"
    LOST = "Lost"


def evaluate_outcome(exercises_done: int, collected_score: int, required_reps: int) -> Outcome:
    """Win/lose rule over the attempt counters.

    Winning needs at least the prescribed repetitions and a score of ten
    points per prescribed repetition; losing is declared once twice the
    prescription is spent without reaching that score.
    """
    if required_reps < 1:
        raise ValueError(f"required_reps must be >= 1, got {required_reps}")
    if not 0 <= exercises_done <= 2 * required_reps:
        raise ValueError(
            f"exercises_done must be in [0, {2 * required_reps}], got {exercises_done}"
        )
    target = required_reps * 10
    if exercises_done >= required_reps and collected_score >= target:
        return Outcome.WON
    if exercises_done == 2 * required_reps and collected_score < target:
        return Outcome.LOST
    return Outcome.ONGOING


class HookPhase(Enum):
    SWINGING = "Swinging"
    EXTENDING = "Extending"
    RETRACTING = "Retracting"


@dataclass
class HookState:
    anchor_x: float = 0.0
    phase: HookPhase = HookPhase.SWINGING
    ext_ticks: int = 0

    @property
    def extension(self) -> float:
        return self.ext_ticks / 100.0

    @property
    def tip_y(self) -> float:
        return HOOK_ANCHOR_Y - self.extension


class SessionFinishedError(RuntimeError):
    """An event or tick arrived after the attempt was decided."""


class GameSession:
    """One playthrough attempt plus its progression across sublevels."""

    def __init__(
        self,
        required_reps: int,
        sublevel: SubLevelId = FIRST_SUBLEVEL,
        session_seed: int = 0,
        jewels: list[Jewel] | None = None,
    ):
        if required_reps < 1:
            raise ValueError(f"required_reps must be >= 1, got {required_reps}")
        self.required_reps = required_reps
        self.sublevel = sublevel
        self.session_seed = session_seed
        self.tick_count = 0
        self.game_complete = False
        self.feedback: list[str] = []
        self._start_attempt(jewels)

    def _start_attempt(self, jewels: list[Jewel] | None = None) -> None:
        self.jewels = jewels if jewels is not None else generate_layout(self.sublevel, self.session_seed)
        self.collected_score = 0
        self.exercises_done = 0
        self.pending_drops = 0
        self.hook = HookState()
        self.outcome = Outcome.ONGOING

    @property
    def required_score(self) -> int:
        return self.required_reps * 10

    def on_gesture_event(self, event: GestureEvent) -> None:
        """Count completed repetitions and queue a hook drop for each.

        Aborted gestures leave the counters alone; they only leave a
        feedback note. Completions past the 2N exercise budget are ignored,
        the attempt's fate then rests on the drops already queued.
        """
        if self.outcome is not Outcome.ONGOING:
            raise SessionFinishedError("gesture event after the attempt was decided")
        if isinstance(event, Completed):
            if self.exercises_done < 2 * self.required_reps:
                self.exercises_done += 1
                self.pending_drops += 1
        elif isinstance(event, Aborted):
            self.feedback.append(f"aborted:{event.reason.value}")

    def tick_hook(self) -> None:
        """Advance the hook one simulation tick.

        While swinging, the anchor follows the pendulum and a queued drop
        starts the extension. The extension grows a hundredth per tick up to
        its 200-tick bound, catching the first uncollected jewel whose
        lateral band and height the tip reaches, then retracts. Finishing a
        retraction consumes the queued drop and re-evaluates the outcome.
        """
        if self.outcome is not Outcome.ONGOING:
            raise SessionFinishedError("tick after the attempt was decided")
        hook = self.hook
        if hook.phase is HookPhase.SWINGING:
            hook.anchor_x = HOOK_AMPLITUDE * math.sin(
                2.0 * math.pi * self.tick_count / HOOK_PERIOD_TICKS
            )
            self.tick_count += 1
            if self.pending_drops > 0:
                hook.phase = HookPhase.EXTENDING
                hook.ext_ticks = 0
        elif hook.phase is HookPhase.EXTENDING:
            hook.ext_ticks += 1
            hit = self._find_hit()
            if hit is not None:
                hit.collected = True
                self.collected_score += hit.value
                hook.phase = HookPhase.RETRACTING
            elif hook.ext_ticks >= HOOK_EXT_MAX_TICKS:
                hook.phase = HookPhase.RETRACTING
        else:
            hook.ext_ticks -= 1
            if hook.ext_ticks <= 0:
                hook.ext_ticks = 0
                hook.phase = HookPhase.SWINGING
                self.pending_drops -= 1
                self._evaluate()

    def _find_hit(self) -> Jewel | None:
        hook = self.hook
        best: Jewel | None = None
        for jewel in self.jewels:
            if jewel.collected:
                continue
            if abs(hook.anchor_x - jewel.x) > HIT_RADII[jewel.size]:
                continue
            if hook.tip_y > jewel.y:
                continue
            if best is None or jewel.y > best.y:
                best = jewel
        return best

    def _evaluate(self) -> None:
        result = evaluate_outcome(self.exercises_done, self.collected_score, self.required_reps)
        if result is Outcome.WON:
            self.outcome = result
        elif result is Outcome.LOST and self.pending_drops == 0:
            # Queued drops still carry scoring chances; losing waits for them.
            self.outcome = result

    def advance_after_outcome(self) -> None:
        """Move on after a decided attempt.

        A win advances to the next sublevel (completing the final one marks
        the whole game complete); a loss replays the same sublevel. Either
        way a fresh attempt starts with a new layout and reset counters.
        """
        if self.outcome is Outcome.ONGOING:
            raise ValueError("advance_after_outcome requires a decided outcome")
        if self.outcome is Outcome.WON:
            nxt = self.sublevel.next()
            if nxt is None:
                self.game_complete = True
                return
            self.sublevel = nxt
        self._start_attempt()
