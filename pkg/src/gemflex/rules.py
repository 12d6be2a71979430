"""Per-frame production rules for the two supported arm exercises.

Everything here is pure and strict: a frame either satisfies a pose's rule
set or it does not. Tolerance for noisy or transitional frames lives in the
recognizer's grace budget, not in these predicates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .skeleton import JointId, SkeletonFrame, Vec3


class Arm(Enum):
    LEFT = "Left"
    RIGHT = "Right"


class ExerciseKind(Enum):
    ELBOW_FLEX_EXT = "ElbowFlexExt"
    SHOULDER_FLEX = "ShoulderFlex"


class HandPhase(Enum):
    DOWN = "Down"
    UP = "Up"


class PoseClass(Enum):
    DOWN = "Down"
    UP = "Up"
    INVALID = "Invalid"


_ARM_JOINTS = {
    Arm.RIGHT: (JointId.HAND_RIGHT, JointId.ELBOW_RIGHT, JointId.SHOULDER_RIGHT),
    Arm.LEFT: (JointId.HAND_LEFT, JointId.ELBOW_LEFT, JointId.SHOULDER_LEFT),
}


@dataclass(frozen=True)
class RuleConstants:
    """Fixed parameters of the rule engine and recognizer.

    carrying_angle_deg: natural outward elbow angle at full extension.
    hand_over_shoulder_m: allowance by which the hand may exceed shoulder
        height in the elbow exercise's up pose.
    window_size: per-segment frame budget before a timeout abort.
    grace_frames: consecutive rule-violating frames tolerated mid-gesture.
    boundary_epsilon_m: reserved for future boundary softening; unused.
    """

    carrying_angle_deg: float = 15.0
    hand_over_shoulder_m: float = 0.2
    window_size: int = 100
    grace_frames: int = 5
    boundary_epsilon_m: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.carrying_angle_deg < 45.0:
            raise ValueError(f"carrying_angle_deg must be in (0, 45), got {self.carrying_angle_deg}")
        if self.hand_over_shoulder_m <= 0.0:
            raise ValueError(f"hand_over_shoulder_m must be positive, got {self.hand_over_shoulder_m}")
        if self.window_size < 1:
            raise ValueError(f"window_size must be >= 1, got {self.window_size}")
        if self.grace_frames < 0:
            raise ValueError(f"grace_frames must be >= 0, got {self.grace_frames}")


DEFAULT_CONSTANTS = RuleConstants()


@dataclass(frozen=True)
class ElbowGeometry:
    """Derived per-frame quantities for the elbow exercise.

    tilt_deg: deviation of the upper arm from vertical (0 = hanging straight).
    forearm_len: instantaneous hand-to-elbow distance, meters.
    max_deflect_m: largest allowed lateral hand offset from the elbow.
    """

    tilt_deg: float
    forearm_len: float
    max_deflect_m: float


def compute_elbow_geometry(frame: SkeletonFrame, arm: Arm, consts: RuleConstants = DEFAULT_CONSTANTS) -> ElbowGeometry:
    """Upper-arm tilt and the lateral deflection budget for the elbow exercise.

    The tilt is computed quadrant-safe: a vertical shoulder-to-elbow offset
    of zero (including fully coincident joints) yields 90 degrees instead of
    a division error. The deflection budget is forearm_len * sin(A + C),
    capped at forearm_len once A + C reaches 90 degrees.
    """
    hand_j, elbow_j, shoulder_j = _ARM_JOINTS[arm]
    hand, elbow, shoulder = frame[hand_j], frame[elbow_j], frame[shoulder_j]

    adx = abs(shoulder[0] - elbow[0])
    ady = abs(shoulder[1] - elbow[1])
    if adx == 0.0 and ady == 0.0:
        tilt_deg = 90.0
    else:
        tilt_deg = math.degrees(math.atan2(adx, ady))

    forearm_len = math.dist(hand, elbow)

    total_deg = consts.carrying_angle_deg + tilt_deg
    if total_deg < 90.0:
        max_deflect = forearm_len * math.sin(math.radians(total_deg))
    else:
        max_deflect = forearm_len
    return ElbowGeometry(tilt_deg, forearm_len, max_deflect)


def check_elbow_rules(
    frame: SkeletonFrame,
    arm: Arm,
    phase: HandPhase,
    consts: RuleConstants = DEFAULT_CONSTANTS,
) -> bool:
    """Whether a frame satisfies every elbow flexion/extension rule for a pose.

    Down pose: hand strictly below the elbow, within the outward lateral
    window, and not behind the elbow. Up pose: hand strictly above the
    elbow, within the inward lateral window, no higher than shoulder height
    plus the allowance, with the elbow not behind the shoulder.
    """
    hand_j, elbow_j, shoulder_j = _ARM_JOINTS[arm]
    hand, elbow, shoulder = frame[hand_j], frame[elbow_j], frame[shoulder_j]
    m = compute_elbow_geometry(frame, arm, consts).max_deflect_m

    if phase is HandPhase.DOWN:
        if arm is Arm.RIGHT:
            in_window = elbow[0] <= hand[0] <= elbow[0] + m
        else:
            in_window = elbow[0] - m <= hand[0] <= elbow[0]
        return in_window and hand[1] < elbow[1] and hand[2] <= elbow[2]

    if arm is Arm.RIGHT:
        in_window = elbow[0] - m <= hand[0] <= elbow[0]
    else:
        in_window = elbow[0] <= hand[0] <= elbow[0] + m
    return (
        hand[1] > elbow[1]
        and in_window
        and elbow[2] <= shoulder[2]
        and hand[1] <= shoulder[1] + consts.hand_over_shoulder_m
    )


def check_shoulder_rules(frame: SkeletonFrame, arm: Arm, phase: HandPhase) -> bool:
    """Whether a frame satisfies every shoulder flexion rule for a pose.

    The lateral ordering hand/elbow/shoulder and the hand-not-behind-elbow
    depth rule hold in both poses; only the vertical ordering flips (all at
    or below shoulder height going down, all strictly above going up).
    """
    hand_j, elbow_j, shoulder_j = _ARM_JOINTS[arm]
    hand, elbow, shoulder = frame[hand_j], frame[elbow_j], frame[shoulder_j]

    if arm is Arm.RIGHT:
        x_ok = hand[0] >= elbow[0] and hand[0] >= shoulder[0] and elbow[0] >= shoulder[0]
    else:
        x_ok = hand[0] <= elbow[0] and hand[0] <= shoulder[0] and elbow[0] <= shoulder[0]
    if not x_ok or hand[2] < elbow[2]:
        return False

    if phase is HandPhase.DOWN:
        return hand[1] <= elbow[1] and hand[1] <= shoulder[1] and elbow[1] <= shoulder[1]
    return hand[1] > elbow[1] and hand[1] > shoulder[1] and elbow[1] > shoulder[1]


def check_rules(
    frame: SkeletonFrame,
    exercise: ExerciseKind,
    arm: Arm,
    phase: HandPhase,
    consts: RuleConstants = DEFAULT_CONSTANTS,
) -> bool:
    if exercise is ExerciseKind.ELBOW_FLEX_EXT:
        return check_elbow_rules(frame, arm, phase, consts)
    return check_shoulder_rules(frame, arm, phase)


def classify_pose(
    frame: SkeletonFrame,
    exercise: ExerciseKind,
    arm: Arm,
    consts: RuleConstants = DEFAULT_CONSTANTS,
) -> PoseClass:
    """Discretize a frame into Down, Up, or Invalid for the recognizer.

    Down and Up can never both hold: their vertical conditions are strict
    opposites in both exercises, so the check order does not matter.
    """
    if check_rules(frame, exercise, arm, HandPhase.DOWN, consts):
        return PoseClass.DOWN
    if check_rules(frame, exercise, arm, HandPhase.UP, consts):
        return PoseClass.UP
    return PoseClass.INVALID
