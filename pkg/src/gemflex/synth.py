"""Deterministic synthetic arm-trajectory generator.

Produces kinematically consistent skeleton streams for both exercises,
with optional rule-violating defect injection, plus an analytic per-frame
label track computed from the trajectory parameters alone. The labels act
as an oracle that is independent of the rule engine.

Trajectories target the default rule constants (15 degree lateral cone,
0.2 m overhead allowance).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .rules import Arm, ExerciseKind, PoseClass
from .skeleton import JointId, SkeletonFrame, Vec3, mirror_frame

# Neutral standing pose, child scale, body plane 1.4 m from the sensor.
BODY_PLANE_Z = 1.4
SHOULDER_Y = 0.93
SHOULDER_HALF_SPAN = 0.14
DEFAULT_UPPER_ARM_M = 0.28
DEFAULT_FOREARM_M = 0.25

# Peak rotation angles, degrees from hanging straight down.
ELBOW_TOP_DEG = 170.0
SHOULDER_TOP_DEG = 165.0

# Fraction of a transition spent per second; ramps cap at this many seconds.
MAX_RAMP_S = 0.8


@dataclass(frozen=True)
class TooWideX:
    """Push the hand laterally out of the allowed window for a frame range.

    The range is half-open [start_frame, end_frame) over the whole stream.
    """

    start_frame: int
    end_frame: int


@dataclass(frozen=True)
class OverheadBeyondK:
    """Raise the hand above the overhead allowance during every up-hold.

    Only meaningful for the elbow exercise, whose up pose caps hand height.
    """


@dataclass(frozen=True)
class StallInUp:
    """Freeze at the top pose for extra seconds, stretching the up segment."""

    duration_s: float


Defect = TooWideX | OverheadBeyondK | StallInUp


@dataclass(frozen=True)
class SynthSpec:
    """Parameters of one synthetic exercise stream.

    segment_durations: seconds spent (resting down, rising and holding up,
    returning down) per repetition. noise_amp adds uniform jitter to every
    coordinate; zero keeps the trajectory exact.
    """

    exercise: ExerciseKind
    arm: Arm
    fps: float = 30.0
    segment_durations: tuple[float, float, float] = (0.5, 1.5, 1.27)
    repetitions: int = 1
    upper_arm_m: float = DEFAULT_UPPER_ARM_M
    forearm_m: float = DEFAULT_FOREARM_M
    noise_amp: float = 0.0
    defects: tuple[Defect, ...] = ()
    seed: int = 0

    def __post_init__(self):
        if self.fps <= 0:
            raise ValueError(f"fps must be positive, got {self.fps}")
        if any(d <= 0 for d in self.segment_durations):
            raise ValueError(f"segment durations must be positive, got {self.segment_durations}")
        if self.repetitions < 1:
            raise ValueError(f"repetitions must be >= 1, got {self.repetitions}")
        if self.upper_arm_m <= 0 or self.forearm_m <= 0:
            raise ValueError("body segment lengths must be positive")
        if self.noise_amp < 0:
            raise ValueError(f"noise_amp must be >= 0, got {self.noise_amp}")
        for defect in self.defects:
            if isinstance(defect, TooWideX) and defect.end_frame <= defect.start_frame:
                raise ValueError(f"empty TooWideX range: {defect}")
            if isinstance(defect, StallInUp) and defect.duration_s <= 0:
                raise ValueError(f"StallInUp needs a positive duration, got {defect.duration_s}")
            if isinstance(defect, OverheadBeyondK) and self.exercise is not ExerciseKind.ELBOW_FLEX_EXT:
                raise ValueError("OverheadBeyondK only applies to the elbow exercise")


# One linear piece of the angle schedule: angle runs start->end over the span.
@dataclass(frozen=True)
class _Piece:
    tag: str  # rest | rise | top | fall
    duration_s: float
    start_deg: float
    end_deg: float


def _schedule(spec: SynthSpec) -> list[_Piece]:
    d1, d2, d3 = spec.segment_durations
    top = ELBOW_TOP_DEG if spec.exercise is ExerciseKind.ELBOW_FLEX_EXT else SHOULDER_TOP_DEG
    rise = min(MAX_RAMP_S, 0.5 * d2)
    fall = min(MAX_RAMP_S, 0.5 * d3)
    stall = sum(d.duration_s for d in spec.defects if isinstance(d, StallInUp))
    rep: list[_Piece] = [
        _Piece("rest", d1, 0.0, 0.0),
        _Piece("rise", rise, 0.0, top),
        _Piece("top", d2 - rise + stall, top, top),
        _Piece("fall", fall, top, 0.0),
        _Piece("rest", d3 - fall, 0.0, 0.0),
    ]
    return [p for p in rep * spec.repetitions if p.duration_s > 0.0]


def _angle_at(pieces: list[_Piece], t: float) -> tuple[float, str]:
    """Angle (degrees) and active piece tag at stream time t."""
    start = 0.0
    for piece in pieces:
        end = start + piece.duration_s
        if t < end:
            frac = (t - start) / piece.duration_s
            return piece.start_deg + frac * (piece.end_deg - piece.start_deg), piece.tag
        start = end
    last = pieces[-1]
    return last.end_deg, last.tag


def _neutral_joints() -> dict[JointId, Vec3]:
    z = BODY_PLANE_Z
    joints: dict[JointId, Vec3] = {
        JointId.HIP_CENTER: (0.0, 0.60, z),
        JointId.SPINE: (0.0, 0.78, z),
        JointId.SHOULDER_CENTER: (0.0, 0.95, z),
        JointId.HEAD: (0.0, 1.12, z),
        JointId.SHOULDER_LEFT: (-SHOULDER_HALF_SPAN, SHOULDER_Y, z),
        JointId.SHOULDER_RIGHT: (SHOULDER_HALF_SPAN, SHOULDER_Y, z),
        JointId.HIP_LEFT: (-0.08, 0.58, z),
        JointId.HIP_RIGHT: (0.08, 0.58, z),
        JointId.KNEE_LEFT: (-0.09, 0.32, z),
        JointId.KNEE_RIGHT: (0.09, 0.32, z),
        JointId.ANKLE_LEFT: (-0.09, 0.08, z),
        JointId.ANKLE_RIGHT: (0.09, 0.08, z),
        JointId.FOOT_LEFT: (-0.09, 0.02, z - 0.07),
        JointId.FOOT_RIGHT: (0.09, 0.02, z - 0.07),
    }
    return joints


def _hanging_arm(joints: dict[JointId, Vec3], side: int, upper: float, forearm: float) -> None:
    """Relaxed arm for the non-exercise side; side is +1 right, -1 left."""
    sx, sy, sz = joints[JointId.SHOULDER_RIGHT if side > 0 else JointId.SHOULDER_LEFT]
    elbow = (sx + 0.01 * side, sy - upper, sz)
    hand = (elbow[0] + 0.005 * side, elbow[1] - forearm, sz)
    wrist = tuple(e + 0.88 * (h - e) for e, h in zip(elbow, hand))
    names = (
        (JointId.ELBOW_RIGHT, JointId.WRIST_RIGHT, JointId.HAND_RIGHT)
        if side > 0
        else (JointId.ELBOW_LEFT, JointId.WRIST_LEFT, JointId.HAND_LEFT)
    )
    joints[names[0]] = elbow
    joints[names[1]] = wrist  # type: ignore[assignment]
    joints[names[2]] = hand


def _elbow_arm(joints: dict[JointId, Vec3], angle_deg: float, upper: float, forearm: float) -> None:
    """Right-arm elbow flexion: forearm folds up through the sagittal plane.

    A small lateral deflection sweeps from outward (down pose) to inward
    (up pose), staying well inside the allowed cone.
    """
    sx, sy, sz = joints[JointId.SHOULDER_RIGHT]
    elbow = (sx, sy - upper, sz - 0.01)
    a = math.radians(angle_deg)
    dx = 0.1 * forearm * math.cos(a)
    planar = math.sqrt(forearm * forearm - dx * dx)
    hand = (elbow[0] + dx, elbow[1] - planar * math.cos(a), elbow[2] - planar * math.sin(a))
    wrist = tuple(e + 0.88 * (h - e) for e, h in zip(elbow, hand))
    joints[JointId.ELBOW_RIGHT] = elbow
    joints[JointId.WRIST_RIGHT] = wrist  # type: ignore[assignment]
    joints[JointId.HAND_RIGHT] = hand


# Unit vector of the shoulder-flexion swing plane's horizontal axis: the
# straight arm sweeps from hanging down to overhead, leaning slightly
# outward and behind the shoulder so the depth rule holds throughout.
_SWING_OUT = (0.04, 0.0, 0.08)
_SWING_OUT_NORM = math.sqrt(sum(c * c for c in _SWING_OUT))
_SWING_V = tuple(c / _SWING_OUT_NORM for c in _SWING_OUT)


def _shoulder_arm(joints: dict[JointId, Vec3], angle_deg: float, upper: float, forearm: float) -> None:
    """Right-arm shoulder flexion: straight arm rotates about the shoulder."""
    shoulder = joints[JointId.SHOULDER_RIGHT]
    a = math.radians(angle_deg)
    direction = (
        math.sin(a) * _SWING_V[0],
        -math.cos(a),
        math.sin(a) * _SWING_V[2],
    )
    elbow = tuple(s + upper * d for s, d in zip(shoulder, direction))
    wrist = tuple(s + (upper + 0.88 * forearm) * d for s, d in zip(shoulder, direction))
    hand = tuple(s + (upper + forearm) * d for s, d in zip(shoulder, direction))
    joints[JointId.ELBOW_RIGHT] = elbow  # type: ignore[assignment]
    joints[JointId.WRIST_RIGHT] = wrist  # type: ignore[assignment]
    joints[JointId.HAND_RIGHT] = hand  # type: ignore[assignment]


def _frame_count(spec: SynthSpec) -> int:
    total = sum(p.duration_s for p in _schedule(spec))
    return max(1, int(round(total * spec.fps)))


def _defect_active(spec: SynthSpec, index: int, tag: str) -> bool:
    for defect in spec.defects:
        if isinstance(defect, TooWideX) and defect.start_frame <= index < defect.end_frame:
            return True
        if isinstance(defect, OverheadBeyondK) and tag == "top":
            return True
    return False


def neutral_frame(timestamp: float = 0.0) -> SkeletonFrame:
    """A standing pose with both arms hanging, at the recommended distance."""
    joints = _neutral_joints()
    _hanging_arm(joints, -1, DEFAULT_UPPER_ARM_M, DEFAULT_FOREARM_M)
    _hanging_arm(joints, 1, DEFAULT_UPPER_ARM_M, DEFAULT_FOREARM_M)
    return SkeletonFrame(timestamp, joints)


def synthesize(spec: SynthSpec) -> list[SkeletonFrame]:
    """Generate the skeleton stream described by a spec.

    Deterministic in the seed. Left-arm streams are exact mirrors of the
    right-arm trajectory, so labels and recognition events coincide.
    """
    pieces = _schedule(spec)
    rng = random.Random(spec.seed)
    frames: list[SkeletonFrame] = []
    for index in range(_frame_count(spec)):
        t = index / spec.fps
        angle, tag = _angle_at(pieces, t)
        joints = _neutral_joints()
        _hanging_arm(joints, -1, spec.upper_arm_m, spec.forearm_m)
        if spec.exercise is ExerciseKind.ELBOW_FLEX_EXT:
            _elbow_arm(joints, angle, spec.upper_arm_m, spec.forearm_m)
        else:
            _shoulder_arm(joints, angle, spec.upper_arm_m, spec.forearm_m)

        for defect in spec.defects:
            if isinstance(defect, TooWideX) and defect.start_frame <= index < defect.end_frame:
                hx, hy, hz = joints[JointId.HAND_RIGHT]
                ex = joints[JointId.ELBOW_RIGHT][0]
                if spec.exercise is ExerciseKind.ELBOW_FLEX_EXT:
                    joints[JointId.HAND_RIGHT] = (ex + spec.forearm_m + 0.1, hy, hz)
                else:
                    joints[JointId.HAND_RIGHT] = (ex - 0.3, hy, hz)
            elif isinstance(defect, OverheadBeyondK) and tag == "top":
                hx, _, hz = joints[JointId.HAND_RIGHT]
                joints[JointId.HAND_RIGHT] = (hx, SHOULDER_Y + 0.25, hz)

        if spec.noise_amp > 0.0:
            noisy = {}
            for joint, pos in joints.items():
                noisy[joint] = tuple(c + rng.uniform(-spec.noise_amp, spec.noise_amp) for c in pos)
            joints = noisy  # type: ignore[assignment]

        frame = SkeletonFrame(t, joints)
        if spec.arm is Arm.LEFT:
            frame = mirror_frame(frame)
        frames.append(frame)
    return frames


def classify_synth_frames(spec: SynthSpec) -> list[PoseClass]:
    """Intended per-frame labels, derived analytically from the schedule.

    Independent of the rule engine: a label is Down or Up purely by which
    side of the transition midpoint the scheduled angle lies on, Invalid
    while a rule-violating defect is active or exactly at the elbow
    exercise's crossing angle. Noise is ignored.
    """
    pieces = _schedule(spec)
    labels: list[PoseClass] = []
    for index in range(_frame_count(spec)):
        angle, tag = _angle_at(pieces, index / spec.fps)
        if _defect_active(spec, index, tag):
            labels.append(PoseClass.INVALID)
        elif spec.exercise is ExerciseKind.ELBOW_FLEX_EXT:
            if angle == 90.0:
                labels.append(PoseClass.INVALID)
            else:
                labels.append(PoseClass.DOWN if angle < 90.0 else PoseClass.UP)
        else:
            # The horizontal boundary classifies as Down for the shoulder rules.
            labels.append(PoseClass.DOWN if angle <= 90.0 else PoseClass.UP)
    return labels
