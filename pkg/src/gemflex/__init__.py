"""Arm-exercise gesture recognition and jewel-collecting exergame engine.

Skeleton joint streams go in; recognized exercise repetitions, game state,
and win/lose outcomes come out. See the README for the stream file format,
the profile store schema, and the session protocol.
"""

__version__ = "0.1.0"

from .game import (
    FIRST_SUBLEVEL,
    LAST_SUBLEVEL,
    GameSession,
    Jewel,
    Outcome,
    SubLevelId,
    evaluate_outcome,
    generate_layout,
    jewel_value,
)
from .recognizer import (
    Aborted,
    AbortReason,
    Completed,
    GestureEvent,
    InProgress,
    Recognizer,
    Segment,
    run_stream,
)
from .rules import (
    DEFAULT_CONSTANTS,
    Arm,
    ElbowGeometry,
    ExerciseKind,
    HandPhase,
    PoseClass,
    RuleConstants,
    check_elbow_rules,
    check_shoulder_rules,
    classify_pose,
    compute_elbow_geometry,
)
from .skeleton import (
    FrameValidation,
    JointId,
    SkeletonFrame,
    StreamFormatError,
    ValidationStatus,
    mirror_frame,
    parse_stream,
    serialize_stream,
    validate_frame,
)
from .synth import OverheadBeyondK, StallInUp, SynthSpec, TooWideX, classify_synth_frames, synthesize

__all__ = [
    "__version__",
    "Arm",
    "Aborted",
    "AbortReason",
    "Completed",
    "DEFAULT_CONSTANTS",
    "ElbowGeometry",
    "ExerciseKind",
    "FIRST_SUBLEVEL",
    "FrameValidation",
    "GameSession",
    "GestureEvent",
    "HandPhase",
    "InProgress",
    "Jewel",
    "JointId",
    "LAST_SUBLEVEL",
    "Outcome",
    "OverheadBeyondK",
    "PoseClass",
    "Recognizer",
    "RuleConstants",
    "Segment",
    "SkeletonFrame",
    "StallInUp",
    "StreamFormatError",
    "SubLevelId",
    "SynthSpec",
    "TooWideX",
    "ValidationStatus",
    "check_elbow_rules",
    "check_shoulder_rules",
    "classify_pose",
    "classify_synth_frames",
    "compute_elbow_geometry",
    "evaluate_outcome",
    "generate_layout",
    "jewel_value",
    "mirror_frame",
    "parse_stream",
    "run_stream",
    "serialize_stream",
    "synthesize",
    "validate_frame",
]
