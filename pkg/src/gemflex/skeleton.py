"""Skeleton joint data model, stream file format, frame validation, mirroring.

All geometry in this package lives in one fixed analysis frame:
+y points up, +z points from the sensor toward the user, and +x points
toward the user's right side. Coordinates are meters, timestamps seconds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from types import MappingProxyType
from typing import Iterable, Mapping

Vec3 = tuple[float, float, float]


class JointId(str, Enum):
    """The twenty tracked joints of a full-body skeleton frame."""

    HIP_CENTER = "HipCenter"
    SPINE = "Spine"
    SHOULDER_CENTER = "ShoulderCenter"
    HEAD = "Head"
    SHOULDER_LEFT = "ShoulderLeft"
    ELBOW_LEFT = "ElbowLeft"
    WRIST_LEFT = "WristLeft"
    HAND_LEFT = "HandLeft"
    SHOULDER_RIGHT = "ShoulderRight"
    ELBOW_RIGHT = "ElbowRight"
    WRIST_RIGHT = "WristRight"
    HAND_RIGHT = "HandRight"
    HIP_LEFT = "HipLeft"
    KNEE_LEFT = "KneeLeft"
    ANKLE_LEFT = "AnkleLeft"
    FOOT_LEFT = "FootLeft"
    HIP_RIGHT = "HipRight"
    KNEE_RIGHT = "KneeRight"
    ANKLE_RIGHT = "AnkleRight"
    FOOT_RIGHT = "FootRight"


JOINT_ORDER: tuple[JointId, ...] = tuple(JointId)

JOINT_BY_NAME: Mapping[str, JointId] = {j.value: j for j in JointId}

# Left joints paired with their right counterparts; axial joints map to themselves.
MIRROR_JOINT: Mapping[JointId, JointId] = MappingProxyType(
    {
        **{j: j for j in JointId},
        JointId.SHOULDER_LEFT: JointId.SHOULDER_RIGHT,
        JointId.SHOULDER_RIGHT: JointId.SHOULDER_LEFT,
        JointId.ELBOW_LEFT: JointId.ELBOW_RIGHT,
        JointId.ELBOW_RIGHT: JointId.ELBOW_LEFT,
        JointId.WRIST_LEFT: JointId.WRIST_RIGHT,
        JointId.WRIST_RIGHT: JointId.WRIST_LEFT,
        JointId.HAND_LEFT: JointId.HAND_RIGHT,
        JointId.HAND_RIGHT: JointId.HAND_LEFT,
        JointId.HIP_LEFT: JointId.HIP_RIGHT,
        JointId.HIP_RIGHT: JointId.HIP_LEFT,
        JointId.KNEE_LEFT: JointId.KNEE_RIGHT,
        JointId.KNEE_RIGHT: JointId.KNEE_LEFT,
        JointId.ANKLE_LEFT: JointId.ANKLE_RIGHT,
        JointId.ANKLE_RIGHT: JointId.ANKLE_LEFT,
        JointId.FOOT_LEFT: JointId.FOOT_RIGHT,
        JointId.FOOT_RIGHT: JointId.FOOT_LEFT,
    }
)

# Sensor working range and the recommended standing band, meters from sensor.
SENSOR_RANGE_M = (0.8, 4.0)
RECOMMENDED_RANGE_M = (1.3, 1.5)


class StreamFormatError(ValueError):
    """A malformed skeleton stream record. Carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class SkeletonFrame:
    """One timestamped sample of all twenty joint positions.

    Immutable after construction; construction rejects structural defects
    (missing joints, non-finite values, negative timestamps).
    """

    timestamp: float
    joints: Mapping[JointId, Vec3]

    def __post_init__(self):
        if not math.isfinite(self.timestamp) or self.timestamp < 0.0:
            raise ValueError(f"timestamp must be finite and non-negative, got {self.timestamp}")
        missing = [j.value for j in JointId if j not in self.joints]
        if missing:
            raise ValueError(f"missing joint(s): {', '.join(missing)}")
        if len(self.joints) != len(JOINT_ORDER):
            extra = [k for k in self.joints if not isinstance(k, JointId)]
            raise ValueError(f"unexpected joint keys: {extra}")
        for j, pos in self.joints.items():
            if len(pos) != 3 or not all(math.isfinite(c) for c in pos):
                raise ValueError(f"non-finite coordinate for {j.value}: {pos}")
        object.__setattr__(self, "joints", MappingProxyType(dict(self.joints)))

    def __getitem__(self, joint: JointId) -> Vec3:
        return self.joints[joint]


class ValidationStatus(Enum):
    OK = "Ok"
    WARN = "Warn"
    REJECT = "Reject"


@dataclass(frozen=True)
class FrameValidation:
    status: ValidationStatus
    notes: tuple[str, ...] = ()


def validate_frame(frame: SkeletonFrame) -> FrameValidation:
    """Advisory placement checks on a structurally valid frame.

    Warnings never affect recognition; they only surface setup problems
    such as the player standing too close to or too far from the sensor.
    """
    z = frame[JointId.HIP_CENTER][2]
    lo, hi = SENSOR_RANGE_M
    rlo, rhi = RECOMMENDED_RANGE_M
    if z < lo or z > hi:
        return FrameValidation(ValidationStatus.WARN, ("distance",))
    if z < rlo or z > rhi:
        return FrameValidation(ValidationStatus.WARN, ("distance-recommended",))
    return FrameValidation(ValidationStatus.OK)


def mirror_frame(frame: SkeletonFrame) -> SkeletonFrame:
    """Reflect a frame about the x = 0 plane, swapping left and right joints.

    An involution: mirror_frame(mirror_frame(f)) == f. Timestamps and the
    y/z coordinates are preserved exactly.
    """
    mirrored = {}
    for joint, (x, y, z) in frame.joints.items():
        mirrored[MIRROR_JOINT[joint]] = (-x, y, z)
    return SkeletonFrame(frame.timestamp, mirrored)


def _parse_record(line: str, line_no: int) -> SkeletonFrame:
    tokens = line.split()
    if not tokens[0].startswith("t="):
        raise StreamFormatError("record must start with t=<seconds>", line_no)
    try:
        timestamp = float(tokens[0][2:])
    except ValueError:
        raise StreamFormatError(f"bad timestamp {tokens[0][2:]!r}", line_no) from None
    joints: dict[JointId, Vec3] = {}
    for token in tokens[1:]:
        name, eq, coords = token.partition("=")
        if not eq:
            raise StreamFormatError(f"bad field {token!r}", line_no)
        joint = JOINT_BY_NAME.get(name)
        if joint is None:
            raise StreamFormatError(f"unknown joint {name!r}", line_no)
        if joint in joints:
            raise StreamFormatError(f"duplicate joint {name!r}", line_no)
        parts = coords.split(",")
        if len(parts) != 3:
            raise StreamFormatError(f"joint {name!r} needs 3 coordinates, got {len(parts)}", line_no)
        try:
            pos = (float(parts[0]), float(parts[1]), float(parts[2]))
        except ValueError:
            raise StreamFormatError(f"bad coordinate in {token!r}", line_no) from None
        if not all(math.isfinite(c) for c in pos):
            raise StreamFormatError(f"non-finite coordinate for joint {name!r}", line_no)
        joints[joint] = pos
    missing = [j.value for j in JointId if j not in joints]
    if missing:
        raise StreamFormatError(f"missing joint(s): {', '.join(missing)}", line_no)
    try:
        return SkeletonFrame(timestamp, joints)
    except ValueError as exc:
        raise StreamFormatError(str(exc), line_no) from None


def parse_stream(data: bytes | str) -> list[SkeletonFrame]:
    """Parse a skeleton stream file into frames, in file order.

    Format, one record per line:
        t=<seconds> <JointName>=<x>,<y>,<z> ... (all twenty joints, any order)
    Lines starting with '#' are comments. Timestamps must be strictly
    increasing; any structural defect raises StreamFormatError with the
    offending line number.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    frames: list[SkeletonFrame] = []
    for line_no, raw in enumerate(data.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        frame = _parse_record(line, line_no)
        if frames and frame.timestamp <= frames[-1].timestamp:
            raise StreamFormatError(
                f"timestamp {frame.timestamp} does not increase past {frames[-1].timestamp}",
                line_no,
            )
        frames.append(frame)
    return frames


def serialize_stream(frames: Iterable[SkeletonFrame]) -> str:
    """Render frames in the stream file format; inverse of parse_stream."""
    lines = []
    for frame in frames:
        fields = [f"t={frame.timestamp!r}"]
        for joint in JOINT_ORDER:
            x, y, z = frame.joints[joint]
            fields.append(f"{joint.value}={x!r},{y!r},{z!r}")
        lines.append(" ".join(fields))
    return "\n".join(lines) + ("\n" if lines else "")
