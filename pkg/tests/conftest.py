import random

import pytest

from gemflex.skeleton import JointId, SkeletonFrame, Vec3
from gemflex.synth import neutral_frame


@pytest.fixture
def base_frame() -> SkeletonFrame:
    return neutral_frame()


def make_frame(overrides: dict[JointId, Vec3], timestamp: float = 0.0) -> SkeletonFrame:
    joints = dict(neutral_frame(timestamp).joints)
    joints.update(overrides)
    return SkeletonFrame(timestamp, joints)


def random_frame(rng: random.Random, timestamp: float = 0.0) -> SkeletonFrame:
    """A structurally valid frame with fully random arm joint positions."""
    overrides: dict[JointId, Vec3] = {}
    for joint in (
        JointId.HAND_LEFT,
        JointId.ELBOW_LEFT,
        JointId.SHOULDER_LEFT,
        JointId.HAND_RIGHT,
        JointId.ELBOW_RIGHT,
        JointId.SHOULDER_RIGHT,
    ):
        overrides[joint] = (
            rng.uniform(-1.5, 1.5),
            rng.uniform(0.0, 2.0),
            rng.uniform(0.5, 3.5),
        )
    return make_frame(overrides, timestamp)


def nearby_arm_frame(rng: random.Random, timestamp: float = 0.0) -> SkeletonFrame:
    """A frame whose arm joints sit near rule boundaries.

    Joints are placed within centimeters of each other around a plausible
    shoulder, which makes the strict/non-strict inequality edges and the
    lateral window edges far more likely to matter than uniform sampling.
    """
    overrides: dict[JointId, Vec3] = {}
    for side, (hand_j, elbow_j, shoulder_j) in (
        (1, (JointId.HAND_RIGHT, JointId.ELBOW_RIGHT, JointId.SHOULDER_RIGHT)),
        (-1, (JointId.HAND_LEFT, JointId.ELBOW_LEFT, JointId.SHOULDER_LEFT)),
    ):
        sx, sy, sz = 0.14 * side, 0.93, 1.4
        shoulder = (sx + rng.uniform(-0.02, 0.02), sy + rng.uniform(-0.02, 0.02), sz)
        elbow = (
            shoulder[0] + rng.uniform(-0.08, 0.08),
            shoulder[1] - rng.uniform(0.0, 0.4),
            sz + rng.uniform(-0.05, 0.05),
        )
        # Hand within a small box of the elbow; some draws land exactly on it.
        hand = (
            elbow[0] + rng.choice((0.0, rng.uniform(-0.12, 0.12))),
            elbow[1] + rng.choice((0.0, rng.uniform(-0.35, 0.35))),
            elbow[2] + rng.choice((0.0, rng.uniform(-0.1, 0.1))),
        )
        overrides[shoulder_j] = shoulder
        overrides[elbow_j] = elbow
        overrides[hand_j] = hand
    return make_frame(overrides, timestamp)
