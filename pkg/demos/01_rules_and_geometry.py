"""Tour of the per-frame exercise rules and the lateral deflection budget.

Builds a handful of skeleton frames by hand and shows how each one
evaluates under the elbow and shoulder rule sets.
"""

from gemflex import (
    Arm,
    ExerciseKind,
    HandPhase,
    JointId,
    check_elbow_rules,
    check_shoulder_rules,
    classify_pose,
    compute_elbow_geometry,
)
from gemflex.skeleton import SkeletonFrame
from gemflex.synth import neutral_frame


def with_right_arm(hand, elbow, shoulder):
    joints = dict(neutral_frame().joints)
    joints[JointId.HAND_RIGHT] = hand
    joints[JointId.ELBOW_RIGHT] = elbow
    joints[JointId.SHOULDER_RIGHT] = shoulder
    return SkeletonFrame(0.0, joints)


shoulder = (0.20, 0.50, 2.0)
elbow = (0.20, 0.25, 2.0)

print("== deflection budget ==")
hanging = with_right_arm((0.20, 0.00, 2.0), elbow, shoulder)
geo = compute_elbow_geometry(hanging, Arm.RIGHT)
print(f"upper-arm tilt: {geo.tilt_deg:.1f} deg")
print(f"forearm length: {geo.forearm_len:.3f} m")
print(f"lateral budget: {geo.max_deflect_m:.4f} m "
      f"(hand may drift this far outward while down)")

print()
print("== elbow exercise poses ==")
cases = [
    ("hand hanging below elbow", (0.20, 0.00, 1.95)),
    ("hand flexed up, slightly inward", (0.15, 0.45, 1.95)),
    ("hand exactly at elbow height", (0.20, 0.25, 1.95)),
    ("hand far outside the lateral cone", (0.60, 0.00, 1.95)),
]
for label, hand in cases:
    frame = with_right_arm(hand, elbow, shoulder)
    down = check_elbow_rules(frame, Arm.RIGHT, HandPhase.DOWN)
    up = check_elbow_rules(frame, Arm.RIGHT, HandPhase.UP)
    cls = classify_pose(frame, ExerciseKind.ELBOW_FLEX_EXT, Arm.RIGHT)
    print(f"{label:38s} down={down!s:5s} up={up!s:5s} -> {cls.value}")

print()
print("== shoulder exercise poses ==")
cases = [
    ("arm hanging", (0.24, 0.00, 2.05), (0.22, 0.25, 2.0)),
    ("arm raised overhead", (0.24, 0.90, 2.05), (0.22, 0.70, 2.02)),
    ("hand in front of the elbow", (0.24, 0.90, 1.90), (0.22, 0.70, 2.02)),
]
for label, hand, elb in cases:
    frame = with_right_arm(hand, elb, shoulder)
    down = check_shoulder_rules(frame, Arm.RIGHT, HandPhase.DOWN)
    up = check_shoulder_rules(frame, Arm.RIGHT, HandPhase.UP)
    cls = classify_pose(frame, ExerciseKind.SHOULDER_FLEX, Arm.RIGHT)
    print(f"{label:38s} down={down!s:5s} up={up!s:5s} -> {cls.value}")
