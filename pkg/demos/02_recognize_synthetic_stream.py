"""Synthesize exercise streams and watch the recognizer judge them.

Shows a clean stream, one that moves too slowly, and one with an injected
form error. Timing is counted in frames: each movement segment gets at
most 100 frames before the attempt times out.
"""

from gemflex import Arm, Completed, DEFAULT_CONSTANTS, ExerciseKind, run_stream
from gemflex.synth import StallInUp, SynthSpec, TooWideX, synthesize


def report(title, spec):
    frames = synthesize(spec)
    events = run_stream(spec.exercise, spec.arm, DEFAULT_CONSTANTS, frames)
    print(f"-- {title} ({len(frames)} frames, {frames[-1].timestamp:.2f} s)")
    if not events:
        print("   no terminal events")
    for index, event in events:
        if isinstance(event, Completed):
            total = event.finished_at - event.started_at
            print(f"   frame {index:4d}  Succeeded  t = {total:.2f} s")
        else:
            print(f"   frame {index:4d}  Aborted({event.reason.value})")
    print()


report(
    "three clean elbow repetitions",
    SynthSpec(ExerciseKind.ELBOW_FLEX_EXT, Arm.RIGHT, repetitions=3),
)
report(
    "left-arm shoulder flexion",
    SynthSpec(ExerciseKind.SHOULDER_FLEX, Arm.LEFT),
)
report(
    "up movement held too long (times out)",
    SynthSpec(ExerciseKind.ELBOW_FLEX_EXT, Arm.RIGHT, segment_durations=(0.5, 4.0, 1.27)),
)
report(
    "stalled at the top (times out)",
    SynthSpec(ExerciseKind.ELBOW_FLEX_EXT, Arm.RIGHT, defects=(StallInUp(3.0),)),
)
report(
    "hand drifts out of the lateral cone (form abort)",
    SynthSpec(ExerciseKind.ELBOW_FLEX_EXT, Arm.RIGHT, defects=(TooWideX(44, 56),)),
)
