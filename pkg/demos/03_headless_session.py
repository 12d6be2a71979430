"""A complete headless game session.

Skeleton frames drive the recognizer; completed repetitions queue hook
drops; the hook swings on a pendulum, extends to catch jewels, and the
session is won once the prescribed repetitions are done and the score
reaches ten points per repetition.
"""

from gemflex import Arm, DEFAULT_CONSTANTS, ExerciseKind
from gemflex.runner import SessionRunner
from gemflex.synth import SynthSpec, synthesize

REQUIRED = 3

runner = SessionRunner(ExerciseKind.ELBOW_FLEX_EXT, Arm.RIGHT, REQUIRED, DEFAULT_CONSTANTS)
print(f"prescription: {REQUIRED} repetitions, target score {REQUIRED * 10}")
print("jewels:", [(round(j.x, 2), round(j.y, 2), j.value) for j in runner.session.jewels])
print()

frames = synthesize(SynthSpec(ExerciseKind.ELBOW_FLEX_EXT, Arm.RIGHT, repetitions=REQUIRED))
for frame in frames:
    result = runner.process_frame(frame)
    if type(result.event).__name__ != "InProgress":
        print(f"frame {result.index:4d}: {type(result.event).__name__}"
              f"  score={result.state.score}  done={result.state.exercises_done}")

print()
print("stream over; letting queued hook drops finish...")
runner.drain()

summary = runner.summary()
print(f"outcome: {summary.outcome.value}")
print(f"score: {summary.score}, repetitions completed: {summary.exercises_done}")
print(f"sublevel reached: level {summary.sublevel.level}, stage {summary.sublevel.stage}")
