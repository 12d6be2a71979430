/** Scripted pose timelines that replay a clean exercise repetition.
 *
 * Timing mirrors the stream synthesizer's default schedule (rest, rise,
 * hold, fall, rest) sampled at 30 poses per second, so a preset driven
 * through the live service is recognized exactly like a synthetic stream.
 */

import type { ExerciseWire } from "./protocol.js";
import { ELBOW_MAX_DEG, PuppetPose, SHOULDER_MAX_DEG } from "./puppet.js";

export const PRESET_FPS = 30;

interface Piece {
    duration: number;
    from: number;
    to: number;
}

function schedule(top: number, d1: number, d2: number, d3: number): Piece[] {
    const rise = Math.min(0.8, d2 / 2);
    const fall = Math.min(0.8, d3 / 2);
    return [
        { duration: d1, from: 0, to: 0 },
        { duration: rise, from: 0, to: top },
        { duration: d2 - rise, from: top, to: top },
        { duration: fall, from: top, to: 0 },
        { duration: d3 - fall, from: 0, to: 0 },
    ];
}

function sample(pieces: Piece[], repetitions: number): PuppetPose[] {
    const cycle = pieces.reduce((acc, p) => acc + p.duration, 0);
    const total = cycle * repetitions;
    const poses: PuppetPose[] = [];
    const frames = Math.round(total * PRESET_FPS);
    for (let k = 0; k < frames; k++) {
        let t = (k / PRESET_FPS) % cycle;
        let angle = 0;
        for (const piece of pieces) {
            if (t < piece.duration) {
                angle = piece.from + (t / piece.duration) * (piece.to - piece.from);
                break;
            }
            t -= piece.duration;
            angle = piece.to;
        }
        poses.push({ upperArmDeg: 0, mainDeg: angle });
    }
    return poses;
}

export interface Preset {
    name: string;
    exercise: ExerciseWire;
    poses: PuppetPose[];
}

const PRESETS: Record<string, () => Preset> = {
    "elbow-rep": () => ({
        name: "elbow-rep",
        exercise: "elbow",
        poses: sample(schedule(ELBOW_MAX_DEG, 0.5, 1.5, 1.27), 1),
    }),
    "elbow-three": () => ({
        name: "elbow-three",
        exercise: "elbow",
        poses: sample(schedule(ELBOW_MAX_DEG, 0.5, 1.5, 1.27), 3),
    }),
    "shoulder-rep": () => ({
        name: "shoulder-rep",
        exercise: "shoulder",
        poses: sample(schedule(SHOULDER_MAX_DEG, 0.5, 1.5, 1.27), 1),
    }),
    "elbow-too-slow": () => ({
        name: "elbow-too-slow",
        exercise: "elbow",
        poses: sample(schedule(ELBOW_MAX_DEG, 0.5, 4.0, 1.27), 1),
    }),
};

export function presetNames(): string[] {
    return Object.keys(PRESETS);
}

export function presetPlay(name: string): Preset {
    const factory = PRESETS[name];
    if (!factory) {
        throw new Error(`unknown preset ${name}; have ${presetNames().join(", ")}`);
    }
    return factory();
}
