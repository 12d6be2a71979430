/** The draggable arm puppet: angles in, full twenty-joint frames out.
 *
 * Elbow exercise: the upper arm may tilt slightly forward while the
 * forearm folds from hanging (0 degrees) to fully flexed (170). Shoulder
 * exercise: the straight arm sweeps from hanging to overhead (165) through
 * a plane that leans slightly outward and behind the shoulder, keeping the
 * hand at or behind the elbow's depth as the rules require.
 *
 * Drag works in the side view: screen-forward is toward the sensor,
 * screen-up is +y, origin at the shoulder.
 */

import type { ArmWire, ExerciseWire } from "./protocol.js";
import {
    FOREARM_M,
    Joints,
    UPPER_ARM_M,
    Vec3,
    lerp3,
    mirrorJoints,
    neutralJoints,
} from "./skeleton.js";

export interface PuppetPose {
    /** Upper-arm forward tilt from vertical, degrees (elbow exercise only). */
    upperArmDeg: number;
    /** Forearm bearing (elbow exercise) or whole-arm sweep (shoulder), degrees
     * from hanging straight down. */
    mainDeg: number;
}

export const ELBOW_MAX_DEG = 170;
export const SHOULDER_MAX_DEG = 165;
export const UPPER_ARM_TILT_LIMIT_DEG = 8;

const SWING_OUT: Vec3 = [0.04, 0, 0.08];
const SWING_NORM = Math.hypot(SWING_OUT[0], SWING_OUT[2]);
const SWING_V: Vec3 = [SWING_OUT[0] / SWING_NORM, 0, SWING_OUT[2] / SWING_NORM];

const rad = (deg: number) => (deg * Math.PI) / 180;
const deg = (r: number) => (r * 180) / Math.PI;
const clamp = (v: number, lo: number, hi: number) => Math.min(hi, Math.max(lo, v));

export function clampPose(pose: PuppetPose, exercise: ExerciseWire): PuppetPose {
    const maxMain = exercise === "elbow" ? ELBOW_MAX_DEG : SHOULDER_MAX_DEG;
    return {
        upperArmDeg: clamp(pose.upperArmDeg, 0, UPPER_ARM_TILT_LIMIT_DEG),
        mainDeg: clamp(pose.mainDeg, 0, maxMain),
    };
}

export function restPose(): PuppetPose {
    return { upperArmDeg: 0, mainDeg: 0 };
}

/** Elbow position for a given upper-arm forward tilt, side plane only. */
function elbowAt(tiltDeg: number, shoulder: Vec3): Vec3 {
    const t = rad(tiltDeg);
    return [
        shoulder[0],
        shoulder[1] - UPPER_ARM_M * Math.cos(t),
        shoulder[2] - 0.01 - UPPER_ARM_M * Math.sin(t),
    ];
}

/** Forward kinematics: pose to a complete frame in the analysis space. */
export function puppetJoints(pose: PuppetPose, exercise: ExerciseWire, arm: ArmWire): Joints {
    const p = clampPose(pose, exercise);
    const joints = neutralJoints();
    if (exercise === "elbow") {
        const elbow = elbowAt(p.upperArmDeg, joints.ShoulderRight);
        const a = rad(p.mainDeg);
        const dx = 0.1 * FOREARM_M * Math.cos(a);
        const planar = Math.sqrt(FOREARM_M * FOREARM_M - dx * dx);
        const hand: Vec3 = [
            elbow[0] + dx,
            elbow[1] - planar * Math.cos(a),
            elbow[2] - planar * Math.sin(a),
        ];
        joints.ElbowRight = elbow;
        joints.WristRight = lerp3(elbow, hand, 0.88);
        joints.HandRight = hand;
    } else {
        const shoulder = joints.ShoulderRight;
        const a = rad(p.mainDeg);
        const dir: Vec3 = [
            Math.sin(a) * SWING_V[0],
            -Math.cos(a),
            Math.sin(a) * SWING_V[2],
        ];
        const at = (len: number): Vec3 => [
            shoulder[0] + len * dir[0],
            shoulder[1] + len * dir[1],
            shoulder[2] + len * dir[2],
        ];
        joints.ElbowRight = at(UPPER_ARM_M);
        joints.WristRight = at(UPPER_ARM_M + 0.88 * FOREARM_M);
        joints.HandRight = at(UPPER_ARM_M + FOREARM_M);
    }
    return arm === "left" ? mirrorJoints(joints) : joints;
}

/** Hand target (side view, meters relative to the shoulder) to a pose.
 *
 * Shoulder exercise: single link, the arm points at the target. Elbow
 * exercise: two-link inverse kinematics with the upper arm clamped near
 * vertical; the forearm then points from the clamped elbow to the target.
 */
export function poseFromDrag(exercise: ExerciseWire, forward: number, up: number): PuppetPose {
    const bearing = deg(Math.atan2(forward, -up));
    if (exercise === "shoulder") {
        return clampPose({ upperArmDeg: 0, mainDeg: bearing }, exercise);
    }
    const reach = UPPER_ARM_M + FOREARM_M;
    const d = clamp(Math.hypot(forward, up), Math.abs(UPPER_ARM_M - FOREARM_M) + 1e-6, reach - 1e-6);
    const atShoulder = Math.acos(
        clamp((UPPER_ARM_M * UPPER_ARM_M + d * d - FOREARM_M * FOREARM_M) / (2 * UPPER_ARM_M * d), -1, 1),
    );
    const upperArmDeg = clamp(bearing - deg(atShoulder), 0, UPPER_ARM_TILT_LIMIT_DEG);
    const elbow = elbowAt(upperArmDeg, [0, 0, 0]);
    // side-view elbow coordinates: forward = -z, up = +y
    const elbowFwd = -(elbow[2] + 0.01);
    const elbowUp = elbow[1];
    const mainDeg = deg(Math.atan2(forward - elbowFwd, -(up - elbowUp)));
    return clampPose({ upperArmDeg, mainDeg }, exercise);
}
