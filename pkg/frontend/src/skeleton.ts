/** Twenty-joint skeleton frames in the analysis coordinate frame.
 *
 * +y up, +z from the sensor toward the user, +x toward the user's right.
 * The neutral pose and arm segment lengths match the stream synthesizer's
 * defaults, so live puppet frames classify exactly like synthetic ones.
 */

import type { FrameWire } from "./protocol.js";

export type Vec3 = [number, number, number];

export const BODY_PLANE_Z = 1.4;
export const SHOULDER_Y = 0.93;
export const SHOULDER_HALF_SPAN = 0.14;
export const UPPER_ARM_M = 0.28;
export const FOREARM_M = 0.25;

export const JOINT_NAMES = [
    "HipCenter", "Spine", "ShoulderCenter", "Head",
    "ShoulderLeft", "ElbowLeft", "WristLeft", "HandLeft",
    "ShoulderRight", "ElbowRight", "WristRight", "HandRight",
    "HipLeft", "KneeLeft", "AnkleLeft", "FootLeft",
    "HipRight", "KneeRight", "AnkleRight", "FootRight",
] as const;

export type JointName = (typeof JOINT_NAMES)[number];

export type Joints = Record<JointName, Vec3>;

export function neutralJoints(): Joints {
    const z = BODY_PLANE_Z;
    const joints = {
        HipCenter: [0, 0.6, z],
        Spine: [0, 0.78, z],
        ShoulderCenter: [0, 0.95, z],
        Head: [0, 1.12, z],
        ShoulderLeft: [-SHOULDER_HALF_SPAN, SHOULDER_Y, z],
        ShoulderRight: [SHOULDER_HALF_SPAN, SHOULDER_Y, z],
        HipLeft: [-0.08, 0.58, z],
        HipRight: [0.08, 0.58, z],
        KneeLeft: [-0.09, 0.32, z],
        KneeRight: [0.09, 0.32, z],
        AnkleLeft: [-0.09, 0.08, z],
        AnkleRight: [0.09, 0.08, z],
        FootLeft: [-0.09, 0.02, z - 0.07],
        FootRight: [0.09, 0.02, z - 0.07],
    } as Partial<Joints>;
    hangArm(joints as Joints, -1);
    hangArm(joints as Joints, 1);
    return joints as Joints;
}

function hangArm(joints: Joints, side: 1 | -1): void {
    const [sx, sy, sz] = side > 0 ? joints.ShoulderRight : joints.ShoulderLeft;
    const elbow: Vec3 = [sx + 0.01 * side, sy - UPPER_ARM_M, sz];
    const hand: Vec3 = [elbow[0] + 0.005 * side, elbow[1] - FOREARM_M, sz];
    const wrist = lerp3(elbow, hand, 0.88);
    if (side > 0) {
        joints.ElbowRight = elbow;
        joints.WristRight = wrist;
        joints.HandRight = hand;
    } else {
        joints.ElbowLeft = elbow;
        joints.WristLeft = wrist;
        joints.HandLeft = hand;
    }
}

export function lerp3(a: Vec3, b: Vec3, t: number): Vec3 {
    return [a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t, a[2] + (b[2] - a[2]) * t];
}

const MIRROR: Record<JointName, JointName> = Object.fromEntries(
    JOINT_NAMES.map((name) => {
        if (name.endsWith("Left")) return [name, name.slice(0, -4) + "Right"];
        if (name.endsWith("Right")) return [name, name.slice(0, -5) + "Left"];
        return [name, name];
    }),
) as Record<JointName, JointName>;

/** Reflect about x = 0, swapping left and right joints. */
export function mirrorJoints(joints: Joints): Joints {
    const out = {} as Joints;
    for (const name of JOINT_NAMES) {
        const [x, y, z] = joints[name];
        out[MIRROR[name]] = [-x, y, z];
    }
    return out;
}

export function toFrameWire(joints: Joints, t: number): FrameWire {
    const wire: FrameWire = { t, joints: {} };
    for (const name of JOINT_NAMES) {
        wire.joints[name] = joints[name];
    }
    return wire;
}
