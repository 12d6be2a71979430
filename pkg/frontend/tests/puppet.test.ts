import { describe, expect, it } from "vitest";

import {
    ELBOW_MAX_DEG,
    SHOULDER_MAX_DEG,
    UPPER_ARM_TILT_LIMIT_DEG,
    clampPose,
    poseFromDrag,
    puppetJoints,
    restPose,
} from "../src/puppet.js";
import { FOREARM_M, JOINT_NAMES, UPPER_ARM_M } from "../src/skeleton.js";

const dist = (a: number[], b: number[]) =>
    Math.hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2]);

describe("puppet forward kinematics", () => {
    it("always emits all twenty joints", () => {
        for (const exercise of ["elbow", "shoulder"] as const) {
            for (const arm of ["right", "left"] as const) {
                const joints = puppetJoints({ upperArmDeg: 4, mainDeg: 90 }, exercise, arm);
                for (const name of JOINT_NAMES) {
                    expect(joints[name]).toBeDefined();
                    expect(joints[name].every(Number.isFinite)).toBe(true);
                }
            }
        }
    });

    it("keeps segment lengths at the synthesizer defaults", () => {
        for (const mainDeg of [0, 45, 90, 135, 170]) {
            const joints = puppetJoints({ upperArmDeg: 0, mainDeg }, "elbow", "right");
            expect(dist(joints.ElbowRight, joints.HandRight)).toBeCloseTo(FOREARM_M, 10);
        }
        for (const mainDeg of [0, 80, 160]) {
            const joints = puppetJoints({ upperArmDeg: 0, mainDeg }, "shoulder", "right");
            expect(dist(joints.ShoulderRight, joints.ElbowRight)).toBeCloseTo(UPPER_ARM_M, 10);
            expect(dist(joints.ElbowRight, joints.HandRight)).toBeCloseTo(FOREARM_M, 10);
        }
    });

    it("rest pose hangs the hand below the elbow, raised pose above", () => {
        const down = puppetJoints(restPose(), "elbow", "right");
        expect(down.HandRight[1]).toBeLessThan(down.ElbowRight[1]);
        const up = puppetJoints({ upperArmDeg: 0, mainDeg: ELBOW_MAX_DEG }, "elbow", "right");
        expect(up.HandRight[1]).toBeGreaterThan(up.ElbowRight[1]);
    });

    it("shoulder sweep keeps the hand at or behind the elbow depth", () => {
        for (const mainDeg of [0, 30, 60, 90, 120, 160]) {
            const joints = puppetJoints({ upperArmDeg: 0, mainDeg }, "shoulder", "right");
            expect(joints.HandRight[2]).toBeGreaterThanOrEqual(joints.ElbowRight[2]);
        }
    });

    it("left arm frames mirror right arm frames", () => {
        const right = puppetJoints({ upperArmDeg: 0, mainDeg: 100 }, "elbow", "right");
        const left = puppetJoints({ upperArmDeg: 0, mainDeg: 100 }, "elbow", "left");
        expect(left.HandLeft[0]).toBeCloseTo(-right.HandRight[0], 12);
        expect(left.HandLeft[1]).toBe(right.HandRight[1]);
        expect(left.HandLeft[2]).toBe(right.HandRight[2]);
    });

    it("clamps angles to anatomical ranges", () => {
        expect(clampPose({ upperArmDeg: 50, mainDeg: 400 }, "elbow")).toEqual({
            upperArmDeg: UPPER_ARM_TILT_LIMIT_DEG,
            mainDeg: ELBOW_MAX_DEG,
        });
        expect(clampPose({ upperArmDeg: -5, mainDeg: -10 }, "shoulder")).toEqual({
            upperArmDeg: 0,
            mainDeg: 0,
        });
        expect(clampPose({ upperArmDeg: 0, mainDeg: 400 }, "shoulder").mainDeg).toBe(
            SHOULDER_MAX_DEG,
        );
    });
});

describe("drag inverse kinematics", () => {
    it("shoulder drag points the arm at the target", () => {
        expect(poseFromDrag("shoulder", 0, -0.5).mainDeg).toBeCloseTo(0, 6);
        expect(poseFromDrag("shoulder", 0.5, 0).mainDeg).toBeCloseTo(90, 6);
        // overhead-and-behind target clamps at the anatomical limit
        expect(poseFromDrag("shoulder", 0.1, 0.5).mainDeg).toBe(SHOULDER_MAX_DEG);
    });

    it("elbow drag folds the forearm toward a raised target", () => {
        const down = poseFromDrag("elbow", 0, -(UPPER_ARM_M + FOREARM_M) + 0.01);
        expect(down.mainDeg).toBeLessThan(15);
        // target near the shoulder: forearm fully folded
        const up = poseFromDrag("elbow", 0.05, -UPPER_ARM_M + FOREARM_M * 0.8);
        expect(up.mainDeg).toBeGreaterThan(90);
    });

    it("elbow drag respects the upper arm tilt limit", () => {
        const pose = poseFromDrag("elbow", 0.5, 0.1);
        expect(pose.upperArmDeg).toBeLessThanOrEqual(UPPER_ARM_TILT_LIMIT_DEG);
        expect(pose.upperArmDeg).toBeGreaterThanOrEqual(0);
    });

    it("drag round trip: the arm sweep matches the target bearing", () => {
        const targets: [number, number][] = [
            [0.05, -0.4],
            [0.2, -0.2],
            [0.15, 0.1],
        ];
        for (const [forward, upward] of targets) {
            const pose = poseFromDrag("shoulder", forward, upward);
            const joints = puppetJoints(pose, "shoulder", "right");
            const s = joints.ShoulderRight;
            const hand = joints.HandRight;
            const sweep =
                (Math.atan2(Math.hypot(hand[0] - s[0], hand[2] - s[2]), -(hand[1] - s[1])) * 180) /
                Math.PI;
            expect(sweep).toBeCloseTo(pose.mainDeg, 6);
            const bearing = (Math.atan2(forward, -upward) * 180) / Math.PI;
            expect(pose.mainDeg).toBeCloseTo(Math.min(SHOULDER_MAX_DEG, Math.max(0, bearing)), 6);
        }
    });
});
