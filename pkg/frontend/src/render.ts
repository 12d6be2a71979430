/** Canvas rendering for the puppet panel and the cave game view.
 *
 * Drawing goes through a minimal 2D surface interface so tests can record
 * draw calls without a real canvas.
 */

import type { ArmWire } from "./protocol.js";
import type { Joints, Vec3 } from "./skeleton.js";
import type { GameViewModel } from "./viewmodel.js";

export interface Draw2D {
    fillStyle: string | CanvasGradient | CanvasPattern;
    strokeStyle: string | CanvasGradient | CanvasPattern;
    lineWidth: number;
    font: string;
    textAlign: CanvasTextAlign;
    globalAlpha: number;
    clearRect(x: number, y: number, w: number, h: number): void;
    fillRect(x: number, y: number, w: number, h: number): void;
    beginPath(): void;
    arc(x: number, y: number, r: number, a0: number, a1: number): void;
    moveTo(x: number, y: number): void;
    lineTo(x: number, y: number): void;
    stroke(): void;
    fill(): void;
    fillText(text: string, x: number, y: number): void;
    save(): void;
    restore(): void;
}

export const HOOK_ANCHOR_Y = 2.5;

// Cave world window: x in [-1.2, 1.2], y in [-0.1, 2.7].
const WORLD_X = [-1.2, 1.2] as const;
const WORLD_Y = [-0.1, 2.7] as const;

const JEWEL_COLORS = ["#e5484d", "#f5a524", "#ffe14d", "#46c46e", "#4da3ff", "#b06bff"];
const JEWEL_RADII_PX_BASE = [7, 10, 13];

function worldToScreen(w: number, h: number, x: number, y: number): [number, number] {
    const sx = ((x - WORLD_X[0]) / (WORLD_X[1] - WORLD_X[0])) * w;
    const sy = h - ((y - WORLD_Y[0]) / (WORLD_Y[1] - WORLD_Y[0])) * h;
    return [sx, sy];
}

export function renderGame(ctx: Draw2D, w: number, h: number, vm: GameViewModel): void {
    ctx.clearRect(0, 0, w, h);
    ctx.fillStyle = "#1c1431";
    ctx.fillRect(0, 0, w, h);
    // cave floor
    ctx.fillStyle = "#2d2148";
    ctx.fillRect(0, h * 0.92, w, h * 0.08);

    // jewels still on the floor
    for (const jewel of vm.uncollected) {
        const [jx, jy] = worldToScreen(w, h, jewel.x, jewel.y);
        ctx.beginPath();
        ctx.fillStyle = JEWEL_COLORS[jewel.index % JEWEL_COLORS.length];
        ctx.arc(jx, jy, JEWEL_RADII_PX_BASE[jewel.size], 0, Math.PI * 2);
        ctx.fill();
    }

    // pendulum rail, line, and hook tip
    const state = vm.lastState;
    const anchorX = state?.hook.anchorX ?? 0;
    const extension = state?.hook.extension ?? 0;
    const [railX0, railY] = worldToScreen(w, h, -1, HOOK_ANCHOR_Y);
    const [railX1] = worldToScreen(w, h, 1, HOOK_ANCHOR_Y);
    ctx.strokeStyle = "#6b5a93";
    ctx.lineWidth = 2;
    ctx.beginPath();
    ctx.moveTo(railX0, railY);
    ctx.lineTo(railX1, railY);
    ctx.stroke();

    const [hx, hy0] = worldToScreen(w, h, anchorX, HOOK_ANCHOR_Y);
    const [, hy1] = worldToScreen(w, h, anchorX, HOOK_ANCHOR_Y - extension);
    ctx.strokeStyle = "#d9c9a3";
    ctx.beginPath();
    ctx.moveTo(hx, hy0);
    ctx.lineTo(hx, hy1);
    ctx.stroke();
    ctx.beginPath();
    ctx.fillStyle = "#d9c9a3";
    ctx.arc(hx, hy1, 5, 0, Math.PI * 2);
    ctx.fill();

    // HUD: score, repetitions, stage, segment progress
    ctx.fillStyle = "#ffffff";
    ctx.font = "16px sans-serif";
    ctx.textAlign = "left";
    ctx.fillText(`score ${vm.hudScore} / ${vm.requiredScore}`, 12, 24);
    ctx.fillText(`reps ${vm.hudExercises} / ${vm.requiredReps}`, 12, 44);
    ctx.textAlign = "right";
    ctx.fillText(`level ${vm.sublevel[0]} stage ${vm.sublevel[1]}`, w - 12, 24);

    if (vm.segmentProgress > 0) {
        ctx.fillStyle = "#3a2f5b";
        ctx.fillRect(12, 54, 120, 8);
        ctx.fillStyle = vm.segmentProgress < 0.8 ? "#46c46e" : "#e5484d";
        ctx.fillRect(12, 54, 120 * vm.segmentProgress, 8);
    }

    if (vm.flash) {
        ctx.textAlign = "left";
        ctx.fillStyle = vm.flash.kind === "good" ? "#46c46e" : "#e5484d";
        ctx.fillText(vm.flash.text, 12, 72);
    }

    if (vm.banner) {
        ctx.globalAlpha = 0.85;
        ctx.fillStyle = "#0d0a18";
        ctx.fillRect(0, h * 0.35, w, h * 0.3);
        ctx.globalAlpha = 1;
        ctx.textAlign = "center";
        ctx.font = "28px sans-serif";
        ctx.fillStyle = vm.banner.outcome === "Won" ? "#ffe14d" : "#e5484d";
        const headline = vm.banner.gameComplete
            ? "All stages complete!"
            : vm.banner.outcome === "Won"
              ? "You won this stage!"
              : "Try again";
        ctx.fillText(headline, w / 2, h * 0.47);
        ctx.font = "16px sans-serif";
        ctx.fillStyle = "#ffffff";
        ctx.fillText(
            `score ${vm.banner.score}, reps ${vm.banner.exercisesCompleted}`,
            w / 2,
            h * 0.53,
        );
    }

    if (vm.paused) {
        ctx.globalAlpha = 0.55;
        ctx.fillStyle = "#55555f";
        ctx.fillRect(0, 0, w, h);
        ctx.globalAlpha = 1;
        ctx.textAlign = "center";
        ctx.fillStyle = "#ffffff";
        ctx.font = "24px sans-serif";
        ctx.fillText("paused", w / 2, h / 2);
    }
}

// Puppet side view: screen x = toward the sensor, screen y = up.
const PUPPET_SCALE = 220; // pixels per meter
const SIDE_BONES: [keyof Joints, keyof Joints][] = [
    ["Head", "ShoulderCenter"],
    ["ShoulderCenter", "Spine"],
    ["Spine", "HipCenter"],
    ["HipCenter", "KneeRight"],
    ["KneeRight", "AnkleRight"],
    ["AnkleRight", "FootRight"],
];

function sideView(w: number, h: number, joint: Vec3): [number, number] {
    const originX = w * 0.45;
    const originY = h * 0.9;
    const forward = 1.4 - joint[2]; // toward the sensor
    return [originX + forward * PUPPET_SCALE, originY - joint[1] * PUPPET_SCALE];
}

export function renderPuppet(
    ctx: Draw2D,
    w: number,
    h: number,
    joints: Joints,
    arm: ArmWire,
    spriteColor: string,
): void {
    ctx.clearRect(0, 0, w, h);
    ctx.fillStyle = "#10131c";
    ctx.fillRect(0, 0, w, h);

    ctx.strokeStyle = spriteColor;
    ctx.lineWidth = 4;
    for (const [a, b] of SIDE_BONES) {
        const [x0, y0] = sideView(w, h, joints[a]);
        const [x1, y1] = sideView(w, h, joints[b]);
        ctx.beginPath();
        ctx.moveTo(x0, y0);
        ctx.lineTo(x1, y1);
        ctx.stroke();
    }
    const [headX, headY] = sideView(w, h, joints.Head);
    ctx.beginPath();
    ctx.arc(headX, headY - 12, 14, 0, Math.PI * 2);
    ctx.stroke();

    const names =
        arm === "right"
            ? (["ShoulderRight", "ElbowRight", "HandRight"] as const)
            : (["ShoulderLeft", "ElbowLeft", "HandLeft"] as const);
    ctx.strokeStyle = "#ffd166";
    ctx.lineWidth = 6;
    const [sx, sy] = sideView(w, h, joints[names[0]]);
    const [ex, ey] = sideView(w, h, joints[names[1]]);
    const [hx, hy] = sideView(w, h, joints[names[2]]);
    ctx.beginPath();
    ctx.moveTo(sx, sy);
    ctx.lineTo(ex, ey);
    ctx.lineTo(hx, hy);
    ctx.stroke();

    // drag handle on the hand
    ctx.beginPath();
    ctx.fillStyle = "#ffd166";
    ctx.arc(hx, hy, 9, 0, Math.PI * 2);
    ctx.fill();
}

/** Pointer position on the puppet canvas to drag coordinates (meters
 * relative to the exercise shoulder, side view). */
export function dragTarget(
    w: number,
    h: number,
    px: number,
    py: number,
    joints: Joints,
    arm: ArmWire,
): { forward: number; up: number } {
    const shoulder = arm === "right" ? joints.ShoulderRight : joints.ShoulderLeft;
    const [sx, sy] = sideView(w, h, shoulder);
    return {
        forward: (px - sx) / PUPPET_SCALE,
        up: (sy - py) / PUPPET_SCALE,
    };
}
