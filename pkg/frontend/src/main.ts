/** Browser entry point: wires the puppet, the session client, and the
 * canvases together. All game numbers render from server state. */

import { FrameTicker, SessionClient, webSocketTransport } from "./client.js";
import { presetNames, presetPlay } from "./presets.js";
import type { ArmWire, ExerciseWire } from "./protocol.js";
import type { PuppetPose } from "./puppet.js";
import { poseFromDrag, puppetJoints, restPose } from "./puppet.js";
import { dragTarget, renderGame, renderPuppet } from "./render.js";
import { GameViewModel } from "./viewmodel.js";

const $ = <T extends HTMLElement>(id: string): T => {
    const el = document.getElementById(id);
    if (!el) throw new Error(`missing element #${id}`);
    return el as T;
};

const puppetCanvas = $<HTMLCanvasElement>("puppet");
const gameCanvas = $<HTMLCanvasElement>("game");
const exerciseSelect = $<HTMLSelectElement>("exercise");
const armSelect = $<HTMLSelectElement>("arm");
const repsInput = $<HTMLInputElement>("reps");
const seedInput = $<HTMLInputElement>("seed");
const spriteSelect = $<HTMLSelectElement>("sprite");
const presetSelect = $<HTMLSelectElement>("preset");
const statusLine = $<HTMLDivElement>("status");

for (const name of presetNames()) {
    const option = document.createElement("option");
    option.value = name;
    option.textContent = name;
    presetSelect.appendChild(option);
}

const vm = new GameViewModel();
let client: SessionClient | null = null;
let pose: PuppetPose = restPose();
let exercise: ExerciseWire = "elbow";
let arm: ArmWire = "right";
let presetQueue: PuppetPose[] = [];
let dragging = false;

const ticker = new FrameTicker(() => {
    if (!client) return;
    if (presetQueue.length > 0) {
        pose = presetQueue.shift()!;
    }
    client.frame(puppetJoints(pose, exercise, arm));
});

function connectAndStart(): void {
    client?.close();
    ticker.stop();
    exercise = exerciseSelect.value as ExerciseWire;
    arm = armSelect.value as ArmWire;
    pose = restPose();
    presetQueue = [];
    vm.paused = false;

    const scheme = location.protocol === "https:" ? "wss" : "ws";
    const transport = webSocketTransport(`${scheme}://${location.host}/session`);
    client = new SessionClient(
        transport,
        (msg) => vm.apply(msg),
        () => {
            ticker.stop();
            statusLine.textContent = "disconnected";
        },
    );
    client.hello();
    client.start(exercise, arm, Math.max(1, Number(repsInput.value) || 1), Number(seedInput.value) || 0);
    ticker.start();
    statusLine.textContent = "session running";
}

$<HTMLButtonElement>("start").onclick = connectAndStart;

$<HTMLButtonElement>("pause").onclick = () => {
    if (!client || vm.paused) return;
    client.pause();
    vm.paused = true;
    ticker.stop();
    statusLine.textContent = "paused";
};

$<HTMLButtonElement>("resume").onclick = () => {
    if (!client || !vm.paused) return;
    client.resume();
    vm.paused = false;
    ticker.start();
    statusLine.textContent = "session running";
};

$<HTMLButtonElement>("end").onclick = () => {
    if (!client) return;
    ticker.stop();
    client.end();
    statusLine.textContent = "session ended";
};

$<HTMLButtonElement>("play-preset").onclick = () => {
    const preset = presetPlay(presetSelect.value);
    if (preset.exercise !== exercise) {
        statusLine.textContent = `preset needs exercise=${preset.exercise}`;
        return;
    }
    presetQueue = [...preset.poses];
    statusLine.textContent = `playing preset ${preset.name}`;
};

function pointerPose(event: PointerEvent): void {
    const rect = puppetCanvas.getBoundingClientRect();
    const px = ((event.clientX - rect.left) / rect.width) * puppetCanvas.width;
    const py = ((event.clientY - rect.top) / rect.height) * puppetCanvas.height;
    const joints = puppetJoints(pose, exercise, arm);
    const target = dragTarget(puppetCanvas.width, puppetCanvas.height, px, py, joints, arm);
    // The side view faces the same way for either arm.
    pose = poseFromDrag(exercise, target.forward, target.up);
}

puppetCanvas.addEventListener("pointerdown", (event) => {
    dragging = true;
    puppetCanvas.setPointerCapture(event.pointerId);
    pointerPose(event);
});
puppetCanvas.addEventListener("pointermove", (event) => {
    if (dragging) pointerPose(event);
});
puppetCanvas.addEventListener("pointerup", () => {
    dragging = false;
});

function draw(): void {
    vm.tick();
    const pctx = puppetCanvas.getContext("2d");
    const gctx = gameCanvas.getContext("2d");
    if (pctx) {
        renderPuppet(
            pctx,
            puppetCanvas.width,
            puppetCanvas.height,
            puppetJoints(pose, exercise, arm),
            arm,
            spriteSelect.value,
        );
    }
    if (gctx) {
        renderGame(gctx, gameCanvas.width, gameCanvas.height, vm);
    }
    requestAnimationFrame(draw);
}

requestAnimationFrame(draw);
