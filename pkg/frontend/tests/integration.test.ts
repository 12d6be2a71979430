/** Live-service integration: the scripted preset drives the real client
 * pipeline (puppet kinematics, 30 per second ticker, session protocol)
 * against a spawned server over a real WebSocket. */

import { ChildProcess, spawn } from "node:child_process";
import net from "node:net";
import { afterAll, beforeAll, describe, expect, it } from "vitest";
import WebSocket from "ws";

import { FrameTicker, SessionClient, Transport } from "../src/client.js";
import { presetPlay } from "../src/presets.js";
import type { PuppetPose } from "../src/puppet.js";
import { puppetJoints, restPose } from "../src/puppet.js";
import type { ServerMessage, StateMsg } from "../src/protocol.js";
import { GameViewModel } from "../src/viewmodel.js";

let server: ChildProcess;
let baseUrl: string;
let wsUrl: string;

async function freePort(): Promise<number> {
    return new Promise((resolve, reject) => {
        const probe = net.createServer();
        probe.on("error", reject);
        probe.listen(0, "127.0.0.1", () => {
            const port = (probe.address() as net.AddressInfo).port;
            probe.close(() => resolve(port));
        });
    });
}

async function waitForHealth(url: string, timeoutMs: number): Promise<void> {
    const deadline = Date.now() + timeoutMs;
    for (;;) {
        try {
            const response = await fetch(url);
            if (response.ok) return;
        } catch {
            // server not up yet
        }
        if (Date.now() > deadline) throw new Error(`service at ${url} never became healthy`);
        await new Promise((r) => setTimeout(r, 150));
    }
}

function nodeWsTransport(socket: WebSocket): Transport {
    const pending: string[] = [];
    socket.on("open", () => {
        for (const text of pending.splice(0)) socket.send(text);
    });
    return {
        send(text) {
            if (socket.readyState === WebSocket.OPEN) socket.send(text);
            else pending.push(text);
        },
        close: () => socket.close(),
        onMessage(handler) {
            socket.on("message", (data) => handler(data.toString()));
        },
        onClose(handler) {
            socket.on("close", () => handler());
        },
    };
}

beforeAll(async () => {
    const port = await freePort();
    baseUrl = `http://127.0.0.1:${port}`;
    wsUrl = `ws://127.0.0.1:${port}/session`;
    server = spawn("gemflex", ["serve", "--bind", `127.0.0.1:${port}`], {
        stdio: ["ignore", "pipe", "pipe"],
    });
    await waitForHealth(`${baseUrl}/health`, 20_000);
}, 30_000);

afterAll(() => {
    server?.kill();
});

describe("live service", () => {
    it("reports its protocol version", async () => {
        const body = (await (await fetch(`${baseUrl}/health`)).json()) as Record<string, unknown>;
        expect(body.protocolVersion).toBe(1);
        expect(body.service).toBe("gemflex");
    });

    it(
        "scripted preset repetition: feedback, hook cycle, HUD score, win banner",
        async () => {
            const socket = new WebSocket(wsUrl);
            const vm = new GameViewModel();
            const messages: ServerMessage[] = [];
            let closed: () => void = () => {};
            const closedPromise = new Promise<void>((resolve) => (closed = resolve));

            const client = new SessionClient(
                nodeWsTransport(socket),
                (msg) => {
                    messages.push(msg);
                    vm.apply(msg);
                },
                closed,
            );

            const preset = presetPlay("elbow-rep");
            const queue: PuppetPose[] = [...preset.poses];
            let pose = restPose();
            const ticker = new FrameTicker(() => {
                const next = queue.shift();
                if (next) {
                    pose = next;
                    client.frame(puppetJoints(pose, "elbow", "right"));
                } else {
                    ticker.stop();
                    client.end();
                }
            });

            client.hello();
            client.start("elbow", "right", 1, 0);
            ticker.start();
            await closedPromise;

            // exactly one recognized repetition
            const feedback = messages.filter((m) => m.type === "GestureFeedback");
            expect(feedback).toHaveLength(1);
            expect(feedback[0].type === "GestureFeedback" && feedback[0].event).toBe("Completed");

            // the hook cycle is visible in the state trace
            const states = messages.filter((m): m is StateMsg => m.type === "State");
            expect(states.length).toBe(preset.poses.length + 1); // one per frame + final
            expect(Math.max(...states.map((s) => s.hook.extension))).toBeGreaterThan(0);

            // HUD score is exactly the last server state's score
            expect(vm.hudScore).toBe(states.at(-1)!.score);

            // win banner once the win rule is satisfied (drops resolve at end)
            expect(vm.banner?.outcome).toBe("Won");
            expect(vm.banner!.score).toBeGreaterThanOrEqual(10);
            expect(vm.banner!.exercisesCompleted).toBe(1);
        },
        60_000,
    );

    it("rejects a protocol version mismatch", async () => {
        const socket = new WebSocket(wsUrl);
        const reply = await new Promise<Record<string, unknown>>((resolve) => {
            socket.on("open", () => socket.send(JSON.stringify({ type: "Hello", protocolVersion: 99 })));
            socket.on("message", (data) => resolve(JSON.parse(data.toString())));
        });
        expect(reply.type).toBe("Error");
        expect(reply.code).toBe("version");
        socket.close();
    });
});
