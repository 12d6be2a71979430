import { describe, expect, it } from "vitest";

import { FRAME_FPS, FrameTicker, SessionClient, Transport } from "../src/client.js";
import { neutralJoints } from "../src/skeleton.js";

/** Manual clock implementing the injected timer interface. */
class FakeTimers {
    now = 0;
    private tasks: { at: number; every: number; fn: () => void; id: number }[] = [];
    private nextId = 1;

    setInterval(fn: () => void, ms: number): unknown {
        const id = this.nextId++;
        this.tasks.push({ at: this.now + ms, every: ms, fn, id });
        return id;
    }

    clearInterval(handle: unknown): void {
        this.tasks = this.tasks.filter((t) => t.id !== handle);
    }

    advance(ms: number): void {
        const deadline = this.now + ms;
        for (;;) {
            const due = this.tasks.filter((t) => t.at <= deadline);
            if (due.length === 0) break;
            due.sort((a, b) => a.at - b.at);
            const task = due[0];
            this.now = task.at;
            task.at += task.every;
            task.fn();
        }
        this.now = deadline;
    }
}

function loopbackTransport(sent: string[]): Transport {
    return {
        send: (text) => sent.push(text),
        close: () => {},
        onMessage: () => {},
        onClose: () => {},
    };
}

describe("frame cadence", () => {
    it("emits 30 frames per second while running", () => {
        // count may sit one tick under the boundary (33.33 ms * 30 rounds
        // a hair past the second); the rate itself is fixed
        const timers = new FakeTimers();
        let emitted = 0;
        const ticker = new FrameTicker(() => emitted++, timers);
        ticker.start();
        timers.advance(1000);
        expect(Math.abs(emitted - FRAME_FPS)).toBeLessThanOrEqual(1);
        timers.advance(2000);
        expect(Math.abs(emitted - 3 * FRAME_FPS)).toBeLessThanOrEqual(1);
    });

    it("emits nothing while stopped and resumes cleanly", () => {
        const timers = new FakeTimers();
        let emitted = 0;
        const ticker = new FrameTicker(() => emitted++, timers);
        ticker.start();
        timers.advance(500);
        const beforePause = emitted;
        ticker.stop();
        timers.advance(5000);
        expect(emitted).toBe(beforePause);
        ticker.start();
        timers.advance(1000);
        expect(Math.abs(emitted - (beforePause + FRAME_FPS))).toBeLessThanOrEqual(1);
    });

    it("frame timestamps advance by exactly one thirtieth per frame", () => {
        const sent: string[] = [];
        const client = new SessionClient(loopbackTransport(sent), () => {});
        const joints = neutralJoints();
        client.frame(joints);
        client.frame(joints);
        client.frame(joints);
        const stamps = sent.map((text) => JSON.parse(text).frame.t);
        expect(stamps).toEqual([0, 1 / FRAME_FPS, 2 / FRAME_FPS]);
    });

    it("double start does not double the cadence", () => {
        const timers = new FakeTimers();
        let emitted = 0;
        const ticker = new FrameTicker(() => emitted++, timers);
        ticker.start();
        ticker.start();
        timers.advance(1000);
        expect(Math.abs(emitted - FRAME_FPS)).toBeLessThanOrEqual(1);
    });
});
