/** Session client: message plumbing plus the fixed 30 per second frame
 * cadence. The transport and timers are injectable so tests can run
 * without a browser or a wall clock. */

import type { ArmWire, ClientMessage, ExerciseWire, ServerMessage } from "./protocol.js";
import { PROTOCOL_VERSION, parseServerMessage } from "./protocol.js";
import type { Joints } from "./skeleton.js";
import { toFrameWire } from "./skeleton.js";

export interface Transport {
    send(text: string): void;
    close(): void;
    onMessage(handler: (text: string) => void): void;
    onClose(handler: () => void): void;
}

export function webSocketTransport(url: string): Transport {
    const socket = new WebSocket(url);
    const pending: string[] = [];
    socket.onopen = () => {
        for (const text of pending.splice(0)) socket.send(text);
    };
    return {
        send(text) {
            if (socket.readyState === WebSocket.OPEN) socket.send(text);
            else pending.push(text);
        },
        close: () => socket.close(),
        onMessage(handler) {
            socket.onmessage = (event) => handler(String(event.data));
        },
        onClose(handler) {
            socket.onclose = () => handler();
        },
    };
}

export const FRAME_FPS = 30;

export interface Timers {
    setInterval(fn: () => void, ms: number): unknown;
    clearInterval(handle: unknown): void;
}

export class SessionClient {
    private frameIndex = 0;

    constructor(
        private transport: Transport,
        onMessage: (msg: ServerMessage) => void,
        onClose: () => void = () => {},
    ) {
        transport.onMessage((text) => onMessage(parseServerMessage(text)));
        transport.onClose(onClose);
    }

    private send(msg: ClientMessage): void {
        this.transport.send(JSON.stringify(msg));
    }

    hello(): void {
        this.send({ type: "Hello", protocolVersion: PROTOCOL_VERSION });
    }

    start(exercise: ExerciseWire, arm: ArmWire, repetitions: number, sessionSeed: number): void {
        this.send({ type: "StartSession", config: { exercise, arm, repetitions }, sessionSeed });
    }

    /** Sends one skeleton frame; timestamps advance by 1/30 s per frame. */
    frame(joints: Joints): void {
        this.send({ type: "Frame", frame: toFrameWire(joints, this.frameIndex / FRAME_FPS) });
        this.frameIndex += 1;
    }

    pause(): void {
        this.send({ type: "Pause" });
    }

    resume(): void {
        this.send({ type: "Resume" });
    }

    end(): void {
        this.send({ type: "EndSession" });
    }

    close(): void {
        this.transport.close();
    }
}

/** Emits the current puppet frame at a fixed cadence while running. */
export class FrameTicker {
    private handle: unknown = null;

    constructor(
        private emit: () => void,
        private timers: Timers = globalThis as unknown as Timers,
        private fps: number = FRAME_FPS,
    ) {}

    get running(): boolean {
        return this.handle !== null;
    }

    start(): void {
        if (this.handle !== null) return;
        this.handle = this.timers.setInterval(() => this.emit(), 1000 / this.fps);
    }

    stop(): void {
        if (this.handle !== null) {
            this.timers.clearInterval(this.handle);
            this.handle = null;
        }
    }
}
