/** Client-side session state, fed purely by server messages.
 *
 * Every number shown in the HUD comes from the last State message (or the
 * banner for a decided attempt); the client never computes scores itself.
 */

import type {
    JewelWire,
    OutcomeBannerMsg,
    ServerMessage,
    StateMsg,
} from "./protocol.js";

export interface FeedbackFlash {
    text: string;
    kind: "good" | "bad";
    ttl: number;
}

const FLASH_FRAMES = 45;

export class GameViewModel {
    layout: JewelWire[] = [];
    requiredScore = 0;
    requiredReps = 0;
    sublevel: [number, number] = [1, 1];
    lastState: StateMsg | null = null;
    banner: OutcomeBannerMsg | null = null;
    flash: FeedbackFlash | null = null;
    paused = false;
    connected = false;
    errors: string[] = [];

    apply(msg: ServerMessage): void {
        switch (msg.type) {
            case "Hello":
                this.connected = true;
                break;
            case "SessionStarted":
                this.layout = msg.layout;
                this.requiredScore = msg.requiredScore;
                this.requiredReps = msg.requiredReps;
                this.sublevel = msg.sublevel;
                this.banner = null;
                this.lastState = null;
                break;
            case "State":
                this.lastState = msg;
                break;
            case "GestureFeedback":
                if (msg.event === "Completed") {
                    this.flash = { text: "Repetition counted!", kind: "good", ttl: FLASH_FRAMES };
                } else if (msg.reason === "Timeout") {
                    this.flash = { text: "Too slow, try again", kind: "bad", ttl: FLASH_FRAMES };
                } else {
                    this.flash = { text: "Watch your form", kind: "bad", ttl: FLASH_FRAMES };
                }
                break;
            case "OutcomeBanner":
                this.banner = msg;
                break;
            case "Error":
                if (msg.code !== "paused") {
                    this.errors.push(`${msg.code}: ${msg.message}`);
                    if (this.errors.length > 5) this.errors.shift();
                }
                break;
        }
    }

    /** Server-authoritative score: always the last State's value. */
    get hudScore(): number {
        return this.lastState?.score ?? 0;
    }

    get hudExercises(): number {
        return this.lastState?.exercisesCompleted ?? 0;
    }

    /** Segment progress toward the 100-frame window, 0..1. */
    get segmentProgress(): number {
        if (!this.lastState || this.lastState.segment === "Idle") return 0;
        return Math.min(1, this.lastState.framesInSegment / 100);
    }

    get uncollected(): JewelWire[] {
        const taken = new Set(this.lastState?.collectedJewels ?? []);
        return this.layout.filter((_, i) => !taken.has(i));
    }

    tick(): void {
        if (this.flash && --this.flash.ttl <= 0) {
            this.flash = null;
        }
    }
}
