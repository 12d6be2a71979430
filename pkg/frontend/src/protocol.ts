/** Session protocol message types (version 1), mirroring the server schema. */

export const PROTOCOL_VERSION = 1;

export type ExerciseWire = "elbow" | "shoulder";
export type ArmWire = "left" | "right";

export interface FrameWire {
    t: number;
    joints: Record<string, [number, number, number]>;
}

export type ClientMessage =
    | { type: "Hello"; protocolVersion: number }
    | { type: "StartSession"; config: { exercise: ExerciseWire; arm: ArmWire; repetitions: number }; sessionSeed: number }
    | { type: "StartSession"; profileId: string; sessionSeed: number }
    | { type: "Frame"; frame: FrameWire }
    | { type: "Pause" }
    | { type: "Resume" }
    | { type: "EndSession" };

export interface JewelWire {
    index: number;
    size: number;
    x: number;
    y: number;
    value: number;
}

export interface SessionStartedMsg {
    type: "SessionStarted";
    sublevel: [number, number];
    requiredScore: number;
    requiredReps: number;
    layout: JewelWire[];
}

export interface StateMsg {
    type: "State";
    segment: "Idle" | "AwaitUp" | "AwaitDownAgain";
    framesInSegment: number;
    hook: { anchorX: number; extension: number; phase: "Swinging" | "Extending" | "Retracting" };
    score: number;
    exercisesCompleted: number;
    outcome: "Ongoing" | "Won" | "Lost";
    sublevel: [number, number];
    collectedJewels: number[];
}

export interface GestureFeedbackMsg {
    type: "GestureFeedback";
    frame: number;
    event: "Completed" | "Aborted";
    reason?: "Timeout" | "InvalidMovement";
}

export interface OutcomeBannerMsg {
    type: "OutcomeBanner";
    outcome: "Won" | "Lost";
    score: number;
    exercisesCompleted: number;
    sublevel: [number, number];
    gameComplete?: boolean;
}

export interface HelloMsg {
    type: "Hello";
    protocolVersion: number;
    service: string;
}

export interface ErrorMsg {
    type: "Error";
    code: string;
    message: string;
}

export type ServerMessage =
    | HelloMsg
    | SessionStartedMsg
    | StateMsg
    | GestureFeedbackMsg
    | OutcomeBannerMsg
    | ErrorMsg;

export function parseServerMessage(text: string): ServerMessage {
    const msg = JSON.parse(text);
    if (typeof msg !== "object" || msg === null || typeof msg.type !== "string") {
        throw new Error("malformed server message");
    }
    return msg as ServerMessage;
}
