/**
 * Wire types for the play service's JSON protocol.
 *
 * One persistent WebSocket carries JSON text frames both ways; every
 * message has `type` and `v`. The server is authoritative for all game
 * logic, the client only mirrors the frames it receives.
 */

export const PROTOCOL_VERSION = 1;

/** Action codes shared with the server. */
export const ACTION = {
  noop: 0,
  left: 1,
  up: 2,
  right: 3,
  down: 4,
  fire: 5,
} as const;

export type ActionCode = (typeof ACTION)[keyof typeof ACTION];

/** Sparse observation cell: [channel, row, col] on the 10x10 grid. */
export type Cell = [number, number, number];

export interface FrameMessage {
  type: "frame";
  v: number;
  session_id: string | null;
  frame_count: number;
  cells: Cell[];
  reward: number;
  terminal: boolean;
  score: number;
}

export interface CreatedMessage {
  type: "created";
  v: number;
  session_id: string;
  mode: "interactive" | "replay";
  game: string;
  seed: number;
  sticky_prob: number;
  ramping: boolean;
  channel_names: string[];
  /** Present on replay sessions only: number of acts in the file. */
  frame_total?: number;
  frame: FrameMessage;
}

export interface ErrorMessage {
  type: "error";
  v: number;
  code: string;
  message: string;
}

export type ServerMessage = CreatedMessage | FrameMessage | ErrorMessage;

export interface CreateOptions {
  seed?: number;
  stickyProb?: number;
  ramping?: boolean;
}

export function createRequest(game: string, options: CreateOptions = {}): string {
  const payload: Record<string, unknown> = {
    type: "create",
    v: PROTOCOL_VERSION,
    game,
  };
  if (options.seed !== undefined) payload.seed = options.seed;
  if (options.stickyProb !== undefined) payload.sticky_prob = options.stickyProb;
  if (options.ramping !== undefined) payload.ramping = options.ramping;
  return JSON.stringify(payload);
}

export function actRequest(sessionId: string, action: number): string {
  return JSON.stringify({
    type: "act",
    v: PROTOCOL_VERSION,
    session_id: sessionId,
    action_code: action,
  });
}

export function resetRequest(sessionId: string): string {
  return JSON.stringify({ type: "reset", v: PROTOCOL_VERSION, session_id: sessionId });
}

export function replayLoadRequest(jsonl: string): string {
  return JSON.stringify({ type: "replay_load", v: PROTOCOL_VERSION, jsonl });
}

export function replaySeekRequest(sessionId: string, frame: number): string {
  return JSON.stringify({
    type: "replay_ctl",
    v: PROTOCOL_VERSION,
    session_id: sessionId,
    op: "seek",
    frame,
  });
}

export function replayStepRequest(sessionId: string): string {
  return JSON.stringify({
    type: "replay_ctl",
    v: PROTOCOL_VERSION,
    session_id: sessionId,
    op: "step",
  });
}

function isObject(value: unknown): value is Record<string, unknown> {
  return typeof value === "object" && value !== null && !Array.isArray(value);
}

function isCell(value: unknown): value is Cell {
  return (
    Array.isArray(value) &&
    value.length === 3 &&
    value.every((n) => typeof n === "number" && Number.isInteger(n))
  );
}

function isFrame(value: unknown): value is FrameMessage {
  if (!isObject(value) || value.type !== "frame") return false;
  return (
    typeof value.frame_count === "number" &&
    Array.isArray(value.cells) &&
    value.cells.every(isCell) &&
    typeof value.reward === "number" &&
    typeof value.terminal === "boolean" &&
    typeof value.score === "number"
  );
}

function isCreated(value: unknown): value is CreatedMessage {
  if (!isObject(value) || value.type !== "created") return false;
  return (
    typeof value.session_id === "string" &&
    (value.mode === "interactive" || value.mode === "replay") &&
    typeof value.game === "string" &&
    Array.isArray(value.channel_names) &&
    value.channel_names.every((n) => typeof n === "string") &&
    isFrame(value.frame)
  );
}

function isError(value: unknown): value is ErrorMessage {
  if (!isObject(value) || value.type !== "error") return false;
  return typeof value.code === "string" && typeof value.message === "string";
}

/**
 * Parse one server message. Throws on anything that is not valid JSON
 * or does not match a known message shape; the connection is the only
 * sane place to surface that.
 */
export function parseServerMessage(text: string): ServerMessage {
  let value: unknown;
  try {
    value = JSON.parse(text);
  } catch (exc) {
    throw new Error(`server sent invalid JSON: ${String(exc)}`);
  }
  if (isFrame(value) || isCreated(value) || isError(value)) {
    return value;
  }
  const kind = isObject(value) ? String(value.type) : typeof value;
  throw new Error(`server sent unrecognized message type: ${kind}`);
}
