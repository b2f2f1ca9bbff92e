/**
 * Client session model. Owns everything the UI shows: connection
 * state, the last frame, cumulative score, mode, and the lock-step
 * rule that there is never more than one request in flight.
 *
 * The transport is just a `send(text)` function; the socket owner
 * forwards incoming text to `handleMessage`. Requests resolve with the
 * server's reply (including error replies: an error is an answer, not
 * an exception; only a dropped connection rejects).
 */

import { keyToAction } from "./input.js";
import {
  CreatedMessage,
  CreateOptions,
  ErrorMessage,
  FrameMessage,
  ServerMessage,
  actRequest,
  createRequest,
  parseServerMessage,
  replayLoadRequest,
  replaySeekRequest,
  replayStepRequest,
  resetRequest,
} from "./protocol.js";

export type Transport = (text: string) => void;

export type ConnectionState = "idle" | "live" | "closed";

export type SessionMode = "play" | "replay";

interface Pending {
  resolve: (reply: ServerMessage) => void;
  reject: (reason: Error) => void;
}

export class SessionClient {
  connection: ConnectionState = "idle";
  mode: SessionMode = "play";
  sessionId: string | null = null;
  game = "";
  seed: number | null = null;
  channelNames: string[] = [];
  frame: FrameMessage | null = null;
  /** Running sum of received rewards (play); mirrored score (replay). */
  score = 0;
  terminal = false;
  /** Number of acts in the loaded replay file; null in play mode. */
  frameTotal: number | null = null;
  lastError: ErrorMessage | null = null;

  private readonly transport: Transport;
  private pending: Pending | null = null;
  private readonly changeListeners: Array<() => void> = [];

  constructor(transport: Transport) {
    this.transport = transport;
  }

  onChange(listener: () => void): void {
    this.changeListeners.push(listener);
  }

  /** True while a request is waiting for its reply. */
  get inflight(): boolean {
    return this.pending !== null;
  }

  /** Start an interactive session. */
  create(game: string, options: CreateOptions = {}): Promise<ServerMessage> {
    return this.request(createRequest(game, options));
  }

  /** Load a replay file's text and open a replay session for it. */
  loadReplay(jsonl: string): Promise<ServerMessage> {
    return this.request(replayLoadRequest(jsonl));
  }

  /**
   * Send one act. Returns null without sending when the session is not
   * ready for input: no session, replay mode, terminal frame shown, or
   * a request already in flight (that last refusal is what throttles
   * key repeat to one act per server reply).
   */
  act(action: number): Promise<ServerMessage> | null {
    if (
      this.sessionId === null ||
      this.mode !== "play" ||
      this.terminal ||
      this.inflight
    ) {
      return null;
    }
    return this.request(actRequest(this.sessionId, action));
  }

  /** Map a key press to an act; unbound keys do nothing. */
  pressKey(key: string): Promise<ServerMessage> | null {
    const action = keyToAction(key);
    if (action === null) return null;
    return this.act(action);
  }

  reset(): Promise<ServerMessage> | null {
    if (this.sessionId === null || this.mode !== "play" || this.inflight) {
      return null;
    }
    return this.request(resetRequest(this.sessionId));
  }

  seek(frame: number): Promise<ServerMessage> | null {
    if (this.sessionId === null || this.mode !== "replay" || this.inflight) {
      return null;
    }
    return this.request(replaySeekRequest(this.sessionId, frame));
  }

  step(): Promise<ServerMessage> | null {
    if (this.sessionId === null || this.mode !== "replay" || this.inflight) {
      return null;
    }
    return this.request(replayStepRequest(this.sessionId));
  }

  /** True when the replay cursor sits on the last frame. */
  atReplayEnd(): boolean {
    return (
      this.mode === "replay" &&
      this.frameTotal !== null &&
      this.frame !== null &&
      this.frame.frame_count >= this.frameTotal
    );
  }

  /** Feed one incoming WebSocket text frame. */
  handleMessage(text: string): void {
    let message: ServerMessage;
    try {
      message = parseServerMessage(text);
    } catch (exc) {
      this.failPending(exc instanceof Error ? exc : new Error(String(exc)));
      throw exc;
    }
    this.apply(message);
    const pending = this.pending;
    this.pending = null;
    if (pending !== null) pending.resolve(message);
    this.notify();
  }

  /** The socket dropped; reject the in-flight request, if any. */
  handleClose(): void {
    this.connection = "closed";
    this.failPending(new Error("connection closed"));
    this.notify();
  }

  private request(text: string): Promise<ServerMessage> {
    if (this.pending !== null) {
      return Promise.reject(new Error("one request at a time"));
    }
    return new Promise<ServerMessage>((resolve, reject) => {
      this.pending = { resolve, reject };
      this.transport(text);
    });
  }

  private failPending(reason: Error): void {
    const pending = this.pending;
    this.pending = null;
    if (pending !== null) pending.reject(reason);
  }

  private apply(message: ServerMessage): void {
    if (message.type === "error") {
      this.lastError = message;
      return;
    }
    this.lastError = null;
    if (message.type === "created") {
      this.applyCreated(message);
      return;
    }
    this.applyFrame(message);
  }

  private applyCreated(message: CreatedMessage): void {
    this.connection = "live";
    this.mode = message.mode === "replay" ? "replay" : "play";
    this.sessionId = message.session_id;
    this.game = message.game;
    this.seed = message.seed;
    this.channelNames = message.channel_names;
    this.frameTotal = message.frame_total ?? null;
    this.applyFrame(message.frame);
  }

  private applyFrame(frame: FrameMessage): void {
    this.frame = frame;
    this.terminal = frame.terminal;
    if (this.mode === "replay") {
      // seeking jumps around, so the sum-of-rewards invariant does not
      // apply; trust the server's accounting
      this.score = frame.score;
    } else if (frame.frame_count === 0) {
      this.score = frame.reward;
    } else {
      this.score += frame.reward;
    }
  }

  private notify(): void {
    for (const listener of this.changeListeners) listener();
  }
}
