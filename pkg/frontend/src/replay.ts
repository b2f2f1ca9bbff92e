/**
 * Replay playback pacing. The server owns the frames; this driver just
 * issues step requests on a timer, `speed` frames per tick, and stops
 * at the end of the file. Seeks go straight through to the client.
 */

import type { SessionClient } from "./session.js";

export const DEFAULT_TICK_MS = 150;

export class ReplayDriver {
  playing = false;
  speed = 1;

  private readonly client: SessionClient;
  private readonly tickMs: number;
  private timer: ReturnType<typeof setInterval> | null = null;

  constructor(client: SessionClient, tickMs: number = DEFAULT_TICK_MS) {
    this.client = client;
    this.tickMs = tickMs;
  }

  play(): void {
    if (this.playing) return;
    this.playing = true;
    this.timer = setInterval(() => {
      void this.tick();
    }, this.tickMs);
  }

  pause(): void {
    this.playing = false;
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
  }

  toggle(): void {
    if (this.playing) {
      this.pause();
    } else {
      this.play();
    }
  }

  setSpeed(speed: number): void {
    this.speed = Math.max(1, Math.floor(speed));
  }

  scrubTo(frame: number): void {
    this.pause();
    void this.client.seek(frame);
  }

  /** One timer tick: request `speed` frames, awaiting each reply. */
  async tick(): Promise<void> {
    for (let i = 0; i < this.speed; i += 1) {
      if (this.client.atReplayEnd()) {
        this.pause();
        return;
      }
      const reply = this.client.step();
      if (reply === null) return; // busy or not a replay session
      await reply;
    }
  }
}
