/**
 * End-to-end conformance against the real play service: a headless
 * client drives a Breakout session over the JSON protocol and checks
 * that the rendered model (active cells, score, terminal flag) mirrors
 * the server's frames exactly, the keyboard table maps to the protocol
 * action codes, and replay seek/step reproduce the recorded frames.
 *
 * Requires the Python package to be installed (the service is spawned
 * via `python3 -m gridarcade.cli serve`).
 */

import { ChildProcess, spawn, spawnSync } from "node:child_process";
import { mkdtempSync, readFileSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import WebSocket from "ws";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { KEY_BINDINGS } from "../src/input.js";
import { ACTION, FrameMessage } from "../src/protocol.js";
import { channelColors, renderFrame } from "../src/render.js";
import { SessionClient } from "../src/session.js";

const PORT = 18000 + (process.pid % 2000);
const EPISODE_FRAMES = 500;

let server: ChildProcess | null = null;

async function waitForHealth(url: string, timeoutMs: number): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  let lastError: unknown = null;
  while (Date.now() < deadline) {
    try {
      const response = await fetch(url);
      if (response.ok) return;
    } catch (exc) {
      lastError = exc;
    }
    await new Promise((resolve) => setTimeout(resolve, 250));
  }
  throw new Error(`service did not come up at ${url}: ${String(lastError)}`);
}

beforeAll(async () => {
  server = spawn(
    "python3",
    ["-m", "gridarcade.cli", "serve", "--listen", `127.0.0.1:${PORT}`],
    { stdio: ["ignore", "ignore", "pipe"] },
  );
  await waitForHealth(`http://127.0.0.1:${PORT}/healthz`, 60_000);
}, 90_000);

afterAll(() => {
  server?.kill("SIGTERM");
});

interface Wire {
  client: SessionClient;
  ws: WebSocket;
  /** Raw text of the most recent server message, before parsing. */
  lastRaw: { text: string };
}

async function connect(): Promise<Wire> {
  const ws = new WebSocket(`ws://127.0.0.1:${PORT}/ws`);
  await new Promise<void>((resolve, reject) => {
    ws.once("open", () => resolve());
    ws.once("error", reject);
  });
  const lastRaw = { text: "" };
  const client = new SessionClient((text) => ws.send(text));
  ws.on("message", (data) => {
    lastRaw.text = data.toString();
    client.handleMessage(lastRaw.text);
  });
  ws.on("close", () => client.handleClose());
  return { client, ws, lastRaw };
}

/**
 * Breakout keeper: read ball and trail off the frame, infer the flight
 * direction, simulate the diagonal bounces (side walls and ceiling) to
 * the paddle row, and walk the paddle under the landing column.
 */
function predictLanding(row: number, col: number, dy: number, dx: number): number {
  let r = row;
  let c = col;
  for (let i = 0; i < 100; i += 1) {
    let nc = c + dx;
    if (nc < 0 || nc > 9) {
      dx = -dx;
      nc = c + dx;
    }
    let nr = r + dy;
    if (nr < 0) {
      dy = -dy;
      nr = r + dy;
    }
    if (nr === 9) return nc;
    r = nr;
    c = nc;
  }
  return c;
}

function keeperAction(frame: FrameMessage, names: string[]): number {
  const ballChannel = names.indexOf("ball");
  const paddleChannel = names.indexOf("paddle");
  const trailChannel = names.indexOf("trail");
  let ball: [number, number] | null = null;
  let paddle: [number, number] | null = null;
  let trail: [number, number] | null = null;
  for (const [channel, row, col] of frame.cells) {
    if (channel === ballChannel) ball = [row, col];
    else if (channel === paddleChannel) paddle = [row, col];
    else if (channel === trailChannel) trail = [row, col];
  }
  if (ball === null || paddle === null) return ACTION.noop;
  let target = ball[1];
  if (trail !== null && (trail[0] !== ball[0] || trail[1] !== ball[1])) {
    const dy = ball[0] - trail[0];
    const dx = ball[1] - trail[1];
    if (dy !== 0 && dx !== 0) target = predictLanding(ball[0], ball[1], dy, dx);
  }
  if (paddle[1] < target) return ACTION.right;
  if (paddle[1] > target) return ACTION.left;
  return ACTION.noop;
}

describe("ui conformance", () => {
  it(
    `mirrors the server for a ${EPISODE_FRAMES}-frame breakout episode`,
    async () => {
      const { client, ws, lastRaw } = await connect();
      await client.create("breakout", { seed: 5 });
      expect(client.mode).toBe("play");
      expect(client.channelNames).toContain("ball");
      const colors = channelColors(client.game, client.channelNames);

      let score = 0;
      for (let i = 1; i <= EPISODE_FRAMES; i += 1) {
        const action = keeperAction(client.frame!, client.channelNames);
        const pending = client.act(action);
        expect(pending).not.toBeNull();
        await pending;

        // the model must equal an independent parse of the raw bytes
        const expected = JSON.parse(lastRaw.text) as FrameMessage;
        expect(expected.type).toBe("frame");
        expect(client.frame).toEqual(expected);
        expect(expected.frame_count).toBe(i);
        expect(expected.terminal).toBe(false);

        // score: client sum == server sum == sum of received rewards
        score += expected.reward;
        expect(expected.score).toBe(score);
        expect(client.score).toBe(score);

        // rendered grid is occupied exactly at the server's cells
        const rendered = renderFrame(client.frame!, colors);
        expect(rendered.ok).toBe(true);
        if (rendered.ok) {
          const active = new Set(
            expected.cells.map(([, row, col]) => row * 10 + col),
          );
          for (let row = 0; row < 10; row += 1) {
            for (let col = 0; col < 10; col += 1) {
              const painted = rendered.view.grid[row]![col] !== null;
              if (painted !== active.has(row * 10 + col)) {
                throw new Error(
                  `frame ${i}: cell (${row}, ${col}) painted=${painted}`,
                );
              }
            }
          }
          expect(rendered.view.score).toBe(expected.score);
          expect(rendered.view.terminal).toBe(expected.terminal);
          expect(rendered.view.frameCount).toBe(expected.frame_count);
        }
      }
      expect(client.terminal).toBe(false);
      ws.close();
    },
    120_000,
  );

  it("keyboard table maps onto the protocol's action codes", () => {
    expect(KEY_BINDINGS).toEqual({
      ".": ACTION.noop,
      ArrowLeft: ACTION.left,
      ArrowUp: ACTION.up,
      ArrowRight: ACTION.right,
      ArrowDown: ACTION.down,
      " ": ACTION.fire,
    });

    // each bound key produces an act request carrying its code
    const sent: string[] = [];
    const client = new SessionClient((text) => sent.push(text));
    void client.create("breakout");
    client.handleMessage(
      JSON.stringify({
        type: "created",
        v: 1,
        session_id: "sid",
        mode: "interactive",
        game: "breakout",
        seed: 0,
        sticky_prob: 0.1,
        ramping: true,
        channel_names: ["paddle", "ball", "trail", "brick"],
        frame: {
          type: "frame",
          v: 1,
          session_id: "sid",
          frame_count: 0,
          cells: [],
          reward: 0,
          terminal: false,
          score: 0,
        },
      }),
    );
    for (const [key, code] of Object.entries(KEY_BINDINGS)) {
      expect(client.pressKey(key)).not.toBeNull();
      const last = JSON.parse(sent[sent.length - 1]!) as Record<string, unknown>;
      expect(last).toMatchObject({ type: "act", action_code: code });
      client.handleMessage(
        JSON.stringify({
          type: "frame",
          v: 1,
          session_id: "sid",
          frame_count: 1,
          cells: [],
          reward: 0,
          terminal: false,
          score: 0,
        }),
      );
    }
  });

  it(
    "replay seek and step reproduce the recorded frames exactly",
    async () => {
      const dir = mkdtempSync(join(tmpdir(), "ui-replay-"));
      const out = join(dir, "freeway.jsonl");
      try {
        const record = spawnSync(
          "python3",
          [
            "-m",
            "gridarcade.cli",
            "replay",
            "record",
            "--game",
            "freeway",
            "--seed",
            "11",
            "--frames",
            "300",
            "--out",
            out,
          ],
          { encoding: "utf8" },
        );
        expect(record.status).toBe(0);
        const text = readFileSync(out, "utf8");

        const { client, ws } = await connect();
        await client.loadReplay(text);
        expect(client.mode).toBe("replay");
        expect(client.frameTotal).toBe(300);
        expect(client.frame?.frame_count).toBe(0);

        // walk the whole file forward, keeping a copy of every frame
        const recorded: FrameMessage[] = [structuredClone(client.frame!)];
        for (let i = 1; i <= 300; i += 1) {
          const pending = client.step();
          expect(pending).not.toBeNull();
          await pending;
          expect(client.frame?.frame_count).toBe(i);
          recorded.push(structuredClone(client.frame!));
        }
        expect(client.atReplayEnd()).toBe(true);

        // stepping past the end stays on the last frame
        await client.step();
        expect(client.frame).toEqual(recorded[300]);

        // seeks land on exactly the frames the walk produced
        for (const target of [0, 1, 37, 150, 299, 300]) {
          const pending = client.seek(target);
          expect(pending).not.toBeNull();
          await pending;
          expect(client.frame).toEqual(recorded[target]);
          expect(client.score).toBe(recorded[target]!.score);
        }

        // step after a seek continues from the cursor
        await client.seek(149);
        await client.step();
        expect(client.frame).toEqual(recorded[150]);

        // out-of-range seeks clamp to the ends
        await client.seek(100_000);
        expect(client.frame).toEqual(recorded[300]);
        await client.seek(0);
        expect(client.frame).toEqual(recorded[0]);
        ws.close();
      } finally {
        rmSync(dir, { recursive: true, force: true });
      }
    },
    120_000,
  );
});
