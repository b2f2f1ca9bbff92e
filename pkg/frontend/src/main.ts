/**
 * Browser entry point: wires the WebSocket, canvas, keyboard and the
 * replay controls together. All decisions live in the imported
 * modules; this file only moves data between them and the DOM.
 */

import { ReplayDriver } from "./replay.js";
import { GRID, channelColors, renderFrame } from "./render.js";
import { SessionClient } from "./session.js";

const CELL_PX = 36;

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (el === null) throw new Error(`missing element #${id}`);
  return el as T;
}

function main(): void {
  const canvas = byId<HTMLCanvasElement>("board");
  const maybeContext = canvas.getContext("2d");
  if (maybeContext === null) throw new Error("canvas 2d context unavailable");
  const context: CanvasRenderingContext2D = maybeContext;
  canvas.width = GRID * CELL_PX;
  canvas.height = GRID * CELL_PX;

  const scoreEl = byId<HTMLElement>("score");
  const statusEl = byId<HTMLElement>("status");
  const badgeEl = byId<HTMLElement>("badge");
  const gameSelect = byId<HTMLSelectElement>("game");
  const seedInput = byId<HTMLInputElement>("seed");
  const newGameButton = byId<HTMLButtonElement>("new-game");
  const resetButton = byId<HTMLButtonElement>("reset");
  const replayFile = byId<HTMLInputElement>("replay-file");
  const scrub = byId<HTMLInputElement>("scrub");
  const playPause = byId<HTMLButtonElement>("play-pause");
  const speedSelect = byId<HTMLSelectElement>("speed");

  const protocol = location.protocol === "https:" ? "wss:" : "ws:";
  const socket = new WebSocket(`${protocol}//${location.host}/ws`);
  const client = new SessionClient((text) => socket.send(text));
  const driver = new ReplayDriver(client);

  let colors: string[] = [];
  let colorsFor = "";

  function redraw(): void {
    if (client.lastError !== null) {
      badgeEl.textContent = `${client.lastError.code}: ${client.lastError.message}`;
    }
    const frame = client.frame;
    if (frame === null) return;
    if (colorsFor !== client.game) {
      colors = channelColors(client.game, client.channelNames);
      colorsFor = client.game;
    }
    const result = renderFrame(frame, colors);
    if (!result.ok) {
      badgeEl.textContent = result.badge;
      return;
    }
    if (client.lastError === null) badgeEl.textContent = "";
    context.fillStyle = "#14161f";
    context.fillRect(0, 0, canvas.width, canvas.height);
    for (let row = 0; row < GRID; row += 1) {
      for (let col = 0; col < GRID; col += 1) {
        const color = result.view.grid[row]?.[col];
        if (color === undefined || color === null) continue;
        context.fillStyle = color;
        context.fillRect(col * CELL_PX + 1, row * CELL_PX + 1, CELL_PX - 2, CELL_PX - 2);
      }
    }
    scoreEl.textContent = `score ${result.view.score}`;
    if (client.mode === "replay") {
      const total = client.frameTotal ?? 0;
      scrub.max = String(total);
      scrub.value = String(result.view.frameCount);
      statusEl.textContent = `replay ${result.view.frameCount}/${total}`;
    } else if (result.view.terminal) {
      statusEl.textContent = "episode over (R to restart)";
    } else {
      statusEl.textContent = `${client.game} frame ${result.view.frameCount}`;
    }
  }

  client.onChange(redraw);

  socket.addEventListener("message", (event) => {
    client.handleMessage(String(event.data));
  });
  socket.addEventListener("open", () => {
    void client.create(gameSelect.value);
  });
  socket.addEventListener("close", () => {
    client.handleClose();
    statusEl.textContent = "disconnected";
  });

  window.addEventListener("keydown", (event) => {
    if (event.key === "r" || event.key === "R") {
      void client.reset();
      event.preventDefault();
      return;
    }
    const sent = client.pressKey(event.key);
    if (sent !== null) void sent;
    if (event.key.startsWith("Arrow") || event.key === " ") {
      event.preventDefault();
    }
  });

  newGameButton.addEventListener("click", () => {
    driver.pause();
    const seedText = seedInput.value.trim();
    const options = seedText === "" ? {} : { seed: Number(seedText) };
    void client.create(gameSelect.value, options);
  });

  resetButton.addEventListener("click", () => {
    void client.reset();
  });

  replayFile.addEventListener("change", () => {
    const file = replayFile.files?.[0];
    if (file === undefined) return;
    void file.text().then((jsonl) => {
      driver.pause();
      return client.loadReplay(jsonl);
    });
  });

  scrub.addEventListener("input", () => {
    driver.scrubTo(Number(scrub.value));
  });

  playPause.addEventListener("click", () => {
    driver.toggle();
    playPause.textContent = driver.playing ? "pause" : "play";
  });

  speedSelect.addEventListener("change", () => {
    driver.setSpeed(Number(speedSelect.value));
  });
}

window.addEventListener("DOMContentLoaded", main);
