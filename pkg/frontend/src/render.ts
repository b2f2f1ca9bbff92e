/**
 * Frame rendering model: turns a sparse FrameMessage into a 10x10 grid
 * of CSS colors. Pure data in, data out; the canvas painting in
 * main.ts just copies this grid, which keeps the rules testable.
 *
 * Color is identity: each channel keeps one fixed color per game so a
 * player can learn to read the board. Where two channels occupy one
 * cell the higher channel index wins (trails and gauges sit at higher
 * indices than the objects that drew them... except where they don't,
 * so the rule is positional, not semantic).
 */

import type { FrameMessage } from "./protocol.js";

export const GRID = 10;

/** Used when a game has more channels than its palette lists. */
export const FALLBACK_PALETTE: readonly string[] = [
  "#e8e8e8",
  "#f25f5c",
  "#ffe066",
  "#70c1b3",
  "#247ba0",
  "#b28dff",
  "#ff9f1c",
  "#8ac926",
  "#f15bb5",
  "#00bbf9",
];

/** Stable per-game channel colors, keyed by channel name. */
export const GAME_PALETTES: Readonly<Record<string, Readonly<Record<string, string>>>> = {
  breakout: {
    paddle: "#e8e8e8",
    ball: "#ffe066",
    trail: "#5b5f6e",
    brick: "#f25f5c",
  },
  asterix: {
    player: "#ffe066",
    enemy: "#f25f5c",
    trail: "#5b5f6e",
    gold: "#ff9f1c",
  },
  freeway: {
    chicken: "#ffe066",
    car: "#f25f5c",
    speed1: "#9bf6ff",
    speed2: "#70c1b3",
    speed3: "#247ba0",
    speed4: "#b28dff",
    speed5: "#f15bb5",
  },
  seaquest: {
    sub_front: "#ffe066",
    sub_back: "#e0b94c",
    friendly_bullet: "#e8e8e8",
    trail: "#5b5f6e",
    enemy_bullet: "#ff9f1c",
    enemy_fish: "#70c1b3",
    enemy_sub: "#f25f5c",
    oxygen_gauge: "#00bbf9",
    diver_gauge: "#8ac926",
    diver: "#8ac926",
  },
  space_invaders: {
    cannon: "#ffe066",
    alien: "#f25f5c",
    alien_left: "#b23634",
    alien_right: "#d94a47",
    friendly_bullet: "#e8e8e8",
    enemy_bullet: "#ff9f1c",
  },
};

/** Resolve the color list for a game's ordered channel names. */
export function channelColors(game: string, channelNames: string[]): string[] {
  const palette = GAME_PALETTES[game];
  return channelNames.map((name, index) => {
    const named = palette === undefined ? undefined : palette[name];
    if (named !== undefined) return named;
    const fallback = FALLBACK_PALETTE[index % FALLBACK_PALETTE.length];
    return fallback ?? "#ffffff";
  });
}

export interface RenderedFrame {
  /** 10x10 row-major CSS colors; null means empty. */
  grid: (string | null)[][];
  frameCount: number;
  score: number;
  terminal: boolean;
}

export type RenderResult =
  | { ok: true; view: RenderedFrame }
  | { ok: false; badge: string };

/**
 * Paint a frame. Cells are applied in ascending channel order so the
 * highest channel index ends up on top. A cell outside the grid or a
 * channel with no known name means the client is out of sync with the
 * server; the frame is skipped and a badge is reported instead.
 */
export function renderFrame(frame: FrameMessage, colors: string[]): RenderResult {
  const grid: (string | null)[][] = [];
  for (let row = 0; row < GRID; row += 1) {
    grid.push(new Array<string | null>(GRID).fill(null));
  }
  const ordered = [...frame.cells].sort((a, b) => a[0] - b[0]);
  for (const [channel, row, col] of ordered) {
    const color = colors[channel];
    if (channel < 0 || color === undefined) {
      return { ok: false, badge: `unknown channel index ${channel}` };
    }
    if (row < 0 || row >= GRID || col < 0 || col >= GRID) {
      return { ok: false, badge: `cell (${row}, ${col}) outside the grid` };
    }
    const target = grid[row];
    if (target !== undefined) target[col] = color;
  }
  return {
    ok: true,
    view: {
      grid,
      frameCount: frame.frame_count,
      score: frame.score,
      terminal: frame.terminal,
    },
  };
}
