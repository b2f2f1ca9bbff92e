/**
 * Keyboard bindings: arrows move, space fires, period is a deliberate
 * no-op (useful because every act advances one frame). Values are
 * `KeyboardEvent.key` strings.
 */

import { ACTION } from "./protocol.js";

export const KEY_BINDINGS: Readonly<Record<string, number>> = {
  ".": ACTION.noop,
  ArrowLeft: ACTION.left,
  ArrowUp: ACTION.up,
  ArrowRight: ACTION.right,
  ArrowDown: ACTION.down,
  " ": ACTION.fire,
};

/** Map a key to its action code, or null for unbound keys. */
export function keyToAction(key: string): number | null {
  const action = KEY_BINDINGS[key];
  return action === undefined ? null : action;
}
