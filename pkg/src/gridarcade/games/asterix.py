"""Asterix on a 10x10 grid.

The player walks in all four directions anywhere on the grid.  Rows 1..8
are traffic lanes holding at most one entity each; entities enter from
either side and cross horizontally.  A third of them are gold (pick up
for +1), the rest are enemies (touch and the episode ends).  Difficulty
ramps every 100 frames when enabled, alternately speeding up spawning
and movement.

Frame order: spawn timer, player motion plus collision check, entity
motion plus collision check, ramp timer.  Spawning is resolved before
the player moves so a frame can award at most one pickup.  Once a
collision kills the player the frame ends immediately.

PRNG use: reset draws nothing.  A successful spawn draws, in order, the
lane (uniform over empty lanes in row order), the side (0 enters at
column 0 heading right, 1 at column 9 heading left) and the gold draw
(`next_below(3) == 0`).  A spawn expiry with all lanes full draws
nothing.  Steps draw nothing else.
"""

from gridarcade.games.common import LEFT, UP, RIGHT, DOWN

CHANNELS = ("player", "enemy", "trail", "gold")

RAMPS = True

SPAWN_INTERVAL = 10
MOVE_INTERVAL = 5
RAMP_INTERVAL = 100


class State:
    __slots__ = (
        "player_row",
        "player_col",
        "lanes",
        "spawn_timer",
        "move_timer",
        "spawn_interval",
        "move_interval",
        "ramp_timer",
        "ramp_index",
        "ramping",
        "trail",
    )

    def __init__(self, rng, ramping=True):
        self.player_row = 5
        self.player_col = 5
        # one slot per lane row 1..8: None or [col, dir, is_gold]
        self.lanes = [None] * 8
        self.spawn_timer = SPAWN_INTERVAL
        self.move_timer = MOVE_INTERVAL
        self.spawn_interval = SPAWN_INTERVAL
        self.move_interval = MOVE_INTERVAL
        self.ramp_timer = RAMP_INTERVAL
        self.ramp_index = 0
        self.ramping = ramping
        self.trail = []

    def _hit_player(self):
        """Resolve contact in the player's lane: (reward_gained, dead)."""
        row = self.player_row
        if row < 1 or row > 8:
            return 0, False
        ent = self.lanes[row - 1]
        if ent is None or ent[0] != self.player_col:
            return 0, False
        if ent[2]:
            self.lanes[row - 1] = None
            return 1, False
        return 0, True

    def step(self, action, rng):
        reward = 0
        self.trail = []

        self.spawn_timer -= 1
        if self.spawn_timer <= 0:
            self.spawn_timer = self.spawn_interval
            empty = [i for i in range(8) if self.lanes[i] is None]
            if empty:
                lane = empty[rng.next_below(len(empty))]
                side = rng.next_below(2)
                gold = rng.next_below(3) == 0
                if side == 0:
                    self.lanes[lane] = [0, 1, gold]
                else:
                    self.lanes[lane] = [9, -1, gold]

        if action == LEFT:
            if self.player_col > 0:
                self.player_col -= 1
        elif action == RIGHT:
            if self.player_col < 9:
                self.player_col += 1
        elif action == UP:
            if self.player_row > 0:
                self.player_row -= 1
        elif action == DOWN:
            if self.player_row < 9:
                self.player_row += 1
        got, dead = self._hit_player()
        reward += got
        if dead:
            return reward, True

        self.move_timer -= 1
        if self.move_timer <= 0:
            self.move_timer = self.move_interval
            for i in range(8):
                ent = self.lanes[i]
                if ent is None:
                    continue
                col = ent[0]
                self.trail.append((i + 1, col))
                col += ent[1]
                if col < 0 or col > 9:
                    self.lanes[i] = None
                else:
                    ent[0] = col
            got, dead = self._hit_player()
            reward += got
            if dead:
                return reward, True

        if self.ramping:
            self.ramp_timer -= 1
            if self.ramp_timer <= 0:
                self.ramp_timer = RAMP_INTERVAL
                if self.ramp_index % 2 == 0:
                    if self.spawn_interval > 1:
                        self.spawn_interval -= 1
                else:
                    if self.move_interval > 1:
                        self.move_interval -= 1
                self.ramp_index += 1

        return reward, False

    def cells(self):
        out = [(0, self.player_row, self.player_col)]
        for i in range(8):
            ent = self.lanes[i]
            if ent is not None:
                out.append((3 if ent[2] else 1, i + 1, ent[0]))
        for row, col in self.trail:
            out.append((2, row, col))
        return out
