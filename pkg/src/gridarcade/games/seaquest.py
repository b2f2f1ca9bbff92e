"""Seaquest on a 10x10 grid.

A two-cell submarine (front plus back cell showing its heading) roams
rows 0..8; row 9 renders the oxygen and diver gauges.  Enemy fish and
enemy subs cross horizontally on a shared move timer; subs fire a bullet
every 10 frames along their heading.  Divers drift across and are
picked up by contact, up to 6.  Oxygen drops one cell every 10 frames
spent below the surface; hitting 0 ends the episode.  Surfacing (row 0)
is edge-triggered: with 0 divers it is fatal, with 1..5 it costs one
diver and refills oxygen, with 6 it banks all divers and pays +oxygen
(0..10) on top of the refill.  Every surfacing bumps difficulty, and
with ramping enabled shortens the enemy spawn and move intervals.

Shooting an enemy pays +1.  Contact with any enemy or enemy bullet is
fatal.  All rewards are 1 except the surfacing bonus.

Frame order (fixed): player motion/fire, bullet advance plus friendly
hits, timed enemy/diver motion plus sub fire, spawns, diver pickup,
oxygen decay, surfacing, player collision.

PRNG use: reset draws nothing.  An enemy spawn draws side
(`next_below(2)`, 0 entering at column 0 heading right), row
(`1 + next_below(8)`) and kind (`next_below(3) == 0` means sub); a diver
spawn draws side then row the same way.  Enemy spawn draws precede diver
spawn draws when both expire on one frame.
"""

from gridarcade.games.common import LEFT, UP, RIGHT, DOWN, FIRE

CHANNELS = (
    "sub_front",
    "sub_back",
    "friendly_bullet",
    "trail",
    "enemy_bullet",
    "enemy_fish",
    "enemy_sub",
    "oxygen_gauge",
    "diver_gauge",
    "diver",
)

RAMPS = True

ENEMY_SPAWN_INTERVAL = 20
DIVER_SPAWN_INTERVAL = 30
ENEMY_MOVE_INTERVAL = 5
DIVER_MOVE_PERIOD = 5
SUB_SHOT_PERIOD = 10
OXYGEN_CELLS = 10
OXYGEN_DECAY_PERIOD = 10
MAX_DIVERS = 6


class State:
    __slots__ = (
        "player_row",
        "player_col",
        "facing",
        "divers_held",
        "oxygen",
        "oxygen_timer",
        "fbullets",
        "ebullets",
        "enemies",
        "divers",
        "enemy_spawn_timer",
        "diver_spawn_timer",
        "enemy_spawn_interval",
        "enemy_move_timer",
        "enemy_move_interval",
        "difficulty",
        "surfaced",
        "ramping",
        "trail",
    )

    def __init__(self, rng, ramping=True):
        self.player_row = 4
        self.player_col = 4
        self.facing = 1
        self.divers_held = 0
        self.oxygen = OXYGEN_CELLS
        self.oxygen_timer = OXYGEN_DECAY_PERIOD
        self.fbullets = []  # [row, col, dir]
        self.ebullets = []  # [row, col, dir]
        self.enemies = []  # [row, col, dir, is_sub, shot_timer]
        self.divers = []  # [row, col, dir, move_timer]
        self.enemy_spawn_timer = ENEMY_SPAWN_INTERVAL
        self.diver_spawn_timer = DIVER_SPAWN_INTERVAL
        self.enemy_spawn_interval = ENEMY_SPAWN_INTERVAL
        self.enemy_move_timer = ENEMY_MOVE_INTERVAL
        self.enemy_move_interval = ENEMY_MOVE_INTERVAL
        self.difficulty = 0
        self.surfaced = False
        self.ramping = ramping
        self.trail = []

    def step(self, action, rng):
        reward = 0
        self.trail = []

        # player motion / fire
        if action == LEFT:
            self.facing = -1
            if self.player_col > 0:
                self.player_col -= 1
        elif action == RIGHT:
            self.facing = 1
            if self.player_col < 9:
                self.player_col += 1
        elif action == UP:
            if self.player_row > 0:
                self.player_row -= 1
        elif action == DOWN:
            if self.player_row < 8:
                self.player_row += 1
        elif action == FIRE:
            self.fbullets.append([self.player_row, self.player_col, self.facing])

        # bullets advance; friendly bullets strike enemies
        kept = []
        for b in self.fbullets:
            b[1] += b[2]
            if b[1] < 0 or b[1] > 9:
                continue
            hit = -1
            for i, e in enumerate(self.enemies):
                if e[0] == b[0] and e[1] == b[1]:
                    hit = i
                    break
            if hit >= 0:
                del self.enemies[hit]
                reward += 1
            else:
                kept.append(b)
        self.fbullets = kept
        kept = []
        for b in self.ebullets:
            b[1] += b[2]
            if 0 <= b[1] <= 9:
                kept.append(b)
        self.ebullets = kept

        # timed motion: all enemies share one timer, divers carry their own
        self.enemy_move_timer -= 1
        if self.enemy_move_timer <= 0:
            self.enemy_move_timer = self.enemy_move_interval
            kept = []
            for e in self.enemies:
                self.trail.append((e[0], e[1]))
                e[1] += e[2]
                if 0 <= e[1] <= 9:
                    kept.append(e)
            self.enemies = kept
        kept = []
        for d in self.divers:
            d[3] -= 1
            if d[3] > 0:
                kept.append(d)
                continue
            d[3] = DIVER_MOVE_PERIOD
            self.trail.append((d[0], d[1]))
            d[1] += d[2]
            if 0 <= d[1] <= 9:
                kept.append(d)
        self.divers = kept
        for e in self.enemies:
            if e[3]:
                e[4] -= 1
                if e[4] <= 0:
                    e[4] = SUB_SHOT_PERIOD
                    self.ebullets.append([e[0], e[1], e[2]])

        # spawns
        self.enemy_spawn_timer -= 1
        if self.enemy_spawn_timer <= 0:
            self.enemy_spawn_timer = self.enemy_spawn_interval
            side = rng.next_below(2)
            row = 1 + rng.next_below(8)
            is_sub = rng.next_below(3) == 0
            if side == 0:
                self.enemies.append([row, 0, 1, is_sub, SUB_SHOT_PERIOD])
            else:
                self.enemies.append([row, 9, -1, is_sub, SUB_SHOT_PERIOD])
        self.diver_spawn_timer -= 1
        if self.diver_spawn_timer <= 0:
            self.diver_spawn_timer = DIVER_SPAWN_INTERVAL
            side = rng.next_below(2)
            row = 1 + rng.next_below(8)
            if side == 0:
                self.divers.append([row, 0, 1, DIVER_MOVE_PERIOD])
            else:
                self.divers.append([row, 9, -1, DIVER_MOVE_PERIOD])

        # diver pickup
        kept = []
        for d in self.divers:
            if d[0] == self.player_row and d[1] == self.player_col:
                self.divers_held = min(MAX_DIVERS, self.divers_held + 1)
            else:
                kept.append(d)
        self.divers = kept

        # oxygen burns below the surface
        terminal = False
        if self.player_row >= 1:
            self.oxygen_timer -= 1
            if self.oxygen_timer <= 0:
                self.oxygen_timer = OXYGEN_DECAY_PERIOD
                self.oxygen -= 1
                if self.oxygen <= 0:
                    self.oxygen = 0
                    terminal = True

        # surfacing, edge-triggered
        if self.player_row == 0:
            if not self.surfaced:
                self.surfaced = True
                if self.divers_held == 0:
                    terminal = True
                else:
                    if self.divers_held == MAX_DIVERS:
                        reward += self.oxygen
                        self.divers_held = 0
                    else:
                        self.divers_held -= 1
                    self.oxygen = OXYGEN_CELLS
                    self.oxygen_timer = OXYGEN_DECAY_PERIOD
                    self.difficulty += 1
                    if self.ramping:
                        if self.enemy_spawn_interval > 1:
                            self.enemy_spawn_interval -= 1
                        if self.enemy_move_interval > 1:
                            self.enemy_move_interval -= 1
        else:
            self.surfaced = False

        # contact with enemies or their bullets
        prow = self.player_row
        pcol = self.player_col
        for e in self.enemies:
            if e[0] == prow and e[1] == pcol:
                terminal = True
                break
        if not terminal:
            for b in self.ebullets:
                if b[0] == prow and b[1] == pcol:
                    terminal = True
                    break
        return reward, terminal

    def cells(self):
        back_col = self.player_col - self.facing
        if back_col < 0:
            back_col = 0
        elif back_col > 9:
            back_col = 9
        out = [
            (0, self.player_row, self.player_col),
            (1, self.player_row, back_col),
        ]
        for b in self.fbullets:
            out.append((2, b[0], b[1]))
        for row, col in self.trail:
            out.append((3, row, col))
        for b in self.ebullets:
            out.append((4, b[0], b[1]))
        for e in self.enemies:
            out.append((6 if e[3] else 5, e[0], e[1]))
        for c in range(self.oxygen):
            out.append((7, 9, c))
        for c in range(10 - self.divers_held, 10):
            out.append((8, 9, c))
        for d in self.divers:
            out.append((9, d[0], d[1]))
        return out
