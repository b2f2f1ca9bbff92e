"""Space Invaders on a 10x10 grid.

A cannon on row 9 fires upward (5-frame cooldown) at a 4x6 alien block
that marches in unison, dropping a row and reversing whenever the block
would leave the grid sideways.  The block speeds up as it shrinks: the
effective move interval is min(wave_interval, aliens remaining), so a
lone alien moves every frame.  Every 10 frames a random occupied column
drops a bullet from its bottom alien.  Shooting an alien pays +1; an
alien or bullet reaching the cannon's cell ends the episode.  Clearing a
wave respawns the block, one frame-per-move faster each wave (floor 6)
when ramping is on.

Frame order: cannon motion/fire, bullet advance, friendly hits, block
motion, enemy fire, terminal check, wave respawn.

If the block sits on the bottom row when an edge reversal triggers it
reverses in place without descending, so aliens never leave the grid.

PRNG use: reset draws nothing.  Enemy fire draws one
`next_below(n_occupied_columns)` indexing the occupied columns in
ascending order; nothing else draws.
"""

from gridarcade.games.common import LEFT, RIGHT, FIRE

CHANNELS = (
    "cannon",
    "alien",
    "alien_left",
    "alien_right",
    "friendly_bullet",
    "enemy_bullet",
)

RAMPS = True

WAVE_INTERVAL = 12
MIN_WAVE_INTERVAL = 6
SHOT_COOLDOWN = 5
ENEMY_SHOT_PERIOD = 10


def _spawn_block():
    return {(r, c) for r in range(1, 5) for c in range(2, 8)}


class State:
    __slots__ = (
        "cannon_col",
        "aliens",
        "alien_dir",
        "alien_move_timer",
        "wave_interval",
        "wave_index",
        "fbullets",
        "ebullets",
        "shot_cooldown",
        "enemy_shot_timer",
        "ramping",
    )

    def __init__(self, rng, ramping=True):
        self.cannon_col = 4
        self.aliens = _spawn_block()
        self.alien_dir = 1
        self.alien_move_timer = WAVE_INTERVAL
        self.wave_interval = WAVE_INTERVAL
        self.wave_index = 0
        self.fbullets = []  # [row, col]
        self.ebullets = []  # [row, col]
        self.shot_cooldown = 0
        self.enemy_shot_timer = ENEMY_SHOT_PERIOD
        self.ramping = ramping

    def step(self, action, rng):
        reward = 0

        if self.shot_cooldown > 0:
            self.shot_cooldown -= 1
        if action == LEFT:
            if self.cannon_col > 0:
                self.cannon_col -= 1
        elif action == RIGHT:
            if self.cannon_col < 9:
                self.cannon_col += 1
        elif action == FIRE and self.shot_cooldown == 0:
            self.fbullets.append([8, self.cannon_col])
            self.shot_cooldown = SHOT_COOLDOWN

        kept = []
        for b in self.fbullets:
            b[0] -= 1
            if b[0] >= 0:
                kept.append(b)
        self.fbullets = kept
        kept = []
        for b in self.ebullets:
            b[0] += 1
            if b[0] <= 9:
                kept.append(b)
        self.ebullets = kept

        kept = []
        for b in self.fbullets:
            cell = (b[0], b[1])
            if cell in self.aliens:
                self.aliens.remove(cell)
                reward += 1
            else:
                kept.append(b)
        self.fbullets = kept

        if self.aliens:
            eff = len(self.aliens)
            if eff > self.wave_interval:
                eff = self.wave_interval
            if self.alien_move_timer > eff:
                self.alien_move_timer = eff
            self.alien_move_timer -= 1
            if self.alien_move_timer <= 0:
                self.alien_move_timer = eff
                d = self.alien_dir
                blocked = False
                bottom = 0
                for r, c in self.aliens:
                    if c + d < 0 or c + d > 9:
                        blocked = True
                    if r > bottom:
                        bottom = r
                if blocked:
                    if bottom < 9:
                        self.aliens = {(r + 1, c) for r, c in self.aliens}
                    self.alien_dir = -d
                else:
                    self.aliens = {(r, c + d) for r, c in self.aliens}

        self.enemy_shot_timer -= 1
        if self.enemy_shot_timer <= 0:
            self.enemy_shot_timer = ENEMY_SHOT_PERIOD
            if self.aliens:
                cols = sorted({c for _, c in self.aliens})
                col = cols[rng.next_below(len(cols))]
                row = max(r for r, c in self.aliens if c == col)
                self.ebullets.append([row, col])

        terminal = False
        cannon = (9, self.cannon_col)
        if cannon in self.aliens:
            terminal = True
        else:
            for b in self.ebullets:
                if b[0] == 9 and b[1] == self.cannon_col:
                    terminal = True
                    break

        if not self.aliens:
            self.aliens = _spawn_block()
            self.alien_dir = 1
            self.wave_index += 1
            if self.ramping and self.wave_interval > MIN_WAVE_INTERVAL:
                self.wave_interval -= 1
            self.alien_move_timer = self.wave_interval

        return reward, terminal

    def cells(self):
        out = [(0, 9, self.cannon_col)]
        dir_ch = 3 if self.alien_dir > 0 else 2
        for r, c in self.aliens:
            out.append((1, r, c))
            out.append((dir_ch, r, c))
        for b in self.fbullets:
            out.append((4, b[0], b[1]))
        for b in self.ebullets:
            out.append((5, b[0], b[1]))
        return out
