"""Breakout on a 10x10 grid.

A paddle on row 9 moves left/right, a single ball travels diagonally one
cell per frame and reflects off the side walls, the ceiling and the
paddle.  Three rows of bricks (rows 1..3) sit near the top; hitting a
brick removes it, scores 1 and reflects the ball vertically.  The ball
never enters a brick cell: on a brick hit it stays where it was and only
its direction changes.  Clearing all 30 bricks refills the wall on the
same frame (minus the ball's own cell if the ball sits inside the wall
rows).  The episode ends when the ball reaches row 9 anywhere but the
paddle cell.

Frame order: paddle motion, then one diagonal ball move resolved in the
order side walls -> ceiling -> brick -> paddle/floor.

PRNG use: reset draws one `next_below(2)` to pick the serve, 0 serving
from the left corner heading down-right, 1 from the right corner heading
down-left.  Steps draw nothing.
"""

from gridarcade.games.common import LEFT, RIGHT

CHANNELS = ("paddle", "ball", "trail", "brick")

RAMPS = False


class State:
    __slots__ = (
        "paddle_col",
        "ball_row",
        "ball_col",
        "dx",
        "dy",
        "trail_row",
        "trail_col",
        "bricks",
    )

    def __init__(self, rng, ramping=True):
        self.paddle_col = 4
        if rng.next_below(2) == 0:
            self.ball_col = 0
            self.dx = 1
        else:
            self.ball_col = 9
            self.dx = -1
        self.ball_row = 4
        self.dy = 1
        self.trail_row = self.ball_row
        self.trail_col = self.ball_col
        self.bricks = set()
        self._fill_bricks()

    def _fill_bricks(self):
        for r in range(1, 4):
            for c in range(10):
                self.bricks.add((r, c))

    def step(self, action, rng):
        if action == LEFT:
            if self.paddle_col > 0:
                self.paddle_col -= 1
        elif action == RIGHT:
            if self.paddle_col < 9:
                self.paddle_col += 1

        br = self.ball_row
        bc = self.ball_col
        self.trail_row = br
        self.trail_col = bc
        dx = self.dx
        dy = self.dy

        nc = bc + dx
        if nc < 0 or nc > 9:
            dx = -dx
            nc = bc + dx
        nr = br + dy
        if nr < 0:
            dy = -dy
            nr = br + dy

        reward = 0
        terminal = False
        if (nr, nc) in self.bricks:
            self.bricks.remove((nr, nc))
            reward = 1
            dy = -dy
            nr = br
            nc = bc
            if not self.bricks:
                self._fill_bricks()
                self.bricks.discard((nr, nc))
        elif nr == 9:
            if nc == self.paddle_col:
                dy = -1
                side = nc - self.paddle_col
                if side > 0:
                    dx = 1
                elif side < 0:
                    dx = -1
                else:
                    dx = -dx
            else:
                terminal = True

        self.ball_row = nr
        self.ball_col = nc
        self.dx = dx
        self.dy = dy
        return reward, terminal

    def cells(self):
        out = [
            (0, 9, self.paddle_col),
            (1, self.ball_row, self.ball_col),
            (2, self.trail_row, self.trail_col),
        ]
        for r, c in self.bricks:
            out.append((3, r, c))
        return out
