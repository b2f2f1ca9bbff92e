"""Freeway on a 10x10 grid.

A chicken climbs from row 9 to row 0 at fixed column 4 while 8 lanes of
cars (rows 1..8) cross horizontally with wraparound.  The chicken may
move at most once every 3 frames.  Getting hit sends it back to row 9;
reaching row 0 scores +1, sends it back to row 9 and re-randomizes every
car.  Episodes always last exactly 2500 frames.

Cars never occupy row 0 or row 9, so the post-success randomization can
never land a car on the chicken.

Each car advances one cell every `period` frames (period 1..5) and drags
a trail cell one step behind it (against its direction, with wraparound)
in the channel matching its period, so speed and heading are visible in
a single frame.

Frame order: chicken motion/cooldown, car motion, collision check, top
row check, frame counter.

PRNG use: reset draws col (`next_below(10)`), dir (`next_below(2)`, 0
meaning leftward) and period (`1 + next_below(5)`) for each lane in row
order 1..8; the same draw sequence re-runs after every top-row arrival.
Steps draw nothing else.
"""

from gridarcade.games.common import UP, DOWN

CHANNELS = ("chicken", "car", "speed1", "speed2", "speed3", "speed4", "speed5")

RAMPS = False

CHICKEN_COL = 4
EPISODE_FRAMES = 2500
MOVE_COOLDOWN = 2


class State:
    __slots__ = ("chicken_row", "cooldown", "cars", "frames")

    def __init__(self, rng, ramping=True):
        self.chicken_row = 9
        self.cooldown = 0
        self.cars = []
        self._randomize_cars(rng)
        self.frames = 0

    def _randomize_cars(self, rng):
        cars = []
        for _ in range(8):
            col = rng.next_below(10)
            direction = -1 if rng.next_below(2) == 0 else 1
            period = 1 + rng.next_below(5)
            # car: [col, dir, period, timer]
            cars.append([col, direction, period, period])
        self.cars = cars

    def step(self, action, rng):
        if self.cooldown > 0:
            self.cooldown -= 1
        elif action == UP:
            if self.chicken_row > 0:
                self.chicken_row -= 1
            self.cooldown = MOVE_COOLDOWN
        elif action == DOWN:
            if self.chicken_row < 9:
                self.chicken_row += 1
            self.cooldown = MOVE_COOLDOWN

        for car in self.cars:
            car[3] -= 1
            if car[3] <= 0:
                car[3] = car[2]
                car[0] = (car[0] + car[1]) % 10

        row = self.chicken_row
        if 1 <= row <= 8 and self.cars[row - 1][0] == CHICKEN_COL:
            self.chicken_row = 9

        reward = 0
        if self.chicken_row == 0:
            reward = 1
            self.chicken_row = 9
            self._randomize_cars(rng)

        self.frames += 1
        return reward, self.frames >= EPISODE_FRAMES

    def cells(self):
        out = [(0, self.chicken_row, CHICKEN_COL)]
        for i, car in enumerate(self.cars):
            row = i + 1
            out.append((1, row, car[0]))
            out.append((1 + car[2], row, (car[0] - car[1]) % 10))
        return out
