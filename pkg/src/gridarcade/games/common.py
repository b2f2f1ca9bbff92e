"""Action codes shared by every game engine.

These are plain ints rather than the Action enum so the hot modules stay
free of enum lookups; gridarcade.core.Action mirrors them 1:1.
"""

NOOP = 0
LEFT = 1
UP = 2
RIGHT = 3
DOWN = 4
FIRE = 5

N_ACTIONS = 6

GRID = 10
