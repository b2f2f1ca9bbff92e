"""Optional compiled build of the hot per-frame modules.

The game engines and the PRNG are plain Python and fully functional as-is.
When Cython is available they are additionally compiled to C extensions with
the same module names; the import system then prefers the compiled versions,
so selection happens automatically at import time.  Set GRIDARCADE_PURE=1 to
skip compilation entirely.
"""

import os

from setuptools import Extension, setup

HOT_MODULES = [
    "gridarcade.rng",
    "gridarcade.games.breakout",
    "gridarcade.games.asterix",
    "gridarcade.games.freeway",
    "gridarcade.games.seaquest",
    "gridarcade.games.space_invaders",
]


def _extensions():
    if os.environ.get("GRIDARCADE_PURE") == "1":
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    exts = [
        Extension(name, ["src/" + name.replace(".", "/") + ".py"])
        for name in HOT_MODULES
    ]
    return cythonize(exts, compiler_directives={"language_level": "3"}, quiet=True)


setup(ext_modules=_extensions())
