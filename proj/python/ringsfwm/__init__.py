"""Microring SFWM photon-pair source model, Monte Carlo simulator and estimators."""

from ringsfwm._core import *  # noqa: F401,F403
from ringsfwm._core import __version__, rng_algorithm  # noqa: F401
