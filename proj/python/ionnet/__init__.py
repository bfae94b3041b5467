"""Atom-photon network calculators: heralded entanglement protocols,
ion-chain radiation patterns, light-collection optics and network
resource estimates."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
