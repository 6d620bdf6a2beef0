"""Trojan-horse attack analysis for QKD.

Thin wrapper around the compiled core: Gaussian states and fidelity, a
truncated-Fock-space oracle, BB84 key rates under a thermal-noise defense,
the separable-attack distinguishability bound and the shutter defense.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
