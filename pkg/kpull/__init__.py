"""
kpull - K-groups of multi-pullback algebras.
Iterated pullback decomposition, six-term exact sequence solving and
finite gluing model oracles.
"""

__version__ = "1.0.0"
__author__ = "Gabor Melli"
