"""
quantum-plane-isotropy: isotropy groups of derivations of the quantum plane

Computes which diagonal automorphisms of k_q[x, y] commute with a given
derivation, decides which finite groups arise this way, and checks the
intersection count of the binomial curves behind the finite case.
"""

__version__ = "0.1.0"
