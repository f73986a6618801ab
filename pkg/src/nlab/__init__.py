"""Necklace Lie bialgebras of quivers, their Moyal-type Hopf quantization,
matrix-trace representations, and ribbon graph complexes with cyclic
A-infinity weights.  All arithmetic is exact (rationals, polynomials in h).
"""

__version__ = "0.1.0"
