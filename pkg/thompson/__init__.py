"""Exact computations in Richard Thompson's group F.

Elements are piecewise-linear homeomorphisms of [0, 1] with dyadic
breakpoints and power-of-two slopes. Composition applies the right factor
first: (f * g)(t) = f(g(t)).
"""

__version__ = "0.1.0"
