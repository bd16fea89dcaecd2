"""
Cyclic Milnor Toolkit

Exact computations of cyclic homology, Kähler differentials and Milnor
K-theory for finite-rank algebras, with brute-force verification suites.
"""

__version__ = "1.0.0"
