"""Exact computations with toric modular forms of higher weight.

Eisenstein generators and their q-expansions, weight-k Manin symbols with
Merel's Hecke action, the symbols-to-forms map, and the lattice geometry
behind Hecke equivariance, all over exact rationals.
"""

__version__ = "0.1.0"
