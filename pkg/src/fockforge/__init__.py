"""Finite-dimensional models of deformed particle statistics.

Twist operators, quasi-symmetrizers and deformed scalar products, Wick-ideal
quotients of the tensor algebra, creation/annihilation operators, entwining
structures and crossed products, and finite quantum logics, each with
residual-based verification checks.
"""

__version__ = "0.1.0"
