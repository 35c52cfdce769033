"""Exact-arithmetic engine for group-algebra valued curve counts.

Subpackages cover integer arithmetic, the group algebra of torsion points
of a 2-torus, refined divisor sums, subgroup lattices of Z_n^2, the
algebraic multiple-cover-formula (MCF) machinery, floor/pearl diagram
enumeration with correlated multiplicities, and the assembled invariants.
"""

from covercount.group_algebra import GroupElement, TorsionPoint

__all__ = ["GroupElement", "TorsionPoint"]
__version__ = "0.1.0"
