"""blockfusion: desk-scale certification of block-theoretic statements.

Finite permutation groups, exact GF(p^m) linear algebra, block
idempotents and Brauer pairs, fusion systems and their quotient/tower
machinery, and truncated completed path algebras.
"""

__version__ = "0.1.0"
