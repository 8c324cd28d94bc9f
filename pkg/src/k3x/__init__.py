"""Exact certification toolkit for semi-stable extremal elliptic K3 surfaces.

Modules: exact arithmetic (rational, upoly, numfield, mpoly, matrix), lattices
and discriminant forms (lattice), overlattices and roots (glue), binary forms
(binforms), torsion sections on fibre configurations (fibration), branch
cycles (monodromy), rational maps and Weierstrass models (covering), plane
curve singularities (curves), and the aggregate ledger (verify, cli).
"""

__version__ = "0.1.0"
