"""Exact computations for the Weil representation of Sp_2n over the dyadic numbers.

Modules: ``cyclotomic`` (exact cyclotomic fields), ``dyadic`` (valuations and
additive characters), ``schwartz`` (locally constant functions and Fourier
transforms), ``chevalley`` (the split group Sp_2n), ``heisenberg`` (Weil
operators), ``finite_groups`` (groups over F_2), ``weyl`` (affine Weyl groups),
``hecke`` (Iwahori-Hecke algebras) and ``suites`` (the verification harness).
"""

__version__ = "0.1.0"
