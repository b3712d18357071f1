"""Exact-arithmetic engine for the type-C quantum exterior algebra.

The package models the quantum exterior algebra on 2n generators indexed by
the signed set {1, ..., n, -n, ..., -1}, together with its commuting actions
of quantum sp(2n) and quantum sl(2), the canonical basis, the attendant
crystal combinatorics, tilting-character computations over specialized
fields, and a registry of machine-checkable verification certificates
exposed through the ``qextc`` command-line tool.
"""

__version__ = "0.1.0"
