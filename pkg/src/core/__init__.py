"""
Core functionality for qcalc
Contains coefficient fields, relation algebras, q-series, Jackson integrals,
q-Hermite polynomials, the q-Fourier transform and the braided line.
"""

# This file makes the core directory a Python package
# Import functions as needed in other files
