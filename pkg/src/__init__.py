"""
qcalc Source Package
Main package containing the q-calculus engine and its identity registry.
"""

__version__ = "1.0.0"
__author__ = "qcalc Team"

# This file makes the src directory a Python package
# Import modules as needed in other files
