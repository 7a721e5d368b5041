"""
Command Line Interface for qcalc
Contains the verify, eval and table commands.
"""

# This file makes the cli directory a Python package
# Import functions as needed in other files
