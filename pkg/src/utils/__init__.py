"""
Utility functions for qcalc
Contains report serialization and the async operation runner.
"""

# This file makes the utils directory a Python package
# Import functions as needed in other files
