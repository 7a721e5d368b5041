# Tests package initialization
# This file is needed to make the tests directory a Python package
