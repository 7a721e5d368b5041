"""
Identity registry for qcalc
Contains every checked identity, exact and numeric, keyed by a stable id.
"""

# This file makes the identities directory a Python package
# Importing the entry modules fills the registry
from src.identities import algebraic, analytic  # noqa: F401
from src.identities.registry import (  # noqa: F401
    CheckContext,
    EntryKind,
    IdentityEntry,
    Report,
    check,
    check_all,
    check_all_async,
    entries,
    get_entry,
)
