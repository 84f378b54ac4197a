"""Exact computations with n-th differential modules over GF(p) and Q.

The heavy lifting lives in the compiled extension ``diffn._diffn``; this
package re-exports its public surface.
"""

from ._diffn import (
    InputError,
    InternalError,
    Morphism,
    Object,
    property_names,
    run_verify,
)

__all__ = [
    "InputError",
    "InternalError",
    "Morphism",
    "Object",
    "property_names",
    "run_verify",
]
