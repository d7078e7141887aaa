"""Contact Hamiltonians of singular contact germs ``dz + alpha + z beta``.

Exact truncated power series over Q, differential forms on C^(2k+1),
Pfaffians, and the membership / inversion machinery for the map
``theta(X) = omega(X)``.
"""

from contactkit.contact import (
    ContactGerm,
    classical_inverse,
    contact_defect,
    darboux_germ,
    icct_check,
    invert_theta,
    membership,
    realizability_check,
    solve_theta_inverse,
    structurally_smooth_origin,
    tangency_check,
    theta,
    vanishing_order_corollary,
)
from contactkit.errors import (
    ContactKitError,
    DegenerateGerm,
    DivisibilityFailure,
    InvariantViolation,
    MembershipFailure,
    PrecisionExhausted,
    PreconditionError,
    RingMismatch,
)
from contactkit.exterior import Form, VectorField
from contactkit.expr import eval_expr, parse_expr, to_text
from contactkit.pfaffian import SkewMatrix, pf
from contactkit.ring import Series

__version__ = "0.1.0"
