"""Jet and arc space invariants of Pfaffian ideals of generic skew-symmetric matrices."""

from .exact import L, FactoredRational1, LaurentPoly, PolyFrac, TruncSeries, order_at_one
from .groth import class_csp, class_gl, class_sp, orbit_class, point_count, stabilizer_class
from .jetalg import (
    OVERFLOW,
    JetSkewMatrix,
    TruncPoly,
    delta_matrix,
    ord_pfaffian_ideal,
    pfaffian,
    rigidity_check,
    smith_lambda,
)
from .monodromy import CycloProduct, alpha_image_class, euler_fiber_term, monodromy_zeta_shape
from .strata import TOP, components, enum_strata, hasse, precedes
from .zeta import check_hc, check_mc, eigenvalues, resolution_poles, zvp_closed_form, zvp_coefficient_direct, ztop

__version__ = "0.1.0"
