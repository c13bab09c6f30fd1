"""Finite-group computation toolkit.

Conjugacy-class product covering, symbolic and matrix class-size ratios,
twisted-commutator width decompositions, filter-base index sets over
families of simple groups, and dense-normal-closure checks.
"""

from .alternating import ClassRatio, CycleType, an_class_size, h_sequence, spectrum_element_an
from .cover import CoverReport, corpus_cover_report, covering_number, product_covers
from .density import build_tau_product, dense_closure_check, g_star
from .engine import (
    Automorphism,
    ConjClass,
    ElementSet,
    GroupTable,
    automorphism_from_images,
    build_group,
    central_product,
    direct_product,
    quotient,
)
from .errors import CapExceededError, ClasscoverError, InvalidSpecError, PreconditionError
from .filterbase import Family, a_set, cover_certificate, fip_check, principal_quotient
from .lattice import normal_subgroups, residuals
from .linear import MatrixElement, centralizer_order_sl, spectrum_element_sl
from .specs import GroupSpec, parse_spec, render_spec
from .widths import (
    TwistedSet,
    WidthReport,
    acceptable_check,
    acceptable_width_check,
    alpha,
    gaschutz_lift,
    inner_width_check,
    lemma_useful_check,
    minimal_width,
    qsimple_check,
    soluble_width_check,
    twisted_commutator_set,
)

__version__ = "0.1.0"
