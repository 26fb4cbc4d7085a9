"""Exact Clifford algebras, spinor modules and their endomorphisms.

Quick tour::

    >>> from cliffordkit import QuadraticSpace, Multivector
    >>> E3 = QuadraticSpace.euclidean(3)
    >>> e1, e2 = Multivector.blade(E3, [1]), Multivector.blade(E3, [2])
    >>> e1 * e1
    -1
    >>> e1 * e2 + e2 * e1
    0
"""

from .clifford import (
    CLIFFORD,
    EXTERIOR,
    Multivector,
    QuadraticSpace,
    blade_indices,
    blade_mask,
    blade_product,
    dimension_census,
    graded_lex_masks,
    parity_split,
    parse_multivector,
    star,
)
from .endo import (
    CalibratedQ,
    DecompositionOracle,
    DecompositionResult,
    calibrate,
    decompose_endo,
    p_algebra,
    p_hat,
    q_algebra,
    q_hat,
    skew_product_check,
    supercommutant_basis,
)
from .errors import *  # noqa: F401,F403
from .exterior import (
    clifford_action_on_exterior,
    epsilon,
    grade_decompose,
    gram_form,
    iota,
    quantize,
    symbol,
)
from .operators import OperatorMatrix
from .scalars import I, GaussianRational
from .spin import (
    Ad,
    GroupElement,
    PiMultiple,
    ad_matrix,
    clifford_exp,
    commuting_split,
    contraction_identity_check,
    structure_constants,
    supercommutator,
)
from .spinor import (
    SpinorContext,
    TwistedModule,
    build_twisted,
    chirality,
    clifford_action_matrix,
    complexify,
    end_s_dimension_check,
    gamma_matrices,
    hermitian_form,
    op_adjoint,
    polarize,
    sigma_tensor,
    spinor_context,
)

__version__ = "0.1.0"
