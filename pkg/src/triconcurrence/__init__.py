"""Operational lower bounds on the concurrence of tripartite quantum states.

States of arbitrary local dimensions (m, n, l) are projected onto kept-level
substates; trace-norm entanglement criteria evaluated on every substate are
combined with exact combinatorial coefficients into certified lower bounds on
the squared concurrence.
"""

from .bounds import (
    BoundReport,
    ConvexWeights,
    SubstateContribution,
    build_discrepancy_report,
    convex_combo,
    example_bound,
    example_curve,
    g2_bound,
    tau_lmn,
    tau_sss,
)
from .concurrence import (
    ConcurrenceValue,
    concurrence_coeff,
    concurrence_reduced,
    substate_pure_concurrence,
)
from .linalg import flatten_index, hermitian_eigenvalues, kron, trace_norm, unflatten_index
from .oracle import RoofEstimate, literal_eq4, roof_upper_bound
from .states import (
    DensityMatrix,
    PureState,
    TripartiteDims,
    example_feature_state,
    make_example_state,
    make_named,
    pure_to_density,
    random_mixed,
    random_product_density,
    random_pure,
)
from .stateio import StateFileError, load_state, save_state
from .substates import (
    BoundCoefficient,
    SubspaceSelector,
    coefficient_lmn,
    coefficient_sss,
    count_selectors,
    enumerate_selectors,
    full_selector,
)
from .transforms import (
    Bipartition,
    partial_trace,
    partial_transpose,
    project_substate,
    purity_deficits,
    realign,
)

__version__ = "0.1.0"
