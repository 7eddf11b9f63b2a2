"""Cyclic multiparticle indistinguishability and its detection on Fourier multiports."""

from .errors import (
    ConsistencyError,
    DomainError,
    MultihomError,
    NormalizationError,
    ResourceLimitError,
)
from .multiport import (
    OutcomeDistribution,
    UnitaryMatrix,
    configurations,
    count_distribution,
    evolve,
    evolve_grouped,
    hom_probabilities,
    output_distribution,
    qft_unitary,
)
from .permutations import (
    Permutation,
    apply,
    cycle,
    cyclic_measure,
    expectation,
    identity,
    pairwise_measure,
    transposition,
)
from .states import (
    Ensemble,
    PureState,
    antisymmetric_state,
    barred_eigenstate,
    basis_state,
    cyclic_eigenstate,
    make_pure,
    mix,
    rho_representative,
    symmetric_state,
)
from .statespec import parse_state
from .suppression import (
    ClassProbabilities,
    Classification,
    class_probabilities,
    class_sets,
    classify_state,
    measure_via_multiport,
    mode_shift_expectation,
    operational_measure,
    suppression_class,
)

__version__ = "0.1.0"
