"""Simulation of fuzzy sets on a quantum register.

Fuzzy membership functions over a finite universe are loaded into qubit
registers, fuzzy connectives act as gates (Pauli-X complement, Toffoli
intersection), square-window fuzzification and center-of-mass
defuzzification run as linear maps and basis permutations, and arbitrary
register states serve as superposed, possibly entangled fuzzy sets.
"""

from .analysis import (
    EntanglementReport,
    OrthogonalityVerdict,
    cfs_inner,
    check_orthogonality,
    entanglement_report,
    sampling_vs_oracle,
    total_variation,
)
from .errors import ResourceLimitError
from .exprparser import (
    Environment,
    EvalError,
    ParseError,
    eval_classical,
    eval_quantum,
    evaluate,
    parse,
    pretty_print,
)
from .fuzzy import (
    CrispSubset,
    FuzzySet,
    classical_fuzzify,
    com_index,
    com_index_literal,
    com_pushforward,
    complement,
    crisp_subset_probability,
    intersect,
    oracle_distribution,
    union,
)
from .qfs import (
    QuantumFuzzySet,
    RegisterLayout,
    defuzzify,
    encode,
    expansion_coeff,
    fuz_isometry,
    fuz_linear,
    qand,
    qnot,
    qor,
    rotation_gate,
    superpose,
    u_com,
    value_marginals,
)
from .statevec import (
    DEFAULT_QUBIT_CAP,
    PAULI_X,
    StateVector,
    apply_controlled,
    apply_single,
    basis_probability,
    basis_state,
    bloch_point,
    factor_product_state,
    ground_state,
    inner_product,
    measure_qubits,
    one_probabilities,
    sample_distribution,
    schmidt_rank,
    tensor_product,
)

__version__ = "0.1.0"
