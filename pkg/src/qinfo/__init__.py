"""qinfo: information theory, state-vector quantum simulation, quantum
algorithms, and quantum error correction at desk scale."""

from .algorithms import (
    FactorResult,
    GroverInstance,
    GroverResult,
    PeriodInstance,
    PeriodRun,
    classical_period,
    euclid_gcd,
    grover_search,
    grover_state,
    modexp,
    shor_factor,
    shor_period,
)
from .circuits import Circuit, hadamard_all, inverse_qft, parse_circuit, qft, run
from .density import (
    density_from_state,
    fidelity,
    reduced_density_matrix,
    schumacher_qubit_count,
    state_fidelity,
    von_neumann_entropy,
)
from .gf2 import LinearCode, hamming_7_4, repetition_code, shannon_demo
from .info_theory import (
    HuffmanCode,
    JointDist,
    ProbDist,
    binary_entropy,
    binomial_pmf,
    bsc_capacity,
    bsc_joint,
    conditional_entropy,
    huffman_build,
    joint_entropy,
    message_distribution,
    mutual_information,
    shannon_entropy,
    typical_set_stats,
)
from .protocols import (
    Bb84Report,
    attempt_clone_via_xor,
    bb84,
    bell_correlation,
    dense_code_roundtrip,
    detection_miss_probability,
    epr_pair,
    ghz_contradiction,
    ghz_state,
    lhv_max_same_probability,
    singlet,
    teleport,
)
from .states import (
    MAX_QUBITS,
    StateVector,
    apply_1q,
    apply_controlled,
    apply_pauli_string,
    apply_toffoli,
    basis_state,
    from_amplitudes,
    inner,
    measure_qubit,
    measure_register,
    pauli_expectation,
    phase_gate,
    same_up_to_phase,
    standard_gate,
    state_to_json,
    tensor,
    v_gate,
    zero_state,
)
from .steane import (
    SteaneCode,
    Syndrome,
    correct,
    css_duality_check,
    encode_logical,
    extract_syndrome,
    noise_scaling_mc,
    quantum_hamming_bound,
    recover,
    steane_code,
    uncorrectable_estimate,
)

__version__ = "0.1.0"
