"""Two- and three-party protocol simulations: Bell correlations and the
local-hidden-variable bound, GHZ, cloning by XOR, dense coding,
teleportation, and BB84 key distribution.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import states
from .density import density_from_state, fidelity, reduced_density_matrix
from .states import StateVector, apply_1q, apply_controlled, basis_state


# ---------------------------------------------------------------------------
# Entangled resource states
# ---------------------------------------------------------------------------

def epr_pair() -> StateVector:
    """(|00> + |11>) / sqrt(2)."""
    return states.from_amplitudes([1 / math.sqrt(2), 0, 0, 1 / math.sqrt(2)])


def singlet() -> StateVector:
    """(|01> - |10>) / sqrt(2); anticorrelated along every common axis."""
    return states.from_amplitudes([0, 1 / math.sqrt(2), -1 / math.sqrt(2), 0])


def ghz_state() -> StateVector:
    """(|000> + |111>) / sqrt(2)."""
    amps = np.zeros(8, dtype=complex)
    amps[0] = amps[7] = 1 / math.sqrt(2)
    return states.from_amplitudes(amps)


# ---------------------------------------------------------------------------
# Bell correlations and the local-hidden-variable bound
# ---------------------------------------------------------------------------

def _axis_eigenvectors(phi: float) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvectors of cos(phi) Z + sin(phi) X, the x-z-plane axis at angle
    phi from z."""
    plus = np.array([math.cos(phi / 2), math.sin(phi / 2)], dtype=complex)
    minus = np.array([-math.sin(phi / 2), math.cos(phi / 2)], dtype=complex)
    return plus, minus


def bell_correlation(phi_a: float, phi_b: float) -> float:
    """P(equal outcomes) for singlet halves measured along x-z axes.

    Computed from the joint Born probabilities of the four outcome pairs,
    not from the closed form sin^2((phi_a - phi_b) / 2).
    """
    psi = singlet().amps
    a_plus, a_minus = _axis_eigenvectors(phi_a)
    b_plus, b_minus = _axis_eigenvectors(phi_b)
    p_same = 0.0
    for a_vec, b_vec in ((a_plus, b_plus), (a_minus, b_minus)):
        # qubit 0 belongs to A, qubit 1 to B; joint index = a + 2 b
        bra = np.kron(b_vec, a_vec).conj()
        p_same += abs(np.dot(bra, psi)) ** 2
    return p_same


def lhv_max_same_probability(angles: list[float]) -> float:
    """Best average P(same outcome) over unequal-angle setting pairs that
    deterministic local assignments can reach, given perfect
    anticorrelation at equal angles.

    Brute force over all 2^(2k) joint assignments; assignments violating
    the equal-angle constraint are discarded.
    """
    k = len(angles)
    if k > 4:
        raise ValueError("brute-force search limited to 4 angles")
    pairs = [(i, j) for i in range(k) for j in range(k) if i != j]
    if not pairs:
        return 0.0
    best = 0.0
    for a_bits in itertools.product((0, 1), repeat=k):
        for b_bits in itertools.product((0, 1), repeat=k):
            if any(a == b for a, b in zip(a_bits, b_bits)):
                continue  # would agree at equal angles
            same = sum(a_bits[i] == b_bits[j] for i, j in pairs) / len(pairs)
            best = max(best, same)
    return best


def ghz_contradiction() -> dict[str, float]:
    """The GHZ test: expectation values of XXX, XYY, YXY, YYX on the GHZ
    state multiply to -1, while every deterministic local assignment of
    x and y outcomes forces the product +1 (checked by 2^6 enumeration).
    """
    ghz = ghz_state()
    observables = ("XXX", "XYY", "YXY", "YYX")
    values = {obs: states.pauli_expectation(ghz, obs) for obs in observables}
    product = math.prod(values.values())
    lhv_products = set()
    for bits in itertools.product((-1, 1), repeat=6):
        x, y = bits[:3], bits[3:]
        lhv_products.add(
            (x[0] * x[1] * x[2])
            * (x[0] * y[1] * y[2])
            * (y[0] * x[1] * y[2])
            * (y[0] * y[1] * x[2])
        )
    assert lhv_products == {1}
    values["product"] = product
    values["lhv_product"] = 1.0
    return values


# ---------------------------------------------------------------------------
# No cloning
# ---------------------------------------------------------------------------

def attempt_clone_via_xor(state: StateVector) -> float:
    """Try to copy a one-qubit state with CNOT onto a |0> target.

    Returns the fidelity of the would-be copy (the reduced state of the
    target) against the input.  Basis states copy perfectly; superpositions
    do not, which is the content of the no-cloning theorem.
    """
    if state.n_qubits != 1:
        raise ValueError("cloning demo takes a single qubit")
    joint = states.tensor(state, basis_state("0"))
    joint = apply_controlled(joint, 0, 1, states.GATE_X)
    copy_dm = reduced_density_matrix(joint, [1])
    return fidelity(copy_dm, density_from_state(state))


# ---------------------------------------------------------------------------
# Dense coding
# ---------------------------------------------------------------------------

_DENSE_OPS = ("I", "X", "Y", "Z")
# Bob's (target bit, sign bit) measurements identify Alice's operation.
_DENSE_DECODE = {(0, 0): 0, (1, 0): 1, (1, 1): 2, (0, 1): 3}


def dense_code_roundtrip(two_bits: int) -> int:
    """Send two classical bits through one qubit of a shared EPR pair.

    Alice applies {I, X, Y, Z}[two_bits] to her half (qubit 0); Bob applies
    CNOT, measures the target, applies H, and measures the sign.  Both
    measurements are deterministic, so the roundtrip is exact.
    """
    if not 0 <= two_bits <= 3:
        raise ValueError("dense coding carries values 0..3")
    state = epr_pair()
    name = _DENSE_OPS[two_bits]
    if name != "I":
        state = apply_1q(state, states.standard_gate(name), 0)
    state = apply_controlled(state, 0, 1, states.GATE_X)
    rng = np.random.default_rng(0)  # outcomes are deterministic
    target_bit, state, prob = states.measure_qubit(state, 1, rng)
    assert prob > 1.0 - 1e-9
    state = apply_1q(state, states.GATE_H, 0)
    sign_bit, _, prob = states.measure_qubit(state, 0, rng)
    assert prob > 1.0 - 1e-9
    return _DENSE_DECODE[(target_bit, sign_bit)]


# ---------------------------------------------------------------------------
# Teleportation
# ---------------------------------------------------------------------------

# Correction selected by (first measured bit, second measured bit).
_TELEPORT_FIX = {(0, 0): "I", (0, 1): "X", (1, 0): "Z", (1, 1): "Y"}


def teleport_premeasurement(state: StateVector) -> StateVector:
    """The 3-qubit state right before Alice measures: CNOT(0,1) then H(0)
    applied to (unknown qubit) x (EPR pair on qubits 1, 2)."""
    if state.n_qubits != 1:
        raise ValueError("teleportation carries a single qubit")
    joint = states.tensor(state, epr_pair())
    joint = apply_controlled(joint, 0, 1, states.GATE_X)
    return apply_1q(joint, states.GATE_H, 0)


def teleport(
    state: StateVector, rng: np.random.Generator
) -> tuple[StateVector, tuple[int, int]]:
    """Full protocol: Bell measurement by Alice, conditional Pauli fix by Bob.

    Returns Bob's qubit (exactly the input state, up to a global phase) and
    Alice's two classical bits.
    """
    joint = teleport_premeasurement(state)
    m0, joint, _ = states.measure_qubit(joint, 0, rng)
    m1, joint, _ = states.measure_qubit(joint, 1, rng)
    fix = _TELEPORT_FIX[(m0, m1)]
    if fix != "I":
        joint = apply_1q(joint, states.standard_gate(fix), 2)
    base = m0 + 2 * m1
    bob = states.from_amplitudes([joint.amps[base], joint.amps[base + 4]])
    return bob, (m0, m1)


# ---------------------------------------------------------------------------
# BB84 quantum key distribution
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Bb84Report:
    n_sent: int
    sifted_len: int
    qber: float
    eve_present: bool
    disclosed: int
    detected: bool
    final_key_bits: str


def bb84(
    n: int,
    eve: bool,
    disclose_fraction: float,
    rng: np.random.Generator,
) -> Bb84Report:
    """Simulate n qubits of the four-state protocol, qubit by qubit.

    Each qubit is one of |0>, |1>, |+>, |->, fully determined by Alice's
    (bit, basis) pair; measuring in the matching basis returns the bit
    deterministically, measuring in the conjugate basis returns a fair
    coin and re-prepares the qubit in the measured state.  Eve, when
    present, intercepts every qubit in a uniformly random basis and
    resends what she measured.  Basis reconciliation keeps roughly half
    the positions; a random `disclose_fraction` of the sifted bits is
    compared publicly to look for the disturbance Eve causes.
    """
    if n < 4:
        raise ValueError("need at least 4 qubits")
    if not 0.0 <= disclose_fraction <= 1.0:
        raise ValueError("disclose_fraction outside [0, 1]")
    alice_bits = rng.integers(0, 2, size=n)
    alice_bases = rng.integers(0, 2, size=n)  # 0: {|0>,|1>}, 1: {|+>,|->}

    bits, bases = alice_bits, alice_bases
    if eve:
        eve_bases = rng.integers(0, 2, size=n)
        coins = rng.integers(0, 2, size=n)
        matched = eve_bases == bases
        eve_bits = np.where(matched, bits, coins)
        bits, bases = eve_bits, eve_bases  # resent states

    bob_bases = rng.integers(0, 2, size=n)
    coins = rng.integers(0, 2, size=n)
    matched = bob_bases == bases
    bob_bits = np.where(matched, bits, coins)

    sifted = alice_bases == bob_bases
    alice_key = alice_bits[sifted]
    bob_key = bob_bits[sifted]
    sifted_len = int(sifted.sum())
    mismatches = alice_key != bob_key
    qber = float(mismatches.mean()) if sifted_len else 0.0

    n_disclose = int(disclose_fraction * sifted_len)
    disclosed_idx = rng.choice(sifted_len, size=n_disclose, replace=False)
    detected = bool(mismatches[disclosed_idx].any()) if n_disclose else False
    keep = np.ones(sifted_len, dtype=bool)
    keep[disclosed_idx] = False
    final_key = "".join(str(b) for b in alice_key[keep])

    return Bb84Report(
        n_sent=n,
        sifted_len=sifted_len,
        qber=qber,
        eve_present=eve,
        disclosed=n_disclose,
        detected=detected,
        final_key_bits=final_key,
    )


def detection_miss_probability(disclosed: int) -> float:
    """Chance that an intercept-resend Eve survives `disclosed` publicly
    compared bits: each has independently a 3/4 chance of agreeing."""
    if disclosed < 0:
        raise ValueError("disclosed must be nonnegative")
    return 0.75**disclosed
