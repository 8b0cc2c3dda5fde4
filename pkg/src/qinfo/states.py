"""Dense state-vector core: registers, gates, measurement, Pauli strings.

Conventions, fixed once and used everywhere:

* Qubit ``i`` is bit ``i`` (least significant) of the basis-state index,
  so ``amps[x]`` is the amplitude of ``|x>``.
* Basis labels are written qubit-0-leftmost: ``"011"`` is qubit 0 in 0,
  qubits 1 and 2 in 1, i.e. index 6.
* The Pauli ``Y`` is the real matrix ``X @ Z = [[0,-1],[1,0]]``.  The
  Hermitian sigma-y (``i*X@Z``) is used only inside
  :func:`pauli_expectation`, where a real expectation value is required.
  The two differ by a global phase, which no other operation can observe.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

# Hard cap on register width; 2^20 complex doubles = 16 MiB per state.
MAX_QUBITS = 20

NORM_TOL = 1e-9

# Post-measurement branches with less weight than this are treated as
# impossible and the other outcome is forced.
IMPOSSIBLE_BRANCH = 1e-12


# ---------------------------------------------------------------------------
# State vectors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StateVector:
    """Unit-norm vector of 2^n complex amplitudes over the computational basis."""

    n_qubits: int
    amps: np.ndarray

    def __post_init__(self) -> None:
        if not 1 <= self.n_qubits <= MAX_QUBITS:
            raise ValueError(
                f"n_qubits must be in [1, {MAX_QUBITS}], got {self.n_qubits}"
            )
        amps = np.asarray(self.amps, dtype=complex)
        if amps.shape != (1 << self.n_qubits,):
            raise ValueError(
                f"expected {1 << self.n_qubits} amplitudes, got {amps.shape}"
            )
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized: |amps| = {norm}")
        object.__setattr__(self, "amps", amps)

    def probabilities(self) -> np.ndarray:
        """Born probabilities |amps|^2 in basis order."""
        return np.abs(self.amps) ** 2

    def __repr__(self) -> str:
        return f"StateVector({self.n_qubits}, {format_terms(self)!r})"


def basis_index(label: str) -> int:
    """Index of the basis state written qubit-0-leftmost ("011" -> 6)."""
    if not label or set(label) - {"0", "1"}:
        raise ValueError(f"invalid basis label {label!r}")
    return sum(1 << q for q, ch in enumerate(label) if ch == "1")


def basis_label(index: int, n_qubits: int) -> str:
    """Written form of basis state `index`, qubit 0 leftmost."""
    return "".join(str((index >> q) & 1) for q in range(n_qubits))


def zero_state(n_qubits: int) -> StateVector:
    amps = np.zeros(1 << n_qubits, dtype=complex)
    amps[0] = 1.0
    return StateVector(n_qubits, amps)


def basis_state(label: str | int, n_qubits: int | None = None) -> StateVector:
    """State |label>; `label` is a written string or an index (needs n_qubits)."""
    if isinstance(label, str):
        n = len(label)
        index = basis_index(label)
    else:
        if n_qubits is None:
            raise ValueError("integer basis label requires n_qubits")
        n, index = n_qubits, label
        if not 0 <= index < (1 << n):
            raise ValueError(f"basis index {index} out of range for {n} qubits")
    amps = np.zeros(1 << n, dtype=complex)
    amps[index] = 1.0
    return StateVector(n, amps)


def from_amplitudes(amps: Sequence[complex]) -> StateVector:
    amps = np.asarray(amps, dtype=complex)
    n = int(amps.size).bit_length() - 1
    return StateVector(n, amps)


def format_terms(state: StateVector, eps: float = 1e-9) -> str:
    """Human-readable sum of non-negligible terms, for debugging."""
    parts = []
    for i, amp in enumerate(state.amps):
        if abs(amp) > eps:
            parts.append(f"({amp:.4g})|{basis_label(i, state.n_qubits)}>")
    return " + ".join(parts)


def tensor(s1: StateVector, s2: StateVector) -> StateVector:
    """Joint register: s1 keeps qubits 0..n1-1, s2 occupies the qubits above."""
    # kron's first factor owns the high bits of the joint index.
    return StateVector(s1.n_qubits + s2.n_qubits, np.kron(s2.amps, s1.amps))


def inner(s1: StateVector, s2: StateVector) -> complex:
    """<s1|s2>."""
    if s1.n_qubits != s2.n_qubits:
        raise ValueError("inner product requires equal register sizes")
    return complex(np.vdot(s1.amps, s2.amps))


def same_up_to_phase(s1: StateVector, s2: StateVector, tol: float = 1e-9) -> bool:
    """Equality modulo an unobservable global phase: | |<s1|s2>|^2 - 1 | <= tol."""
    return abs(abs(inner(s1, s2)) ** 2 - 1.0) <= tol


def state_to_json(state: StateVector) -> str:
    """JSON array of [re, im] pairs in basis order."""
    return json.dumps([[float(a.real), float(a.imag)] for a in state.amps])


# ---------------------------------------------------------------------------
# Single-qubit gates
# ---------------------------------------------------------------------------

GATE_I = np.eye(2, dtype=complex)
GATE_X = np.array([[0, 1], [1, 0]], dtype=complex)
GATE_Z = np.array([[1, 0], [0, -1]], dtype=complex)
# Y = X @ Z, real by construction (not the Hermitian sigma-y).
GATE_Y = GATE_X @ GATE_Z
GATE_H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)

_FIXED_GATES = {"I": GATE_I, "X": GATE_X, "Y": GATE_Y, "Z": GATE_Z, "H": GATE_H}

SIGMA_Y = 1j * GATE_Y  # Hermitian; used only for expectation values


def phase_gate(theta: float) -> np.ndarray:
    """P(theta) = diag(1, e^{i theta}); P(pi) = Z."""
    return np.array([[1, 0], [0, np.exp(1j * theta)]], dtype=complex)


def standard_gate(name: str, theta: float | None = None) -> np.ndarray:
    """One of I, X, Y, Z, H, or P (which requires an angle)."""
    if name == "P":
        if theta is None:
            raise ValueError("gate P requires an angle")
        return phase_gate(theta)
    try:
        return _FIXED_GATES[name].copy()
    except KeyError:
        raise ValueError(f"unknown gate {name!r}") from None


def v_gate(theta: float, phi: float) -> np.ndarray:
    """General single-qubit rotation by theta about the axis phi in the x-y plane.

    V(0, .) = I; V(pi, pi/2) = [[0,-1],[1,0]]; V(pi, 0) = -i X.
    Together with controlled-not this family is a universal gate set.
    """
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array(
        [
            [c, -1j * np.exp(-1j * phi) * s],
            [-1j * np.exp(1j * phi) * s, c],
        ],
        dtype=complex,
    )


def is_unitary(matrix: np.ndarray, tol: float = 1e-9) -> bool:
    m = np.asarray(matrix, dtype=complex)
    return m.shape[0] == m.shape[1] and bool(
        np.allclose(m @ m.conj().T, np.eye(m.shape[0]), atol=tol)
    )


# ---------------------------------------------------------------------------
# Gate application
# ---------------------------------------------------------------------------

def _check_target(state: StateVector, target: int) -> None:
    if not 0 <= target < state.n_qubits:
        raise ValueError(f"qubit index {target} out of range for {state.n_qubits} qubits")


def apply_1q(state: StateVector, gate: np.ndarray, target: int) -> StateVector:
    """Apply a 2x2 unitary to one qubit; pairs of amplitudes differing in
    the target bit transform together."""
    _check_target(state, target)
    # index = high * 2^(t+1) + bit * 2^t + low
    a = state.amps.reshape(-1, 2, 1 << target)
    new = np.empty_like(a)
    new[:, 0, :] = gate[0, 0] * a[:, 0, :] + gate[0, 1] * a[:, 1, :]
    new[:, 1, :] = gate[1, 0] * a[:, 0, :] + gate[1, 1] * a[:, 1, :]
    return StateVector(state.n_qubits, new.reshape(-1))


def apply_controlled(
    state: StateVector, control: int, target: int, gate: np.ndarray
) -> StateVector:
    """Apply `gate` to `target` on the subspace where `control` is 1."""
    _check_target(state, control)
    _check_target(state, target)
    if control == target:
        raise ValueError("control and target must differ")
    idx = np.arange(state.amps.size)
    sel = ((idx >> control) & 1 == 1) & ((idx >> target) & 1 == 0)
    i0 = idx[sel]
    i1 = i0 | (1 << target)
    new = state.amps.copy()
    new[i0] = gate[0, 0] * state.amps[i0] + gate[0, 1] * state.amps[i1]
    new[i1] = gate[1, 0] * state.amps[i0] + gate[1, 1] * state.amps[i1]
    return StateVector(state.n_qubits, new)


def apply_controlled_phase(
    state: StateVector, theta: float, control: int, target: int
) -> StateVector:
    """Diagonal fast path for controlled-P(theta)."""
    _check_target(state, control)
    _check_target(state, target)
    if control == target:
        raise ValueError("control and target must differ")
    idx = np.arange(state.amps.size)
    both = ((idx >> control) & 1 == 1) & ((idx >> target) & 1 == 1)
    new = state.amps.copy()
    new[both] *= np.exp(1j * theta)
    return StateVector(state.n_qubits, new)


def apply_toffoli(state: StateVector, c1: int, c2: int, target: int) -> StateVector:
    """Flip `target` iff both controls are 1 (AND into a |0> target)."""
    for q in (c1, c2, target):
        _check_target(state, q)
    if len({c1, c2, target}) != 3:
        raise ValueError("toffoli requires three distinct qubits")
    idx = np.arange(state.amps.size)
    sel = ((idx >> c1) & 1 == 1) & ((idx >> c2) & 1 == 1)
    new = state.amps.copy()
    new[idx[sel]] = state.amps[idx[sel] ^ (1 << target)]
    return StateVector(state.n_qubits, new)


def swap_qubits(state: StateVector, a: int, b: int) -> StateVector:
    """Exchange two qubits (the three-CNOT swap, applied as one permutation)."""
    _check_target(state, a)
    _check_target(state, b)
    if a == b:
        return state
    idx = np.arange(state.amps.size)
    bit_a = (idx >> a) & 1
    bit_b = (idx >> b) & 1
    src = idx ^ ((bit_a ^ bit_b) * ((1 << a) | (1 << b)))
    return StateVector(state.n_qubits, state.amps[src])


# ---------------------------------------------------------------------------
# Measurement
# ---------------------------------------------------------------------------

class MeasureResult(NamedTuple):
    outcome: int
    state: StateVector
    probability: float


def measure_qubit(
    state: StateVector, target: int, rng: np.random.Generator
) -> MeasureResult:
    """Projectively measure one qubit in the computational basis.

    The outcome is sampled with Born probabilities and the collapsed,
    renormalized state is returned alongside the probability of the
    outcome actually obtained.
    """
    _check_target(state, target)
    a = state.amps.reshape(-1, 2, 1 << target)
    p1 = float(np.sum(np.abs(a[:, 1, :]) ** 2))
    p1 = min(max(p1, 0.0), 1.0)
    if p1 < IMPOSSIBLE_BRANCH:
        outcome = 0
    elif 1.0 - p1 < IMPOSSIBLE_BRANCH:
        outcome = 1
    else:
        outcome = 1 if rng.random() < p1 else 0
    prob = p1 if outcome == 1 else 1.0 - p1
    new = np.zeros_like(a)
    new[:, outcome, :] = a[:, outcome, :] / math.sqrt(prob)
    return MeasureResult(outcome, StateVector(state.n_qubits, new.reshape(-1)), prob)


def measure_register(
    state: StateVector, qubits: Sequence[int], rng: np.random.Generator
) -> tuple[int, StateVector]:
    """Measure several qubits at once; returns their joint value (qubit
    qubits[k] contributes bit k) and the collapsed state."""
    qubits = list(qubits)
    for q in qubits:
        _check_target(state, q)
    if len(set(qubits)) != len(qubits):
        raise ValueError("duplicate qubit in register measurement")
    idx = np.arange(state.amps.size)
    vals = np.zeros_like(idx)
    for k, q in enumerate(qubits):
        vals |= ((idx >> q) & 1) << k
    probs = np.bincount(vals, weights=np.abs(state.amps) ** 2,
                        minlength=1 << len(qubits))
    probs = probs / probs.sum()
    value = int(rng.choice(probs.size, p=probs))
    mask = vals == value
    new = np.where(mask, state.amps, 0.0)
    new /= math.sqrt(float(probs[value]))
    return value, StateVector(state.n_qubits, new)


# ---------------------------------------------------------------------------
# Pauli strings (error operators)
# ---------------------------------------------------------------------------

_PAULI_TABLE = {
    # Label-wise products; phases are dropped, so this is the group of
    # labels {I,X,Y,Z} under multiplication.
    ("I", "I"): "I", ("I", "X"): "X", ("I", "Y"): "Y", ("I", "Z"): "Z",
    ("X", "I"): "X", ("X", "X"): "I", ("X", "Y"): "Z", ("X", "Z"): "Y",
    ("Y", "I"): "Y", ("Y", "X"): "Z", ("Y", "Y"): "I", ("Y", "Z"): "X",
    ("Z", "I"): "Z", ("Z", "X"): "Y", ("Z", "Y"): "X", ("Z", "Z"): "I",
}


def validate_pauli_string(pauli: str, n_qubits: int | None = None) -> None:
    if set(pauli) - set("IXYZ"):
        raise ValueError(f"invalid Pauli string {pauli!r}")
    if n_qubits is not None and len(pauli) != n_qubits:
        raise ValueError(
            f"Pauli string length {len(pauli)} does not match register of {n_qubits}"
        )


def pauli_product(p: str, q: str) -> str:
    """Qubit-wise product of two Pauli strings, phases dropped."""
    validate_pauli_string(p)
    validate_pauli_string(q, len(p))
    return "".join(_PAULI_TABLE[a, b] for a, b in zip(p, q))


def _pauli_masks(pauli: str) -> tuple[int, int]:
    """(bit-flip mask for X/Y positions, sign mask for Z/Y positions)."""
    mx = sum(1 << q for q, ch in enumerate(pauli) if ch in "XY")
    mz = sum(1 << q for q, ch in enumerate(pauli) if ch in "ZY")
    return mx, mz


def _parity(values: np.ndarray) -> np.ndarray:
    """Bit parity of each entry (values < 2^32)."""
    v = values.astype(np.uint32)
    v ^= v >> np.uint32(16)
    v ^= v >> np.uint32(8)
    v ^= v >> np.uint32(4)
    v ^= v >> np.uint32(2)
    v ^= v >> np.uint32(1)
    return (v & np.uint32(1)).astype(np.int64)


def apply_pauli_string(state: StateVector, pauli: str) -> StateVector:
    """Apply a tensor product of {I,X,Y,Z} with the real Y = XZ.

    Y|0> = |1> and Y|1> = -|0>: a bit flip with a sign on the 1 component.
    """
    validate_pauli_string(pauli, state.n_qubits)
    mx, mz = _pauli_masks(pauli)
    idx = np.arange(state.amps.size)
    src = idx ^ mx
    sign = 1.0 - 2.0 * _parity(src & mz)
    return StateVector(state.n_qubits, sign * state.amps[src])


def pauli_expectation(state: StateVector, pauli: str) -> float:
    """<psi| P |psi> with the Hermitian sigma-y on Y positions.

    Using sigma-y = iXZ (instead of the real XZ) makes P Hermitian, so the
    result is a real number in [-1, 1] for every Pauli string.
    """
    validate_pauli_string(pauli, state.n_qubits)
    mx, mz = _pauli_masks(pauli)
    n_y = pauli.count("Y")
    idx = np.arange(state.amps.size)
    src = idx ^ mx
    sign = 1.0 - 2.0 * _parity(src & mz)
    value = (1j ** n_y) * np.sum(np.conj(state.amps) * sign * state.amps[src])
    if abs(value.imag) > 1e-9:
        raise AssertionError(f"expectation of {pauli} is not real: {value}")
    return float(value.real)
