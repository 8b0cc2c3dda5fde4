"""Ordered gate programs over a register, and the quantum Fourier transform.

Ops are tuples, one per program line in the text format:

    ("H", t) ("X", t) ("Y", t) ("Z", t)      fixed single-qubit gates
    ("P", theta, t)                          phase gate
    ("U", matrix, t)                         arbitrary single-qubit unitary
    ("CNOT", c, t)                           controlled-not
    ("CP", theta, c, t)                      controlled phase
    ("CU", matrix, c, t)                     arbitrary controlled unitary
    ("CCNOT", c1, c2, t)                     Toffoli
    ("SWAP", a, b)                           qubit exchange
    ("M", t)                                 computational-basis measurement
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import states
from .states import StateVector

_FIXED = ("I", "X", "Y", "Z", "H")


@dataclass(frozen=True)
class Circuit:
    n_qubits: int
    ops: tuple = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "ops", tuple(self.ops))
        for op in self.ops:
            self._check_op(op)

    def _check_op(self, op: tuple) -> None:
        kind = op[0]
        if kind in _FIXED or kind == "M":
            (target,) = op[1:]
            indices = [target]
        elif kind == "P":
            _, target = op[1:]
            indices = [target]
        elif kind == "U":
            matrix, target = op[1:]
            self._check_matrix(matrix)
            indices = [target]
        elif kind == "CNOT":
            indices = list(op[1:])
        elif kind == "CP":
            indices = list(op[2:])
        elif kind == "CU":
            self._check_matrix(op[1])
            indices = list(op[2:])
        elif kind in ("CCNOT", "SWAP"):
            indices = list(op[1:])
        else:
            raise ValueError(f"unknown op {op!r}")
        for q in indices:
            if not 0 <= q < self.n_qubits:
                raise ValueError(f"qubit {q} out of range in op {op!r}")
        if len(set(indices)) != len(indices):
            raise ValueError(f"repeated qubit in op {op!r}")

    @staticmethod
    def _check_matrix(matrix: np.ndarray) -> None:
        if not states.is_unitary(np.asarray(matrix)):
            raise ValueError("op matrix is not unitary")

    def inverse(self) -> "Circuit":
        """Reversed circuit of adjoint gates (measurement-free circuits only)."""
        inv = []
        for op in reversed(self.ops):
            kind = op[0]
            if kind == "M":
                raise ValueError("cannot invert a measurement")
            if kind in ("I", "X", "Z", "H", "CNOT", "CCNOT", "SWAP"):
                inv.append(op)  # self-inverse
            elif kind == "Y":
                # Y = XZ squares to -I, so its adjoint is -Y, not Y itself.
                inv.append(("U", states.GATE_Y.conj().T, op[1]))
            elif kind == "P":
                inv.append(("P", -op[1], op[2]))
            elif kind == "CP":
                inv.append(("CP", -op[1], op[2], op[3]))
            elif kind == "U":
                inv.append(("U", np.asarray(op[1]).conj().T, op[2]))
            elif kind == "CU":
                inv.append(("CU", np.asarray(op[1]).conj().T, op[2], op[3]))
        return Circuit(self.n_qubits, tuple(inv))


def run(
    circuit: Circuit, state: StateVector, rng: np.random.Generator | None = None
) -> tuple[StateVector, list[tuple[int, int]]]:
    """Apply ops left to right; measurements collapse immediately.

    Returns the final state and the measurement record as (qubit, outcome)
    pairs in program order.
    """
    if state.n_qubits != circuit.n_qubits:
        raise ValueError(
            f"state has {state.n_qubits} qubits, circuit expects {circuit.n_qubits}"
        )
    record: list[tuple[int, int]] = []
    for op in circuit.ops:
        kind = op[0]
        if kind in _FIXED:
            state = states.apply_1q(state, states.standard_gate(kind), op[1])
        elif kind == "P":
            state = states.apply_1q(state, states.phase_gate(op[1]), op[2])
        elif kind == "U":
            state = states.apply_1q(state, np.asarray(op[1], dtype=complex), op[2])
        elif kind == "CNOT":
            state = states.apply_controlled(state, op[1], op[2], states.GATE_X)
        elif kind == "CP":
            state = states.apply_controlled_phase(state, op[1], op[2], op[3])
        elif kind == "CU":
            state = states.apply_controlled(
                state, op[2], op[3], np.asarray(op[1], dtype=complex)
            )
        elif kind == "CCNOT":
            state = states.apply_toffoli(state, op[1], op[2], op[3])
        elif kind == "SWAP":
            state = states.swap_qubits(state, op[1], op[2])
        elif kind == "M":
            if rng is None:
                raise ValueError("circuit contains measurements but no rng was given")
            outcome, state, _ = states.measure_qubit(state, op[1], rng)
            record.append((op[1], outcome))
    return state, record


def parse_circuit(text: str, n_qubits: int) -> Circuit:
    """Build a circuit from the one-op-per-line text format.

    Lines look like ``H 2``, ``X 1``, ``CNOT 1 3``, ``CCNOT 0 1 2``,
    ``P 0.785 3``, ``M 0``.  Blank lines and ``#`` comments are skipped.
    """
    ops: list[tuple] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0].upper()
        try:
            if kind in _FIXED or kind == "M":
                ops.append((kind, int(parts[1])))
            elif kind == "P":
                ops.append((kind, float(parts[1]), int(parts[2])))
            elif kind == "CP":
                ops.append((kind, float(parts[1]), int(parts[2]), int(parts[3])))
            elif kind in ("CNOT", "SWAP"):
                ops.append((kind, int(parts[1]), int(parts[2])))
            elif kind == "CCNOT":
                ops.append((kind, int(parts[1]), int(parts[2]), int(parts[3])))
            else:
                raise ValueError(f"unknown gate {parts[0]!r}")
        except (IndexError, ValueError) as exc:
            raise ValueError(f"line {lineno}: cannot parse {raw!r} ({exc})") from None
    return Circuit(n_qubits, tuple(ops))


def hadamard_all(state: StateVector) -> StateVector:
    """H on every qubit of the register."""
    for q in range(state.n_qubits):
        state = states.apply_1q(state, states.GATE_H, q)
    return state


def qft(state: StateVector, lo: int, hi: int) -> StateVector:
    """Fourier transform of the sub-register [lo, hi].

    On the sub-register value x (qubit lo is its least significant bit):
    |x> -> (1/sqrt(w)) sum_k exp(2 pi i k x / w) |k>, with w = 2^(hi-lo+1).
    Realized with H and controlled-phase gates at full precision, plus
    explicit qubit swaps to undo the bit-reversed output order.
    """
    lo, hi = _check_range(state, lo, hi)
    for q in range(hi, lo - 1, -1):
        state = states.apply_1q(state, states.GATE_H, q)
        for c in range(q - 1, lo - 1, -1):
            state = states.apply_controlled_phase(
                state, math.pi / (1 << (q - c)), c, q
            )
    return _reverse_subregister(state, lo, hi)


def inverse_qft(state: StateVector, lo: int, hi: int) -> StateVector:
    """Adjoint of :func:`qft` on the same sub-register."""
    lo, hi = _check_range(state, lo, hi)
    state = _reverse_subregister(state, lo, hi)
    for q in range(lo, hi + 1):
        for c in range(lo, q):
            state = states.apply_controlled_phase(
                state, -math.pi / (1 << (q - c)), c, q
            )
        state = states.apply_1q(state, states.GATE_H, q)
    return state


def _check_range(state: StateVector, lo: int, hi: int) -> tuple[int, int]:
    if not (0 <= lo <= hi < state.n_qubits):
        raise ValueError(
            f"bad sub-register [{lo}, {hi}] for {state.n_qubits} qubits"
        )
    return lo, hi


def _reverse_subregister(state: StateVector, lo: int, hi: int) -> StateVector:
    width = hi - lo + 1
    for t in range(width // 2):
        state = states.swap_qubits(state, lo + t, hi - t)
    return state
