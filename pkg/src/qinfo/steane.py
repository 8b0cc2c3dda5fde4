"""The [[7,1,3]] CSS code: encoding, Pauli noise, syndrome extraction,
recovery, classical-dual structure checks, counting bounds, and a
logical-failure Monte Carlo.

The code space is spanned by two 128-amplitude states: the logical zero is
the uniform superposition of the eight even-subcode words of the [7,4,3]
Hamming code, the logical one its coset by 1111111.  Three X-type and
three Z-type stabilizers (supports equal to the Hamming parity-check rows)
detect Z and X errors respectively; any single-qubit Pauli error has a
distinct six-bit syndrome and is undone exactly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, NamedTuple

import numpy as np

from . import circuits, states
from .gf2 import dot_parity, xor_words
from .states import StateVector, apply_pauli_string

CHECK_ROWS = ("1010101", "0110011", "0001111")
ALL_ONES = "1111111"

DETERMINISTIC_TOL = 1e-9
FAILURE_FIDELITY = 1.0 - 1e-6


class Syndrome(NamedTuple):
    """x_bits: X-type stabilizer outcomes (flag Z errors); z_bits: Z-type
    outcomes (flag X errors).  '1' marks a -1 eigenvalue."""

    x_bits: str
    z_bits: str


def _word_index(word: str) -> int:
    return sum(1 << i for i, ch in enumerate(word) if ch == "1")


def _span(rows: Iterable[str]) -> list[str]:
    """All XOR combinations of the given rows."""
    rows = list(rows)
    n = len(rows[0])
    words = []
    for picks in itertools.product((0, 1), repeat=len(rows)):
        w = "0" * n
        for take, row in zip(picks, rows):
            if take:
                w = xor_words(w, row)
        words.append(w)
    return sorted(set(words))


def dual_code_words() -> tuple[str, ...]:
    """The eight words spanned by the check rows (the Hamming code's dual)."""
    return tuple(_span(CHECK_ROWS))


@dataclass(frozen=True)
class SteaneCode:
    logical_zero: StateVector
    logical_one: StateVector
    x_checks: tuple[str, ...]
    z_checks: tuple[str, ...]
    syndrome_map: dict[Syndrome, str]
    # Precomputed stabilizer actions: X-type as index masks, Z-type as sign
    # vectors over the 128 basis states.
    _x_masks: tuple[int, ...] = field(repr=False, default=())
    _z_signs: tuple[np.ndarray, ...] = field(repr=False, default=())


def _uniform_over(words: Iterable[str]) -> StateVector:
    words = list(words)
    amps = np.zeros(128, dtype=complex)
    for w in words:
        amps[_word_index(w)] = 1.0 / math.sqrt(len(words))
    return StateVector(7, amps)


@lru_cache(maxsize=1)
def steane_code() -> SteaneCode:
    dual = dual_code_words()
    coset = tuple(xor_words(w, ALL_ONES) for w in dual)
    column_of = {
        "".join(row[q] for row in CHECK_ROWS): q for q in range(7)
    }
    syndrome_map: dict[Syndrome, str] = {}
    for z_bits in ("".join(bits) for bits in itertools.product("01", repeat=3)):
        for x_bits in ("".join(b) for b in itertools.product("01", repeat=3)):
            labels = ["I"] * 7
            if z_bits != "000":
                labels[column_of[z_bits]] = "X"
            if x_bits != "000":
                q = column_of[x_bits]
                labels[q] = "Y" if labels[q] == "X" else "Z"
            syndrome_map[Syndrome(x_bits, z_bits)] = "".join(labels)
    idx = np.arange(128)
    z_signs = []
    for row in CHECK_ROWS:
        mask = _word_index(row)
        parity = states._parity(idx & mask)
        z_signs.append(1.0 - 2.0 * parity)
    return SteaneCode(
        logical_zero=_uniform_over(dual),
        logical_one=_uniform_over(coset),
        x_checks=CHECK_ROWS,
        z_checks=CHECK_ROWS,
        syndrome_map=syndrome_map,
        _x_masks=tuple(_word_index(row) for row in CHECK_ROWS),
        _z_signs=tuple(z_signs),
    )


def encode_logical(a: complex, b: complex) -> StateVector:
    """a |0_L> + b |1_L>, built directly in the 7-qubit register."""
    if abs(abs(a) ** 2 + abs(b) ** 2 - 1.0) > 1e-9:
        raise ValueError("logical amplitudes must satisfy |a|^2 + |b|^2 = 1")
    code = steane_code()
    return StateVector(7, a * code.logical_zero.amps + b * code.logical_one.amps)


def random_logical_pair(rng: np.random.Generator) -> tuple[complex, complex]:
    """A uniformly random logical qubit (a, b)."""
    z = rng.normal(size=4)
    a, b = complex(z[0], z[1]), complex(z[2], z[3])
    norm = math.sqrt(abs(a) ** 2 + abs(b) ** 2)
    return a / norm, b / norm


# ---------------------------------------------------------------------------
# Syndrome extraction and recovery
# ---------------------------------------------------------------------------

def _measure_observable(
    amps: np.ndarray,
    image: np.ndarray,
    rng: np.random.Generator | None,
) -> tuple[str, np.ndarray]:
    """Projectively measure a +-1 observable S given S|psi> (`image`).

    Returns the outcome bit ('0' for +1) and the collapsed amplitudes.
    Deterministic outcomes need no rng; a genuinely random one without an
    rng raises.
    """
    plus = (amps + image) / 2.0
    p_plus = float(np.vdot(plus, plus).real)
    if p_plus > 1.0 - DETERMINISTIC_TOL:
        return "0", plus / math.sqrt(p_plus)
    if p_plus < DETERMINISTIC_TOL:
        minus = (amps - image) / 2.0
        return "1", minus / math.sqrt(1.0 - p_plus)
    if rng is None:
        raise ValueError(
            "stabilizer outcome is not deterministic for this state; pass rng"
        )
    if rng.random() < p_plus:
        return "0", plus / math.sqrt(p_plus)
    minus = (amps - image) / 2.0
    return "1", minus / math.sqrt(1.0 - p_plus)


def extract_syndrome(
    state: StateVector, rng: np.random.Generator | None = None
) -> tuple[Syndrome, StateVector]:
    """Measure the three Z-type and three X-type stabilizer observables.

    For any single-qubit Pauli error on an encoded state the outcomes are
    deterministic and depend only on the error, and the state is returned
    unchanged (up to the measured eigenvalues' projection, a no-op there).
    """
    if state.n_qubits != 7:
        raise ValueError("expected a 7-qubit state")
    code = steane_code()
    amps = state.amps
    idx = np.arange(128)
    z_bits = []
    for sign in code._z_signs:
        bit, amps = _measure_observable(amps, sign * amps, rng)
        z_bits.append(bit)
    x_bits = []
    for mask in code._x_masks:
        bit, amps = _measure_observable(amps, amps[idx ^ mask], rng)
        x_bits.append(bit)
    return Syndrome("".join(x_bits), "".join(z_bits)), StateVector(7, amps)


def recover(state: StateVector, syndrome: Syndrome) -> StateVector:
    """Apply the correction stored for this syndrome."""
    code = steane_code()
    try:
        correction = code.syndrome_map[syndrome]
    except KeyError:
        raise ValueError(f"unknown syndrome {syndrome}") from None
    if correction == "I" * 7:
        return state
    return apply_pauli_string(state, correction)


def correct(state: StateVector, rng: np.random.Generator | None = None) -> StateVector:
    """Extract the syndrome and undo the indicated error in one step."""
    syndrome, collapsed = extract_syndrome(state, rng)
    return recover(collapsed, syndrome)


def syndrome_enumeration() -> list[tuple[str, str, str]]:
    """(error, x_bits, z_bits) for the identity and all 21 single-qubit
    Paulis, measured on an encoded state."""
    state = encode_logical(0.6, 0.8j)
    rows = []
    for error in ["I" * 7] + [
        "".join(p if i == q else "I" for i in range(7))
        for q in range(7)
        for p in "XYZ"
    ]:
        syndrome, _ = extract_syndrome(apply_pauli_string(state, error))
        rows.append((error, syndrome.x_bits, syndrome.z_bits))
    return rows


# ---------------------------------------------------------------------------
# CSS duality and counting bounds
# ---------------------------------------------------------------------------

def css_duality_check(code_words: Iterable[str]) -> bool:
    """Does H on every qubit map the uniform superposition over `code_words`
    to the uniform superposition over the dual code?

    The input must be a GF(2) linear code (closed under XOR).
    """
    words = sorted(set(code_words))
    n = len(words[0])
    if n > 12:
        raise ValueError("duality check limited to 12 bits")
    word_set = set(words)
    for u, v in itertools.product(words, repeat=2):
        if xor_words(u, v) not in word_set:
            raise ValueError("input is not closed under XOR")
    amps = np.zeros(1 << n, dtype=complex)
    for w in words:
        amps[_word_index(w)] = 1.0 / math.sqrt(len(words))
    image = circuits.hadamard_all(StateVector(n, amps))
    dual = [
        format(v, f"0{n}b")[::-1]
        for v in range(1 << n)
        if all(dot_parity(format(v, f"0{n}b")[::-1], w) == 0 for w in words)
    ]
    expected = np.zeros(1 << n, dtype=complex)
    for w in dual:
        expected[_word_index(w)] = 1.0 / math.sqrt(len(dual))
    return bool(np.allclose(image.amps, expected, atol=1e-9))


def quantum_hamming_bound(n: int, k: int) -> tuple[bool, int, int]:
    """Can n-k syndrome bits label the 3n single-qubit errors plus the
    error-free case?  Returns (satisfied, 2^(n-k), 3n + 1)."""
    if not n > k >= 0:
        raise ValueError("need n > k >= 0")
    lhs, rhs = 1 << (n - k), 3 * n + 1
    return lhs >= rhs, lhs, rhs


def uncorrectable_estimate(n: int, t: int, eps: float) -> float:
    """Leading-order probability (n eps)^(t+1) that more than t qubits err."""
    if n < 1 or t < 0:
        raise ValueError("need n >= 1 and t >= 0")
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    return (n * eps) ** (t + 1)


# ---------------------------------------------------------------------------
# Logical-failure Monte Carlo
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ScalingRow:
    eps: float
    failures: int
    trials: int
    rate: float


@dataclass(frozen=True)
class ScalingResult:
    rows: tuple[ScalingRow, ...]
    slope: float | None  # log-log slope of rate vs eps; None if a rate is 0

    def as_dicts(self) -> list[dict]:
        return [vars(r) for r in self.rows]


_PAULI_LABELS = np.array(["X", "Y", "Z"])


def noise_scaling_mc(
    eps_list: Iterable[float], trials: int, seed: int
) -> ScalingResult:
    """Logical failure rate under i.i.d. single-qubit Pauli noise.

    Per trial: encode a random logical state, hit each qubit independently
    (with probability eps) with a uniformly random Pauli, extract the
    syndrome, recover, and score a failure when the recovered state's
    fidelity with the original drops below 1 - 1e-6.  Error-free trials
    are scored directly (their fidelity is exactly 1).
    """
    if trials < 1000:
        raise ValueError("need at least 10^3 trials per point")
    rng = np.random.default_rng(seed)
    rows = []
    for eps in eps_list:
        if not 0.0 <= eps < 1.0:
            raise ValueError(f"eps {eps} outside [0, 1)")
        hit = rng.random((trials, 7)) < eps
        picks = rng.integers(0, 3, size=(trials, 7))
        failures = 0
        for t in np.nonzero(hit.any(axis=1))[0]:
            labels = np.where(hit[t], _PAULI_LABELS[picks[t]], "I")
            error = "".join(labels)
            a, b = random_logical_pair(rng)
            clean = encode_logical(a, b)
            noisy = apply_pauli_string(clean, error)
            recovered = correct(noisy)
            fid = abs(states.inner(clean, recovered)) ** 2
            if fid < FAILURE_FIDELITY:
                failures += 1
        rows.append(ScalingRow(float(eps), failures, trials, failures / trials))
    slope = None
    if all(r.rate > 0 for r in rows) and len(rows) >= 2:
        slope = float(
            np.polyfit(
                np.log([r.eps for r in rows]), np.log([r.rate for r in rows]), 1
            )[0]
        )
    return ScalingResult(tuple(rows), slope)
