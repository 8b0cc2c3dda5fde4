"""Classical information measures, typical sequences, and Huffman coding.

All logarithms are base 2 (units of bits) and 0*log(0) is taken as 0.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

PROB_TOL = 1e-9


def _plog2p(p: float) -> float:
    return -p * math.log2(p) if p > 0.0 else 0.0


# ---------------------------------------------------------------------------
# Distributions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProbDist:
    """Finite probability distribution: nonnegative entries summing to 1."""

    probs: tuple[float, ...]

    def __post_init__(self) -> None:
        probs = tuple(float(p) for p in self.probs)
        if not probs:
            raise ValueError("distribution must have at least one outcome")
        if min(probs) < -PROB_TOL:
            raise ValueError(f"negative probability in {probs}")
        if abs(sum(probs) - 1.0) > PROB_TOL:
            raise ValueError(f"probabilities sum to {sum(probs)}, expected 1")
        object.__setattr__(self, "probs", tuple(max(p, 0.0) for p in probs))

    @staticmethod
    def uniform(n: int) -> "ProbDist":
        return ProbDist((1.0 / n,) * n)

    def __len__(self) -> int:
        return len(self.probs)


@dataclass(frozen=True)
class JointDist:
    """Joint distribution p(x, y) as a matrix indexed [x, y]."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=float)
        if m.ndim != 2:
            raise ValueError("joint distribution must be a 2-d matrix")
        if m.min() < -PROB_TOL:
            raise ValueError("negative entry in joint distribution")
        if abs(m.sum() - 1.0) > PROB_TOL:
            raise ValueError(f"joint probabilities sum to {m.sum()}, expected 1")
        object.__setattr__(self, "matrix", np.clip(m, 0.0, None))

    def marginal_x(self) -> ProbDist:
        return ProbDist(tuple(self.matrix.sum(axis=1)))

    def marginal_y(self) -> ProbDist:
        return ProbDist(tuple(self.matrix.sum(axis=0)))

    def transpose(self) -> "JointDist":
        return JointDist(self.matrix.T)


def bsc_joint(p: float, p_input_one: float = 0.5) -> JointDist:
    """Joint (input, output) distribution of a binary symmetric channel."""
    _check_probability(p)
    _check_probability(p_input_one)
    q = 1.0 - p_input_one
    return JointDist(np.array([
        [q * (1 - p), q * p],
        [p_input_one * p, p_input_one * (1 - p)],
    ]))


# ---------------------------------------------------------------------------
# Entropies and channel capacity
# ---------------------------------------------------------------------------

def shannon_entropy(dist: ProbDist) -> float:
    """Information content -sum p log2 p of a distribution, in bits."""
    return sum(_plog2p(p) for p in dist.probs)


def _check_probability(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability {p} outside [0, 1]")


def binary_entropy(p: float) -> float:
    """H(p) for a binary variable; symmetric about 1/2 with H(1/2) = 1."""
    _check_probability(p)
    return _plog2p(p) + _plog2p(1.0 - p)


def joint_entropy(joint: JointDist) -> float:
    """S(X, Y) of the joint distribution."""
    return float(sum(_plog2p(p) for p in joint.matrix.flat))


def conditional_entropy(joint: JointDist) -> float:
    """S(Y | X): the uncertainty left in Y once X is known.

    Computed as S(X, Y) - S(X), which avoids dividing by vanishing
    marginals.  For S(X | Y), pass ``joint.transpose()``.
    """
    return joint_entropy(joint) - shannon_entropy(joint.marginal_x())


def mutual_information(joint: JointDist) -> float:
    """I(X:Y) = S(X) + S(Y) - S(X, Y); zero iff X and Y are independent."""
    value = (
        shannon_entropy(joint.marginal_x())
        + shannon_entropy(joint.marginal_y())
        - joint_entropy(joint)
    )
    return max(value, 0.0)


def bsc_capacity(p: float) -> float:
    """Capacity 1 - H(p) of the binary symmetric channel, bits per symbol."""
    _check_probability(p)
    return 1.0 - binary_entropy(p)


# ---------------------------------------------------------------------------
# Typical sequences and the binomial distribution
# ---------------------------------------------------------------------------

def typical_set_stats(n: int, p: float, eps: float) -> tuple[int, float]:
    """Size of, and probability mass in, the typical set of n-bit sequences.

    A sequence is typical when its probability lies between 2^{-n(H+eps)}
    and 2^{-n(H-eps)}.  Sequences with the same number of ones m share the
    probability p^m (1-p)^{n-m}, so summing binomial coefficients over the
    qualifying m is an exact enumeration for every n.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 < p < 1.0:
        raise ValueError("p must be strictly between 0 and 1")
    if eps <= 0.0:
        raise ValueError("eps must be positive")
    h = binary_entropy(p)
    lo, hi = -n * (h + eps), -n * (h - eps)
    log2p, log2q = math.log2(p), math.log2(1.0 - p)
    size = 0
    mass = 0.0
    for m in range(n + 1):
        log_prob = m * log2p + (n - m) * log2q
        if lo <= log_prob <= hi:
            count = math.comb(n, m)
            size += count
            mass += 2.0 ** (math.log2(count) + log_prob)
    return size, min(mass, 1.0)


def binomial_pmf(n: int, m: int, p: float) -> float:
    """Probability of m ones among n independent bits with P(one) = p."""
    if not 0 <= m <= n:
        raise ValueError(f"need 0 <= m <= n, got m={m}, n={n}")
    _check_probability(p)
    return math.comb(n, m) * p**m * (1.0 - p) ** (n - m)


# ---------------------------------------------------------------------------
# Huffman coding
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HuffmanCode:
    """Optimal prefix code: symbol index -> bit string, plus its mean length."""

    codewords: dict[int, str]
    average_length: float


def huffman_build(dist: ProbDist) -> HuffmanCode:
    """Optimal prefix code for `dist` by repeatedly merging the two least
    likely subtrees.  Ties are broken by insertion order, so the build is
    deterministic; codeword strings are one optimal choice among several,
    but the average length is the unique optimum.
    """
    k = len(dist)
    if k < 2:
        raise ValueError("Huffman coding needs at least 2 symbols")
    # Entries are (probability, tiebreak, symbols-in-subtree).
    heap: list[tuple[float, int, list[int]]] = [
        (p, i, [i]) for i, p in enumerate(dist.probs)
    ]
    heapq.heapify(heap)
    counter = k
    lengths = [0] * k
    while len(heap) > 1:
        p1, _, sym1 = heapq.heappop(heap)
        p2, _, sym2 = heapq.heappop(heap)
        for s in sym1 + sym2:
            lengths[s] += 1
        heapq.heappush(heap, (p1 + p2, counter, sym1 + sym2))
        counter += 1
    # Assign canonical codewords consistent with the computed lengths:
    # shorter codes first, counting upward in binary.
    order = sorted(range(k), key=lambda s: (lengths[s], s))
    codewords: dict[int, str] = {}
    code = 0
    prev_len = lengths[order[0]]
    for s in order:
        code <<= lengths[s] - prev_len
        codewords[s] = format(code, f"0{lengths[s]}b")
        prev_len = lengths[s]
        code += 1
    average = sum(p * lengths[i] for i, p in enumerate(dist.probs))
    return HuffmanCode(codewords, average)


def message_distribution(n_bits: int, p_one: float) -> ProbDist:
    """Distribution over all n-bit messages with i.i.d. bits, P(bit=1) = p_one."""
    _check_probability(p_one)
    probs = []
    for msg in range(1 << n_bits):
        ones = msg.bit_count()
        probs.append(p_one**ones * (1.0 - p_one) ** (n_bits - ones))
    return ProbDist(tuple(probs))


def markov_chain_joint(
    px: Iterable[float], py_given_x: np.ndarray, pz_given_y: np.ndarray
) -> tuple[JointDist, JointDist]:
    """Joints (X,Y) and (X,Z) of a chain X -> Y -> Z, for inequality checks."""
    px = np.asarray(list(px), dtype=float)
    joint_xy = px[:, None] * np.asarray(py_given_x, dtype=float)
    joint_xz = joint_xy @ np.asarray(pz_given_y, dtype=float)
    return JointDist(joint_xy), JointDist(joint_xz)
