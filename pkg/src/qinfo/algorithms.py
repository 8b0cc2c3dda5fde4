"""Quantum period finding and factoring, Grover search, and their
classical companions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import circuits, states
from .states import MAX_QUBITS, StateVector


# ---------------------------------------------------------------------------
# Classical number theory
# ---------------------------------------------------------------------------

def modexp(a: int, x: int, n: int) -> int:
    """a^x mod n by repeated squaring (the builtin three-argument pow)."""
    if n < 2:
        raise ValueError("modulus must be >= 2")
    if x < 0:
        raise ValueError("exponent must be nonnegative")
    return pow(a, x, n)


def euclid_gcd(u: int, v: int) -> int:
    """Greatest common divisor by Euclid's algorithm."""
    if u == 0 and v == 0:
        raise ValueError("gcd(0, 0) is undefined")
    return math.gcd(u, v)


def classical_period(a: int, n: int) -> int:
    """Least r >= 1 with a^r = 1 (mod n), by direct iteration."""
    if euclid_gcd(a, n) != 1:
        raise ValueError(f"gcd({a}, {n}) != 1, so a has no period mod n")
    value = a % n
    for r in range(1, n + 1):
        if value == 1:
            return r
        value = (value * a) % n
    raise AssertionError("unreachable: order divides phi(n) < n")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_power_root(n: int) -> int | None:
    """The prime p when n = p^k for some k >= 2, else None."""
    for k in range(2, n.bit_length() + 1):
        root = round(n ** (1.0 / k))
        for p in (root - 1, root, root + 1):
            if p >= 2 and p**k == n and is_prime(p):
                return p
    return None


# ---------------------------------------------------------------------------
# Period finding
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PeriodInstance:
    """Inputs for one quantum period-finding run on f(x) = a^x mod n."""

    a: int
    n_modulus: int
    n_qubits: int = field(init=False)  # x-register width
    w: int = field(init=False)         # x-register size, 2^n_qubits >= N^2
    y_qubits: int = field(init=False)  # y-register width

    def __post_init__(self) -> None:
        a, n = self.a, self.n_modulus
        if not 1 < a < n:
            raise ValueError("need 1 < a < N")
        if euclid_gcd(a, n) != 1:
            raise ValueError(f"gcd({a}, {n}) != 1")
        n_qubits = math.ceil(2 * math.log2(n))
        object.__setattr__(self, "n_qubits", n_qubits)
        object.__setattr__(self, "w", 1 << n_qubits)
        object.__setattr__(self, "y_qubits", n.bit_length())
        assert self.w >= n * n
        if self.n_qubits + self.y_qubits > MAX_QUBITS:
            raise ValueError(
                f"instance needs {self.n_qubits + self.y_qubits} qubits, "
                f"limit is {MAX_QUBITS}"
            )


@dataclass(frozen=True)
class PeriodRun:
    """Transcript of one period-finding run."""

    a: int
    n_modulus: int
    n_qubits: int
    w: int
    measured_y: int
    measured_k: int
    numerator: int
    denominator: int
    r: int | None              # verified period, or None on failure
    verified: bool
    step2_support: int         # nonzero amplitudes after the oracle
    progression: tuple[int, ...]  # x support after the y measurement
    k_probs: dict[int, float]  # exact x distribution after the transform

    def transcript(self) -> dict:
        """The wire-format fields."""
        return {
            "a": self.a,
            "N": self.n_modulus,
            "n": self.n_qubits,
            "w": self.w,
            "measured_y": self.measured_y,
            "measured_k": self.measured_k,
            "fraction": f"{self.numerator}/{self.denominator}",
            "r": self.r,
            "verified": self.verified,
        }


def period_from_measurement(k: int, w: int, a: int, n: int) -> tuple[int, int, int | None]:
    """Reduce k/w to lowest terms (best rational approximation with
    denominator below n) and verify the denominator as a period.

    Returns (numerator, denominator, r) with r None when a^denominator != 1
    (mod n), which happens when the unknown multiplier shares a factor with
    the period; the caller then repeats the whole run.
    """
    frac = Fraction(k, w).limit_denominator(n - 1)
    r = frac.denominator
    if modexp(a, r, n) == 1:
        return frac.numerator, frac.denominator, r
    return frac.numerator, frac.denominator, None


def evaluated_state(inst: PeriodInstance) -> StateVector:
    """The register pair after the parallel evaluation: sum_x |x>|f(x)>.

    Built by a Hadamard layer on the x register followed by the oracle
    permutation |x>|y> -> |x>|y XOR f(x)> (index = x + w*y).
    """
    a, n_mod, n, w = inst.a, inst.n_modulus, inst.n_qubits, inst.w
    total = n + inst.y_qubits
    state = states.zero_state(total)
    for q in range(n):
        state = states.apply_1q(state, states.GATE_H, q)
    f_table = np.array([pow(a, x, n_mod) for x in range(w)])
    idx = np.arange(state.amps.size)
    x_part = idx & (w - 1)
    y_part = idx >> n
    perm = x_part + (np.asarray(y_part ^ f_table[x_part]) << n)
    return StateVector(total, state.amps[perm])


def shor_period(inst: PeriodInstance, rng: np.random.Generator) -> PeriodRun:
    """One run of quantum period finding for f(x) = a^x mod N.

    Prepares sum_x |x>|f(x)>, measures the y register (collapsing x onto an
    arithmetic progression with the period as its stride), Fourier
    transforms the x register, and measures it.  The measured k is a
    multiple of w/r whenever r divides w; the period is recovered from the
    reduced fraction k/w and verified with modexp.
    """
    a, n_mod, n, w = inst.a, inst.n_modulus, inst.n_qubits, inst.w
    total = n + inst.y_qubits

    state = evaluated_state(inst)
    step2_support = int(np.count_nonzero(np.abs(state.amps) > 1e-12))

    measured_y, state = states.measure_register(
        state, range(n, total), rng
    )
    progression = tuple(
        int(i) for i in np.nonzero(np.abs(state.amps) > 1e-12)[0] & (w - 1)
    )

    state = circuits.qft(state, 0, n - 1)
    probs = np.abs(state.amps.reshape(-1, w)) ** 2
    x_probs = probs.sum(axis=0)
    k_probs = {int(k): float(p) for k, p in enumerate(x_probs) if p > 1e-12}

    measured_k, _ = states.measure_register(state, range(n), rng)
    numerator, denominator, r = period_from_measurement(measured_k, w, a, n_mod)
    return PeriodRun(
        a=a,
        n_modulus=n_mod,
        n_qubits=n,
        w=w,
        measured_y=measured_y,
        measured_k=measured_k,
        numerator=numerator,
        denominator=denominator,
        r=r,
        verified=r is not None,
        step2_support=step2_support,
        progression=progression,
        k_probs=k_probs,
    )


# ---------------------------------------------------------------------------
# Factoring
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FactorResult:
    n: int
    factor: int | None
    cofactor: int | None
    method: str          # even | prime | prime_power | gcd | period | exhausted
    rounds_used: int
    runs: tuple[PeriodRun, ...] = ()

    @property
    def succeeded(self) -> bool:
        return self.factor is not None


def factor_from_period(a: int, r: int, n: int) -> int | None:
    """Nontrivial factor gcd(a^(r/2) +- 1, n) when the period allows one."""
    if r % 2 != 0:
        return None
    half = pow(a, r // 2, n)
    if half == n - 1:
        return None  # a^(r/2) = -1: both gcds are trivial
    for candidate in (euclid_gcd(half - 1, n), euclid_gcd(half + 1, n)):
        if 1 < candidate < n:
            return candidate
    return None


def shor_factor(
    n: int, rng: np.random.Generator, max_rounds: int = 20
) -> FactorResult:
    """Factor n with quantum period finding, repeating until success.

    Even, prime, and prime-power n are handled classically and flagged in
    the result's `method`.  Each quantum round draws a random base a; a
    lucky gcd(a, n) > 1 yields a factor immediately, otherwise the period
    of a is measured and a^(r/2) +- 1 is tried.
    """
    if n < 4:
        raise ValueError("need a composite n >= 4")
    if n % 2 == 0:
        return FactorResult(n, 2, n // 2, "even", 0)
    if is_prime(n):
        return FactorResult(n, None, None, "prime", 0)
    root = prime_power_root(n)
    if root is not None:
        return FactorResult(n, root, n // root, "prime_power", 0)

    runs: list[PeriodRun] = []
    for round_no in range(1, max_rounds + 1):
        a = int(rng.integers(2, n - 1))
        g = euclid_gcd(a, n)
        if g > 1:
            return FactorResult(n, g, n // g, "gcd", round_no, tuple(runs))
        run = shor_period(PeriodInstance(a, n), rng)
        runs.append(run)
        if run.r is None:
            continue
        factor = factor_from_period(a, run.r, n)
        if factor is not None:
            return FactorResult(
                n, factor, n // factor, "period", round_no, tuple(runs)
            )
    return FactorResult(n, None, None, "exhausted", max_rounds, tuple(runs))


# ---------------------------------------------------------------------------
# Grover search
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroverInstance:
    """Search for one marked index among N = 2^n_qubits items."""

    n_qubits: int
    marked: int

    def __post_init__(self) -> None:
        if not 1 <= self.n_qubits <= MAX_QUBITS:
            raise ValueError(f"n_qubits must be in [1, {MAX_QUBITS}]")
        if not 0 <= self.marked < self.size:
            raise ValueError("marked index out of range")

    @property
    def size(self) -> int:
        return 1 << self.n_qubits


def grover_default_iterations(size: int) -> int:
    """m = floor((pi/4) sqrt(N)), the iteration count that brings the
    rotation angle closest to pi/2 without overshooting."""
    return int(math.pi / 4 * math.sqrt(size))


def grover_state(inst: GroverInstance, iterations: int) -> StateVector:
    """State after `iterations` applications of the search operator.

    Each iteration flips the sign of the marked amplitude, then reflects
    about the uniform superposition (H layer, sign flip on everything but
    |0>, H layer); after t iterations the marked amplitude is
    sin((2t+1) asin(1/sqrt(N))).
    """
    state = circuits.hadamard_all(states.zero_state(inst.n_qubits))
    for _ in range(iterations):
        amps = state.amps.copy()
        amps[inst.marked] *= -1.0
        state = circuits.hadamard_all(StateVector(inst.n_qubits, amps))
        amps = state.amps.copy()
        amps[1:] *= -1.0
        state = circuits.hadamard_all(StateVector(inst.n_qubits, amps))
    return state


@dataclass(frozen=True)
class GroverResult:
    found: int
    success_probability: float
    iterations: int


def grover_search(
    inst: GroverInstance,
    rng: np.random.Generator,
    iterations: int | None = None,
) -> GroverResult:
    """Run the search and measure; also reports the exact probability that
    the measurement would return the marked index."""
    m = grover_default_iterations(inst.size) if iterations is None else iterations
    state = grover_state(inst, m)
    p_marked = float(abs(state.amps[inst.marked]) ** 2)
    found, _ = states.measure_register(state, range(inst.n_qubits), rng)
    return GroverResult(found=found, success_probability=p_marked, iterations=m)
