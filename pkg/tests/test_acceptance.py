"""Acceptance criteria, one test per criterion.

Each test checks its stated tolerances and runtime budget and prints one
pass line (visible with `pytest -s` or in verbose failure output); an
assertion failure marks the criterion failed.
"""

import itertools
import math
import time

import numpy as np
import pytest

import oracles
from qinfo import (
    GroverInstance,
    PeriodInstance,
    ProbDist,
    apply_1q,
    apply_controlled,
    apply_pauli_string,
    apply_toffoli,
    attempt_clone_via_xor,
    basis_state,
    bell_correlation,
    binary_entropy,
    bsc_capacity,
    classical_period,
    css_duality_check,
    dense_code_roundtrip,
    encode_logical,
    from_amplitudes,
    grover_search,
    grover_state,
    hamming_7_4,
    huffman_build,
    inner,
    lhv_max_same_probability,
    message_distribution,
    modexp,
    noise_scaling_mc,
    phase_gate,
    qft,
    quantum_hamming_bound,
    shannon_demo,
    shannon_entropy,
    shor_factor,
    shor_period,
    standard_gate,
    teleport,
    uncorrectable_estimate,
    v_gate,
)
from qinfo.density import state_fidelity
from qinfo.gf2 import xor_words
from qinfo.steane import correct, dual_code_words, extract_syndrome, random_logical_pair


class _Budget:
    def __init__(self, seconds: float):
        self.limit = seconds
        self.start = time.perf_counter()

    def check(self) -> float:
        elapsed = time.perf_counter() - self.start
        assert elapsed < self.limit, f"runtime {elapsed:.2f}s over {self.limit}s budget"
        return elapsed


def _report(number: int, detail: str, elapsed: float) -> None:
    print(f"criterion {number:2d}: PASS ({elapsed:.3f}s) - {detail}")


def test_criterion_01_entropy_numbers():
    budget = _Budget(0.001)
    fair = shannon_entropy(ProbDist.uniform(6))
    loaded = shannon_entropy(ProbDist((0.1, 0.1, 0.1, 0.1, 0.1, 0.5)))
    capacity = bsc_capacity(0.25)
    elapsed = budget.check()
    assert abs(fair - 2.585) < 1e-3
    assert abs(loaded - 2.161) < 1e-3
    assert abs(capacity - 0.189) < 1e-3
    _report(1, f"S(die)={fair:.4f}, S(loaded)={loaded:.4f}, C(1/4)={capacity:.4f}",
            elapsed)


def test_criterion_02_huffman_average_length():
    budget = _Budget(0.010)
    dist = message_distribution(4, 0.25)
    code = huffman_build(dist)
    bound = 4 * binary_entropy(0.25)
    elapsed = budget.check()
    assert abs(code.average_length - 3.273) < 1e-3
    assert code.average_length >= bound
    assert abs(bound - 3.245) < 1e-3
    _report(2, f"avg={code.average_length:.4f} >= bound {bound:.4f}", elapsed)


def test_criterion_03_hamming_code():
    budget = _Budget(0.010)
    code = hamming_7_4()
    table = {
        "0000000", "1010101", "0110011", "1100110",
        "0001111", "1011010", "0111100", "1101001",
        "1111111", "0101010", "1001100", "0011001",
        "1110000", "0100101", "1000011", "0010110",
    }
    assert set(code.codewords()) == table
    successes = 0
    for m in range(16):
        message = format(m, "04b")
        word = code.encode(message)
        for q in range(7):
            error = "".join("1" if i == q else "0" for i in range(7))
            decoded, corrected = code.decode(xor_words(word, error))
            successes += corrected and decoded == message
    elapsed = budget.check()
    assert successes == 16 * 7
    _report(3, f"16 codewords match; {successes}/112 single-error decodes", elapsed)


def test_criterion_04_shannon_demo_monte_carlo():
    budget = _Budget(5.0)
    trials = 100_000
    rows = {r.scheme: r for r in shannon_demo(3, 0.25, trials, seed=2024)}
    expected = {
        "rep-1": 0.75,
        "rep-3": 0.75**3 + 3 * 0.25 * 0.75**2,
        "hamming74": 0.75**7 + 7 * 0.25 * 0.75**6,
    }
    for scheme, want in expected.items():
        got = rows[scheme].success_prob
        sigma = math.sqrt(want * (1 - want) / trials)
        assert abs(got - want) < 3 * sigma, (scheme, got, want)
    elapsed = budget.check()
    _report(4, ", ".join(
        f"{s}={rows[s].success_prob:.4f}~{expected[s]:.4f}" for s in expected
    ), elapsed)


def test_criterion_05_bell_curve_and_lhv():
    budget = _Budget(1.0)
    for k in range(36):
        delta = math.radians(k * 180.0 / 36)
        want = math.sin(delta / 2) ** 2
        assert abs(bell_correlation(delta, 0.0) - want) <= 1e-9
    at_120 = bell_correlation(math.radians(120), 0.0)
    lhv = lhv_max_same_probability([0.0, math.radians(120), math.radians(240)])
    elapsed = budget.check()
    assert abs(at_120 - 0.75) <= 1e-9
    assert abs(lhv - 2 / 3) <= 1e-9
    assert at_120 > lhv
    _report(5, f"36-point sweep exact; P(120deg)={at_120:.4f} > LHV {lhv:.4f}",
            elapsed)


def test_criterion_06_protocol_suite():
    budget = _Budget(1.0)
    rng = np.random.default_rng(60)
    worst = 1.0
    for seed in range(100):
        source = from_amplitudes(oracles.random_state(rng, 1))
        bob, _ = teleport(source, np.random.default_rng(seed))
        worst = min(worst, state_fidelity(bob, source))
    assert worst > 1.0 - 1e-9
    assert [dense_code_roundtrip(b) for b in range(4)] == [0, 1, 2, 3]
    plus = apply_1q(basis_state("0"), standard_gate("H"), 0)
    clone_fid = attempt_clone_via_xor(plus)
    elapsed = budget.check()
    assert abs(clone_fid - 0.5) <= 1e-9
    _report(6, f"teleport min fid={worst:.12f}; dense coding exact; "
               f"clone(|+>)={clone_fid:.4f}", elapsed)


def test_criterion_07_bb84():
    budget = _Budget(2.0)
    from qinfo import bb84

    for seed in range(50):
        report = bb84(400, eve=False, disclose_fraction=0.5,
                      rng=np.random.default_rng(seed))
        assert report.qber == 0.0
        assert not report.detected
    eve_report = bb84(10_000, eve=True, disclose_fraction=0.5,
                      rng=np.random.default_rng(7))
    elapsed = budget.check()
    assert 0.23 <= eve_report.qber <= 0.27
    _report(7, f"50 clean seeds qber=0; eve qber={eve_report.qber:.4f}", elapsed)


def test_criterion_08_shor():
    budget = _Budget(30.0)
    # Exact k distribution, sampled 10^4 times.
    run = shor_period(PeriodInstance(7, 15), np.random.default_rng(80))
    assert set(run.k_probs) == {0, 64, 128, 192}
    assert all(abs(p - 0.25) < 1e-9 for p in run.k_probs.values())
    rng = np.random.default_rng(81)
    draws = rng.choice(sorted(run.k_probs), size=10_000,
                       p=[run.k_probs[k] for k in sorted(run.k_probs)])
    sigma = math.sqrt(10_000 * 0.25 * 0.75)
    counts = {k: int((draws == k).sum()) for k in sorted(run.k_probs)}
    for k, count in counts.items():
        assert abs(count - 2500) < 3 * sigma, (k, count)
    # 1000 seeded factoring runs, every returned period verified.
    successes = 0
    for seed in range(1000):
        result = shor_factor(15, np.random.default_rng(seed), max_rounds=20)
        if result.succeeded:
            successes += 1
            assert result.factor in (3, 5)
        for round_run in result.runs:
            if round_run.r is not None:
                assert modexp(round_run.a, round_run.r, 15) == 1
                assert round_run.r == classical_period(round_run.a, 15)
    elapsed = budget.check()
    assert successes >= 999
    _report(8, f"k counts {counts}; factoring {successes}/1000", elapsed)


def test_criterion_09_grover():
    budget = _Budget(5.0)
    exact4 = grover_search(GroverInstance(2, 2), np.random.default_rng(0))
    assert exact4.iterations == 1
    assert abs(exact4.success_probability - 1.0) <= 1e-9
    exact16 = grover_search(GroverInstance(4, 7), np.random.default_rng(0))
    assert exact16.iterations == 3
    assert abs(exact16.success_probability - 0.961) <= 1e-3
    # Gate-level amplitudes follow the analytic rotation for n <= 10.
    for n in range(1, 11):
        size = 1 << n
        theta0 = math.asin(1 / math.sqrt(size))
        inst = GroverInstance(n, size - 1)
        m = int(math.pi / 4 * math.sqrt(size))
        for t in range(0, 2 * m + 1, max(1, m // 2)):
            amp = grover_state(inst, t).amps[size - 1]
            assert abs(amp - math.sin((2 * t + 1) * theta0)) <= 1e-9
    elapsed = budget.check()
    _report(9, f"P(N=4)={exact4.success_probability:.6f}, "
               f"P(N=16)={exact16.success_probability:.6f}; rotation law holds",
            elapsed)


def test_criterion_10_qec_static():
    budget = _Budget(10.0)
    from qinfo.steane import steane_code

    code = steane_code()
    assert abs(inner(code.logical_zero, code.logical_one)) <= 1e-9
    from qinfo.steane import syndrome_enumeration

    rows = syndrome_enumeration()
    assert len({(x, z) for _, x, z in rows}) == 22
    rng = np.random.default_rng(100)
    worst = 1.0
    for _ in range(200):
        clean = encode_logical(*random_logical_pair(rng))
        for q in range(7):
            for p in "XYZ":
                error = "".join(p if i == q else "I" for i in range(7))
                recovered = correct(apply_pauli_string(clean, error))
                worst = min(worst, abs(inner(clean, recovered)) ** 2)
    assert worst > 1.0 - 1e-9
    assert css_duality_check(dual_code_words())
    satisfied, lhs, rhs = quantum_hamming_bound(5, 1)
    assert satisfied and lhs == rhs == 16
    estimate = uncorrectable_estimate(23, 3, 0.001)
    assert abs(estimate - 2.8e-7) < 0.05e-7
    elapsed = budget.check()
    _report(10, f"22 syndromes; 200x21 recovery min fid={worst:.12f}; "
                f"bound 16=16; estimate={estimate:.2e}", elapsed)


def test_criterion_11_qec_scaling():
    budget = _Budget(60.0)
    result = noise_scaling_mc([0.003, 0.01, 0.03], 100_000, seed=11)
    elapsed = budget.check()
    assert result.slope is not None
    assert abs(result.slope - 2.0) <= 0.3
    rates = ", ".join(f"{r.eps}:{r.rate:.2e}" for r in result.rows)
    _report(11, f"slope={result.slope:.3f} ({rates})", elapsed)


def test_criterion_12_oracle_equivalence():
    budget = _Budget(30.0)
    rng = np.random.default_rng(120)
    # Gate application vs dense matrices, n <= 4.
    checks = 0
    for n in range(1, 5):
        psi = oracles.random_state(rng, n)
        state = from_amplitudes(psi)
        for target in range(n):
            for gate in (standard_gate("X"), standard_gate("Y"),
                         standard_gate("H"), phase_gate(0.4), v_gate(1.1, 0.3)):
                got = apply_1q(state, gate, target).amps
                want = oracles.dense_1q(gate, target, n) @ psi
                assert np.allclose(got, want, atol=1e-12)
                checks += 1
        for control, target in itertools.permutations(range(n), 2):
            got = apply_controlled(state, control, target, standard_gate("X")).amps
            want = oracles.dense_controlled(oracles.X, control, target, n) @ psi
            assert np.allclose(got, want, atol=1e-12)
            checks += 1
        for c1, c2, t in itertools.permutations(range(n), 3):
            got = apply_toffoli(state, c1, c2, t).amps
            want = oracles.dense_toffoli(c1, c2, t, n) @ psi
            assert np.allclose(got, want, atol=1e-12)
            checks += 1
    # QFT vs direct DFT, n <= 8.
    for n in range(1, 9):
        psi = oracles.random_state(rng, n)
        got = qft(from_amplitudes(psi), 0, n - 1).amps
        want = oracles.dft_matrix(1 << n) @ psi
        assert np.allclose(got, want, atol=1e-9)
        checks += 1
    # Huffman vs exhaustive optimum, alphabets <= 5.
    for _ in range(20):
        k = int(rng.integers(2, 6))
        probs = tuple(rng.dirichlet(np.ones(k)))
        best = math.inf
        for lengths in np.ndindex(*([k] * k)):
            lengths = [l + 1 for l in lengths]
            if sum(2.0**-l for l in lengths) <= 1.0 + 1e-12:
                best = min(best, sum(p * l for p, l in zip(probs, lengths)))
        code = huffman_build(ProbDist(probs))
        assert abs(code.average_length - best) < 1e-9
        checks += 1
    elapsed = budget.check()
    _report(12, f"{checks} oracle equivalences", elapsed)
