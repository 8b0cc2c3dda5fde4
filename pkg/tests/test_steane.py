import itertools
import math

import numpy as np
import pytest

import oracles
from qinfo.gf2 import hamming_7_4
from qinfo.states import (
    apply_pauli_string,
    basis_index,
    basis_label,
    from_amplitudes,
    inner,
    same_up_to_phase,
)
from qinfo.steane import (
    Syndrome,
    correct,
    css_duality_check,
    dual_code_words,
    encode_logical,
    extract_syndrome,
    noise_scaling_mc,
    quantum_hamming_bound,
    random_logical_pair,
    recover,
    steane_code,
    syndrome_enumeration,
    uncorrectable_estimate,
)

SINGLE_ERRORS = [
    "".join(p if i == q else "I" for i in range(7))
    for q in range(7)
    for p in "XYZ"
]


class TestLogicalStates:
    def test_orthogonal_unit_vectors(self):
        code = steane_code()
        assert inner(code.logical_zero, code.logical_one) == pytest.approx(0.0)
        assert np.linalg.norm(code.logical_zero.amps) == pytest.approx(1.0)
        assert np.linalg.norm(code.logical_one.amps) == pytest.approx(1.0)

    def test_logical_zero_support(self):
        code = steane_code()
        support = {
            basis_label(i, 7)
            for i in np.nonzero(np.abs(code.logical_zero.amps) > 1e-12)[0]
        }
        assert support == set(dual_code_words())
        nz = code.logical_zero.amps[np.abs(code.logical_zero.amps) > 1e-12]
        assert np.allclose(nz, 1 / math.sqrt(8))

    def test_logical_one_is_coset_by_all_ones(self):
        code = steane_code()
        support = {
            basis_label(i, 7)
            for i in np.nonzero(np.abs(code.logical_one.amps) > 1e-12)[0]
        }
        flipped = {
            "".join("1" if ch == "0" else "0" for ch in w)
            for w in dual_code_words()
        }
        assert support == flipped
        assert "1111111" in support

    def test_equal_superposition_covers_hamming_codewords(self):
        state = encode_logical(1 / math.sqrt(2), 1 / math.sqrt(2))
        support = {
            basis_label(i, 7) for i in np.nonzero(np.abs(state.amps) > 1e-12)[0]
        }
        assert support == set(hamming_7_4().codewords())
        nz = state.amps[np.abs(state.amps) > 1e-12]
        assert np.allclose(nz, 0.25)

    def test_unnormalized_amplitudes_rejected(self):
        with pytest.raises(ValueError):
            encode_logical(1.0, 1.0)


class TestPauliNoiseAction:
    def test_identity_is_noop(self):
        state = encode_logical(0.6, 0.8)
        out = apply_pauli_string(state, "IIIIIII")
        assert np.allclose(out.amps, state.amps)

    def test_x_error_shifts_supports(self):
        # Oracle: X on qubit 0 permutes basis states by flipping bit 0.
        code = steane_code()
        out = apply_pauli_string(code.logical_zero, "XIIIIII")
        expected = np.zeros(128, dtype=complex)
        for w in dual_code_words():
            flipped = ("1" if w[0] == "0" else "0") + w[1:]
            expected[basis_index(flipped)] = 1 / math.sqrt(8)
        assert np.allclose(out.amps, expected)

    def test_z_error_flips_signs_on_odd_supports(self):
        # Oracle: Z on qubit 0 negates amplitudes of words with bit 0 set.
        code = steane_code()
        out = apply_pauli_string(code.logical_one, "ZIIIIII")
        expected = np.zeros(128, dtype=complex)
        for w in dual_code_words():
            word = "".join("1" if ch == "0" else "0" for ch in w)
            sign = -1.0 if word[0] == "1" else 1.0
            expected[basis_index(word)] = sign / math.sqrt(8)
        assert np.allclose(out.amps, expected)


class TestSyndromeExtraction:
    def test_clean_state_zero_syndrome_and_unchanged(self):
        state = encode_logical(0.28, complex(0.0, 0.96))
        syndrome, collapsed = extract_syndrome(state)
        assert syndrome == Syndrome("000", "000")
        assert np.allclose(collapsed.amps, state.amps, atol=1e-12)

    def test_x_error_on_qubit_4(self):
        state = apply_pauli_string(encode_logical(0.6, 0.8), "IIIIXII")
        syndrome, collapsed = extract_syndrome(state)
        assert syndrome.x_bits == "000"
        assert syndrome.z_bits == "101"  # column 4 of the check rows
        assert np.allclose(collapsed.amps, state.amps, atol=1e-12)

    def test_y_error_trips_both_sides(self):
        state = apply_pauli_string(encode_logical(0.6, 0.8), "IIYIIII")
        syndrome, _ = extract_syndrome(state)
        assert syndrome.x_bits != "000"
        assert syndrome.z_bits != "000"

    def test_all_22_syndromes_distinct(self):
        rows = syndrome_enumeration()
        assert len(rows) == 22
        assert len({(x, z) for _, x, z in rows}) == 22

    def test_syndrome_error_type_separation(self):
        state = encode_logical(*random_logical_pair(np.random.default_rng(0)))
        for q in range(7):
            x_err = "".join("X" if i == q else "I" for i in range(7))
            z_err = "".join("Z" if i == q else "I" for i in range(7))
            sx, _ = extract_syndrome(apply_pauli_string(state, x_err))
            sz, _ = extract_syndrome(apply_pauli_string(state, z_err))
            assert sx.x_bits == "000" and sx.z_bits != "000"
            assert sz.z_bits == "000" and sz.x_bits != "000"

    def test_syndrome_independent_of_logical_content(self):
        rng = np.random.default_rng(1)
        pairs = [random_logical_pair(rng) for _ in range(4)]
        for error in SINGLE_ERRORS:
            values = set()
            for a, b in pairs:
                state = apply_pauli_string(encode_logical(a, b), error)
                syndrome, _ = extract_syndrome(state)
                values.add(syndrome)
            assert len(values) == 1, error

    def test_error_state_unchanged_by_extraction(self):
        rng = np.random.default_rng(2)
        state = apply_pauli_string(
            encode_logical(*random_logical_pair(rng)), "IZIIIXI"
        )
        _, collapsed = extract_syndrome(state)
        assert np.allclose(collapsed.amps, state.amps, atol=1e-12)

    def test_non_deterministic_outcome_needs_rng(self):
        # A bare basis state is no stabilizer eigenstate.
        lopsided = from_amplitudes(np.eye(128)[3])
        with pytest.raises(ValueError):
            extract_syndrome(lopsided)
        syndrome, collapsed = extract_syndrome(lopsided, np.random.default_rng(0))
        assert len(syndrome.x_bits) == len(syndrome.z_bits) == 3
        assert np.linalg.norm(collapsed.amps) == pytest.approx(1.0)


class TestRecovery:
    def test_zero_syndrome_identity(self):
        state = encode_logical(0.6, 0.8)
        out = recover(state, Syndrome("000", "000"))
        assert np.allclose(out.amps, state.amps)

    def test_all_errors_on_random_logical_states(self):
        # 200 random logical states, all 21 single-qubit errors.
        rng = np.random.default_rng(3)
        for _ in range(200):
            clean = encode_logical(*random_logical_pair(rng))
            for error in SINGLE_ERRORS:
                recovered = correct(apply_pauli_string(clean, error))
                fid = abs(inner(clean, recovered)) ** 2
                assert fid == pytest.approx(1.0, abs=1e-9), error

    def test_weight_two_error_is_logical(self):
        # XX on qubits 0,1 decodes to a valid codeword that is not the
        # original state: the distance-3 limit.
        clean = encode_logical(0.6, 0.8)
        recovered = correct(apply_pauli_string(clean, "XXIIIII"))
        syndrome, _ = extract_syndrome(recovered)
        assert syndrome == Syndrome("000", "000")
        assert abs(inner(clean, recovered)) ** 2 < 1.0 - 1e-6

    def test_unknown_syndrome_rejected(self):
        with pytest.raises(ValueError):
            recover(encode_logical(1.0, 0.0), Syndrome("0000", "000"))

    def test_recovery_ignores_global_phase(self):
        # Y corrections reproduce the state only up to a phase.
        rng = np.random.default_rng(4)
        clean = encode_logical(*random_logical_pair(rng))
        noisy = apply_pauli_string(clean, "IIIYIII")
        recovered = correct(noisy)
        assert same_up_to_phase(clean, recovered)


class TestCssDuality:
    def test_dual_code_words_map_to_hamming(self):
        assert css_duality_check(dual_code_words())

    def test_hamming_words_map_to_dual(self):
        assert css_duality_check(hamming_7_4().codewords())

    def test_trivial_code_maps_to_full_space(self):
        assert css_duality_check(["0000000"])

    def test_full_space_maps_to_zero(self):
        assert css_duality_check([format(v, "07b") for v in range(128)])

    def test_non_linear_input_rejected(self):
        with pytest.raises(ValueError):
            css_duality_check(["0000000", "1000000", "0100000"])


class TestBounds:
    def test_five_qubit_equality(self):
        assert quantum_hamming_bound(5, 1) == (True, 16, 16)

    def test_seven_qubit_satisfied(self):
        assert quantum_hamming_bound(7, 1) == (True, 64, 22)

    def test_four_qubit_fails(self):
        assert quantum_hamming_bound(4, 1) == (False, 8, 13)

    def test_golay_style_estimate(self):
        got = uncorrectable_estimate(23, 3, 0.001)
        assert got == pytest.approx(0.023**4)
        assert got == pytest.approx(2.8e-7, rel=0.01)

    def test_estimate_edge_cases(self):
        assert uncorrectable_estimate(23, 0, 0.001) == pytest.approx(0.023)
        assert uncorrectable_estimate(23, 3, 0.0) == 0.0


class TestNoiseScalingMc:
    def test_zero_noise_never_fails(self):
        result = noise_scaling_mc([0.0, 0.01], 2000, seed=0)
        assert result.rows[0].failures == 0
        assert result.slope is None  # a zero rate has no log

    def test_matches_exact_enumeration_oracle(self):
        # Classical GF(2) enumeration of all 4^7 error patterns gives the
        # exact failure probability; the Monte Carlo must sit within 3
        # binomial sigma of it.
        eps, trials = 0.01, 100_000
        want = oracles.steane_exact_failure_rate(eps)
        result = noise_scaling_mc([eps], trials, seed=5)
        got = result.rows[0].rate
        sigma = math.sqrt(want * (1 - want) / trials)
        assert abs(got - want) < 3 * sigma

    def test_slope_near_two(self):
        result = noise_scaling_mc([0.003, 0.01, 0.03], 100_000, seed=9)
        assert result.slope == pytest.approx(2.0, abs=0.3)

    def test_trial_floor(self):
        with pytest.raises(ValueError):
            noise_scaling_mc([0.01], 100, seed=0)

    def test_row_schema(self):
        result = noise_scaling_mc([0.01], 1000, seed=1)
        row = result.rows[0]
        assert row.trials == 1000
        assert row.rate == row.failures / row.trials
