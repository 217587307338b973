import json
import math

import numpy as np
import pytest

from qxemu.circuit import Circuit
from qxemu.engine import (
    Histogram,
    NoiseModel,
    RunConfig,
    ValidationFailure,
    sample,
    sample_noisy,
    statevector,
)
from qxemu.linalg import probabilities
from qxemu.topology import builtin
from conftest import evolve_by_matrices, random_circuit


def bell_circuit(n_qubits=5):
    return Circuit.empty(n_qubits, 2).h(1).cx(1, 0).measure(0, 0).measure(1, 1)


def coin_circuit():
    return Circuit.empty(5, 1).h(0).measure(0, 0)


class TestStatevector:
    def test_h_on_q0(self):
        sv = statevector(Circuit.empty(5).h(0))
        assert abs(sv.amps[0] - 1 / math.sqrt(2)) < 1e-12
        assert abs(sv.amps[1] - 1 / math.sqrt(2)) < 1e-12

    def test_empty_circuit_is_all_zero_state(self):
        sv = statevector(Circuit.empty(5))
        assert sv.amps[0] == 1.0

    def test_bell_pair_matches_brute_force(self):
        c = Circuit.empty(2).h(1).cx(1, 0)
        sv = statevector(c)
        assert np.allclose(sv.amps, evolve_by_matrices(c), atol=1e-12)
        assert np.allclose(sv.amps, [1 / math.sqrt(2), 0, 0, 1 / math.sqrt(2)], atol=1e-12)

    def test_random_circuits_match_kron_oracle(self, rnd):
        for _ in range(40):
            n = rnd.randint(1, 3)
            c = random_circuit(rnd, n, rnd.randint(1, 6))
            assert np.allclose(
                statevector(c).amps, evolve_by_matrices(c), atol=1e-10
            )


class TestSample:
    def test_single_shot_coin(self):
        hist = sample(coin_circuit(), RunConfig(shots=1, seed=3))
        assert sum(hist.counts.values()) == 1
        assert set(hist.counts) <= {"00000", "00001"}

    def test_deterministic_outcome(self):
        c = Circuit.empty(5, 1).x(0).measure(0, 0)
        hist = sample(c, RunConfig(shots=100, seed=1))
        assert hist.counts == {"00001": 100}

    def test_8192_shot_statistics(self):
        hist = sample(coin_circuit(), RunConfig(shots=8192, seed=12))
        p1 = hist.counts.get("00001", 0) / 8192
        assert abs(p1 - 0.5) <= 3 * math.sqrt(0.25 / 8192)

    def test_same_seed_same_histogram(self):
        cfg = RunConfig(shots=512, seed=99)
        a = sample(bell_circuit(), cfg)
        b = sample(bell_circuit(), cfg)
        assert a.to_json() == b.to_json()

    def test_parallel_equals_sequential(self):
        cfg = RunConfig(shots=1000, seed=5)
        assert sample(bell_circuit(), cfg, workers=1).to_json() == sample(
            bell_circuit(), cfg, workers=4
        ).to_json()

    def test_validation_violations_propagate(self):
        c = Circuit.empty(5).cx(0, 2)
        with pytest.raises(ValidationFailure) as exc:
            sample(c, RunConfig(shots=10, backend=builtin("ibmqx4")))
        assert exc.value.report.violations[0].kind == "cnot-direction"

    def test_shots_out_of_range(self):
        with pytest.raises(ValueError, match="shots"):
            RunConfig(shots=0)
        with pytest.raises(ValueError, match="shots"):
            RunConfig(shots=2_000_000)

    def test_convergence_to_statevector_probs(self):
        c = Circuit.empty(5, 2).h(0).h(1).measure(0, 0).measure(1, 1)
        shots = 8192
        hist = sample(c, RunConfig(shots=shots, seed=4))
        sigma = 3 * math.sqrt(0.25 * 0.75 / shots)
        for key in ("00000", "00001", "00010", "00011"):
            assert abs(hist.counts.get(key, 0) / shots - 0.25) <= sigma


class TestSampleNoisy:
    def test_noise_off_equals_noiseless(self):
        c = bell_circuit()
        cfg_clean = RunConfig(shots=300, seed=17)
        cfg_null = RunConfig(shots=300, seed=17, noise=NoiseModel({}, 0.0))
        assert sample(c, cfg_clean).to_json() == sample_noisy(c, cfg_null).to_json()

    def test_readout_flip_channel_matches_enumeration(self):
        # p=0, r=0.01: exact 4-outcome distribution from the ideal 00/11 halves
        r = 0.01
        shots = 8192
        cfg = RunConfig(shots=shots, seed=23, noise=NoiseModel({}, r))
        hist = sample_noisy(bell_circuit(), cfg)
        ideal = {0b00: 0.5, 0b11: 0.5}
        expected = {}
        for obs in range(4):
            p = 0.0
            for src, p_src in ideal.items():
                flips = bin(obs ^ src).count("1")
                p += p_src * (r**flips) * ((1 - r) ** (2 - flips))
            expected[f"000{obs >> 1}{obs & 1}"] = p
        for key, p in expected.items():
            observed = hist.counts.get(key, 0) / shots
            sigma = math.sqrt(p * (1 - p) / shots)
            assert abs(observed - p) <= 3 * sigma, (key, observed, p)
        assert hist.counts.get("00001", 0) > 0
        assert hist.counts.get("00010", 0) > 0

    def test_preset_reproduces_two_small_bars(self):
        cfg = RunConfig(shots=8192, seed=7, noise=NoiseModel.preset())
        hist = sample_noisy(bell_circuit(), cfg)
        dominant = {"00000", "00011"}
        small = {"00001", "00010"}
        for key in dominant | small:
            assert hist.counts.get(key, 0) > 0
        assert min(hist.counts[k] for k in dominant) > max(hist.counts[k] for k in small)

    def test_noisy_deterministic_and_parallel_safe(self):
        cfg = RunConfig(shots=400, seed=31, noise=NoiseModel.preset())
        a = sample_noisy(bell_circuit(), cfg, workers=1)
        b = sample_noisy(bell_circuit(), cfg, workers=3)
        assert a.to_json() == b.to_json()

    def test_requires_noise(self):
        with pytest.raises(ValueError, match="noise"):
            sample_noisy(bell_circuit(), RunConfig(shots=10))


class TestHistogram:
    def test_counts_must_sum_to_shots(self):
        with pytest.raises(ValueError, match="sum"):
            Histogram({"00": 1}, 2, 0)

    def test_keys_same_width(self):
        with pytest.raises(ValueError, match="width"):
            Histogram({"00": 1, "000": 1}, 2, 0)

    def test_json_shape(self):
        payload = json.loads(Histogram({"00001": 2, "00000": 1}, 3, 9).to_json())
        assert payload == {"shots": 3, "seed": 9, "counts": {"00000": 1, "00001": 2}}


def test_noise_model_validation():
    with pytest.raises(ValueError, match="\\[0,1\\]"):
        NoiseModel({"h": 1.5})
    with pytest.raises(ValueError, match="\\[0,1\\]"):
        NoiseModel({}, -0.1)
