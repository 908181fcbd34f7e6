"""
Test suite for the three-state site model, its Metropolis chains and the
two-phase free-energy comparison.
"""

import math

import numpy as np
import pytest

from src.errors import ValidationError
from src.toymodel import (MetropolisChain, SiteConfig, ToyParams, bimodality_coefficient, energy,
                          energy_change, exact_marginals, ground_energy_per_site, hysteresis_scan,
                          metropolis_run, phase_free_energies, phase_scan,
                          toric_free_energy_provider, toric_qubits_per_site, two_phase_free_energy)
import src.toymodel.free_energy as free_energy


@pytest.fixture
def small_params():
    return ToyParams(J=1.0, h=0.3, d=2, L=4)


class TestEnergy:

    @pytest.mark.dependency()
    def test_uniform_energies(self, small_params):
        assert energy(SiteConfig.uniform(2, 4, 0), small_params) == pytest.approx(-27.2)
        assert energy(SiteConfig.uniform(2, 4, 1), small_params) == pytest.approx(-32.0)
        assert energy(SiteConfig.uniform(2, 4, 2), small_params) == pytest.approx(-32.0)
        with_plaquettes = small_params.with_values(lambda_e=0.5)
        assert energy(SiteConfig.uniform(2, 4, 0), with_plaquettes) == pytest.approx(-27.2 - 8.0)
        print("✅ Uniform states: -27.2 for all-0 and -32 for all-1 at h=0.3")

    @pytest.mark.dependency(depends=["TestEnergy::test_uniform_energies"])
    def test_single_flip(self, small_params):
        cfg = SiteConfig.uniform(2, 4, 0)
        assert energy_change(cfg, (1, 2), 1, small_params) == pytest.approx(3.7)
        assert energy_change(cfg, (1, 2), 0, small_params) == 0.0
        print("✅ Flipping one site out of the 0-phase costs 4J - h")

    @pytest.mark.parametrize("d,lambda_e", [(2, 0.0), (2, 0.7), (3, 0.4)])
    def test_local_change_matches_full_energy(self, d, lambda_e):
        p = ToyParams(J=1.0, h=0.25, d=d, L=4, lambda_e=lambda_e)
        rng = np.random.default_rng(21)
        cfg = SiteConfig.random(d, 4, rng)
        for _ in range(20):
            site = tuple(int(x) for x in rng.integers(4, size=d))
            new = int(rng.integers(3))
            values = cfg.values.copy()
            values[site] = new
            expected = energy(SiteConfig(values), p) - energy(cfg, p)
            assert energy_change(cfg, site, new, p) == pytest.approx(expected)

    def test_swap_symmetry(self, small_params):
        cfg = SiteConfig.random(2, 4, np.random.default_rng(4))
        assert energy(cfg.swapped(), small_params) == pytest.approx(energy(cfg, small_params))

    def test_ground_energy_per_site(self):
        p = ToyParams(J=1.0, h=0.2, d=2, L=4, lambda_e=0.5)
        for phase, value in ((0, 0), (1, 1)):
            per_site = energy(SiteConfig.uniform(2, 4, value), p) / p.n_sites
            assert ground_energy_per_site(p, phase) == pytest.approx(per_site)

    def test_validation(self):
        assert ToyParams(h=-0.5).validate() == []
        assert ToyParams(L=3).validate()
        assert ToyParams(beta=0).T == float('inf')
        with pytest.raises(ValidationError):
            SiteConfig(np.array([0, 3]))
        with pytest.raises(ValidationError):
            MetropolisChain(ToyParams(d=2, L=4), SiteConfig.uniform(2, 2, 0))


class TestMetropolis:

    @pytest.mark.dependency()
    def test_frozen_at_low_temperature(self):
        p = ToyParams(J=1.0, h=-0.5, d=2, L=4, beta=20.0, sweeps=50, burn_in=10, seed=1)
        trace = metropolis_run(p, 'zero')
        assert np.all(trace.fraction_zero == 1.0)
        assert trace.acceptance < 1e-3
        print("✅ At beta=20 the all-0 state stays frozen")

    def test_infinite_temperature_is_uniform(self):
        p = ToyParams(J=1.0, h=0.0, d=2, L=4, beta=1e-6, sweeps=500, burn_in=10, seed=2)
        mean, _ = metropolis_run(p, 'random').fraction_zero_estimate()
        assert mean == pytest.approx(1 / 3, abs=0.03)

    @pytest.mark.dependency(depends=["TestMetropolis::test_frozen_at_low_temperature"])
    @pytest.mark.slow
    def test_matches_enumeration(self):
        p = ToyParams(J=1.0, h=0.2, d=2, L=2, beta=0.5, sweeps=3000, burn_in=200, seed=3)
        exact = exact_marginals(p)
        assert exact['p1'] == pytest.approx(exact['p2'])
        assert exact['p0'] + exact['p1'] + exact['p2'] == pytest.approx(1.0)
        trace = metropolis_run(p, 'random')
        assert trace.fraction_zero_estimate()[0] == pytest.approx(exact['fraction_zero'], abs=0.05)
        assert trace.energy_estimate()[0] == pytest.approx(exact['energy'], abs=0.5)
        print("✅ Metropolis on the 2x2 lattice matches exact enumeration")

    def test_trace_frame(self):
        p = ToyParams(d=2, L=4, sweeps=12, burn_in=0, seed=5)
        frame = metropolis_run(p, 'one').to_frame()
        assert list(frame.columns) == ['sweep', 'energy', 'fraction_zero']
        assert len(frame) == 12
        with pytest.raises(ValidationError):
            metropolis_run(p, 'sideways')

    def test_enumeration_limit(self):
        with pytest.raises(ValidationError):
            exact_marginals(ToyParams(d=2, L=6))


class TestScans:

    def test_bimodality(self):
        assert bimodality_coefficient([1.0, 1.0, 1.0, 1.0, 1.0]) == 0.0
        assert bimodality_coefficient([0.0, 1.0, 2.0]) == 0.0
        assert bimodality_coefficient([0.0] * 50 + [1.0] * 50) > 5 / 9
        unimodal = np.random.default_rng(6).normal(size=400)
        assert bimodality_coefficient(unimodal) < 5 / 9

    def test_hysteresis(self):
        p = ToyParams(J=1.0, h=0.1, d=2, L=4, sweeps=20, burn_in=5, seed=7)
        result = hysteresis_scan(p, [1.0, 0.5])
        assert list(result.temperatures) == [0.5, 1.0]
        assert result.loop_area >= 0.0
        assert len(result.to_frame()) == 2
        assert len(result.energies) == 2 * 2 * 20
        with pytest.raises(ValidationError):
            hysteresis_scan(p, [1.0])

    def test_phase_scan(self):
        p = ToyParams(d=2, L=4, sweeps=10, burn_in=2, seed=8)
        frame = phase_scan(p, [0.5, 1.0], [0.0, 0.3, 0.6])
        assert len(frame) == 6
        assert frame['fraction_zero_mean'].between(0, 1).all()
        with pytest.raises(ValidationError):
            phase_scan(p, [0.0], [0.1])

    @pytest.mark.slow
    def test_relabelling_one_and_two(self):
        p = ToyParams(J=1.0, d=2, L=4, sweeps=1500, burn_in=100, seed=11)
        row = phase_scan(p, [2.0], [0.3], start='one').iloc[0]
        chain = MetropolisChain(p.with_values(h=0.3, beta=0.5, seed=12), SiteConfig.uniform(2, 4, 2))
        chain.run(p.burn_in, record=False)
        _, zeros = chain.run(p.sweeps)
        assert row['fraction_zero_mean'] == pytest.approx(zeros.mean(), abs=0.03)
        print("✅ Starting from all-1 or all-2 gives the same zero fraction")

    @pytest.mark.slow
    def test_first_order_signature_in_four_dimensions(self):
        # tuned just below the zero-temperature critical field lambda_E * C(4, 2) = 6
        p = ToyParams(J=1.0, h=5.5, d=4, L=4, sweeps=20, burn_in=5, seed=13, lambda_e=1.0)
        result = hysteresis_scan(p, [0.6, 0.8])
        assert np.all(result.from_zero > 0.99)
        assert np.all(result.from_one < 0.01)
        assert result.loop_area > 0.15
        assert result.bimodality > 5 / 9
        print(f"✅ d=4 loop area {result.loop_area:.3f}, bimodality {result.bimodality:.3f}")


class TestFreeEnergy:

    @pytest.mark.dependency()
    def test_zero_temperature_energies(self):
        p = ToyParams(J=1.0, h=0.5, d=2, lambda_e=1.0)
        f0, f12 = phase_free_energies(p, 0.0, toric_free_energy_provider())
        assert f0 == pytest.approx(-2.5)
        assert f12 == pytest.approx(-2.0)
        print("✅ F_0 = -2.5 < F_12 = -2 at T = 0")

    @pytest.mark.dependency(depends=["TestFreeEnergy::test_zero_temperature_energies"])
    def test_crossing(self):
        toric = toric_free_energy_provider()
        p = ToyParams(J=1.0, h=0.5, d=2, lambda_e=1.0, beta=1.0)
        result = two_phase_free_energy(p, toric)
        assert result.critical_h == 1.0
        assert result.T_star is not None and result.T_star > 0
        f0, f12 = phase_free_energies(p, result.T_star, toric)
        assert f12 - f0 == pytest.approx(0.0, abs=1e-6)
        print(f"✅ Phases cross at T* = {result.T_star:.4f}")

    def test_no_crossing_above_critical_field(self):
        p = ToyParams(J=1.0, h=2.0, d=2, lambda_e=1.0)
        assert two_phase_free_energy(p).T_star is None

    def test_toric_provider(self):
        toric = toric_free_energy_provider()
        assert toric(50.0) == pytest.approx(-(math.log(4) - 8 * math.log(2)) / (50.0 * 8), rel=1e-6)
        assert 0 < toric(1.0) < 0.5
        with pytest.raises(ValidationError):
            toric(0.0)

    def test_qubits_per_site(self):
        assert [toric_qubits_per_site(d) for d in (2, 3, 4)] == [2, 3, 6]
        with pytest.raises(ValidationError):
            toric_qubits_per_site(5)

    @pytest.mark.parametrize("d, qubits", [(2, 2), (3, 3), (4, 6)])
    def test_toric_sector_scales_with_dimension(self, d, qubits):
        p = ToyParams(J=1.0, h=0.5, d=d, lambda_e=1.0)
        _, f12 = phase_free_energies(p, 1.0, lambda beta: 0.1)
        sector = f12 - ground_energy_per_site(p, 1) + math.log(2.0)
        assert sector == pytest.approx(qubits * 0.1)

    def test_default_provider_follows_dimension(self, monkeypatch):
        requested = []

        def fake_provider(d=2, L=2, params=None):
            requested.append(d)
            return lambda beta: 0.0

        monkeypatch.setattr(free_energy, 'toric_free_energy_provider', fake_provider)
        two_phase_free_energy(ToyParams(J=1.0, h=5.5, d=4, lambda_e=1.0))
        two_phase_free_energy(ToyParams(J=1.0, h=0.5, d=2, lambda_e=1.0))
        assert requested == [4, 2]
        print("✅ The {1,2}-phase uses a toric code of the model's dimension")
