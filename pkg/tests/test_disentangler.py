"""
Test suite for the disentangling circuit: conjugation rules, surface
growth, the independent witness and a dense-matrix check on 8 qubits.
"""

import pytest

from src.errors import DisentanglerError, ValidationError
from src.disentangler import (Circuit, classicality_check, conjugate_hamiltonian,
                              dense_transport_check, is_free_surface, make_gate, run,
                              run_from_seeds, split_into_rounds, state_witness)
from src.holes import plant_holes
from src.lattice import Hole, OrientedSurface, build, hole_boundary_surface, restrict, toric_code
from src.pauli import Pauli
from src.thermal import Config


def without_star(h, vertex):
    """Configuration with every term active except the star at ``vertex``."""
    bits = [True] * len(h)
    bits[vertex] = False
    return Config(bits)


def first_bond(lat, u):
    bond = sorted(lat.vertex_edges(u))[0]
    a, b = lat.edge_endpoints(bond)
    return bond, (b if a == u else a)


class TestConjugationRules:

    @pytest.mark.dependency()
    def test_star_maps_to_bond_z(self, toric_2d):
        lat = toric_2d.lattice
        bond, target = first_bond(lat, 0)
        h = restrict(toric_2d, without_star(toric_2d, 0))
        gate = make_gate(h, bond, target, 0)
        out = conjugate_hamiltonian(h, gate)
        assert len(out) == len(h)
        image = out.terms[out.position_of(target)]
        assert image.pauli == Pauli(lat.n_qubits, 0, 1 << bond)
        assert image.kind == 'field'
        changed = [k for k in range(len(h)) if out.terms[k].pauli != h.terms[k].pauli]
        assert changed == [out.position_of(target)]
        print("✅ One rotation turns the target star into Z on the bond and nothing else")

    def test_plaquettes_are_untouched(self, toric_2d):
        lat = toric_2d.lattice
        plaquettes = toric_2d.with_terms([t for t in toric_2d.terms if t.kind == 'plaquette'])
        bond, target = first_bond(lat, 3)
        out = conjugate_hamiltonian(plaquettes, make_gate(toric_2d, bond, target, 3))
        assert out.paulis == plaquettes.paulis
        assert classicality_check(out)

    @pytest.mark.dependency(depends=["TestConjugationRules::test_star_maps_to_bond_z"])
    def test_every_incidence_in_three_dimensions(self, toric_3d):
        """Each (bond, endpoint) pair of the 3x3x3 torus follows the star-to-bond rule."""
        lat = toric_3d.lattice
        n = lat.n_qubits
        checked = 0
        for bond in lat.cells(1):
            ends = lat.edge_endpoints(bond)
            for target, source in (ends, ends[::-1]):
                h = restrict(toric_3d, without_star(toric_3d, source))
                out = conjugate_hamiltonian(h, make_gate(h, bond, target, source))
                pos = out.position_of(target)
                assert out.terms[pos].pauli == Pauli(n, 0, 1 << bond)
                assert out.terms[pos].kind == 'field'
                assert all(out.terms[k] == h.terms[k] for k in range(len(h)) if k != pos)
                with pytest.raises(DisentanglerError):
                    conjugate_hamiltonian(toric_3d, make_gate(toric_3d, bond, target, source))
                checked += 1
        assert checked == 2 * lat.n_cells(1) == 162
        print("✅ All 162 bond-vertex incidences in 3D map the star to Z on the bond")

    def test_active_source_star_is_rejected(self, toric_2d):
        bond, target = first_bond(toric_2d.lattice, 0)
        with pytest.raises(DisentanglerError):
            conjugate_hamiltonian(toric_2d, make_gate(toric_2d, bond, target, 0))


class TestFreeSurfaces:

    @pytest.mark.dependency()
    def test_hole_surface_is_free(self, toric_2d_large):
        lat = toric_2d_large.lattice
        planted, _ = plant_holes(toric_2d_large, Config.ones(len(toric_2d_large)), 4)
        h_active = restrict(toric_2d_large, planted)
        surface = hole_boundary_surface(lat, Hole(0, 3))
        assert is_free_surface(h_active, surface)
        assert not is_free_surface(toric_2d_large, surface.reversed())
        print("✅ The surface around a planted hole is free; its reverse on the full code is not")

    def test_empty_hamiltonian_makes_every_surface_free(self, toric_2d_large):
        empty = toric_2d_large.with_terms([])
        surface = OrientedSurface.from_region(toric_2d_large.lattice, {5, 6})
        assert is_free_surface(empty, surface)
        assert is_free_surface(empty, surface.reversed())


class TestEngine:

    def test_all_inactive_needs_no_gates(self, toric_2d_large):
        result = run(toric_2d_large, Config.zeros(len(toric_2d_large)), 4)
        assert result.circuit.n_gates == 0
        assert result.classical
        assert len(result.final) == 0

    def test_invalid_config_is_rejected(self, toric_2d_large):
        with pytest.raises(ValidationError):
            run(toric_2d_large, Config.ones(len(toric_2d_large)), 4)

    @pytest.mark.dependency()
    def test_single_seed_absorbs_every_star(self, toric_2d):
        c = without_star(toric_2d, 0)
        result = run_from_seeds(restrict(toric_2d, c), {0}, 4)
        assert result.classical
        assert result.circuit.n_gates == 15
        assert sum(result.layers) == 15
        assert all(rnd.supports_disjoint() for rnd in result.circuit.rounds)
        report = state_witness(toric_2d, c, result.circuit)
        assert report.valid and report.n_gates == 15
        assert report.rank == toric_2d.n_qubits - 2
        print("✅ Growing from one vertex disentangles 15 stars on the 4x4 torus")

    @pytest.mark.dependency(depends=["TestEngine::test_single_seed_absorbs_every_star"])
    def test_planted_configuration(self, toric_2d_large):
        planted, count = plant_holes(toric_2d_large, Config.ones(len(toric_2d_large)), 4)
        assert count == 4
        result = run(toric_2d_large, planted, 4)
        assert result.classical
        assert len(result.final) == planted.n_active
        assert result.circuit.range <= 8
        report = state_witness(toric_2d_large, planted, result.circuit)
        assert report.valid
        assert report.final_term_histogram
        print(f"✅ Planted L=8 configuration: {result.circuit.n_gates} gates, range {result.circuit.range}")

    @pytest.mark.slow
    def test_planted_configuration_in_three_dimensions(self):
        h = toric_code(build(3, 6))
        assert len(h) == 216 + 648
        planted, _ = plant_holes(h, Config.ones(len(h)), 6)
        assert planted.n_active == 432
        result = run(h, planted, 6)
        assert result.classical
        assert result.circuit.n_gates == 108
        assert result.circuit.range <= 12
        report = state_witness(h, planted, result.circuit)
        assert report.valid and report.n_gates == 108
        # a radius-3 ball does not fit a block of 3, so planting clears every term
        cleared, _ = plant_holes(h, Config.ones(len(h)), 3)
        assert cleared.n_active == 0
        assert run(h, cleared, 3).circuit.n_gates == 0
        print(f"✅ Planted 3D L=6 configuration: 108 gates, range {result.circuit.range}")

    def test_seed_with_active_star_is_rejected(self, toric_2d):
        with pytest.raises(ValidationError):
            run_from_seeds(toric_2d, {0}, 4)
        with pytest.raises(ValidationError):
            run_from_seeds(restrict(toric_2d, without_star(toric_2d, 0)), set(), 4)

    def test_layer_checks_can_be_skipped(self, toric_2d):
        c = without_star(toric_2d, 0)
        checked = run_from_seeds(restrict(toric_2d, c), {0}, 4)
        fast = run_from_seeds(restrict(toric_2d, c), {0}, 4, check_every_layer=False)
        assert checked.circuit.to_lines() == fast.circuit.to_lines()


class TestWitness:

    @pytest.mark.oracle
    def test_dense_transport(self, toric_2d_small):
        h_active = restrict(toric_2d_small, without_star(toric_2d_small, 0))
        result = run_from_seeds(h_active, {0}, 2)
        assert result.circuit.n_gates == 3
        assert dense_transport_check(h_active, result.circuit) < 1e-10
        print("✅ Dense conjugation agrees with Pauli transport on 8 qubits")

    def test_dense_check_size_limit(self, toric_2d):
        with pytest.raises(ValidationError):
            dense_transport_check(toric_2d, Circuit(toric_2d.lattice, 4))


class TestCircuit:

    def test_rounds_are_disjoint(self, toric_2d):
        lat = toric_2d.lattice
        gates = []
        for u in (0, 1, 2):
            bond, target = first_bond(lat, u)
            gates.append(make_gate(toric_2d, bond, target, u))
        rounds = split_into_rounds(gates, 2, 0)
        assert sum(len(r.gates) for r in rounds) == 3
        assert all(r.supports_disjoint() for r in rounds)
        assert split_into_rounds([], 1, 0) == []

    def test_written_circuit(self, toric_2d, tmp_path):
        c = without_star(toric_2d, 0)
        circuit = run_from_seeds(restrict(toric_2d, c), {0}, 4).circuit
        path = tmp_path / "circuit.txt"
        circuit.write(path)
        lines = path.read_text(encoding='utf-8').splitlines()
        assert len(lines) == circuit.n_gates
        round_index, bond, target, label = lines[0].split()
        assert int(round_index) == 0
        assert int(target) in {g.target_vertex for g in circuit.gates()}
