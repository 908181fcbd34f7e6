"""
Test suite for operator-Schmidt splitting, block decomposition of
interaction algebras, 2D region partitions and the degeneracy checker.
"""

from functools import reduce
from itertools import product

import numpy as np
import pytest

from src.errors import GeometryError, RegionPartitionError, ValidationError
from src.lattice import Hole, build
from src.pauli import Pauli
from src.pauli.dense import projector_hamiltonian
from src.services.experiment_service import random_layout
from src.structure import (DenseOperator, HOLE_LABEL, couplings_to_algebras, dashed_path,
                           decomp2_residual, decompose_region, load_matrix, operator_schmidt,
                           random_block_instance, recompose, region_partition, save_matrix,
                           support_sets, topological_degeneracy_eps)

X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.diag([1.0, -1.0]).astype(complex)
I2 = np.eye(2, dtype=complex)


def kron_all(*factors):
    return reduce(np.kron, factors)


def corner_holes(lat, l):
    """Radius-0 holes one step inside every block corner."""
    holes = {}
    for index, (bx, by) in enumerate((bx, by) for bx in range(lat.L // l) for by in range(lat.L // l)):
        holes[index] = Hole(lat.vertex_index((bx * l + 1, by * l + 1)), 0)
    return holes


class TestOperatorSchmidt:

    @pytest.mark.dependency()
    def test_product_operator_has_one_term(self):
        h = np.kron(X, X)
        terms = operator_schmidt(h, (2, 2))
        assert len(terms) == 1
        assert np.allclose(recompose(terms, (2, 2)), h)
        print("✅ X (x) X has operator-Schmidt rank 1")

    @pytest.mark.dependency(depends=["TestOperatorSchmidt::test_product_operator_has_one_term"])
    def test_sum_has_two_terms(self):
        h = (np.kron(Z, Z) + np.kron(X, X)) / np.sqrt(2)
        terms = operator_schmidt(DenseOperator(h, (2, 2)))
        assert len(terms) == 2
        assert np.allclose(recompose(terms, (2, 2)), h)
        for _, ob in terms:
            assert np.trace(ob.conj().T @ ob).real == pytest.approx(1.0)
        print("✅ (ZZ + XX)/sqrt(2) has rank 2 with orthonormal b-factors")

    def test_shape_mismatch(self):
        with pytest.raises(ValidationError):
            operator_schmidt(np.eye(4), (2, 3))
        with pytest.raises(ValidationError):
            DenseOperator(np.eye(4), (2, 3))

    def test_couplings_to_algebras(self):
        algebras = couplings_to_algebras({'b': DenseOperator(np.kron(Z, X), (2, 2))})
        assert algebras['b']
        for g in algebras['b']:
            assert np.allclose(g / g[0, 0], Z)

    def test_matrix_fixture_format(self, tmp_path):
        rng = np.random.default_rng(3)
        m = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        path = save_matrix(tmp_path / "m.txt", m)
        assert np.array_equal(load_matrix(path), m)


class TestBlockDecomposition:

    @pytest.mark.dependency()
    def test_diagonal_generator(self):
        decomp = decompose_region({'b': [np.diag([1.0, 2.0, 3.0, 4.0])]})
        assert decomp.signatures() == [(1, (('b', 1),), 1)] * 4
        assert decomp.completeness_residual() < 1e-8
        print("✅ A non-degenerate diagonal generator splits into four 1-dim blocks")

    def test_full_matrix_algebra(self):
        decomp = decompose_region({'b': [X, Z]})
        assert decomp.signatures() == [(2, (('b', 2),), 1)]

    def test_no_neighbours(self):
        decomp = decompose_region({}, dim=2)
        assert decomp.signatures() == [(2, (), 2)]
        assert decomp.to_report()['dim'] == 2

    @pytest.mark.dependency(depends=["TestBlockDecomposition::test_diagonal_generator"])
    def test_recovers_constructed_layout(self):
        layout = [
            {'factor_dims': {'b': 2, 'c': 1}, 'inner_dim': 1},
            {'factor_dims': {'b': 1, 'c': 2}, 'inner_dim': 2},
        ]
        instance = random_block_instance(layout, np.random.default_rng(8))
        assert instance.dim == 6
        decomp = decompose_region(instance.generators, seed=1)
        assert decomp.signatures() == instance.expected_signatures()
        assert decomp.completeness_residual() < 1e-8
        print("✅ Scrambled two-block instance is recovered block by block")

    def test_rejects_noncommuting_neighbours(self):
        with pytest.raises(ValidationError):
            decompose_region({'b': [X], 'c': [Z]})

    def test_rejects_dimension_mismatch(self):
        with pytest.raises(ValidationError):
            decompose_region({'b': [np.diag([1.0, 2.0])], 'c': [np.diag([1.0, 2.0, 3.0])]})

    def test_decomp2_residual(self):
        da = decompose_region({'b': [Z]})
        db = decompose_region({'a': [Z]})
        assert decomp2_residual(np.kron(Z, Z), da, db, 'b', 'a') < 1e-10
        assert decomp2_residual(np.kron(X, X), da, db, 'b', 'a') > 0.5
        with pytest.raises(ValidationError):
            decomp2_residual(np.eye(2), da, db)

    def test_action_on_rest_factor_is_residual(self):
        """Z on the multiplicity qubit survives block compression but not factor reconstruction."""
        da = decompose_region({'b': [np.kron(Z, I2)]})
        db = decompose_region({'a': [Z]})
        assert da.signatures() == [(2, (('b', 1),), 2)] * 2
        on_factor = np.kron(np.kron(Z, I2), Z)
        on_rest = np.kron(np.kron(I2, Z), Z)
        assert decomp2_residual(on_factor, da, db, 'b', 'a') < 1e-10
        assert decomp2_residual(on_rest, da, db) < 1e-10
        assert decomp2_residual(on_rest, da, db, 'b', 'a') == pytest.approx(1.0, abs=1e-8)
        print("✅ Action on the rest factor is caught by factor reconstruction")

    def test_ising_region_splits_into_lines(self):
        """Diagonal couplings leave only one-dimensional blocks."""
        gens = {'b': [kron_all(Z, I2, I2), kron_all(Z, Z, I2)],
                'c': [kron_all(I2, I2, Z), kron_all(I2, Z, Z)]}
        decomp = decompose_region(gens, seed=2)
        assert decomp.signatures() == [(1, (('b', 1), ('c', 1)), 1)] * 8
        partner = decompose_region({'a': [Z]})
        h_ab = np.kron(kron_all(Z, Z, I2), Z) + 0.5 * np.kron(kron_all(I2, I2, Z), I2)
        assert decomp2_residual(h_ab, decomp, partner, 'b', 'a') < 1e-10
        print("✅ An Ising region splits into eight one-dimensional blocks")

    @pytest.mark.slow
    def test_factor_reconstruction_on_random_instances(self):
        for k in range(50):
            rng = np.random.default_rng(200 + k)
            region_a = random_block_instance(random_layout(rng, 64), rng)
            region_b = random_block_instance(random_layout(rng, 8), rng)
            da = decompose_region(region_a.generators, seed=k)
            db = decompose_region(region_b.generators, seed=k)
            assert da.signatures() == region_a.expected_signatures()
            pairs = list(product(region_a.generators['b'], region_b.generators['b']))
            h_ab = sum(c * np.kron(g, o) for (g, o), c in zip(pairs, rng.normal(size=len(pairs))))
            scale = max(1.0, np.linalg.norm(h_ab, 2))
            assert decomp2_residual(h_ab, da, db, 'b', 'b') <= 1e-8 * scale, f"instance {k}"
        print("✅ 50 random couplings are rebuilt from factor operators")


class TestRegionPartition:

    @pytest.mark.dependency()
    def test_four_blocks_give_four_regions(self):
        lat = build(2, 8)
        partition = region_partition(lat, corner_holes(lat, 4), 4)
        assert partition.n_regions == 4
        assert len(partition.qubit_labels) == lat.n_qubits
        assert set(partition.anchors.values()) == {h.center for h in corner_holes(lat, 4).values()}
        dashed_coords = {lat.vertex_coords(v) for v in partition.dashed}
        assert all(x in (1, 5) or y in (1, 5) for x, y in dashed_coords)
        assert partition.adjacency.number_of_edges() > 0
        print("✅ Dashed paths through four holes cut the 8x8 torus into four regions")

    def test_single_block(self):
        lat = build(2, 8)
        partition = region_partition(lat, corner_holes(lat, 8), 8)
        assert partition.n_regions == 1
        assert all(row['region'] in (0, HOLE_LABEL) for row in partition.to_rows())

    def test_dashed_path_between_neighbouring_blocks(self):
        lat = build(2, 8)
        a, b = lat.vertex_index((1, 1)), lat.vertex_index((5, 1))
        path = dashed_path(lat, a, b, 0, 4)
        assert [lat.vertex_coords(v) for v in path] == [(1, 1), (2, 1), (3, 1), (4, 1), (5, 1)]

    def test_full_code_touches_three_regions(self, toric_2d_large):
        lat = toric_2d_large.lattice
        with pytest.raises(RegionPartitionError):
            region_partition(lat, corner_holes(lat, 4), 4, toric_2d_large)

    def test_input_checks(self):
        with pytest.raises(GeometryError):
            region_partition(build(3, 4), {}, 2)
        lat = build(2, 8)
        holes = corner_holes(lat, 4)
        del holes[2]
        with pytest.raises(ValidationError):
            region_partition(lat, holes, 4)


class TestDegeneracy:

    @pytest.mark.dependency()
    def test_toric_code_has_no_local_logicals(self, toric_2d):
        for l_star in (1, 2):
            report = topological_degeneracy_eps(toric_2d.paulis, l_star, lattice=toric_2d.lattice)
            assert report.eps == 0.0
            assert report.mode == 'stabilizer'
        print("✅ eps = 0 on the 4x4 torus for L* = 1, 2")

    @pytest.mark.dependency(depends=["TestDegeneracy::test_toric_code_has_no_local_logicals"])
    @pytest.mark.oracle
    def test_stabilizer_and_dense_agree(self, toric_2d_small):
        lat = toric_2d_small.lattice
        h = projector_hamiltonian(toric_2d_small.paulis, 8)
        values, vectors = np.linalg.eigh(h)
        ground = vectors[:, np.isclose(values, 0)]
        projector = ground @ ground.conj().T
        for l_star in (1, 2):
            stab = topological_degeneracy_eps(toric_2d_small.paulis, l_star, lattice=lat)
            dense = topological_degeneracy_eps(projector, l_star, lattice=lat)
            assert dense.mode == 'dense'
            assert dense.eps == pytest.approx(stab.eps, abs=1e-8)
        assert stab.eps == 1.0
        print("✅ On the 2x2 torus a length-2 loop inside one star gives eps = 1 in both modes")

    def test_dense_toy_projectors(self):
        supports = [frozenset([0]), frozenset([1])]
        product_state = np.zeros((4, 4), dtype=complex)
        product_state[0, 0] = 1
        assert topological_degeneracy_eps(product_state, 1, supports=supports).eps == 0.0
        pair = np.zeros((4, 4), dtype=complex)
        pair[0, 0] = pair[3, 3] = 1
        report = topological_degeneracy_eps(pair, 1, supports=supports)
        assert report.eps == pytest.approx(1.0)
        assert 'Z' in report.worst_operator

    def test_support_sets(self):
        lat = build(2, 4)
        assert len(support_sets(lat, 1)) == lat.n_qubits
        assert all(len(s) == 4 for s in support_sets(lat, 2))
        with pytest.raises(ValidationError):
            support_sets(lat, 0)
        with pytest.raises(ValidationError):
            topological_degeneracy_eps([Pauli.from_label('Z')], 1)
