"""
Test suite for Pauli operators and their stabilizer groups.
"""

from itertools import product

import numpy as np
import pytest

from src.errors import PauliError
from src.pauli import (IncrementalEchelon, Pauli, PauliGroup, commutes, conjugate_by_rotation,
                       gf2_rank, member, group_rank, rotation_generator)
from src.pauli import product as pauli_product
from src.pauli.dense import projector_hamiltonian


def labels(n):
    return [''.join(chars) for chars in product('IXYZ', repeat=n)]


class TestPauliAlgebra:
    """Products, commutation and rotations against dense matrices."""

    @pytest.mark.dependency()
    def test_products_match_matrices(self):
        """Every product of two-qubit Paulis agrees with the matrix product."""
        for a, b in product(labels(2), repeat=2):
            p, q = Pauli.from_label(a), Pauli.from_label(b)
            assert np.allclose((p * q).to_matrix(), p.to_matrix() @ q.to_matrix()), f"{a} * {b}"
        print("✅ 256 two-qubit products match dense matrices")

    @pytest.mark.oracle
    def test_random_products_match_matrices(self):
        """A thousand random products on up to six qubits, phases included."""
        rng = np.random.default_rng(31)
        phases = ['', '-', 'i', '-i']
        for _ in range(1000):
            n = int(rng.integers(1, 7))
            a, b = (phases[rng.integers(4)] + ''.join(rng.choice(list('IXYZ'), size=n))
                    for _ in range(2))
            p, q = Pauli.from_label(a), Pauli.from_label(b)
            assert np.allclose((p * q).to_matrix(), p.to_matrix() @ q.to_matrix()), f"{a} * {b}"
        print("✅ 1000 random products on n <= 6 match dense matrices")

    @pytest.mark.dependency(depends=["TestPauliAlgebra::test_products_match_matrices"])
    def test_documented_products(self):
        z, x = Pauli.from_label('Z'), Pauli.from_label('X')
        assert z * x == Pauli.from_label('iY')
        assert (x * x).is_identity() and (x * x).phase == 0
        assert Pauli.from_label('XZ') * Pauli.from_label('ZZ') == Pauli.from_label('-iYI')
        assert (Pauli.from_label('XZ') * Pauli.from_label('ZZ')).to_label() == '-iYI'
        print("✅ Z X = iY, X X = I, (XZ)(ZZ) = -i YI")

    def test_labels_and_hermiticity(self):
        for text in ('XYZI', '-YY', 'iXZ', '-iZ'):
            assert Pauli.from_label(text).to_label().lstrip('+') == text
        assert Pauli.from_label('Y').is_hermitian()
        assert not Pauli.from_label('iY').is_hermitian()
        assert np.allclose(Pauli.from_label('Y').to_matrix(), [[0, -1j], [1j, 0]])
        with pytest.raises(PauliError):
            Pauli.from_label('XQ')
        print("✅ Labels round-trip; Y is Hermitian, iY is not")

    def test_qubit_sets_must_match(self):
        with pytest.raises(PauliError):
            Pauli.from_label('XX') * Pauli.from_label('X')
        with pytest.raises(PauliError):
            commutes(Pauli.from_label('Z'), Pauli.from_label('ZZ'))

    def test_commutation_against_matrices(self):
        for a, b in product(labels(2), repeat=2):
            p, q = Pauli.from_label(a), Pauli.from_label(b)
            pq, qp = p.to_matrix() @ q.to_matrix(), q.to_matrix() @ p.to_matrix()
            assert commutes(p, q) == np.allclose(pq, qp)
        assert commutes(Pauli.from_label('XYZ'), Pauli.identity(3))
        print("✅ Symplectic commutation matches matrix commutators")

    def test_toric_terms_commute(self, toric_2d):
        stars = [t.pauli for t in toric_2d.terms if t.kind == 'star']
        plaquettes = [t.pauli for t in toric_2d.terms if t.kind == 'plaquette']
        assert all(commutes(a, b) for a in stars for b in plaquettes)
        lat = toric_2d.lattice
        bond = lat.vertex_edges(0)[0]
        z_bond = Pauli(lat.n_qubits, 0, 1 << bond)
        assert not commutes(z_bond, stars[0])
        print("✅ Stars commute with plaquettes; Z on a star bond does not")

    def test_rotation_conjugation(self, toric_2d):
        """``exp(i pi/4 P)`` maps the star to Z on the bond and leaves plaquettes alone."""
        lat = toric_2d.lattice
        n = lat.n_qubits
        star = toric_2d.terms[0].pauli
        bond = lat.vertex_edges(0)[0]
        p = rotation_generator(n, bond, star)
        assert p.is_hermitian()
        assert conjugate_by_rotation(p, star) == Pauli(n, 0, 1 << bond)
        for term in toric_2d.terms:
            if term.kind == 'plaquette':
                assert conjugate_by_rotation(p, term.pauli) == term.pauli
        z = Pauli.from_label('Z')
        assert conjugate_by_rotation(z, z) == z
        print("✅ Rotation conjugation follows the star-to-bond rule")

    def test_rotation_matches_dense_conjugation(self):
        for a, b in product(['XZ', 'YY', 'ZI', 'XX'], labels(2)):
            p, q = Pauli.from_label(a), Pauli.from_label(b)
            u = (np.eye(4) + 1j * p.to_matrix()) / np.sqrt(2)
            expected = u @ q.to_matrix() @ u.conj().T
            assert np.allclose(conjugate_by_rotation(p, q).to_matrix(), expected)


class TestWordStorage:
    """Bitsets are packed into fixed-width 64-bit words."""

    def test_packing_past_one_word(self):
        p = Pauli(70, 1 << 69, 0)
        assert p.x.dtype == np.uint64 and p.x.shape == (2,)
        assert int(p.x[1]) == 1 << 5
        assert not p.x.flags.writeable
        assert p.support == frozenset([69])
        packed = Pauli(70, np.array([0, 1 << 5], dtype=np.uint64), 0)
        assert packed == p
        assert hash(packed) == hash(p)
        assert len({p, packed, Pauli(70, 1 << 68, 0)}) == 2
        print("✅ Int and word-array constructors agree on 70 qubits")

    def test_bits_outside_the_register(self):
        with pytest.raises(PauliError):
            Pauli(70, 1 << 70, 0)
        with pytest.raises(PauliError):
            Pauli(70, np.array([0, 1 << 6], dtype=np.uint64), 0)
        with pytest.raises(PauliError):
            Pauli(70, np.zeros(3, dtype=np.uint64), 0)

    def test_algebra_across_words(self):
        n = 70
        x_far, z_far = Pauli(n, 1 << 69, 0), Pauli(n, 0, 1 << 69)
        assert not commutes(x_far, z_far)
        assert commutes(x_far, Pauli(n, 0, 1 << 3))
        xz = x_far * z_far
        assert xz.weight == 1 and not xz.is_hermitian()
        assert gf2_rank([x_far.symplectic, z_far.symplectic, xz.symplectic]) == 2
        a = Pauli(n, 1 | 1 << 69, 0)
        b = Pauli(n, 0, 1 | 1 << 69)
        g = PauliGroup([a, b])
        assert g.rank == 2
        assert g.member(a * b) == 1
        assert g.member(z_far) is None
        print("✅ Products, commutation and ranks work across word boundaries")


class TestPauliGroup:
    """Rank, membership and the incremental echelon."""

    @pytest.mark.dependency()
    def test_toric_rank(self, toric_2d_small, toric_3d):
        assert group_rank(PauliGroup(toric_2d_small.paulis)) == 6
        assert PauliGroup(toric_3d.paulis).rank == toric_3d.n_qubits - 3
        print("✅ Ranks: 6 for 2D L=2, n - 3 for 3D L=3")

    @pytest.mark.dependency(depends=["TestPauliGroup::test_toric_rank"])
    def test_membership(self, toric_2d_small):
        g = PauliGroup(toric_2d_small.paulis)
        a, b = toric_2d_small.paulis[0], toric_2d_small.paulis[5]
        assert member(g, a * b) == 1
        assert g.member(-(a * b)) == -1
        assert g.member(Pauli.single(8, 0, 'Z')) is None
        empty = PauliGroup([], n=4)
        assert empty.member(Pauli.from_label('XIII')) is None
        assert empty.member(Pauli.identity(4)) == 1
        print("✅ Products are +1 members, negated products -1, single Z not a member")

    def test_global_relations(self, toric_2d, toric_3d):
        """All stars multiply to I; so do the plaquettes bounding a closed surface."""
        for h in (toric_2d, toric_3d):
            stars = [t.pauli for t in h.terms if t.kind == 'star']
            assert pauli_product(stars).is_identity() and pauli_product(stars).phase == 0
            assert PauliGroup(stars[1:], n=h.n_qubits).member(stars[0]) == 1
        plaquettes = [t.pauli for t in toric_2d.terms if t.kind == 'plaquette']
        assert PauliGroup(plaquettes[1:], n=toric_2d.n_qubits).member(plaquettes[0]) == 1
        lat = toric_3d.lattice
        by_face = {t.cell[1]: t.pauli for t in toric_3d.terms if t.kind == 'plaquette'}
        for cube in list(lat.cells(3))[:5]:
            faces = [by_face[f] for f in lat.boundary(3, cube)]
            assert pauli_product(faces).is_identity() and pauli_product(faces).phase == 0
            assert PauliGroup(faces[1:], n=toric_3d.n_qubits).member(faces[0]) == 1
        print("✅ Stars and closed plaquette surfaces multiply to the identity")

    def test_inconsistent_group(self):
        echelon = IncrementalEchelon(1)
        z = Pauli.from_label('Z')
        echelon.add(0, z)
        assert echelon.ratio_if_added(-z) == 0.0
        assert echelon.ratio_if_added(z) == 1.0
        assert echelon.ratio_if_added(Pauli.from_label('X')) == 0.5
        assert echelon.ratio_if_removed(0) == 0.5
        with pytest.raises(PauliError):
            echelon.ratio_if_removed(1)
        echelon.add(1, -z)
        assert not echelon.consistent()
        assert echelon.ratio_if_removed(1) == 0.0
        echelon.remove(1)
        assert echelon.consistent() and echelon.rank == 1

    def test_incremental_matches_fresh_elimination(self, toric_2d):
        """Random insertions and removals keep rank, signs and removal ratios of a fresh build."""
        rng = np.random.default_rng(11)
        paulis = toric_2d.paulis
        echelon = IncrementalEchelon(toric_2d.n_qubits)
        present = set()
        queries = [paulis[0] * paulis[1], paulis[3] * paulis[20] * paulis[21], paulis[7]]
        for _ in range(300):
            k = int(rng.integers(len(paulis)))
            if k in present:
                ratio = echelon.ratio_if_removed(k)
                echelon.remove(k)
                present.discard(k)
                assert ratio == echelon.ratio_if_added(paulis[k])
            else:
                echelon.add(k, paulis[k])
                present.add(k)
            fresh = PauliGroup([paulis[j] for j in sorted(present)], n=toric_2d.n_qubits)
            assert echelon.rank == fresh.rank == gf2_rank(paulis[j].symplectic for j in present)
            for q in queries:
                assert echelon.member(q) == fresh.member(q)
        print("✅ 300 random updates agree with fresh elimination")

    def test_membership_needs_hermitian(self):
        with pytest.raises(PauliError):
            PauliGroup([Pauli.from_label('Z')]).member(Pauli.from_label('iZ'))


class TestDenseOracle:

    def test_projector_hamiltonian_spectrum(self, toric_2d_small):
        h = projector_hamiltonian(toric_2d_small.paulis, toric_2d_small.n_qubits)
        energies = np.linalg.eigvalsh(h)
        assert np.allclose(energies, np.round(energies))
        assert int(np.sum(np.isclose(energies, 0))) == 4
        print("✅ Dense toric Hamiltonian has integer spectrum and a 4-fold ground space")
