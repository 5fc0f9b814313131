import itertools

import pytest

from slimlat import extract, grid, lattice
from slimlat.lattice import BorderedDiagram, FiniteLattice
from slimlat.perm import Permutation, rho_class

B2_LEFT_VIA_A = BorderedDiagram(
    FiniteLattice(4, [(0, 1), (0, 2), (1, 3), (2, 3)]), (0, 1, 3), (0, 2, 3))
CHAIN_D = BorderedDiagram(lattice.chain(3), (0, 1, 2, 3), (0, 1, 2, 3))
N5 = FiniteLattice(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])
M3 = FiniteLattice(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])


def all_perms(n):
    return (Permutation(images) for images in itertools.permutations(range(1, n + 1)))


class TestPi1:
    def test_chain_is_identity(self):
        assert extract.pi1_trajectories(CHAIN_D) == Permutation((1, 2, 3))

    def test_b2(self):
        assert extract.pi1_trajectories(B2_LEFT_VIA_A) == Permutation((2, 1))

    def test_round_trip_exhaustive(self):
        for pi in all_perms(4):
            assert extract.pi1_trajectories(grid.phi0(pi)) == pi

    def test_trajectory_structure(self):
        d = grid.phi0(Permutation((3, 1, 4, 2)))
        squares = lattice.covering_squares(d.lattice)
        for i in range(1, 5):
            walk = extract.trajectory(d, i).edges
            assert len(set(walk)) == len(walk)
            for e, f in zip(walk, walk[1:]):
                # consecutive edges must be opposite sides of one square
                assert any({(w, a), (b, t)} == {e, f} or {(w, b), (a, t)} == {e, f}
                           for w, a, b, t in squares)

    def test_requires_slim_semimodular(self):
        d = BorderedDiagram(N5, (0, 1, 2, 4), (0, 3, 4))
        with pytest.raises(extract.NotSlimSemimodular):
            extract.pi1_trajectories(d)


class TestPi2:
    def test_chain_is_identity(self):
        assert extract.pi2_meet_irreducibles(CHAIN_D) == Permutation((1, 2, 3))

    def test_b2(self):
        assert extract.pi2_meet_irreducibles(B2_LEFT_VIA_A) == Permutation((2, 1))

    def test_round_trip_exhaustive(self):
        for pi in all_perms(4):
            assert extract.pi2_meet_irreducibles(grid.phi0(pi)) == pi

    def test_right_to_left_is_inverse(self):
        for pi in all_perms(4):
            d = grid.phi0(pi)
            assert extract.pi2_meet_irreducibles(d.reflected()) == pi.inverse()


class TestPi3:
    def test_chain_is_identity(self):
        assert extract.pi3_source_cells(CHAIN_D) == Permutation((1, 2, 3))

    def test_b2(self):
        assert extract.pi3_source_cells(B2_LEFT_VIA_A) == Permutation((2, 1))

    def test_round_trip_exhaustive(self):
        for pi in all_perms(5):
            assert extract.pi3_source_cells(grid.phi0(pi)) == pi


class TestExtractPermutation:
    def test_agreement_everywhere_small(self):
        for n in range(0, 5):
            for pi in all_perms(n):
                d = grid.phi0(pi)
                assert extract.extract_permutation(d, verify=True) == pi

    def test_verify_false_path(self):
        d = grid.phi0(Permutation((3, 1, 2)))
        assert extract.extract_permutation(d, verify=False) == Permutation((3, 1, 2))

    def test_reflection_inverts(self):
        for pi in all_perms(4):
            d = grid.phi0(pi)
            assert extract.extract_permutation(d.reflected()) == pi.inverse()


class TestDiagramsOf:
    def test_chain_has_one_diagram(self):
        assert extract.diagram_count(lattice.chain(4)) == 1

    def test_b2_has_one_diagram(self):
        # the atom swap is an automorphism, so the reflection is identified
        assert extract.diagram_count(B2_LEFT_VIA_A.lattice) == 1

    def test_three_cycle_has_two(self):
        diagrams = extract.diagrams_of(grid.phi0(Permutation((2, 3, 1))).lattice)
        assert len(diagrams) == 2
        extracted = {extract.extract_permutation(d).images for d in diagrams}
        assert extracted == {(2, 3, 1), (3, 1, 2)}

    def test_counts_match_class_sizes(self):
        for n in range(1, 5):
            for pi in all_perms(n):
                lat = grid.phi0(pi).lattice
                assert extract.diagram_count(lat) == len(rho_class(pi))

    def test_extracted_set_is_the_class(self):
        for n in range(1, 5):
            for pi in all_perms(n):
                diagrams = extract.diagrams_of(grid.phi0(pi).lattice)
                got = frozenset(extract.extract_permutation(d) for d in diagrams)
                assert got == rho_class(pi)

    def test_rejects_non_slim(self):
        with pytest.raises(extract.NotSlimSemimodular):
            extract.diagrams_of(M3)

    def test_rejects_non_semimodular(self):
        with pytest.raises(extract.NotSlimSemimodular):
            extract.diagrams_of(N5)

    def test_singleton(self):
        one = lattice.from_covers(1, [])
        assert extract.diagram_count(one) == 1


class TestBoundarySimilarity:
    def test_self_similar(self):
        d = grid.phi0(Permutation((2, 3, 1)))
        assert extract.boundarily_similar(d, d)

    def test_reflection_of_asymmetric_not_similar(self):
        d = grid.phi0(Permutation((2, 3, 1)))
        assert not extract.boundarily_similar(d, d.reflected())

    def test_reflection_of_b2_similar(self):
        d = grid.phi0(Permutation((2, 1)))
        assert extract.boundarily_similar(d, d.reflected())

    def test_across_lattices(self):
        d1 = grid.phi0(Permutation((2, 1, 3)))
        d2 = grid.phi0(Permutation((2, 1, 3)))
        assert extract.boundarily_similar(d1, d2)
        assert not extract.boundarily_similar(d1, grid.phi0(Permutation((1, 2, 3))))

    def test_class_of_diagram(self):
        d = grid.phi0(Permutation((2, 3, 1)))
        assert extract.class_of_diagram(d) == rho_class(Permutation((2, 3, 1)))
