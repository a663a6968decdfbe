import random

import pytest

from helpers import brute_member, check_dual_against_oracle
from polyfan import randgen, ratlat
from polyfan.cone import Cone
from polyfan.errors import NotInDual, NotSimplicial


def C(*gens):
    return Cone.from_generators(len(gens[0]), gens)


ORTHANT2 = C((1, 0), (0, 1))


class TestDual:
    def test_orthant_self_dual(self):
        assert ORTHANT2.dual() == ORTHANT2

    def test_skew_cone(self):
        # frozen from the active-set oracle
        skew = C((1, 0), (1, 2))
        assert skew.dual() == C((0, 1), (2, -1))
        check_dual_against_oracle(skew)
        assert skew.dual().dual() == skew

    def test_line_dual_is_orthogonal_line(self):
        line = C((1, 0), (-1, 0))
        dual = line.dual()
        assert dual.dim == 1 and dual.lineality_dim == 1
        assert dual.span_contains((0, 1))
        assert dual.contains((0, -5))

    @pytest.mark.parametrize("seed", range(40))
    def test_against_active_set_oracle(self, seed):
        rng = random.Random(seed)
        cone = randgen.random_cone(rng, rng.choice([2, 3, 4]))
        check_dual_against_oracle(cone)

    @pytest.mark.parametrize("seed", range(30))
    def test_dual_laws(self, seed):
        rng = random.Random(1000 + seed)
        dim = rng.choice([2, 3, 4])
        a = randgen.random_cone(rng, dim)
        b = randgen.random_cone(rng, dim)
        assert a.dual().dual() == a
        assert a.sum(b).dual() == a.dual().intersection(b.dual())
        assert a.intersection(b).dual() == a.dual().sum(b.dual())


class TestFaces:
    def test_face_of_zero_functional(self):
        assert ORTHANT2.face_of((0, 0)) == ORTHANT2

    def test_face_of_unit(self):
        assert ORTHANT2.face_of((1, 0)) == C((0, 1))

    def test_face_of_interior(self):
        assert ORTHANT2.face_of((1, 1)) == Cone.zero(2)

    def test_face_of_outside_raises(self):
        with pytest.raises(NotInDual):
            ORTHANT2.face_of((-1, 0))

    def test_orthant_lattice(self):
        assert len(ORTHANT2.face_lattice()) == 4

    def test_simplicial_3d_has_eight_faces(self):
        c = C((1, 0, 0), (0, 1, 0), (0, 0, 1))
        assert len(c.face_lattice()) == 8

    def test_half_plane_two_faces(self):
        hp = C((1, 0), (-1, 0), (0, 1))
        faces = hp.face_lattice()
        assert len(faces) == 2
        line = C((1, 0), (-1, 0))
        assert line in faces
        # the lineality is contained in every face
        for f in faces:
            assert f.contains((1, 0)) and f.contains((-1, 0))

    @pytest.mark.parametrize("seed", range(15))
    def test_simplicial_face_count(self, seed):
        rng = random.Random(40 + seed)
        dim = rng.choice([2, 3])
        rays = []
        m = randgen.random_unimodular(rng, dim)
        for i in range(rng.randint(1, dim)):
            rays.append(m[i])
        cone = Cone.from_generators(dim, rays)
        if not cone.is_simplicial():
            return
        assert len(cone.face_lattice()) == 2 ** cone.dim
        assert all(f.is_simplicial() for f in cone.face_lattice())

    @pytest.mark.parametrize("seed", range(12))
    def test_interior_partition(self, seed):
        # relative interiors of the faces partition the cone
        rng = random.Random(70 + seed)
        cone = randgen.random_cone(rng, rng.choice([2, 3]))
        for _ in range(8):
            point = ratlat.zero(cone.ambient_dim)
            for g in cone.generators():
                point = ratlat.vadd(point,
                                    ratlat.vscale(rng.randint(0, 3), g))
            hits = [f for f in cone.face_lattice()
                    if f.interior_contains(point)]
            assert len(hits) == 1
            assert hits[0] == cone.smallest_face_containing(point)


class TestSimplicial:
    def test_determinant_one(self):
        assert C((1, 0), (1, 1)).is_simplicial()

    def test_index_two_sublattice(self):
        # Smith divisors (1, 2)
        assert not C((1, 0), (1, 2)).is_simplicial()

    def test_line_not_simplicial(self):
        assert not C((1, 0), (-1, 0)).is_simplicial()

    def test_barycenters(self):
        assert C((2, 4)).barycenter() == (1, 2)
        assert ORTHANT2.barycenter() == (1, 1)
        assert C((1, 0, 0), (0, 1, 0), (0, 0, 1)).barycenter() == (1, 1, 1)

    def test_barycenter_needs_simplicial(self):
        with pytest.raises(NotSimplicial):
            C((1, 0), (1, 2)).barycenter()

    def test_barycenter_interior_lattice(self):
        rng = random.Random(9)
        for _ in range(10):
            m = randgen.random_unimodular(rng, 3)
            cone = Cone.from_generators(3, m[:rng.randint(1, 3)])
            if not cone.is_simplicial() or cone.dim == 0:
                continue
            b = cone.barycenter()
            assert cone.interior_contains(b)
            assert all(isinstance(a, int) for a in b)


class TestOppositeFace:
    CONE3 = C((1, 0, 0), (0, 1, 0), (0, 0, 1))

    def test_edge_complement(self):
        f = C((1, 0, 0))
        assert self.CONE3.opposite_face(f) == C((0, 1, 0), (0, 0, 1))

    def test_zero_face(self):
        assert self.CONE3.opposite_face(Cone.zero(3)) == self.CONE3

    def test_whole_cone(self):
        assert self.CONE3.opposite_face(self.CONE3) == Cone.zero(3)

    def test_laws(self):
        for f in self.CONE3.face_lattice():
            op = self.CONE3.opposite_face(f)
            assert f.intersection(op) == Cone.zero(3)
            assert f.sum(op) == self.CONE3
            assert self.CONE3.opposite_face(op) == f


class TestCombinators:
    def test_intersection_example(self):
        other = C((1, 1), (-1, 1))
        assert ORTHANT2.intersection(other) == C((1, 1), (0, 1))

    def test_interior_membership(self):
        assert C((1, 0), (1, 2)).interior_contains((1, 1))

    def test_zero_cone_contains_origin(self):
        assert Cone.zero(2).contains((0, 0))

    def test_membership_matches_caratheodory(self):
        rng = random.Random(31)
        for _ in range(25):
            dim = rng.choice([2, 3])
            cone = randgen.random_cone(rng, dim)
            v = randgen.random_vector(rng, dim, 5)
            assert cone.contains(v) == brute_member(dim, cone.generators(), v)
