import random

import pytest

from polyfan import randgen, ratlat
from polyfan.cone import Cone
from polyfan.errors import BadIntersection, EmptyFan, NotFaceClosed
from polyfan.fan import Fan, face_closure, real_intersection, validate


def C(*gens):
    return Cone.from_generators(len(gens[0]), gens)


ORTHANT = C((1, 0), (0, 1))


class TestValidate:
    def test_face_lattice_is_valid(self):
        fan = validate(ORTHANT.face_lattice())
        assert len(fan) == 4

    def test_missing_faces(self):
        with pytest.raises(NotFaceClosed):
            validate([ORTHANT])

    def test_bad_intersection(self):
        left = C((1, 0), (1, 1)).face_lattice()
        right = C((1, 0), (0, 1)).face_lattice()
        with pytest.raises(BadIntersection):
            validate(set(left) | set(right))

    def test_empty(self):
        with pytest.raises(EmptyFan):
            validate([])


class TestFaceClosure:
    def test_single_cone(self):
        assert len(face_closure([ORTHANT])) == 4

    def test_two_cones_share_a_ray(self):
        # two 2-cones, three rays (the shared one once) and {0}
        fan = face_closure([C((1, 0), (1, 1)), C((1, 1), (0, 1))])
        assert len(fan) == 6
        assert len(fan.maximal()) == 2
        assert len(fan.rays()) == 3

    def test_idempotent(self):
        fan = face_closure([ORTHANT])
        assert face_closure(fan.cones) == fan


class TestSubdivision:
    def test_star_is_full_subdivision(self):
        from polyfan.subdivide import star_subdivision
        fan = face_closure([ORTHANT])
        sub = star_subdivision(fan, ORTHANT)
        assert sub.is_subdivision_of(fan)
        assert sub.is_full_subdivision_of(fan)

    def test_reflexive(self):
        fan = face_closure([ORTHANT])
        assert fan.is_subdivision_of(fan)

    def test_antisymmetric_with_equal_support(self):
        a = face_closure([C((1, 0), (1, 1)), C((1, 1), (0, 1))])
        b = face_closure([ORTHANT])
        assert a.is_subdivision_of(b)
        assert not b.is_subdivision_of(a)

    def test_transitive(self):
        a = face_closure([ORTHANT])
        b = face_closure([C((1, 0), (1, 1)), C((1, 1), (0, 1))])
        c = face_closure([C((1, 0), (2, 1)), C((2, 1), (1, 1)),
                          C((1, 1), (0, 1))])
        assert c.is_subdivision_of(b) and b.is_subdivision_of(a)
        assert c.is_subdivision_of(a)


class TestRealIntersection:
    def test_empty_list_gives_whole_space(self):
        fan = real_intersection([], ambient_dim=2)
        assert fan.maximal() == (Cone.full_space(2),)

    def test_self_intersection(self):
        fan = face_closure([C((1, 0), (1, 1)), C((1, 1), (0, 1))])
        assert real_intersection([fan, fan]) == fan

    def test_two_walls(self):
        split1 = face_closure([C((1, 0), (1, 1)), C((1, 1), (0, 1))])
        split2 = face_closure([C((1, 0), (2, 3)), C((2, 3), (0, 1))])
        meet = real_intersection([split1, split2])
        assert len(meet.maximal()) == 3
        walls = {r.rays[0] for r in meet.rays()}
        assert walls == {(1, 0), (1, 1), (2, 3), (0, 1)}

    def test_subdivides_every_argument(self):
        rng = random.Random(11)
        for _ in range(10):
            a = face_closure([randgen.random_cone(rng, 2, max_gens=3)])
            b = face_closure([randgen.random_cone(rng, 2, max_gens=3)])
            meet = real_intersection([a, b])
            assert meet.is_subdivision_of(a)
            assert meet.is_subdivision_of(b)
            # any common subdivision refines the real intersection
            common = real_intersection([meet, a])
            assert common.is_subdivision_of(meet)


class TestOperators:
    FAN = face_closure([ORTHANT])

    def test_locate_interior(self):
        assert self.FAN.locate((1, 1)) == ORTHANT

    def test_locate_outside(self):
        assert self.FAN.locate((-1, 0)) is None

    def test_locate_face(self):
        assert self.FAN.locate((2, 0)) == C((1, 0))

    def test_star(self):
        star = self.FAN.star(C((1, 0)))
        assert set(star) == {C((1, 0)), ORTHANT}

    def test_restrict(self):
        sub = self.FAN.restrict_to_cone(C((1, 0)))
        assert set(sub.cones) == {Cone.zero(2), C((1, 0))}

    def test_max_properties(self):
        fan = face_closure([C((1, 0), (1, 1)), C((1, 1), (0, 1))])
        assert len(fan.maximal()) == 2
        assert face_closure(fan.maximal()) == fan

    @pytest.mark.parametrize("seed", range(10))
    def test_locate_partitions_support(self, seed):
        rng = random.Random(500 + seed)
        dim = rng.choice([2, 3])
        base = randgen.random_cone(rng, dim, max_gens=4)
        if base.dim < 2:
            return
        fan = face_closure([base])
        for _ in range(6):
            point = ratlat.zero(dim)
            for g in base.generators():
                point = ratlat.vadd(point,
                                    ratlat.vscale(rng.randint(0, 2), g))
            located = fan.locate(point)
            assert located is not None
            hits = [c for c in fan.cones if c.interior_contains(point)]
            assert hits == [located]
