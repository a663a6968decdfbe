import random
from fractions import Fraction

import pytest

from polyfan import randgen, ratlat
from polyfan.cone import Cone
from polyfan.errors import InvalidCenter, NotInFan
from polyfan.fan import Fan, face_closure, validate
from polyfan.subdivide import (BasicSubdivisionData, basic_subdivision,
                               clip_line, h_boundaries, iterated,
                               star_subdivision, support_clip_line)
from polyfan.upward import is_h_simple


def C(*gens):
    return Cone.from_generators(len(gens[0]), gens)


def ray(*v):
    return Cone.ray(v)


class TestStarSubdivision:
    def test_orthant_split(self):
        fan = face_closure([C((1, 0), (0, 1))])
        sub = star_subdivision(fan, C((1, 0), (0, 1)))
        assert set(sub.maximal()) == {C((1, 0), (1, 1)), C((1, 1), (0, 1))}
        validate(sub.cones)
        assert sub.is_full_subdivision_of(fan)

    def test_dim_one_center_is_identity(self):
        fan = face_closure([C((1, 0), (0, 1))])
        assert star_subdivision(fan, ray(1, 0)) == fan

    def test_center_must_be_member(self):
        fan = face_closure([C((1, 0), (0, 1))])
        with pytest.raises(NotInFan):
            star_subdivision(fan, ray(1, 1))

    def test_ray_count_grows_by_one(self):
        fan = face_closure([C((1, 0, 0), (0, 1, 0), (0, 0, 1))])
        for center in fan.cones:
            if center.dim < 2:
                continue
            sub = star_subdivision(fan, center)
            assert len(sub.rays()) == len(fan.rays()) + 1
            assert sub.is_full_subdivision_of(fan)
            assert all(c.is_simplicial() for c in sub.cones)
            validate(sub.cones)


def example_11_6():
    """The six-cone fan E of Example 11.6 inside a 3-d simplicial cone."""
    b1, b2, b3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)
    s12 = ratlat.vadd(b1, b2)
    s13 = ratlat.vadd(b1, b3)
    s23 = ratlat.vadd(b2, b3)
    s123 = ratlat.vadd(s12, b3)
    tops = [
        C(b1, s12, s13),
        C(b2, s23, s12),
        C(b3, s13, s23),
        C(s123, s12, s13),
        C(s123, s23, s12),
        C(s123, s13, s23),
    ]
    return face_closure(tops), C(b1, b2, b3)


class TestExample11_6:
    def test_full_subdivision_of_face_fan(self):
        efan, scone = example_11_6()
        base = face_closure([scone])
        validate(efan.cones)
        assert efan.is_full_subdivision_of(base)

    def test_not_a_subdivision_of_any_single_star(self):
        efan, scone = example_11_6()
        base = face_closure([scone])
        for two_face in base.of_dim(2):
            starred = star_subdivision(base, two_face)
            assert not efan.is_subdivision_of(starred)
        assert not efan.is_subdivision_of(star_subdivision(base, scone))


class TestIterated:
    def test_empty_sequence(self):
        fan = face_closure([C((1, 0), (0, 1))])
        assert iterated(fan, []) == fan

    def test_center_dim_validated(self):
        fan = face_closure([C((1, 0), (0, 1))])
        with pytest.raises(InvalidCenter):
            iterated(fan, [ray(1, 0)])

    def test_example_12_3(self):
        b1, b2, b3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)
        base = face_closure([C(b1, b2, b3)])
        f1 = C(b1, b3)
        f2 = C(b2, b3)
        g1 = C(ratlat.vadd(b1, b3), b2)
        g2 = C(ratlat.vadd(b2, b3), b1)
        left = iterated(base, [f1, f2, g1])
        right = iterated(base, [f2, f1, g2])
        assert left == right

    def test_restriction_compatibility(self):
        # Lemma 12.2.9 in a 3-d instance: restricting the result to a
        # facet equals subdividing the facet along the inside centers
        b1, b2, b3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)
        base = face_closure([C(b1, b2, b3)])
        facet = C(b1, b3)
        centers = [C(b1, b3), C(b1, b2, b3)]
        whole = iterated(base, centers)
        efan = face_closure([facet])
        inside = [f for f in centers if facet.contains_cone(f)]
        expect = iterated(efan, inside)
        assert whole.restrict_to_cone(facet) == expect


class TestHBoundaries:
    def test_skew_cone(self):
        delta = C((1, 0), (2, 3))
        up, low = h_boundaries(delta, ray(0, 1))
        assert [u.rays for u in up] == [((2, 3),)]
        assert [l.rays for l in low] == [((1, 0),)]

    def test_h_inside_means_no_upper(self):
        delta = C((1, 0), (0, 1))
        up, _ = h_boundaries(delta, ray(0, 1))
        assert up == ()

    def test_full_plane(self):
        assert h_boundaries(Cone.full_space(2), ray(0, 1)) == ((), ())

    def test_clip_line(self):
        delta = C((1, 0), (2, 3))
        assert clip_line(delta, (1, 0), (0, 1)) == (0, Fraction(3, 2))
        assert clip_line(delta, (-1, 0), (0, 1)) is None
        assert clip_line(C((1, 0), (0, 1)), (1, 0), (0, 1)) == (0, None)

    def test_support_clip_merges(self):
        pieces = [C((1, 0), (1, 1)), C((1, 1), (1, 2))]
        merged = support_clip_line(pieces, (1, 0), (0, 1))
        assert merged == [(0, 2)]

    def test_bijection_onto_projection(self):
        # Lemma 15.2.3 via the line helper: every line through the
        # projection of the cone meets the upper boundary exactly once
        rng = random.Random(17)
        for _ in range(15):
            delta = randgen.random_cone(rng, 2, max_gens=3)
            if delta.dim < 2 or not delta.is_pointed:
                continue
            h = ray(0, 1)
            if not delta.span_contains((0, 1)):
                continue
            up, low = h_boundaries(delta, h)
            if not up:
                continue
            base = delta.interior_point()
            got = clip_line(delta, base, (0, 1))
            assert got is not None
            lo, hi = got
            assert hi is not None
            top = ratlat.vadd(base, ratlat.vscale(hi, (0, 1)))
            assert any(w.contains(ratlat.primitive(top)) for w in up)


WORKED_C = face_closure([C((1, 0), (0, 1))])
WORKED_H = Cone.ray((0, 1))


class TestBasicSubdivision:
    def test_worked_case(self):
        data = basic_subdivision(WORKED_H, WORKED_C, 2,
                                 [ray(1, 0), ray(1, 0)])
        assert set(data.fan.maximal()) == {
            C((1, 0), (1, 1)), C((1, 1), (1, 2)), C((1, 2), (0, 1))}
        assert [h.rays[0] for h in data.hseq] == [(1, 1), (1, 2), (0, 1)]
        assert [f.rays for f in data.fseq] == [
            ((0, 1), (1, 0)), ((0, 1), (1, 1))]
        assert data.s[(0, (1, 0))] == 0
        assert data.s[(1, (1, 0))] == 1
        assert data.s[(2, (1, 0))] == 2

    def test_m_zero(self):
        data = basic_subdivision(WORKED_H, WORKED_C, 0, [])
        assert data.fan == WORKED_C
        assert data.b(1) == WORKED_C  # (C/H)^fc = C here

    def test_restriction_lemma(self):
        # Lemma 14.7.1 in 3-d: restricting the basic subdivision to a
        # sub-decomposition equals the basic subdivision of the induced
        # sextuplet
        e1, e2, e3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)
        big = face_closure([C(e1, e2, e3), C((-1, 0, 0), e2, e3)])
        h = ray(0, 0, 1)
        emap = [ray(1, 0, 0), ray(0, 1, 0), ray(-1, 0, 0), ray(1, 0, 0)]
        data = basic_subdivision(h, big, 4, emap)
        sub = face_closure([C(e1, e2, e3)])
        sub_rays = set(sub.rays())
        kept = [i for i, e in enumerate(emap) if e in sub_rays]
        induced = [emap[i] for i in kept]
        small = basic_subdivision(h, sub, len(induced), induced)
        assert data.fan.restrict_to_support(sub.maximal()) == small.fan
        # the F/G/H sequences restrict along the same index map
        for new_i, old_i in enumerate(kept):
            assert small.fseq[new_i] == data.fseq[old_i]
            assert small.gseq[new_i] == data.gseq[old_i]
            assert small.hseq[new_i] == data.hseq[old_i]

    @pytest.mark.parametrize("seed", range(12))
    def test_contract_random(self, seed):
        rng = random.Random(4000 + seed)
        dim = rng.choice([2, 3])
        hray, fan, m, emap = randgen.random_hce_sextuplet(rng, dim)
        data = basic_subdivision(hray, fan, m, emap)
        validate(data.fan.cones)
        assert data.fan.is_full_subdivision_of(fan)
        # Lemma 14.4.3: restriction to every member of C/H is H-simple
        for delta in fan.star(hray):
            if delta.dim < 1:
                continue
            piece = data.fan.restrict_to_cone(delta)
            assert is_h_simple(piece, hray, support=delta)
        # Lemma 14.4.4: untouched away from H
        away = fan.away_from(hray)
        assert data.fan.restrict_to_support(away.maximal()) == away
        # Lemma 14.4.10/11: the B(i)/H(i) partition the rest of B
        seen = {}
        for c in away.cones:
            seen[c] = "away"
        for i in range(1, m + 2):
            for c in data.b(i).star(data.h(i)):
                assert c not in seen, (c, seen.get(c), i)
                seen[c] = i
        assert set(seen) == set(data.fan.cones)
        # Lemma 14.5.4/5: the open parts partition B as well
        seen_open = {}
        for i in range(1, m + 2):
            for c in data.b_open(i):
                assert c not in seen_open
                seen_open[c] = i
        assert set(seen_open) == set(data.fan.cones)
