"""H-simpleness, heights and strata, characteristic functions,
compatible mappings, the recursive upward subdivision, and machine
verification of the height inequality and the hard height inequality."""

import functools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import ratlat
from .cone import Cone
from .errors import (BadSupport, HeightNotDecreased, HeightZero,
                     InconsistentGamma, InvalidContext, NotAHeight,
                     NotHSimple)
from .fan import Fan, face_closure, real_intersection
from .ratlat import dot, vneg
from .subdivide import (basic_subdivision, check_basic_prerequisites,
                        clip_line, h_boundaries, star_subdivision,
                        support_clip_line)

# debug hook: set to a nonzero Fraction to corrupt the first computed
# characteristic value (negative-control path for cmd_verify)
_DEBUG_GAMMA_OFFSET = Fraction(0)


# ---------------------------------------------------------------------------
# simpleness predicates


def _pure_dim(fan):
    d = fan.dim
    if any(c.dim != d for c in fan.maximal()):
        raise BadSupport("decomposition is not pure dimensional")
    return d


def boundary_walls(fan):
    """Walls of the support: dimension d-1 members lying in exactly one
    maximal cone."""
    d = _pure_dim(fan)
    walls = []
    for w in fan.of_dim(d - 1):
        count = sum(1 for c in fan.maximal() if c.contains_cone(w))
        if count == 1:
            walls.append(w)
    return tuple(walls)


def is_interior_cone(fan, cone, walls=None):
    """Whether the relative interior of the cone lies in the interior
    of |fan| (equivalently it is in no boundary wall)."""
    if walls is None:
        walls = boundary_walls(fan)
    return not any(w.contains_cone(cone) for w in walls)


def is_semisimple(fan):
    """Every interior cone has dimension at least dim - 1."""
    d = _pure_dim(fan)
    walls = boundary_walls(fan)
    return all(c.dim >= d - 1 for c in fan.cones
               if is_interior_cone(fan, c, walls))


def _support_cone(fan, support):
    if support is None:
        gens = [g for c in fan.maximal() for g in c.generators()]
        support = Cone.from_generators(fan.ambient_dim, gens)
    if not support.is_simplicial():
        raise BadSupport("the support must be a simplicial cone")
    return support


def is_h_weierstrass(fan, hray, support=None):
    """D restricted to H^op||D| must be exactly its face lattice."""
    support = _support_cone(fan, support)
    if hray not in support.edges():
        raise BadSupport("H must be an edge of the support")
    kop = support.opposite_face(hray)
    below = {c for c in fan.cones if kop.contains_cone(c)}
    return below == set(kop.face_lattice())


def is_h_simple(fan, hray, support=None):
    return is_semisimple(fan) and is_h_weierstrass(fan, hray, support)


def _h_order_sort(cones, hray):
    """Sort by the H-order: earlier means cone + H contains the rest."""
    n = hray.ambient_dim
    sums = {c: Cone.from_generators(n, c.generators() + hray.generators())
            for c in cones}

    def cmp(a, b):
        if a == b:
            return 0
        if sums[a].contains_cone(sums[b]):
            return -1
        if sums[b].contains_cone(sums[a]):
            return 1
        raise NotHSimple("H-order is not total on this decomposition")

    return tuple(sorted(cones, key=functools.cmp_to_key(cmp)))


def h_skeleton(fan, hray, support=None):
    """(H-ordered maximal cones, H-ordered skeleton walls).

    The skeleton is the interior walls together with H^op of the
    support, both listed in the H-order.
    """
    support = _support_cone(fan, support)
    d = _pure_dim(fan)
    walls = boundary_walls(fan)
    kop = support.opposite_face(hray)
    skel = {c for c in fan.of_dim(d - 1) if is_interior_cone(fan, c, walls)}
    skel.add(kop)
    top = _h_order_sort(fan.maximal(), hray)
    bar = _h_order_sort(skel, hray)
    if len(top) != len(bar):
        raise NotHSimple(f"skeleton size {len(bar)} != {len(top)} maximal cones")
    return top, bar


def structure_constants(fan, hray, support=None):
    """H-ordered listings and the structure constants c(D, i, E).

    c(D, i, E) is the unique value with b_E + c*b_H in vect(wall_i);
    the map is keyed by (i, generator of E).
    """
    support = _support_cone(fan, support)
    if not is_h_simple(fan, hray, support):
        raise NotHSimple("structure constants need an H-simple decomposition")
    top, bar = h_skeleton(fan, hray, support)
    bh = hray.rays[0]
    cmap = {}
    for i, wall in enumerate(bar, start=1):
        span = list(wall.rays) + list(wall.lin)
        for e in support.edges():
            if e == hray:
                continue
            be = e.rays[0]
            rows = [tuple(g[k] for g in span) + (-bh[k],)
                    for k in range(len(be))]
            sol = ratlat.solve_rational(rows, be)
            if sol is None:
                raise NotHSimple(f"no structure constant for wall {wall}")
            cmap[(i, be)] = sol[-1]
    for e in support.edges():
        if e != hray:
            assert cmap[(1, e.rays[0])] == 0
    return top, bar, cmap


# ---------------------------------------------------------------------------
# triple contexts and heights


class TripleContext:
    """(H, C, S) with H a dual ray, C a fan in the dual space and S a
    rational pseudo polyhedron; membership in HC(V, N, S) is checked by
    validate()."""

    def __init__(self, hray, cfan, poly):
        self.hray = hray
        self.cfan = cfan
        self.poly = poly
        self.ambient_dim = poly.ambient_dim
        self._meet_cache = {}
        self._heights = None

    def face_fan(self):
        return self.poly.face_cone_decomposition()

    def meet_with(self, cone):
        """D(S|V) wedge F(cone), cached per cone."""
        got = self._meet_cache.get(cone)
        if got is None:
            got = real_intersection([self.face_fan(),
                                     face_closure([cone])])
            self._meet_cache[cone] = got
        return got

    def validate(self):
        check_basic_prerequisites(self.hray, self.cfan)
        dsv = self.face_fan()
        stab_dual = self.poly.stab.dual()
        for c in self.cfan.maximal():
            if not stab_dual.contains_cone(c):
                raise InvalidContext("|C| must lie inside |D(S|V)|")
        for c in self.cfan.maximal():
            if not is_h_simple(self.meet_with(c), self.hray, support=c):
                raise InvalidContext(
                    f"D(S|V) ^ F({c}) is not H-simple")
        return self


@dataclass
class HeightData:
    values: tuple          # sorted H-height set of the pair (C, S)
    hmin: Fraction
    hmax: Fraction
    height: Fraction
    den: int
    minimal_faces: tuple   # qualifying minimal faces of S
    value_of: dict         # face -> <b_H, representative>


def heights(hray, cfan, poly):
    """Heights of the pair (C, S) along H, via minimal-face reps."""
    check_basic_prerequisites(hray, cfan)
    stab_dual = poly.stab.dual()
    for c in cfan.maximal():
        if not stab_dual.contains_cone(c):
            raise InvalidContext("|C| must lie inside |D(S|V)|")
    bh = hray.rays[0]
    qualifying = []
    value_of = {}
    for face in poly.minimal_faces():
        lam = face.cone
        hit = any(lam.intersection(c).dim == c.dim for c in cfan.maximal())
        val = dot(bh, face.representative())
        value_of[face] = val
        if hit:
            qualifying.append(face)
    assert qualifying, "the minimal-face set of (C, S) is never empty"
    vals = sorted({value_of[f] for f in qualifying})
    den = poly.denominator()
    assert all((v * den).denominator == 1 for v in vals), \
        "heights must be quantized by den(S/N)"
    global_min = min(value_of[f] for f in poly.minimal_faces())
    assert vals[0] == global_min, "min of the pair must equal min over S"
    return HeightData(values=tuple(vals), hmin=vals[0], hmax=vals[-1],
                      height=vals[-1] - vals[0], den=den,
                      minimal_faces=tuple(qualifying), value_of=value_of)


def strata(ctx, h, hdata=None):
    """(E(h), D(h), upper boundary facets, lower boundary facets)."""
    if hdata is None:
        hdata = heights(ctx.hray, ctx.cfan, ctx.poly)
    if h not in hdata.values:
        raise NotAHeight(f"{h} is not in the height set {hdata.values}")
    e_cones, d_cones = [], []
    for face in hdata.minimal_faces:
        lam = face.cone
        val = hdata.value_of[face]
        if val < h:
            continue
        for c in ctx.cfan.maximal():
            meet = lam.intersection(c)
            if meet.dim == c.dim:
                d_cones.append(meet)
                if val == h:
                    e_cones.append(meet)
    dfan = face_closure(d_cones)
    efan = face_closure(e_cones) if e_cones else None
    upper = _support_upper_boundary(dfan.maximal(), ctx.hray)
    lower = _support_upper_boundary(dfan.maximal(), ctx.hray, sign=-1)
    return efan, dfan, upper, lower


def _points_along(piece, p, d):
    """Whether p + eps*d stays in the piece for small eps > 0."""
    if not piece.contains(p) or not piece.span_contains(d):
        return False
    return all(dot(u, d) >= 0 for u in piece.dual_rays if dot(u, p) == 0)


def _support_upper_boundary(pieces, hray, sign=1):
    """Facets forming the H-upper (or lower) boundary of a cone union."""
    bh = hray.rays[0] if sign == 1 else vneg(hray.rays[0])
    out = []
    for piece in pieces:
        upper, lower = h_boundaries(piece, hray)
        for w in (upper if sign == 1 else lower):
            p = w.interior_point()
            if not any(_points_along(other, p, bh) for other in pieces):
                if w not in out:
                    out.append(w)
    return tuple(sorted(out, key=Cone.sort_key))


# ---------------------------------------------------------------------------
# characteristic function and compatible mappings


@dataclass
class CharacteristicFunction:
    hray: Cone
    gamma: dict            # ray generator -> Fraction >= 0
    h_of: dict             # fractional ray generator -> height value
    m: int
    mbar: int
    fractional: tuple      # generators with non-integral gamma

    def rays(self):
        return tuple(sorted(self.gamma))


def _floor(q):
    return q.numerator // q.denominator


def _ceil(q):
    return -((-q.numerator) // q.denominator)


def characteristic_function(ctx, hdata=None):
    """gamma per ray of (C - C/H), with the structure-constant cross
    check and the stratum heights h(E) of the fractional rays."""
    if hdata is None:
        hdata = heights(ctx.hray, ctx.cfan, ctx.poly)
    if hdata.height == 0:
        raise HeightZero("characteristic function needs positive height")
    bh = ctx.hray.rays[0]
    away_rays = [r for r in ctx.cfan.rays() if r != ctx.hray]
    _, dmax_fan, _, _ = strata(ctx, hdata.hmax, hdata)
    dmax = dmax_fan.maximal()
    gamma = {}
    first = True
    for ray in sorted(away_rays, key=Cone.sort_key):
        be = ray.rays[0]
        intervals = support_clip_line(dmax, be, bh)
        if not intervals:
            gamma[be] = Fraction(0)
            continue
        if len(intervals) != 1:
            raise InconsistentGamma(
                f"line over {be} meets |D(max)| in {len(intervals)} pieces")
        lo, hi = intervals[0]
        if hi is None:
            raise InconsistentGamma(f"line over {be} never leaves |D(max)|")
        val = Fraction(hi)
        if first and _DEBUG_GAMMA_OFFSET:
            val += _DEBUG_GAMMA_OFFSET
        first = False
        if val < 0:
            raise InconsistentGamma(f"negative gamma {val} at {be}")
        gamma[be] = val

    # cross-check against the structure constants on every max cone
    for c in ctx.cfan.maximal():
        kop = c.opposite_face(ctx.hray)
        edge_gens = [e.rays[0] for e in kop.edges()]
        if not any(gamma[g] > 0 for g in edge_gens if g in gamma):
            continue
        meet = ctx.meet_with(c)
        top, bar, cmap = structure_constants(meet, ctx.hray, support=c)
        if len(top) < 2:
            raise InconsistentGamma(
                "a max cone sharing a positive ray has c(S+dual) < 2")
        for g in edge_gens:
            if g in gamma and gamma[g] != cmap[(2, g)]:
                raise InconsistentGamma(
                    f"gamma({g}) = {gamma[g]} but structure constant "
                    f"c(2, {g}) = {cmap[(2, g)]} on {c}")

    fractional = tuple(sorted(g for g, v in gamma.items()
                              if v.denominator != 1))
    h_of = {}
    dh_cache = {}
    for g in fractional:
        point_t = Fraction(_ceil(gamma[g]))
        good = []
        for h in hdata.values:
            if h not in dh_cache:
                _, dfan, _, _ = strata(ctx, h, hdata)
                dh_cache[h] = dfan.maximal()
            intervals = support_clip_line(dh_cache[h], g, bh)
            in_support = any(
                (lo is None or lo <= point_t) and (hi is None or point_t <= hi)
                for lo, hi in intervals)
            has_above = any(hi is None or hi > point_t
                            for lo, hi in intervals)
            if in_support and has_above:
                good.append(h)
        assert good and good == [h for h in hdata.values if h <= good[-1]], \
            "the qualifying stratum set must be downward closed"
        assert good[-1] != hdata.hmax
        h_of[g] = good[-1]

    m = sum(_ceil(v) for v in gamma.values())
    mbar = sum(_floor(v) for v in gamma.values())
    assert m - mbar == len(fractional)
    assert any(v > 0 for v in gamma.values())
    return CharacteristicFunction(hray=ctx.hray, gamma=gamma, h_of=h_of,
                                  m=m, mbar=mbar, fractional=fractional)


def compatible_mapping(cf):
    """The canonical compatible mapping E : {1..m} -> rays.

    First mbar slots: each ray floor(gamma) times in lex order; tail
    slots run over the fractional rays by non-increasing h(E), ties in
    lex order.
    """
    head = []
    for g in sorted(cf.gamma):
        head.extend([g] * _floor(cf.gamma[g]))
    tail = sorted(cf.fractional, key=lambda g: (-cf.h_of[g], g))
    order = head + tail
    assert len(order) == cf.m
    return tuple(Cone.ray(g) for g in order)


# ---------------------------------------------------------------------------
# upward subdivision


@dataclass
class LevelTrace:
    height: Fraction
    hray: Cone
    gamma: dict | None = None
    h_of: dict | None = None
    m: int = 0
    mbar: int = 0
    emap: tuple = ()
    hseq: tuple = ()
    sub: tuple = ()        # (index, LevelTrace) pairs


@dataclass
class USDResult:
    M: int
    centers: tuple         # the upward center sequence, cones of dim 2
    fan: Fan               # the final fan C~
    enumeration: dict      # ray -> index in 1..M+1   (I)
    lower: dict            # ray -> Fan               (A)
    lower_main: dict       # ray -> tuple of cones    (A°)
    trace: LevelTrace = None

    def open_rays(self):
        return tuple(sorted(self.enumeration, key=Cone.sort_key))


def _restrict(fan, pieces):
    return fan.restrict_to_support(pieces)


def upward_subdivide(ctx, _validated=False):
    """The recursive upward subdivision of (H, C, S).

    Deterministic: always recurses along the canonical compatible
    mapping.  Every level strictly decreases the height; violations of
    the supporting theorems raise rather than mis-build.
    """
    if not _validated:
        ctx.validate()
    hdata = heights(ctx.hray, ctx.cfan, ctx.poly)
    if hdata.height == 0:
        assert ctx.cfan.is_subdivision_of(ctx.face_fan())
        trace = LevelTrace(height=hdata.height, hray=ctx.hray)
        return USDResult(
            M=0, centers=(), fan=ctx.cfan,
            enumeration={ctx.hray: 1}, lower={ctx.hray: ctx.cfan},
            lower_main={ctx.hray: ctx.cfan.cones}, trace=trace)

    cf = characteristic_function(ctx, hdata)
    emap = compatible_mapping(cf)
    basic = basic_subdivision(ctx.hray, ctx.cfan, cf.m, emap)
    centers = list(basic.fseq)
    accumulated = basic.fan
    m, mbar = cf.m, cf.mbar
    mcount = {i: m for i in range(0, mbar + 1)}
    sublevels = {}
    for i in range(1, m + 2):
        piece = basic.b(i)
        sub_h = basic.h(i)
        if i <= mbar:
            restricted = _restrict(accumulated, piece.maximal())
            assert restricted == piece, \
                "prefix pieces must be untouched by later centers"
            subctx = TripleContext(sub_h, piece, ctx.poly)
            sub_hd = heights(sub_h, piece, ctx.poly)
            if sub_hd.height != 0:
                raise HeightNotDecreased(
                    f"prefix piece {i} has height {sub_hd.height} != 0")
            sub = upward_subdivide(subctx.validate(), _validated=True)
        else:
            restricted = _restrict(accumulated, piece.maximal())
            subctx = TripleContext(sub_h, restricted, ctx.poly)
            subctx.validate()
            sub_hd = heights(sub_h, restricted, ctx.poly)
            if not sub_hd.height < hdata.height:
                raise HeightNotDecreased(
                    f"piece {i}: {sub_hd.height} !< {hdata.height}")
            sub = upward_subdivide(subctx, _validated=True)
            for f in sub.centers:
                accumulated = star_subdivision(accumulated, f)
                centers.append(f)
        mcount[i] = len(centers)
        sublevels[i] = sub

    final = accumulated
    target = real_intersection([ctx.face_fan(), ctx.cfan])
    assert final.is_subdivision_of(target), \
        "the upward subdivision must refine D(S|V) ^ C"

    # H-ordered enumeration and lower parts
    away = ctx.cfan.away_from(ctx.hray)
    away_max = away.maximal()
    open_rays = [r for r in final.rays()
                 if not any(c.contains_cone(r) for c in away_max)]
    bigm = len(centers)
    lvals = {i: i + mcount[i] - m for i in range(0, m + 2)}
    enumeration, lower, lower_main = {}, {}, {}
    for ray in open_rays:
        hits = []
        for i in range(1, m + 2):
            piece = basic.b(i)
            inside = any(c.contains_cone(ray) for c in piece.maximal())
            if not inside:
                continue
            below = [c for c in piece.cones
                     if not c.contains_cone(basic.h(i))]
            in_below = any(c.contains_cone(ray) for c in below)
            if not in_below:
                hits.append(i)
        assert len(hits) == 1, f"ray {ray} fits {len(hits)} pieces"
        i = hits[0]
        sub = sublevels[i]
        enumeration[ray] = lvals[i - 1] + sub.enumeration[ray]
        lower[ray] = sub.lower[ray]
        if i <= m:
            g = basic.gseq[i - 1]
            kept = []
            for theta in sub.lower_main[ray]:
                host = basic.b(i).locate(theta.interior_point())
                if host is not None and host.contains_cone(g):
                    kept.append(theta)
            lower_main[ray] = tuple(sorted(kept, key=Cone.sort_key))
        else:
            lower_main[ray] = sub.lower_main[ray]

    assert sorted(enumeration.values()) == list(range(1, bigm + 2))
    assert enumeration[ctx.hray] == bigm + 1
    trace = LevelTrace(
        height=hdata.height, hray=ctx.hray, gamma=dict(cf.gamma),
        h_of=dict(cf.h_of), m=m, mbar=mbar, emap=emap, hseq=basic.hseq,
        sub=tuple((i, sublevels[i].trace) for i in range(1, m + 2)))
    return USDResult(M=bigm, centers=tuple(centers), fan=final,
                     enumeration=enumeration, lower=lower,
                     lower_main=lower_main, trace=trace)


# ---------------------------------------------------------------------------
# verification


def verify_height_inequality(ctx, basic=None, report=None):
    """Check the per-piece strict height drop of the basic subdivision.

    Every B(i) must satisfy height(H(i), B(i), S) < height(H, C, S);
    the first mbar pieces must have height zero and the pieces of
    B(mbar+1) must give H(mbar+1)-simple intersections.
    """
    hdata = heights(ctx.hray, ctx.cfan, ctx.poly)
    if hdata.height == 0:
        raise HeightZero("the inequality concerns positive heights")
    cf = characteristic_function(ctx, hdata)
    if basic is None:
        basic = basic_subdivision(ctx.hray, ctx.cfan, cf.m,
                                  compatible_mapping(cf))
    out = {"ok": True, "height": hdata.height, "levels": [],
           "violations": []}
    for i in range(1, basic.m + 2):
        piece = basic.b(i)
        sub_h = basic.h(i)
        sub_hd = heights(sub_h, piece, ctx.poly)
        entry = {"i": i, "H": sub_h.rays[0], "height": sub_hd.height}
        out["levels"].append(entry)
        if not sub_hd.height < hdata.height:
            out["ok"] = False
            out["violations"].append(
                {"i": i, "reason": "height not decreased",
                 "got": sub_hd.height})
        if i <= cf.mbar and sub_hd.height != 0:
            out["ok"] = False
            out["violations"].append(
                {"i": i, "reason": "prefix height nonzero",
                 "got": sub_hd.height})
    for theta in basic.b(cf.mbar + 1).maximal():
        meet = ctx.meet_with(theta)
        if not is_h_simple(meet, basic.h(cf.mbar + 1), support=theta):
            out["ok"] = False
            out["violations"].append(
                {"i": cf.mbar + 1, "reason": "intersection not H-simple",
                 "cone": theta.rays})
    if report is not None:
        report.update(out)
    return out


def _face_of_poly_for_cone(poly, lam):
    """The face of the polyhedron whose face cone is ``lam``."""
    omega = lam.interior_point()
    _, face = poly.ord_and_face(omega)
    return face


def verify_hard_height_inequality(ctx, usd):
    """Check Thm-level interval bounds over every cone of the final fan.

    For each member Theta outside |C - C/H|: locate its hosts Lambda in
    D(S|V)^C and Delta in C, the face of S + Theta-dual, and the ray
    Gamma with Theta in A°(Gamma).  Equal dims force constancy; dim
    drop one forces the bounded interval of <b_Gamma, .> with length at
    most height(H, S + Delta-dual), with the equality case fully
    characterized.
    """
    out = {"ok": True, "checked": 0, "equality_cases": 0, "violations": []}
    target = real_intersection([ctx.face_fan(), ctx.cfan])
    away = ctx.cfan.away_from(ctx.hray)
    away_max = away.maximal()
    member_of = {}
    for ray, cones in usd.lower_main.items():
        for theta in cones:
            member_of[theta] = ray

    sdelta_cache = {}

    def sdelta(delta):
        if delta not in sdelta_cache:
            sd = ctx.poly + delta.dual()
            meet = ctx.meet_with(delta)
            assert sd.face_cone_decomposition() == meet, \
                "D(S + dual | V) must equal D(S|V) ^ F(Delta)"
            sdelta_cache[delta] = sd
        return sdelta_cache[delta]

    def fail(theta, reason, **extra):
        out["ok"] = False
        entry = {"cone": theta.rays, "reason": reason}
        entry.update(extra)
        out["violations"].append(entry)

    for theta in usd.fan.cones:
        if any(c.contains_cone(theta) for c in away_max):
            continue
        out["checked"] += 1
        lam = target.locate(theta.interior_point())
        delta = ctx.cfan.locate(theta.interior_point())
        assert lam is not None and delta is not None
        gamma_ray = member_of.get(theta)
        if gamma_ray is None:
            fail(theta, "cone not in any lower main part")
            continue
        # the face of S + Theta-dual cut by Theta must exist
        meet_theta = ctx.meet_with(theta)
        if theta not in meet_theta:
            fail(theta, "Theta is not a face cone of S + Theta-dual")
            continue
        sd = sdelta(delta)
        face = _face_of_poly_for_cone(sd, lam)
        reps = [f.representative() for f in sd.minimal_faces()
                if set(f.points) <= set(face.points)]
        assert reps, "a face always contains a minimal face"
        if lam.dim == delta.dim:
            consts = [g for g in delta.generators()]
            for g in consts:
                vals = {dot(g, r) for r in reps}
                stab_ok = all(dot(g, y) == 0
                              for y in face.stab.generators())
                if len(vals) != 1 or not stab_ok:
                    fail(theta, "functional not constant on the face",
                         functional=g)
                    break
            continue
        if lam.dim != delta.dim - 1:
            fail(theta, "host dims differ by more than one",
                 lam=lam.rays, delta=delta.rays)
            continue
        bg = gamma_ray.rays[0]
        if any(dot(bg, y) != 0 for y in face.stab.generators()):
            fail(theta, "interval is unbounded", gamma=bg)
            continue
        vals = [dot(bg, r) for r in reps]
        width = max(vals) - min(vals)
        hd = heights(ctx.hray, face_closure([delta]), ctx.poly)
        bound = hd.height
        if width > bound:
            fail(theta, "hard height inequality violated",
                 width=width, bound=bound)
            continue
        # equality characterization (both directions)
        meet = ctx.meet_with(delta)
        _, _, cmap = structure_constants(meet, ctx.hray, support=delta)
        cvals = [cmap[(2, e.rays[0])] for e in delta.edges()
                 if e != ctx.hray]
        char = (sd.characteristic_number() == 2
                and all(v.denominator == 1 for v in cvals))
        if (width == bound) != char:
            fail(theta, "equality characterization failed",
                 width=width, bound=bound, c=sd.characteristic_number())
            continue
        if width == bound:
            out["equality_cases"] += 1
            if theta != lam or gamma_ray != ctx.hray:
                fail(theta, "equality without Theta = Lambda, Gamma = H")
    return out
