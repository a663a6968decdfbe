"""Star (barycentric) subdivision, iterated subdivision along center
sequences, H-upper/lower boundaries and the basic subdivision."""

from dataclasses import dataclass
from fractions import Fraction

from . import ratlat
from .cone import Cone
from .errors import (BadE, BadPrerequisites, InvalidCenter,
                     LinealityMismatch, NotInFan, NotSimplicial)
from .fan import Fan
from .ratlat import dot, vneg


def star_subdivision(fan, center):
    """D*F: replace the star of F by joins with the barycenter ray.

    Centers of dimension one act as the identity.
    """
    if center not in fan:
        raise NotInFan(f"{center} is not a member of the fan")
    if not center.is_simplicial():
        raise NotSimplicial(f"center {center} is not simplicial")
    if center.dim < 1:
        raise NotSimplicial("center must have dimension at least one")
    b = center.barycenter()
    n = fan.ambient_dim
    keep = [c for c in fan.cones if not c.contains_cone(center)]
    added = []
    for lam in fan.cones:
        if lam.contains_cone(center):
            continue
        joined = Cone.from_generators(n, lam.generators() + center.generators())
        if joined not in fan:
            continue
        added.append(Cone.from_generators(n, lam.generators() + [b]))
    return Fan(n, keep + added, validate=False)


def validate_center_sequence(fan, centers):
    """Check the center-sequence conditions incrementally.

    Every center must be simplicial of dimension >= 2 and a member of
    the fan obtained so far.
    """
    current = fan
    for i, f in enumerate(centers, start=1):
        if not f.is_simplicial() or f.dim < 2:
            raise InvalidCenter(i, "centers need dimension at least two")
        if f not in current:
            raise InvalidCenter(i, "center is not a cone of the current fan")
        current = star_subdivision(current, f)
    return current


def iterated(fan, centers):
    """The iterated barycentric subdivision along a center sequence."""
    return validate_center_sequence(fan, tuple(centers))


# ---------------------------------------------------------------------------
# H-boundaries


def clip_line(cone, base, direction):
    """The set {t : base + t*direction in cone} as an interval.

    Returns None for the empty set, else (lo, hi) where either bound
    may be None for an unbounded side.
    """
    lo, hi = None, None
    for w in cone.dual_lin:
        c0, c1 = dot(w, base), dot(w, direction)
        if c1 == 0:
            if c0 != 0:
                return None
        else:
            t = Fraction(-c0, c1)
            if lo is None or t > lo:
                lo = t
            if hi is None or t < hi:
                hi = t
    for u in cone.dual_rays:
        c0, c1 = dot(u, base), dot(u, direction)
        if c1 == 0:
            if c0 < 0:
                return None
        elif c1 > 0:
            t = Fraction(-c0, c1)
            if lo is None or t > lo:
                lo = t
        else:
            t = Fraction(-c0, c1)
            if hi is None or t < hi:
                hi = t
    if lo is not None and hi is not None and lo > hi:
        return None
    return lo, hi


def h_boundaries(cone, hray):
    """The H-upper and H-lower boundaries of a cone as facet lists.

    A facet L belongs to the upper boundary iff H is not contained in
    cone + vect(L), i.e. moving in the +H direction exits the cone.
    """
    b = hray.rays[0]
    if not cone.span_contains(b):
        raise LinealityMismatch("vect(H) must lie inside vect(cone)")
    upper, lower = [], []
    for facet in cone.facets():
        grown = Cone.from_generators(
            cone.ambient_dim,
            cone.generators() + [g for r in facet.generators()
                                 for g in (r, vneg(r))])
        has_up = grown.contains(b)
        has_down = grown.contains(vneg(b))
        if not has_up:
            upper.append(facet)
        if not has_down:
            lower.append(facet)
    return tuple(upper), tuple(lower)


def support_clip_line(cones, base, direction):
    """Union of the per-cone line clips over a family of cones.

    Returns a sorted list of disjoint merged intervals.
    """
    intervals = []
    for c in cones:
        got = clip_line(c, base, direction)
        if got is not None:
            intervals.append(got)
    if not intervals:
        return []
    neg_inf = object()

    def key(iv):
        lo, _ = iv
        return (0, 0) if lo is None else (1, lo)

    intervals.sort(key=key)
    merged = [intervals[0]]
    for lo, hi in intervals[1:]:
        plo, phi = merged[-1]
        if phi is None or lo is None or lo <= phi:
            if phi is not None and (hi is None or hi > phi):
                merged[-1] = (plo, hi)
        else:
            merged.append((lo, hi))
    return merged


# ---------------------------------------------------------------------------
# basic subdivision (the sextuplet construction)


@dataclass
class BasicSubdivisionData:
    """Everything produced by the basic subdivision of (H, C, m, E)."""

    hray: Cone
    base_fan: Fan
    m: int
    emap: tuple            # E(1..m), rays of (C - C/H)
    s: dict                # (i, ray generator) -> int
    fseq: tuple            # centers F(1..m)
    gseq: tuple            # rays G(1..m)
    hseq: tuple            # rays H(1..m+1)
    fan: Fan               # B = C*F(1)*...*F(m)
    bsub: tuple            # B(1..m+1) as fans
    bmain: tuple           # B°(1..m+1) as cone tuples

    def b(self, i):
        return self.bsub[i - 1]

    def b_open(self, i):
        return self.bmain[i - 1]

    def h(self, i):
        return self.hseq[i - 1]


def check_basic_prerequisites(hray, fan):
    """dim C = dim vect(|C|) >= 2, C^max = C^0, H in C_1, C = (C/H)^fc."""
    if hray not in fan.rays():
        raise BadPrerequisites("H must be a ray of the fan")
    span_dim = ratlat.rank([g for c in fan.maximal() for g in c.generators()])
    d = fan.dim
    if d != span_dim or d < 2:
        raise BadPrerequisites("need dim C = dim vect(|C|) >= 2")
    maxima = fan.maximal()
    if any(c.dim != d for c in maxima):
        raise BadPrerequisites("maximal cones must share the top dimension")
    if any(not c.contains_cone(hray) for c in maxima):
        raise BadPrerequisites("every maximal cone must contain H")


def basic_subdivision(hray, fan, m, emap):
    """The basic subdivision associated with (V, N, H, C, m, E).

    ``emap`` lists E(1), ..., E(m) as rays of C - C/H.  Stacks each
    E(i) by successive multiples of the H barycenter and records the
    s/F/G/H bookkeeping together with the pieces B(i) and B°(i).
    """
    check_basic_prerequisites(hray, fan)
    away = fan.away_from(hray)
    away_rays = set(away.rays())
    emap = tuple(emap)
    if len(emap) != m:
        raise BadE(f"expected {m} entries, got {len(emap)}")
    for e in emap:
        if e not in away_rays:
            raise BadE(f"{e} is not a ray of C - C/H")

    bh = hray.rays[0]
    n = fan.ambient_dim
    counts = {r.rays[0]: 0 for r in away_rays}
    s = {(0, r): 0 for r in counts}
    fseq, gseq, hseq = [], [], []
    current = fan
    for i, e in enumerate(emap, start=1):
        be = e.rays[0]
        k = counts[be]
        g_vec = ratlat.vadd(be, ratlat.vscale(k, bh))
        h_vec = ratlat.vadd(be, ratlat.vscale(k + 1, bh))
        center = Cone.from_generators(n, [g_vec, bh])
        fseq.append(center)
        gseq.append(Cone.ray(g_vec))
        hseq.append(Cone.ray(h_vec))
        counts[be] = k + 1
        for r in counts:
            s[(i, r)] = s[(i - 1, r)]
        s[(i, be)] = k + 1
        if center not in current:
            raise BadPrerequisites(f"stacking center {center} missing at step {i}")
        current = star_subdivision(current, center)
    hseq.append(hray)

    bsub = []
    bmain = []
    for i in range(1, m + 2):
        if i <= m:
            core = Cone.from_generators(
                n, gseq[i - 1].generators() + hseq[i - 1].generators())
        else:
            core = hray
        members = set()
        star = current.star(core)
        for c in star:
            members.update(c.face_lattice())
        piece = Fan(n, members, validate=False)
        bsub.append(piece)
        if i <= m:
            bmain.append(tuple(sorted(piece.star(gseq[i - 1]),
                                      key=Cone.sort_key)))
        else:
            bmain.append(piece.cones)
    return BasicSubdivisionData(
        hray=hray, base_fan=fan, m=m, emap=emap, s=s,
        fseq=tuple(fseq), gseq=tuple(gseq), hseq=tuple(hseq),
        fan=current, bsub=tuple(bsub), bmain=tuple(bmain))
