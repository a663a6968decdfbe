"""Convex pseudo polyhedra conv(X) + convcone(Y).

Faces are enumerated through the face cone decomposition D(S|V), which
is computed directly from support-functional regions; the homogenized
cone over S at height one provides a fully independent second route
that the test suite compares against.
"""

from fractions import Fraction
from math import gcd

from . import ratlat
from .cone import Cone
from .errors import DimensionMismatch, EmptyX, Unbounded
from .fan import Fan, real_intersection
from .ratlat import dot, primitive, vneg, vsub


def reduce_mod_span(v, basis):
    """Canonical representative of v modulo the row span of ``basis``.

    ``basis`` must be in Hermite normal form; the pivot coordinates of
    the result are zero.
    """
    v = list(ratlat.as_fraction_vector(v))
    for row in basis:
        j = next(i for i, a in enumerate(row) if a != 0)
        if v[j] != 0:
            f = Fraction(v[j], row[j])
            v = [a - f * b for a, b in zip(v, row)]
    return tuple(v)


class Face:
    """A face of a pseudo polyhedron: generating points, recession cone
    and the dual face cone."""

    __slots__ = ("points", "stab", "cone", "dim")

    def __init__(self, points, stab, cone, dim):
        self.points = points      # sorted tuple of Fraction tuples
        self.stab = stab          # recession cone of the face
        self.cone = cone          # face cone Delta(F, S|V)
        self.dim = dim

    def __eq__(self, other):
        return (isinstance(other, Face) and self.points == other.points
                and self.stab == other.stab)

    def __hash__(self):
        return hash((self.points, self.stab))

    def __repr__(self):
        return f"Face(dim={self.dim}, points={list(self.points)})"

    def is_compact(self):
        return self.stab.dim == 0

    def representative(self):
        return self.points[0]


class PseudoPolyhedron:
    """conv(X) + convcone(Y), canonicalized to minimal-face data."""

    __slots__ = ("ambient_dim", "points", "stab", "_face_fan", "_faces",
                 "_by_cone", "_minimal")

    def __init__(self, ambient_dim, points, recession=()):
        if not points:
            raise EmptyX("a pseudo polyhedron needs at least one point")
        self.ambient_dim = ambient_dim
        pts = sorted({ratlat.as_fraction_vector(p) for p in points})
        for p in pts:
            if len(p) != ambient_dim:
                raise DimensionMismatch(f"point {p} in dim {ambient_dim}")
        self.stab = Cone.from_generators(ambient_dim, recession)
        self._face_fan = None
        self._faces = None
        self._by_cone = None
        self._minimal = None
        self.points = self._canonical_points(pts)

    # -- construction internals ------------------------------------------------

    def _canonical_points(self, pts):
        """Minimal-face representatives, reduced modulo the lineality."""
        self._build(pts)
        lin = self.stab.lin
        reps = sorted(reduce_mod_span(f.points[0], lin)
                      for f in self._minimal)
        # rebuild face data on the canonical generators so that every
        # Face.points list refers to them
        self._face_fan = None
        self._build(reps)
        return tuple(reps)

    def _build(self, pts):
        if self._face_fan is not None:
            return
        n = self.ambient_dim
        stab_gens = self.stab.generators()
        candidates = {}
        for x in pts:
            normals = list(stab_gens)
            for x2 in pts:
                if x2 != x:
                    d = vsub(x2, x)
                    if not ratlat.is_zero(d):
                        normals.append(primitive(d))
            region = Cone.from_halfspaces(n, normals)
            candidates.setdefault(region, x)
        maxima = [c for c in candidates
                  if not any(d != c and d.contains_cone(c) for d in candidates)]
        cones = set()
        for c in maxima:
            cones.update(c.face_lattice())
        fan = Fan(n, cones, validate=False)
        faces = []
        by_cone = {}
        for lam in fan.cones:
            omega = lam.interior_point()
            vals = [dot(omega, x) for x in pts]
            lo = min(vals)
            fpts = tuple(sorted(x for x, v in zip(pts, vals) if v == lo))
            fstab = self.stab.face_of(omega)
            span_rows = [vsub(x, fpts[0]) for x in fpts[1:]]
            span_rows += list(fstab.generators())
            fdim = ratlat.rank(span_rows) if span_rows else 0
            face = Face(fpts, fstab, lam, fdim)
            faces.append(face)
            by_cone[lam] = face
            assert fdim + lam.dim == n
        self._face_fan = fan
        self._faces = tuple(faces)
        self._by_cone = by_cone
        ell = self.stab.lineality_dim
        self._minimal = tuple(sorted((f for f in faces if f.dim == ell),
                                     key=lambda f: f.points))
        assert all(by_cone[m].dim == ell for m in fan.maximal())

    # -- basic data --------------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, PseudoPolyhedron)
                and self.ambient_dim == other.ambient_dim
                and self.points == other.points and self.stab == other.stab)

    def __hash__(self):
        return hash((self.ambient_dim, self.points, self.stab))

    def __repr__(self):
        return (f"PseudoPolyhedron(points={list(self.points)}, "
                f"stab_rays={list(self.stab.rays)})")

    @property
    def lineality(self):
        return Cone.from_generators(
            self.ambient_dim,
            [e for w in self.stab.lin for e in (w, vneg(w))])

    @property
    def lineality_dim(self):
        return self.stab.lineality_dim

    @property
    def dim(self):
        rows = [vsub(p, self.points[0]) for p in self.points[1:]]
        rows += list(self.stab.generators())
        return ratlat.rank(rows) if rows else 0

    def is_compact(self):
        return self.stab.dim == 0

    def is_cone(self):
        return self.points == (ratlat.as_fraction_vector(
            ratlat.zero(self.ambient_dim)),)

    # -- faces --------------------------------------------------------------------

    def face_cone_decomposition(self):
        """D(S|V): the fan of face cones in the dual space."""
        return self._face_fan

    def faces(self):
        return self._faces

    def face_for_cone(self, lam):
        return self._by_cone[lam]

    def minimal_faces(self):
        return self._minimal

    def skeleton(self):
        """Representatives of the minimal faces (one point each)."""
        return tuple(f.points[0] for f in self._minimal)

    def characteristic_number(self):
        return len(self._minimal)

    def contains(self, v):
        v = ratlat.as_fraction_vector(v)
        for lam in self._face_fan.maximal():
            omega = lam.interior_point()
            o, _ = self.ord_and_face(omega)
            if dot(omega, v) < o:
                return False
        # affine hull membership
        rows = [vsub(p, self.points[0]) for p in self.points[1:]]
        rows += list(self.stab.generators())
        return ratlat.in_span(rows, vsub(v, self.points[0]))

    def ord_and_face(self, omega):
        """(min of <omega, .> over S, the face where it is attained)."""
        if not all(dot(omega, y) >= 0 for y in self.stab.generators()):
            raise Unbounded(f"{omega} is unbounded below on the polyhedron")
        vals = [dot(omega, x) for x in self.points]
        lo = min(vals)
        lam = self._face_fan.locate(omega)
        assert lam is not None
        return lo, self._by_cone[lam]

    def ord(self, omega):
        return self.ord_and_face(omega)[0]

    # -- homogenization -------------------------------------------------------------

    def homogenize(self):
        """The cone over S at height one in dimension n+1."""
        gens = [tuple(p) + (Fraction(1),) for p in self.points]
        gens += [tuple(g) + (0,) for g in self.stab.generators()]
        return Cone.from_generators(self.ambient_dim + 1, gens)

    def face_cone_decomposition_homogenized(self):
        """Independent route to D(S|V) through the dual of the
        homogenized cone (the lower-boundary faces project to the face
        cones)."""
        n = self.ambient_dim
        hcone = self.homogenize()
        dual = hcone.dual()
        zeta = ratlat.unit(n + 1, n)
        lower = []
        for lam in dual.face_lattice():
            updown = list(dual.generators())
            for b in lam.generators():
                updown += [b, vneg(b)]
            grown = Cone.from_generators(n + 1, updown)
            if not grown.contains(vneg(zeta)):
                lower.append(lam)
        cones = set()
        for lam in lower:
            proj = [g[:n] for g in lam.generators()]
            cones.add(Cone.from_generators(n, proj))
        return Fan(n, cones, validate=False)

    # -- algebra ---------------------------------------------------------------------

    def minkowski_sum(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch(
                f"{self.ambient_dim} vs {other.ambient_dim}")
        pts = [ratlat.vadd(p, q) for p in self.points for q in other.points]
        rec = self.stab.generators() + other.stab.generators()
        return PseudoPolyhedron(self.ambient_dim, pts, rec)

    def __add__(self, other):
        if isinstance(other, PseudoPolyhedron):
            return self.minkowski_sum(other)
        if isinstance(other, Cone):
            return PseudoPolyhedron(self.ambient_dim, self.points,
                                    self.stab.generators() + other.generators())
        return NotImplemented

    # -- classification ----------------------------------------------------------------

    def is_newton_polyhedron(self):
        """stab simplicial and full dimensional, skeleton integral."""
        return (self.stab.is_simplicial()
                and self.stab.dim == self.ambient_dim
                and all(a.denominator == 1 for p in self.skeleton()
                        for a in p))

    def denominator(self):
        """den(S/N): least m > 0 with m*a in N + L for every skeleton
        point a."""
        lin = self.stab.lin
        n = self.ambient_dim
        m = 1
        for rep in self.skeleton():
            red = reduce_mod_span(rep, lin)
            if ratlat.is_zero(red):
                continue
            basis = [reduce_mod_span(ratlat.unit(n, i), lin) for i in range(n)]
            basis = [b for b in basis if not ratlat.is_zero(b)]
            den = 1
            for b in basis:
                for a in b:
                    den = den * a.denominator // gcd(den, a.denominator)
            for a in red:
                den = den * a.denominator // gcd(den, a.denominator)
            igens = [tuple(int(a * den) for a in b) for b in basis]
            k = ratlat.lattice_denominator(
                tuple(a * den for a in red), igens)
            m = m * k // gcd(m, k)
        return m


def minkowski_fan_identity(s, t):
    """D(S+T|V) computed as the real intersection of the factors."""
    return real_intersection([s.face_cone_decomposition(),
                              t.face_cone_decomposition()])
