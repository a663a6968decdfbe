"""Cone decompositions (fans): validation, subdivision predicates,
real intersection, restriction/star operators and point location."""

from . import ratlat
from .cone import Cone
from .errors import (BadIntersection, DimensionMismatch, EmptyFan,
                     NotFaceClosed)


def _sorted_cones(cones):
    return tuple(sorted(set(cones), key=Cone.sort_key))


class Fan:
    """A finite face-closed set of cones with common-face intersections.

    The constructor trusts its input when ``validate=False``; use
    :func:`validate` or :meth:`Fan.validated` to check the decomposition
    conditions explicitly.
    """

    __slots__ = ("ambient_dim", "cones", "_max", "_hash")

    def __init__(self, ambient_dim, cones, validate=True):
        self.ambient_dim = ambient_dim
        self.cones = _sorted_cones(cones)
        self._max = None
        self._hash = hash((ambient_dim, self.cones))
        if validate:
            _check_decomposition(self.ambient_dim, self.cones)

    # -- basics ---------------------------------------------------------------

    def __contains__(self, cone):
        return cone in self.cones

    def __iter__(self):
        return iter(self.cones)

    def __len__(self):
        return len(self.cones)

    def __eq__(self, other):
        return (isinstance(other, Fan) and self.ambient_dim == other.ambient_dim
                and self.cones == other.cones)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Fan(dim={self.dim}, {len(self.cones)} cones)"

    @property
    def dim(self):
        return max(c.dim for c in self.cones)

    def maximal(self):
        if self._max is None:
            out = []
            for c in self.cones:
                if not any(d is not c and d.contains_cone(c) and d != c
                           for d in self.cones):
                    out.append(c)
            self._max = tuple(out)
        return self._max

    def of_dim(self, d):
        return tuple(c for c in self.cones if c.dim == d)

    def rays(self):
        return self.of_dim(1)

    def minimum_element(self):
        return min(self.cones, key=lambda c: c.dim)

    def lineality(self):
        return self.minimum_element()

    # -- restriction / star ----------------------------------------------------

    def restrict_to_cone(self, cone):
        """D\\X for X a single cone: all members contained in it."""
        sub = [c for c in self.cones if cone.contains_cone(c)]
        return Fan(self.ambient_dim, sub, validate=False)

    def restrict_to_support(self, cones):
        """D\\X for X the union of the given cones."""
        sub = [c for c in self.cones
               if any(big.contains_cone(c) for big in cones)]
        return Fan(self.ambient_dim, sub, validate=False)

    def star(self, cone):
        """D/F: the members containing the given cone."""
        return tuple(c for c in self.cones if c.contains_cone(cone))

    def away_from(self, cone):
        """D - (D/F) as a fan (it is face closed when F is a ray)."""
        return Fan(self.ambient_dim,
                   [c for c in self.cones if not c.contains_cone(cone)],
                   validate=False)

    def supports_point(self, v):
        return any(c.contains(v) for c in self.maximal())

    def support_contains_cone(self, cone):
        """Whether the cone lies inside |D| (valid for fan members and
        for cones of any subdivision of D)."""
        return any(big.contains_cone(cone) for big in self.maximal())

    def locate(self, v):
        """The unique cone with v in its relative interior, or None."""
        for c in self.maximal():
            if c.contains(v):
                return c.smallest_face_containing(v)
        return None

    # -- subdivisions -----------------------------------------------------------

    def is_subdivision_of(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch(
                f"{self.ambient_dim} vs {other.ambient_dim}")
        others = other.maximal()
        return all(any(big.contains_cone(c) for big in others)
                   for c in self.maximal())

    def support_equals(self, other):
        """Exact support equality |D| = |E|."""
        return _support_subset(self, other) and _support_subset(other, self)

    def is_full_subdivision_of(self, other):
        return self.is_subdivision_of(other) and self.support_equals(other)


def _check_decomposition(ambient_dim, cones):
    if not cones:
        raise EmptyFan("a cone decomposition is nonempty")
    cone_set = set(cones)
    for c in cones:
        if c.ambient_dim != ambient_dim:
            raise DimensionMismatch(f"{c} in ambient dim {ambient_dim}")
        for f in c.face_lattice():
            if f not in cone_set:
                raise NotFaceClosed(c, f)
    for i, c in enumerate(cones):
        for d in cones[i + 1:]:
            meet = c.intersection(d)
            if not (c.is_face(meet) and d.is_face(meet)):
                raise BadIntersection(c, d)


def validate(cones):
    """Check Def 9.2-style conditions and build the fan.

    Raises EmptyFan / NotFaceClosed / BadIntersection with the offending
    cones attached.
    """
    cones = list(cones)
    if not cones:
        raise EmptyFan("a cone decomposition is nonempty")
    return Fan(cones[0].ambient_dim, cones, validate=True)


def is_rational_fan(fan):
    """All our cones carry integer generators, so always true; kept as
    an explicit classifier for reports."""
    return True


def is_simplicial_fan(fan):
    return all(c.is_simplicial() for c in fan.cones)


def face_closure(cones):
    """E^fc: close a pairwise-compatible cone family under faces."""
    cones = list(cones)
    if not cones:
        raise EmptyFan("a cone decomposition is nonempty")
    ambient = cones[0].ambient_dim
    closed = set()
    for c in cones:
        closed.update(c.face_lattice())
    for c in cones:
        for d in cones:
            if c is not d:
                meet = c.intersection(d)
                if not (c.is_face(meet) and d.is_face(meet)):
                    raise BadIntersection(c, d)
    return Fan(ambient, closed, validate=False)


def real_intersection(fans, ambient_dim=None):
    """The fan of all intersections, one cone per input fan.

    With an empty list the result is {V} (the whole space).
    """
    fans = list(fans)
    if not fans:
        if ambient_dim is None:
            raise DimensionMismatch("ambient_dim required for empty input")
        return face_closure([Cone.full_space(ambient_dim)])
    ambient = fans[0].ambient_dim
    for f in fans:
        if f.ambient_dim != ambient:
            raise DimensionMismatch(f"{f.ambient_dim} vs {ambient}")
    acc = list(fans[0].maximal())
    for nxt in fans[1:]:
        acc = _dedupe_cones(c.intersection(d)
                            for c in acc for d in nxt.maximal())
    out = set()
    for c in acc:
        out.update(c.face_lattice())
    return Fan(ambient, out, validate=False)


def _dedupe_cones(cones):
    out = []
    seen = set()
    for c in cones:
        if c not in seen:
            seen.add(c)
            out.append(c)
    return out


def _support_subset(d, e):
    """|d| subset of |e|, assuming both are valid fans."""
    for c in d.maximal():
        if not _cone_inside_support(c, e):
            return False
    return True


def _cone_inside_support(cone, fan):
    """Exact test for cone subset |fan|.

    Pieces = intersections of the cone with the fan's maximal cones;
    they cover the cone iff every relative facet of a full-dimensional
    piece is either shared by a second piece or lies in the boundary of
    the cone.
    """
    if any(big.contains_cone(cone) for big in fan.maximal()):
        return True
    pieces = _dedupe_cones(big.intersection(cone) for big in fan.maximal())
    pieces = [p for p in pieces if p.dim == cone.dim]
    if not pieces:
        return False
    boundary = cone.facets()
    wall_count = {}
    for p in pieces:
        for w in p.facets():
            wall_count[w] = wall_count.get(w, 0) + 1
    for w, cnt in wall_count.items():
        if cnt >= 2:
            continue
        if any(b.contains_cone(w) for b in boundary):
            continue
        return False
    return True


def cone_in_support(cone, cones):
    """cone subset of the union of ``cones`` (arbitrary family)."""
    fake = Fan(cone.ambient_dim,
               {f for c in cones for f in c.face_lattice()}, validate=False)
    return _cone_inside_support(cone, fake)
