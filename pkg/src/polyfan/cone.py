"""Rational convex polyhedral cones with exact dual description.

A cone is stored canonically as (ambient dim, extreme rays of the
pointed part, Hermite basis of the lineality space).  The dual cone is
computed once by the double description method and cached, so every
membership or face question afterwards is a handful of integer dot
products.
"""

from math import gcd

from . import ratlat
from .errors import (DimensionMismatch, NotAFace, NotInDual, NotSimplicial,
                     ZeroVector)
from .ratlat import dot, is_zero, primitive, vneg


def _dedupe(vectors):
    seen = []
    for v in vectors:
        if v not in seen:
            seen.append(v)
    return seen


def dual_description(n, normals):
    """V-representation of {x : <h, x> >= 0 for all h in normals}.

    Returns (lineality basis, extreme rays), both tuples of primitive
    integer vectors; the lineality basis is in Hermite normal form and
    the rays are sorted.  Classic double description with the
    combinatorial adjacency test; the invariant maintained is that the
    lineality basis is orthogonal to every processed normal and the ray
    list holds exactly the extreme rays modulo lineality.
    """
    lin = [ratlat.unit(n, i) for i in range(n)]
    rays = []           # (vector, active index set)
    normals = [primitive(h) for h in normals if not is_zero(h)]
    for k, h in enumerate(normals):
        split = None
        for idx, l in enumerate(lin):
            if dot(h, l) != 0:
                split = idx
                break
        if split is not None:
            l0 = lin.pop(split)
            if dot(h, l0) < 0:
                l0 = vneg(l0)
            d0 = dot(h, l0)
            lin = [primitive(tuple(d0 * a - dot(h, l) * b
                                   for a, b in zip(l, l0)))
                   if dot(h, l) != 0 else l for l in lin]
            new_rays = []
            for v, act in rays:
                hv = dot(h, v)
                if hv != 0:
                    v = primitive(tuple(d0 * a - hv * b for a, b in zip(v, l0)))
                new_rays.append((v, act | {k}))
            new_rays.append((l0, frozenset(range(k))))
            rays = new_rays
            continue
        plus, zero_, minus = [], [], []
        for v, act in rays:
            hv = dot(h, v)
            if hv > 0:
                plus.append((v, act))
            elif hv == 0:
                zero_.append((v, act | {k}))
            else:
                minus.append((v, act))
        if not minus:
            rays = plus + zero_
            continue
        combos = []
        all_rays = rays
        for vp, ap in plus:
            for vm, am in minus:
                core = ap & am
                adjacent = True
                for v3, a3 in all_rays:
                    if v3 is vp or v3 is vm:
                        continue
                    if core <= a3:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                w = primitive(tuple(dot(h, vp) * a - dot(h, vm) * b
                                    for a, b in zip(vm, vp)))
                combos.append((w, core | {k}))
        rays = plus + zero_
        for w, act in combos:
            if all(w != v for v, _ in rays):
                rays.append((w, act))
    lin_c = ratlat.hermite_normal_form(lin)
    ray_c = tuple(sorted(_dedupe(v for v, _ in rays)))
    return lin_c, ray_c


_POOL = {}


class Cone:
    """Immutable rational polyhedral cone in canonical form."""

    __slots__ = ("ambient_dim", "rays", "lin", "dual_rays", "dual_lin",
                 "_faces", "_facets", "_hash")

    def __init__(self, ambient_dim, rays, lin, dual_rays, dual_lin):
        self.ambient_dim = ambient_dim
        self.rays = rays
        self.lin = lin
        self.dual_rays = dual_rays
        self.dual_lin = dual_lin
        self._faces = None
        self._facets = None
        self._hash = hash((ambient_dim, rays, lin))

    # -- construction -----------------------------------------------------

    @staticmethod
    def from_generators(ambient_dim, generators):
        """Cone spanned by the given (rational) generators."""
        gens = [primitive(g) for g in generators if not is_zero(g)]
        for g in gens:
            if len(g) != ambient_dim:
                raise DimensionMismatch(f"generator {g} in dim {ambient_dim}")
        dlin, drays = dual_description(ambient_dim, gens)
        return Cone._from_halfspace_data(ambient_dim, drays, dlin)

    @staticmethod
    def _from_halfspace_data(ambient_dim, normals, equations):
        lin, rays = dual_description(
            ambient_dim,
            list(normals) + [e for w in equations for e in (w, vneg(w))])
        key = (ambient_dim, rays, lin)
        cone = _POOL.get(key)
        if cone is None:
            # recompute the irredundant dual from the canonical V-side
            gens = list(rays) + [e for w in lin for e in (w, vneg(w))]
            dlin, drays = dual_description(ambient_dim, gens) if gens else \
                (tuple(ratlat.unit(ambient_dim, i) for i in range(ambient_dim)), ())
            dlin = ratlat.hermite_normal_form(dlin)
            cone = Cone(ambient_dim, rays, lin, drays, dlin)
            _POOL[key] = cone
        return cone

    @staticmethod
    def from_halfspaces(ambient_dim, normals, equations=()):
        """Cone {x : <h,x> >= 0, <w,x> = 0} from H-data."""
        return Cone._from_halfspace_data(ambient_dim, tuple(normals),
                                         tuple(equations))

    @staticmethod
    def ray(vector):
        v = primitive(vector)
        return Cone.from_generators(len(v), [v])

    @staticmethod
    def zero(ambient_dim):
        return Cone.from_generators(ambient_dim, [])

    @staticmethod
    def full_space(ambient_dim):
        units = [ratlat.unit(ambient_dim, i) for i in range(ambient_dim)]
        return Cone.from_generators(ambient_dim, units + [vneg(u) for u in units])

    # -- basic data ---------------------------------------------------------

    @property
    def dim(self):
        return self.ambient_dim - len(self.dual_lin)

    @property
    def lineality_dim(self):
        return len(self.lin)

    @property
    def is_pointed(self):
        return not self.lin

    def generators(self):
        return list(self.rays) + [e for w in self.lin for e in (w, vneg(w))]

    def __eq__(self, other):
        return (isinstance(other, Cone)
                and self.ambient_dim == other.ambient_dim
                and self.rays == other.rays and self.lin == other.lin)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Cone(dim={self.dim}, rays={list(self.rays)}, lin={list(self.lin)})"

    def sort_key(self):
        return (self.dim, self.rays, self.lin)

    # -- membership ---------------------------------------------------------

    def contains(self, v):
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(f"point {v} in dim {self.ambient_dim}")
        return (all(dot(w, v) == 0 for w in self.dual_lin)
                and all(dot(u, v) >= 0 for u in self.dual_rays))

    def interior_contains(self, v):
        """Relative interior membership."""
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(f"point {v} in dim {self.ambient_dim}")
        return (all(dot(w, v) == 0 for w in self.dual_lin)
                and all(dot(u, v) > 0 for u in self.dual_rays))

    def span_contains(self, v):
        return all(dot(w, v) == 0 for w in self.dual_lin)

    def contains_cone(self, other):
        return all(self.contains(g) for g in other.generators())

    def interior_point(self):
        """A rational point in the relative interior."""
        p = ratlat.zero(self.ambient_dim)
        for r in self.rays:
            p = ratlat.vadd(p, r)
        return p

    # -- duality ------------------------------------------------------------

    def dual(self):
        """The dual cone, in the dual coordinates."""
        return Cone._from_halfspace_data(self.ambient_dim,
                                         self.rays, self.lin)

    # -- faces ---------------------------------------------------------------

    def _face_from_rays(self, face_rays):
        gens = list(face_rays) + [e for w in self.lin for e in (w, vneg(w))]
        return Cone.from_generators(self.ambient_dim, gens)

    def face_of(self, omega):
        """The face cut out by a functional omega of the dual cone."""
        for g in self.generators():
            if dot(omega, g) < 0:
                raise NotInDual(f"{omega} is negative on generator {g}")
        return self._face_from_rays([r for r in self.rays if dot(omega, r) == 0])

    def facets(self):
        if self._facets is None:
            out = []
            for u in self.dual_rays:
                f = self._face_from_rays([r for r in self.rays
                                          if dot(u, r) == 0])
                if f not in out:
                    out.append(f)
            self._facets = tuple(sorted(out, key=Cone.sort_key))
        return self._facets

    def face_lattice(self):
        """All faces of the cone, sorted by (dim, canonical key)."""
        if self._faces is None:
            seen = {self}
            queue = [self]
            while queue:
                f = queue.pop()
                for g in f.facets():
                    if g not in seen:
                        seen.add(g)
                        queue.append(g)
            self._faces = tuple(sorted(seen, key=Cone.sort_key))
        return self._faces

    def faces_of_dim(self, d):
        return tuple(f for f in self.face_lattice() if f.dim == d)

    def edges(self):
        return self.faces_of_dim(1)

    def is_face(self, other):
        return other in self.face_lattice()

    def witness(self, face):
        """A dual functional omega with face_of(omega) == face."""
        if not self.is_face(face):
            raise NotAFace(f"{face} is not a face of {self}")
        w = ratlat.zero(self.ambient_dim)
        for u in self.dual_rays:
            if all(dot(u, g) == 0 for g in face.generators()):
                w = ratlat.vadd(w, u)
        return w

    def smallest_face_containing(self, v):
        """The unique face with v in its relative interior."""
        if not self.contains(v):
            raise NotAFace(f"{v} is not in the cone")
        face_rays = [r for r in self.rays
                     if all(dot(u, r) == 0 for u in self.dual_rays
                            if dot(u, v) == 0)]
        return self._face_from_rays(face_rays)

    # -- simplicial structure -------------------------------------------------

    def is_simplicial(self):
        """Simplicial over the ambient integer lattice."""
        if self.lin:
            return False
        if not self.rays:
            return True
        if ratlat.rank(self.rays) != len(self.rays):
            return False
        return ratlat.spans_saturated_basis(self.rays)

    def barycenter(self):
        """Primitive generator for an edge, sum of edge primitives else."""
        if not self.is_simplicial():
            raise NotSimplicial(f"{self} is not simplicial")
        if self.dim == 1:
            return self.rays[0]
        b = ratlat.zero(self.ambient_dim)
        for r in self.rays:
            b = ratlat.vadd(b, r)
        return b

    def opposite_face(self, face):
        """Sum of the edges not in the given face (simplicial cones)."""
        if not self.is_simplicial():
            raise NotSimplicial(f"{self} is not simplicial")
        if not self.is_face(face):
            raise NotAFace(f"{face} is not a face of {self}")
        return self._face_from_rays([r for r in self.rays
                                     if r not in face.rays])

    # -- combinators -----------------------------------------------------------

    def sum(self, other):
        self._check_dim(other)
        return Cone.from_generators(self.ambient_dim,
                                    self.generators() + other.generators())

    def intersection(self, other):
        """Exact intersection via (S cap T)^vee = S^vee + T^vee."""
        self._check_dim(other)
        return Cone.from_halfspaces(
            self.ambient_dim,
            list(self.dual_rays) + list(other.dual_rays),
            list(self.dual_lin) + list(other.dual_lin))

    def linear_span(self):
        basis = ratlat.hermite_normal_form(list(self.rays) + list(self.lin))
        return Cone.from_generators(
            self.ambient_dim, [e for w in basis for e in (w, vneg(w))])

    def negated(self):
        return Cone.from_generators(self.ambient_dim,
                                    [vneg(g) for g in self.generators()])

    def _check_dim(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch(
                f"{self.ambient_dim} vs {other.ambient_dim}")


def cone_sum(*cones):
    out = cones[0]
    for c in cones[1:]:
        out = out.sum(c)
    return out
