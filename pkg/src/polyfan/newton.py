"""Polynomials with a designated variable z: supports, ord/in calculus,
Newton polyhedra, z-classification and the removable-face elimination
loop."""

import json
import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import ratlat
from .cone import Cone
from .errors import (DimensionMismatch, HeightZero, IterationCapExceeded,
                     NegativeWeight, NotWeierstrass, ParseError,
                     TooFewVariables, ZeroPolynomial)
from .polyhedron import PseudoPolyhedron
from .ratlat import dot


class _Infinity:
    """Order of the zero polynomial; compares above every rational."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __repr__(self):
        return "INF"


INF = _Infinity()


class Field:
    """The rationals or a prime field F_p with exact arithmetic."""

    __slots__ = ("char",)

    def __init__(self, char=0):
        if char != 0:
            if char < 2 or any(char % q == 0 for q in range(2, int(char ** 0.5) + 1)):
                raise ParseError(f"field characteristic {char} is not prime")
        self.char = char

    def __eq__(self, other):
        return isinstance(other, Field) and self.char == other.char

    def __hash__(self):
        return hash(("Field", self.char))

    def __repr__(self):
        return "QQ" if self.char == 0 else f"GF({self.char})"

    def coerce(self, v):
        if isinstance(v, str):
            v = Fraction(v)
        if self.char == 0:
            return Fraction(v)
        v = Fraction(v)
        if v.denominator % self.char == 0:
            raise ParseError(f"denominator {v.denominator} not invertible mod {self.char}")
        return (v.numerator * pow(v.denominator, -1, self.char)) % self.char

    def add(self, a, b):
        c = a + b
        return c % self.char if self.char else c

    def sub(self, a, b):
        c = a - b
        return c % self.char if self.char else c

    def mul(self, a, b):
        c = a * b
        return c % self.char if self.char else c

    def neg(self, a):
        return (-a) % self.char if self.char else -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.char == 0:
            return Fraction(1) / a
        return pow(a, -1, self.char)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def element_str(self, a):
        return str(a)


QQ = Field(0)


class Polynomial:
    """Finite map from exponent vectors to nonzero field elements."""

    __slots__ = ("field", "variables", "zvar", "terms", "_hash")

    def __init__(self, field, variables, zvar, terms):
        if zvar not in variables:
            raise ParseError(f"designated variable {zvar!r} not among {variables}")
        self.field = field
        self.variables = tuple(variables)
        self.zvar = zvar
        clean = {}
        for e, c in terms.items():
            e = tuple(int(a) for a in e)
            if len(e) != len(self.variables):
                raise DimensionMismatch(f"exponent {e} for {self.variables}")
            if any(a < 0 for a in e):
                raise ParseError(f"negative exponent in {e}")
            if c != 0:
                clean[e] = c
        self.terms = clean
        self._hash = hash((field, self.variables, zvar,
                           tuple(sorted(clean.items()))))

    # -- basics -------------------------------------------------------------

    @property
    def nvars(self):
        return len(self.variables)

    @property
    def zindex(self):
        return self.variables.index(self.zvar)

    def is_zero(self):
        return not self.terms

    def support(self):
        return set(self.terms)

    def constant_term(self):
        zero = (0,) * self.nvars
        return self.terms.get(zero, 0)

    def __eq__(self, other):
        return (isinstance(other, Polynomial) and self.field == other.field
                and self.variables == other.variables
                and self.zvar == other.zvar and self.terms == other.terms)

    def __hash__(self):
        return self._hash

    def _same_ring(self, other):
        if (self.field != other.field or self.variables != other.variables
                or self.zvar != other.zvar):
            raise DimensionMismatch("polynomials from different rings")

    def _make(self, terms):
        return Polynomial(self.field, self.variables, self.zvar, terms)

    def __add__(self, other):
        self._same_ring(other)
        out = dict(self.terms)
        f = self.field
        for e, c in other.terms.items():
            s = f.add(out.get(e, 0), c)
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return self._make(out)

    def __neg__(self):
        f = self.field
        return self._make({e: f.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._same_ring(other)
        out = {}
        f = self.field
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = f.add(out.get(e, 0), f.mul(c1, c2))
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return self._make(out)

    def scaled(self, c):
        c = self.field.coerce(c)
        if c == 0:
            return self._make({})
        f = self.field
        return self._make({e: f.mul(c, co) for e, co in self.terms.items()})

    def power(self, k):
        out = self.constant(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def constant(self, c):
        c = self.field.coerce(c)
        terms = {(0,) * self.nvars: c} if c != 0 else {}
        return self._make(terms)

    def monomial(self, exponent, c=1):
        c = self.field.coerce(c)
        return self._make({tuple(exponent): c} if c != 0 else {})

    def z_degree_blocks(self):
        """Map z-degree -> polynomial in the remaining variables
        (stored in the full ring with z-exponent zero)."""
        zi = self.zindex
        blocks = {}
        for e, c in self.terms.items():
            d = e[zi]
            e0 = e[:zi] + (0,) + e[zi + 1:]
            blocks.setdefault(d, {})[e0] = c
        return {d: self._make(t) for d, t in blocks.items()}

    def substitute_z(self, shift):
        """The polynomial with z replaced by z + shift.

        ``shift`` must not involve z.
        """
        self._same_ring(shift)
        zi = self.zindex
        if any(e[zi] != 0 for e in shift.terms):
            raise ParseError("substitution shift may not involve z")
        z = self.monomial(tuple(1 if i == zi else 0
                                for i in range(self.nvars)))
        newz = z + shift
        out = self._make({})
        for d, block in self.z_degree_blocks().items():
            out = out + block * newz.power(d)
        return out

    # -- text form -------------------------------------------------------------

    def __repr__(self):
        return f"Polynomial({self.to_text()!r})"

    def to_text(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items()):
            factors = []
            for name, a in zip(self.variables, e):
                if a == 1:
                    factors.append(name)
                elif a > 1:
                    factors.append(f"{name}^{a}")
            cs = str(c)
            if factors and c == 1:
                body = "*".join(factors)
            elif factors:
                body = "*".join([cs] + factors)
            else:
                body = cs
            parts.append(body)
        return " + ".join(parts).replace("+ -", "- ")

    def to_json_dict(self):
        return {
            "field": {"char": self.field.char},
            "vars": list(self.variables),
            "z": self.zvar,
            "terms": [{"c": self.field.element_str(c), "e": list(e)}
                      for e, c in sorted(self.terms.items())],
        }

    @staticmethod
    def from_json_dict(data):
        field = Field(int(data["field"]["char"]))
        variables = tuple(data["vars"])
        zvar = data["z"]
        terms = {}
        for t in data["terms"]:
            e = tuple(int(a) for a in t["e"])
            c = field.coerce(t["c"])
            if c != 0:
                terms[e] = field.add(terms.get(e, 0), c) if e in terms else c
        return Polynomial(field, variables, zvar, terms)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_]\w*)"
                    r"|(?P<op>[-+*^()]))")


def parse_polynomial(text, variables=None, zvar="z", field=QQ):
    """Parse text like ``3*x^2*z - 1/2*y*z^3``.

    When ``variables`` is None the variable set is inferred from the
    input (sorted, with z last).
    """
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ParseError(f"cannot tokenize {text[pos:]!r}")
            break
        pos = m.end()
        if m.group("num"):
            tokens.append(("num", m.group("num")))
        elif m.group("name"):
            tokens.append(("name", m.group("name")))
        else:
            tokens.append(("op", m.group("op")))
    if any(t == ("op", "(") or t == ("op", ")") for t in tokens):
        raise ParseError("parenthesized input is not supported; expand first")

    # split on top-level +/-
    terms = []
    sign = 1
    current = []
    for kind, val in tokens:
        if kind == "op" and val in "+-":
            if current:
                terms.append((sign, current))
                current = []
                sign = 1
            if val == "-":
                sign = -sign
        else:
            current.append((kind, val))
    if current:
        terms.append((sign, current))
    if not terms:
        raise ParseError("empty polynomial text")

    parsed = []
    names = set()
    for sign, toks in terms:
        coeff = Fraction(sign)
        exps = {}
        i = 0
        while i < len(toks):
            kind, val = toks[i]
            if kind == "num":
                coeff *= Fraction(val)
                i += 1
            elif kind == "name":
                power = 1
                if i + 2 < len(toks) and toks[i + 1] == ("op", "^"):
                    pk, pv = toks[i + 2]
                    if pk != "num" or "/" in pv:
                        raise ParseError(f"bad exponent after {val}")
                    power = int(pv)
                    i += 3
                else:
                    i += 1
                exps[val] = exps.get(val, 0) + power
                names.add(val)
            elif (kind, val) == ("op", "*"):
                i += 1
            elif (kind, val) == ("op", "^"):
                raise ParseError("dangling ^")
            else:
                raise ParseError(f"unexpected token {val!r}")
        parsed.append((coeff, exps))

    if variables is None:
        rest = sorted(names - {zvar})
        variables = tuple(rest) + (zvar,)
    else:
        variables = tuple(variables)
        unknown = names - set(variables)
        if unknown:
            raise ParseError(f"unknown variables {sorted(unknown)}")
    if zvar not in variables:
        variables = variables + (zvar,)
    terms_map = {}
    for coeff, exps in parsed:
        e = tuple(exps.get(v, 0) for v in variables)
        c = field.coerce(coeff)
        s = field.add(terms_map.get(e, 0), c)
        if s == 0:
            terms_map.pop(e, None)
        else:
            terms_map[e] = s
    return Polynomial(field, variables, zvar, terms_map)


# ---------------------------------------------------------------------------
# ord / in / ps


def ord_in(omega, poly):
    """(order, initial sum) of the polynomial for a nonnegative weight."""
    omega = tuple(Fraction(w) for w in omega)
    if len(omega) != poly.nvars:
        raise DimensionMismatch(f"weight {omega} for {poly.variables}")
    if any(w < 0 for w in omega):
        raise NegativeWeight(f"{omega} has a negative coordinate")
    if poly.is_zero():
        return INF, poly
    vals = {e: dot(omega, e) for e in poly.terms}
    lo = min(vals.values())
    init = {e: c for e, c in poly.terms.items() if vals[e] == lo}
    return lo, poly._make(init)


def partial_sum(region, poly):
    """Sum of the terms whose exponents lie in the region.

    ``region`` is either an explicit set of exponent tuples or a
    polyhedron face (membership through its witness functional).
    """
    if isinstance(region, (set, frozenset, list, tuple)):
        allowed = {tuple(e) for e in region}
        terms = {e: c for e, c in poly.terms.items() if e in allowed}
        return poly._make(terms)
    terms = {e: c for e, c in poly.terms.items()
             if region_contains(region, e)}
    return poly._make(terms)


def region_contains(face, e):
    """Exponent membership in a polyhedron face."""
    e = ratlat.as_fraction_vector(e)
    base = face.points[0]
    rows = [ratlat.vsub(p, base) for p in face.points[1:]]
    rows += list(face.stab.generators())
    if not ratlat.in_span(rows, ratlat.vsub(e, base)):
        return False
    omega = face.cone.interior_point()
    return dot(omega, e) == dot(omega, base)


def newton_polyhedron(poly):
    """Gamma_+ of a nonzero polynomial: conv(support) + orthant."""
    if poly.is_zero():
        raise ZeroPolynomial("zero polynomial has no Newton polyhedron")
    n = poly.nvars
    return PseudoPolyhedron(n, sorted(poly.terms),
                            [ratlat.unit(n, i) for i in range(n)])


# ---------------------------------------------------------------------------
# z analysis


@dataclass(frozen=True)
class RemovableFace:
    """A z-removable face with the exact data of its factorization
    ps = unit * z^b * x^(a1 minus top) * (z + chi)^height."""

    points: tuple
    chi: Polynomial
    unit: object
    monomial_exponent: tuple
    dim: int

    def delta0_value(self):
        """<delta_0, c(F)> = total x-degree of the chi term, the
        quantity the elimination loop minimizes (dimension-one faces)."""
        return max(sum(e) for e in self.chi.terms)


@dataclass
class ZReport:
    is_weierstrass_type: bool
    b: int
    height: int
    top_vertex: tuple | None
    is_z_simple: bool
    removable_faces: list = dc_field(default_factory=list)
    characteristic_number: int = 0
    skeleton: tuple = ()


def _z_column(poly):
    zi = poly.zindex
    return zi


def z_weierstrass_data(poly):
    """(is_weierstrass, b, height, top_vertex, S) for a nonzero poly."""
    if poly.is_zero():
        raise ZeroPolynomial("cannot analyze the zero polynomial")
    if poly.nvars < 2:
        raise TooFewVariables("need the designated z plus one more variable")
    zi = poly.zindex
    s = newton_polyhedron(poly)
    verts = s.skeleton()
    zvals = [v[zi] for v in verts]
    b = min(zvals)
    h = int(max(zvals) - b)
    # project out z: Weierstrass type iff the projection has one vertex
    proj = [e[:zi] + e[zi + 1:] for e in poly.terms]
    n1 = poly.nvars - 1
    ps = PseudoPolyhedron(n1, proj, [ratlat.unit(n1, i) for i in range(n1)])
    weier = ps.characteristic_number() == 1
    top = None
    if weier:
        tops = [v for v in verts if v[zi] == b + h]
        assert len(tops) == 1
        top = tuple(int(a) for a in tops[0])
    return weier, int(b), h, top, s


def z_report(poly):
    """Full z-classification of a nonzero polynomial."""
    weier, b, h, top, s = z_weierstrass_data(poly)
    zi = poly.zindex
    verts = s.skeleton()

    # z-simplicity, route one: the vertex-slope criteria
    zvals = sorted((v[zi] for v in verts), reverse=True)
    simple_slopes = len(set(zvals)) == len(zvals)
    if simple_slopes and len(verts) >= 2:
        order = sorted(verts, key=lambda v: -v[zi])
        xs = [i for i in range(poly.nvars) if i != zi]
        for x in xs:
            if order[1][x] - order[0][x] < 0:
                simple_slopes = False
                break
        if simple_slopes:
            for i in range(len(order) - 2):
                a0, a1v, a2 = order[i], order[i + 1], order[i + 2]
                for x in xs:
                    lhs = (a1v[x] - a0[x]) / (a0[zi] - a1v[zi])
                    rhs = (a2[x] - a1v[x]) / (a1v[zi] - a2[zi])
                    if lhs > rhs:
                        simple_slopes = False
                        break
                if not simple_slopes:
                    break
    simple_slopes = simple_slopes and weier

    # route two: every compact face has dimension at most one
    compact_ok = all(f.dim <= 1 for f in s.faces() if f.is_compact())
    simple_faces = weier and compact_ok
    assert simple_slopes == simple_faces, "z-simplicity routes disagree"

    removable = []
    if weier and h >= 1:
        removable = z_removable_faces(poly)
    return ZReport(is_weierstrass_type=weier, b=b, height=h, top_vertex=top,
                   is_z_simple=simple_faces, removable_faces=removable,
                   characteristic_number=s.characteristic_number(),
                   skeleton=tuple(tuple(int(a) for a in v) for v in verts))


def _p_adic_split(h, p):
    delta = 0
    while h % p == 0:
        h //= p
        delta += 1
    return delta, h


def _extract_chi(poly, top, b, h):
    """Candidate chi from the subleading z-block of a face partial sum.

    ``poly`` is the partial sum over the face; returns (unit, chi) or
    None when no exact candidate exists.
    """
    f = poly.field
    zi = poly.zindex
    unit = poly.terms.get(top)
    if unit is None:
        return None
    m0 = top[:zi] + (b,) + top[zi + 1:]   # exponent of z^b * x^top
    if f.char and h % f.char == 0:
        delta, hbar = _p_adic_split(h, f.char)
        step = f.char ** delta
    else:
        delta, hbar, step = 0, h, 1
    block_deg = b + h - step
    chi_terms = {}
    for e, c in poly.terms.items():
        if e[zi] != block_deg:
            continue
        shifted = tuple(a - m for a, m in zip(e, m0))
        shifted = shifted[:zi] + (0,) + shifted[zi + 1:]
        if any(a < 0 for a in shifted):
            return None
        if step > 1 and any(a % step for a in shifted):
            return None
        root = tuple(a // step for a in shifted)
        coeff = f.div(c, f.mul(f.coerce(hbar), unit))
        # a p^delta-th root in F_p is the element itself (Frobenius fixes F_p)
        chi_terms[root] = coeff
    if not chi_terms:
        return None
    chi = poly._make(chi_terms)
    if chi.constant_term() != 0:
        return None
    return unit, chi


def z_removable_faces(poly, dims=None):
    """All verified z-removable faces of Gamma_+(poly).

    Each face F containing the z-top vertex is tried: a candidate chi is
    extracted from the subleading z-block of ps(F) and kept only when
    ps(F) == unit * z^b * x^a1 * (z + chi)^h expands exactly.
    """
    weier, b, h, top, s = z_weierstrass_data(poly)
    if not weier:
        raise NotWeierstrass("Newton polyhedron is not of z-Weierstrass type")
    if h < 1:
        raise HeightZero("height zero polyhedra have no removable faces")
    zi = poly.zindex
    topf = ratlat.as_fraction_vector(top)
    out = []
    for face in s.faces():
        if face.dim < 1 or topf not in face.points:
            continue
        if dims is not None and face.dim not in dims:
            continue
        ps = partial_sum(face, poly)
        got = _extract_chi(ps, top, b, h)
        if got is None:
            continue
        unit, chi = got
        m0 = top[:zi] + (b,) + top[zi + 1:]
        zmon = tuple(1 if i == zi else 0 for i in range(poly.nvars))
        zpoly = poly.monomial(zmon)
        rebuilt = (zpoly + chi).power(h) * poly.monomial(m0, unit)
        if rebuilt == ps:
            out.append(RemovableFace(
                points=face.points, chi=chi, unit=unit,
                monomial_exponent=m0, dim=face.dim))
    out.sort(key=lambda r: (r.dim, r.points))
    return out


def eliminate_removable(poly, max_iter=64):
    """Iteratively remove dimension-one z-removable faces.

    Each step picks the removable edge minimizing the total x-degree of
    its chi term, substitutes z -> z - chi and repeats; returns the
    accumulated chi, the transformed polynomial and the step trace.
    """
    weier, b, h, top, _ = z_weierstrass_data(poly)
    if not weier:
        raise NotWeierstrass("input is not of z-Weierstrass type")
    if h < 1:
        raise HeightZero("nothing to eliminate at height zero")
    acc = poly._make({})
    current = poly
    steps = []
    last_val = None
    for _ in range(max_iter):
        _, _, h_now, _, _ = z_weierstrass_data(current)
        if h_now == 0:
            return acc, current, steps
        candidates = z_removable_faces(current, dims={1})
        if not candidates:
            assert not z_removable_faces(current), \
                "faces of dimension one exhausted but higher ones remain"
            return acc, current, steps
        chosen = min(candidates,
                     key=lambda r: (r.delta0_value(),
                                    sorted(r.chi.terms)))
        val = chosen.delta0_value()
        assert last_val is None or val >= last_val
        last_val = val
        steps.append({"face_points": chosen.points,
                      "chi": chosen.chi, "delta0": val})
        acc = acc + chosen.chi
        current = current.substitute_z(-chosen.chi)
    raise IterationCapExceeded(steps)


def polynomial_to_json(poly):
    return json.dumps(poly.to_json_dict(), sort_keys=True)


def polynomial_from_json(text):
    return Polynomial.from_json_dict(json.loads(text))
