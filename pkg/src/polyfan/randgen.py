"""Deterministic random generators for the verification batteries.

Everything takes an explicit random.Random instance so that a seed
pins the whole battery bit-for-bit.
"""

from fractions import Fraction

from . import ratlat
from .cone import Cone
from .errors import ZeroVector
from .fan import Fan, face_closure
from .newton import Field, Polynomial, QQ
from .subdivide import star_subdivision


def random_vector(rng, dim, bound=4, allow_zero=True):
    while True:
        v = tuple(rng.randint(-bound, bound) for _ in range(dim))
        if allow_zero or not ratlat.is_zero(v):
            return v


def random_cone(rng, dim, max_gens=5, bound=4):
    """A random rational cone, possibly with lineality."""
    k = rng.randint(1, max_gens)
    gens = []
    for _ in range(k):
        v = random_vector(rng, dim, bound)
        if not ratlat.is_zero(v):
            gens.append(v)
    if not gens:
        gens = [ratlat.unit(dim, rng.randrange(dim))]
    return Cone.from_generators(dim, gens)


def random_unimodular(rng, dim, steps=6):
    """A random unimodular integer matrix as a tuple of rows."""
    m = [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
    for _ in range(steps):
        i, j = rng.randrange(dim), rng.randrange(dim)
        if i == j:
            continue
        c = rng.choice([-2, -1, 1, 2])
        for k in range(dim):
            m[i][k] += c * m[j][k]
    return tuple(tuple(r) for r in m)


def apply_matrix(matrix, v):
    return tuple(sum(row[k] * v[k] for k in range(len(v))) for row in matrix)


def random_polynomial(rng, nvars=2, max_deg=5, max_terms=6, field=QQ,
                      variables=None, zvar="z"):
    """A random nonzero polynomial with small support."""
    if variables is None:
        variables = tuple("xy"[:nvars - 1]) + (zvar,)
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        e = tuple(rng.randint(0, max_deg) for _ in range(nvars))
        c = field.coerce(rng.choice([c for c in range(-4, 5) if c != 0]))
        if c != 0:
            terms[e] = c
    if not terms:
        terms[(0,) * nvars] = field.coerce(1)
    return Polynomial(field, variables, zvar, terms)


def random_weight(rng, nvars, bound=5):
    return tuple(Fraction(rng.randint(0, bound), rng.randint(1, 3))
                 for _ in range(nvars))


def random_pseudo_polyhedron(rng, dim, max_points=6, bound=5):
    from .polyhedron import PseudoPolyhedron
    npts = rng.randint(1, max_points)
    pts = [tuple(Fraction(rng.randint(-bound, bound), rng.choice([1, 1, 2]))
                 for _ in range(dim)) for _ in range(npts)]
    nrec = rng.randint(0, dim)
    rec = [random_vector(rng, dim, 3) for _ in range(nrec)]
    rec = [r for r in rec if not ratlat.is_zero(r)]
    return PseudoPolyhedron(dim, pts, rec)


def _staircase(rng, nx, zs, tries=40):
    """Integer vertices over strictly descending z-levels whose
    per-coordinate slopes weakly increase, strictly somewhere at every
    step (the z-simplicity shape, rational slopes allowed)."""
    drops = [zs[i - 1] - zs[i] for i in range(1, len(zs))]
    for _ in range(tries):
        incs = [[rng.randint(0, 3 * d) for _ in range(nx)] for d in drops]
        ok = True
        for i in range(1, len(incs)):
            better = False
            for j in range(nx):
                lhs = incs[i - 1][j] * drops[i]
                rhs = incs[i][j] * drops[i - 1]
                if lhs > rhs:
                    ok = False
                    break
                if lhs < rhs:
                    better = True
            if not ok:
                break
        if ok and incs and all(any(a > 0 for a in inc) for inc in incs[:1]):
            # every interior vertex must be genuine: consecutive slope
            # vectors must differ
            for i in range(1, len(incs)):
                if all(incs[i - 1][j] * drops[i] == incs[i][j] * drops[i - 1]
                       for j in range(nx)):
                    ok = False
                    break
        if not ok or not incs:
            continue
        c = [rng.randint(0, 1) for _ in range(nx)]
        verts = [tuple(c) + (zs[0],)]
        for inc, z in zip(incs, zs[1:]):
            c = [a + b for a, b in zip(c, inc)]
            verts.append(tuple(c) + (z,))
        return verts
    # fallback: plain integer slopes always satisfy the conditions
    c = [rng.randint(0, 1) for _ in range(nx)]
    slopes = [0] * nx
    verts = [tuple(c) + (zs[0],)]
    for i in range(1, len(zs)):
        drop = zs[i - 1] - zs[i]
        bumps = [rng.randint(0, 1) for _ in range(nx)]
        bumps[rng.randrange(nx)] = 1
        slopes = [s + b for s, b in zip(slopes, bumps)]
        c = [a + s * drop for a, s in zip(c, slopes)]
        verts.append(tuple(c) + (zs[i],))
    return verts


def random_z_simple_polynomial(rng, nvars, height=None, field=QQ):
    """A z-simple polynomial built from a convex vertex staircase.

    The skeleton is a strictly z-descending chain whose per-coordinate
    slopes weakly increase with a strict increase at every step, which
    is exactly the z-simplicity criterion.
    """
    if height is None:
        height = rng.randint(2, 4)
    h = height
    nx = nvars - 1
    levels = sorted(rng.sample(range(0, h), rng.randint(1, min(h, 3))),
                    reverse=True)
    zs = [h] + levels
    if zs[-1] != 0:
        zs.append(0)
    verts = _staircase(rng, nx, zs)
    variables = tuple("xy"[:nx]) + ("z",)
    terms = {}
    for v in verts:
        coeff = field.coerce(rng.choice([c for c in range(-3, 4) if c != 0]))
        terms[v] = coeff
    # decorate with a few interior terms that do not change the hull
    for _ in range(rng.randint(0, 2)):
        base = rng.choice(verts)
        extra = tuple(a + rng.randint(0, 2) for a in base[:-1]) + (base[-1],)
        if extra not in terms:
            terms[extra] = field.coerce(rng.choice([1, 2, -1]))
    return Polynomial(field, variables, "z", terms)


def random_hce_sextuplet(rng, dim):
    """A random valid (H, C, m, E) for the basic subdivision.

    Built in standard coordinates with H = the last unit ray, optionally
    star subdivided away from H, then pushed through a random
    unimodular change of basis.
    """
    base = [ratlat.unit(dim, i) for i in range(dim)]
    cones = [Cone.from_generators(dim, base)]
    if rng.random() < 0.5:
        flipped = [ratlat.vneg(base[0])] + base[1:]
        cones.append(Cone.from_generators(dim, flipped))
    fan = face_closure(cones)
    hray = Cone.ray(base[-1])
    for _ in range(rng.randint(0, 2)):
        choices = [c for c in fan.cones
                   if c.dim >= 2 and not c.contains_cone(hray)]
        if not choices:
            break
        fan = star_subdivision(fan, rng.choice(choices))
    matrix = random_unimodular(rng, dim)
    mapped = [Cone.from_generators(dim, [apply_matrix(matrix, g)
                                         for g in c.generators()])
              for c in fan.cones]
    fan = Fan(dim, mapped, validate=False)
    hray = Cone.ray(apply_matrix(matrix, base[-1]))
    away = [r for r in fan.rays() if r != hray]
    m = rng.randint(0, 3)
    emap = tuple(rng.choice(away) for _ in range(m))
    return hray, fan, m, emap
