"""Brute-force oracles, independent of the library's algorithms.

Membership goes through Caratheodory subset enumeration and dual cones
through active-set enumeration, so nothing here shares code with the
double description method they are used to check.
"""

from fractions import Fraction
from itertools import combinations

from polyfan import ratlat
from polyfan.cone import Cone
from polyfan.ratlat import dot


def brute_member(dim, gens, v):
    """v in cone(gens) by enumerating independent subsets."""
    gens = [g for g in gens if not ratlat.is_zero(g)]
    if ratlat.is_zero(v):
        return True
    if not gens:
        return False
    r = ratlat.rank(gens)
    for k in range(1, r + 1):
        for subset in combinations(gens, k):
            if ratlat.rank(subset) != k:
                continue
            cols = [tuple(g[i] for g in subset) for i in range(dim)]
            sol = ratlat.solve_rational(cols, v)
            if sol is not None and all(c >= 0 for c in sol):
                # solve_rational pins free vars to zero;  with an
                # independent subset the solution is unique
                if all(sum(c * g[i] for c, g in zip(sol, subset)) == v[i]
                       for i in range(dim)):
                    return True
    return False


def brute_dual_generators(dim, gens):
    """Generators of {w : <w, g> >= 0 for all g} by active sets.

    Extreme rays (modulo the dual lineality) have dim - ell - 1
    independent active generators, so enumerate those subsets, pick a
    kernel direction off the lineality and keep the feasible signs.
    """
    gens = [g for g in gens if not ratlat.is_zero(g)]
    lin = ratlat.kernel_basis(gens, dim) if gens else \
        [ratlat.unit(dim, i) for i in range(dim)]
    ell = len(lin)
    out = [e for w in lin for e in (w, ratlat.vneg(w))]
    if not gens:
        return out
    target = dim - ell - 1
    for k in range(0, len(gens) + 1):
        for subset in combinations(gens, k):
            if ratlat.rank(subset) != target:
                continue
            kern = ratlat.kernel_basis(subset, dim) if subset else \
                [ratlat.unit(dim, i) for i in range(dim)]
            direction = None
            for w in kern:
                if ratlat.rank(list(lin) + [w]) > ell:
                    direction = w
                    break
            if direction is None:
                continue
            for cand in (direction, ratlat.vneg(direction)):
                if all(dot(cand, g) >= 0 for g in gens):
                    out.append(cand)
    return out


def check_dual_against_oracle(cone):
    """The library dual must equal the active-set enumeration dual."""
    dim = cone.ambient_dim
    gens = cone.generators()
    dual = cone.dual()
    # soundness: every dual generator is feasible
    for u in dual.generators():
        assert all(dot(u, g) >= 0 for g in gens)
    # completeness: every oracle generator lies in the computed dual
    for w in brute_dual_generators(dim, gens):
        assert dual.contains(w), (cone, w)
    # and every computed generator is a combination of oracle ones
    oracle = brute_dual_generators(dim, gens)
    for u in dual.generators():
        assert brute_member(dim, oracle, u), (cone, u)


def fan_from_doc(doc):
    """Rebuild a fan from the CLI JSON schema (face closure implied)."""
    from polyfan.fan import face_closure
    rays = [tuple(r) for r in doc["rays"]]
    cones = [Cone.from_generators(doc["dim"], [rays[i] for i in idx])
             for idx in doc["cones"]]
    return face_closure(cones)


def hilbert_basis_2d(cone, bound=12):
    """Hilbert basis of a 2-d pointed cone by window enumeration.

    The interior members are exactly the rays every simplicial
    unimodular subdivision must contain.
    """
    assert cone.ambient_dim == 2 and cone.dim == 2 and cone.is_pointed
    assert all(abs(a) <= bound // 2 for r in cone.rays for a in r)
    pts = set()
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            if (a, b) != (0, 0) and cone.contains((a, b)):
                pts.add((a, b))
    minimal = [v for v in pts
               if not any(tuple(ratlat.vsub(v, p)) in pts for p in pts
                          if p != v)]
    return sorted(set(minimal))


def hirzebruch_jung_interior_rays(cone, bound=12):
    return sorted(set(hilbert_basis_2d(cone, bound)) - set(cone.rays))
