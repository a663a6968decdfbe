"""Randomized invariant batteries behind the verify command.

Each battery returns (ok, details) where details carries counts and, on
failure, the first witness in serializable form.
"""

import random

from . import randgen
from .cone import Cone
from .fan import face_closure, real_intersection
from .newton import (Field, QQ, newton_polyhedron, ord_in, z_report,
                     z_weierstrass_data)
from .polyhedron import minkowski_fan_identity
from .upward import (TripleContext, upward_subdivide,
                     verify_hard_height_inequality, verify_height_inequality)


def battery_duality(seed, count=60, dims=(2, 3, 4)):
    """dual(dual(C)) = C, (S+T)v = Sv n Tv, (S n T)v = Sv + Tv."""
    rng = random.Random(seed)
    for i in range(count):
        dim = rng.choice(dims)
        c = randgen.random_cone(rng, dim)
        d = randgen.random_cone(rng, dim)
        if c.dual().dual() != c:
            return False, {"case": i, "law": "double dual", "cone": c.rays}
        if c.sum(d).dual() != c.dual().intersection(d.dual()):
            return False, {"case": i, "law": "(S+T)v = Sv n Tv",
                           "left": c.rays, "right": d.rays}
        if c.intersection(d).dual() != c.dual().sum(d.dual()):
            return False, {"case": i, "law": "(SnT)v = Sv + Tv",
                           "left": c.rays, "right": d.rays}
    return True, {"count": count}


def battery_ord_in(seed, count=100):
    """Lemma 5.1.14/15: sum rule and multiplicativity of ord/in."""
    rng = random.Random(seed)
    fields = [QQ, Field(5)]
    for i in range(count):
        field = rng.choice(fields)
        nvars = rng.choice([2, 3])
        f = randgen.random_polynomial(rng, nvars, field=field)
        g = randgen.random_polynomial(rng, nvars, field=field)
        w = randgen.random_weight(rng, nvars)
        of, inf_ = ord_in(w, f)
        og, ing = ord_in(w, g)
        op, inp_ = ord_in(w, f * g)
        if op != of + og or inp_ != inf_ * ing:
            return False, {"case": i, "law": "product",
                           "f": f.to_text(), "g": g.to_text()}
        osum, insum = ord_in(w, f + g)
        lo = of if of <= og else og
        if not (osum >= lo or (f + g).is_zero()):
            return False, {"case": i, "law": "sum lower bound",
                           "f": f.to_text(), "g": g.to_text()}
        if of != og or not (inf_ + ing).is_zero():
            if osum != lo:
                return False, {"case": i, "law": "sum equality",
                               "f": f.to_text(), "g": g.to_text()}
            expect = inf_ if of < og else (ing if og < of else inf_ + ing)
            if insum != expect:
                return False, {"case": i, "law": "initial of sum",
                               "f": f.to_text(), "g": g.to_text()}
    return True, {"count": count}


def battery_minkowski(seed, count=30):
    """Lemma 10.13.14: the Newton polyhedron turns products into sums."""
    rng = random.Random(seed)
    for i in range(count):
        nvars = rng.choice([2, 3])
        f = randgen.random_polynomial(rng, nvars, max_deg=4, max_terms=4)
        g = randgen.random_polynomial(rng, nvars, max_deg=4, max_terms=4)
        sf, sg = newton_polyhedron(f), newton_polyhedron(g)
        sprod = newton_polyhedron(f * g)
        if sprod != sf.minkowski_sum(sg):
            return False, {"case": i, "law": "Gamma(fg) = Gamma(f)+Gamma(g)",
                           "f": f.to_text(), "g": g.to_text()}
        if sprod.face_cone_decomposition() != minkowski_fan_identity(sf, sg):
            return False, {"case": i, "law": "D(fg) = D(f) ^ D(g)",
                           "f": f.to_text(), "g": g.to_text()}
    return True, {"count": count}


def battery_face_cone_oracle(seed, count=20, dims=(2, 3)):
    """Direct D(S|V) equals the homogenization route."""
    rng = random.Random(seed)
    for i in range(count):
        dim = rng.choice(dims)
        s = randgen.random_pseudo_polyhedron(rng, dim)
        if s.face_cone_decomposition() != s.face_cone_decomposition_homogenized():
            return False, {"case": i, "points": [list(map(str, p))
                                                 for p in s.points]}
    return True, {"count": count}


def pipeline_context(poly):
    """The (H, C, S) triple of the z-analysis pipeline."""
    n = poly.nvars
    s = newton_polyhedron(poly)
    dual_orthant = Cone.from_generators(
        n, [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)])
    cfan = face_closure([dual_orthant])
    hray = Cone.ray(tuple(1 if i == poly.zindex else 0 for i in range(n)))
    return TripleContext(hray, cfan, s)


def battery_height_inequalities(seed, count=6):
    """Thm 17.1.4(c) and Thm 18.3.8(d) over random z-simple inputs."""
    rng = random.Random(seed)
    done = 0
    while done < count:
        nvars = rng.choice([2, 3])
        poly = randgen.random_z_simple_polynomial(rng, nvars)
        rep = z_report(poly)
        if not rep.is_z_simple or rep.height < 2:
            continue
        done += 1
        ctx = pipeline_context(poly).validate()
        usd = upward_subdivide(ctx, _validated=True)
        hrep = verify_height_inequality(ctx)
        if not hrep["ok"]:
            return False, {"poly": poly.to_text(), "report": hrep}
        hard = verify_hard_height_inequality(ctx, usd)
        if not hard["ok"]:
            return False, {"poly": poly.to_text(), "report": hard}
    return True, {"count": count}


BATTERIES = (
    ("exact_duality", battery_duality),
    ("ord_in_calculus", battery_ord_in),
    ("newton_minkowski", battery_minkowski),
    ("face_cone_oracle", battery_face_cone_oracle),
    ("height_inequalities", battery_height_inequalities),
)


def run_all(seed):
    from .errors import PolyfanError

    results = []
    ok = True
    for name, fn in BATTERIES:
        try:
            good, details = fn(seed)
        except (PolyfanError, AssertionError) as exc:
            good = False
            details = {"witness": f"{type(exc).__name__}: {exc}"}
        ok = ok and good
        results.append({"battery": name, "ok": good, "details": details})
    return ok, results
