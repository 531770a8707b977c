"""Fixed corpus of modules shared by the property and acceptance suites."""
from __future__ import annotations

import random

from gradcoh import polynomial_ring
from gradcoh.hilbert import monomials_of_degree
from gradcoh.modules import GradedFree, GradedFreeMap, Presentation, QuotientRing


def _poly_of_degree(ring, d, rng, max_terms=3):
    mons = list(monomials_of_degree(ring.grading, (d,)))
    if not mons:
        return {}
    rng.shuffle(mons)
    out = {}
    for e in mons[:rng.randint(1, max_terms)]:
        c = rng.choice([-3, -2, -1, 1, 1, 2, 3])
        out[e] = ring.field(c)
    return out


def random_cokernel(seed, s=None, weights=None, max_gens=2, max_cols=3):
    """A seeded random homogeneous presentation over a weighted polynomial ring."""
    rng = random.Random(seed)
    s = s or rng.choice([2, 3])
    weights = weights or tuple(rng.choice([1, 1, 2]) for _ in range(s))
    ring = polynomial_ring(["x", "y", "z"][:s], weights=weights)
    ngens = rng.randint(1, max_gens)
    shifts = sorted(rng.randint(0, 1) for _ in range(ngens))
    cols = []
    for _ in range(rng.randint(1, max_cols)):
        b = max(shifts) + rng.randint(1, 2)
        col = {}
        for p, a in enumerate(shifts):
            if rng.random() < 0.75:
                for e, c in _poly_of_degree(ring, b - a, rng).items():
                    col[(p, e)] = c
        if col:
            cols.append(col)
    F0 = GradedFree(ring, tuple((a,) for a in shifts))
    F1 = GradedFree(ring, tuple(F0.vector_degree(v) for v in cols))
    return Presentation(GradedFreeMap(F1, F0, cols, check=False))


def named_corpus():
    """[(name, Presentation over T)] with s <= 3 and weights <= 3."""
    T1 = polynomial_ring("x")
    (x1,) = T1.gens
    T2 = polynomial_ring("x y")
    x, y = T2.gens
    T3 = polynomial_ring("x y z", weights=(1, 2, 3))
    a, b, c = T3.gens
    S3 = polynomial_ring("x y z")
    u, v, w = S3.gens
    out = [
        ("T=k[x,y]", Presentation.free(T2, [0])),
        ("k[x]", Presentation.free(T1, [0])),
        ("T/(x^2) over k[x]", Presentation.cyclic(T1, [x1 ** 2])),
        ("T/(xy)", Presentation.cyclic(T2, [x * y])),
        ("T/(x^2,xy)", Presentation.cyclic(T2, [x ** 2, x * y])),
        ("T/(x,y)^2", Presentation.cyclic(T2, [x ** 2, x * y, y ** 2])),
        ("twisted cubic quotient (1,2,3)", Presentation.cyclic(T3, [a ** 2 - b, a * b - c, b ** 2 - a * c])),
        ("k[x,y,z]/(xz,yz)", Presentation.cyclic(S3, [u * w, v * w])),
        ("coker(x y) shifted", Presentation.from_rows(T2, [[x, y]], [1])),
    ]
    for seed in range(5):
        out.append((f"random cokernel seed {seed}", random_cokernel(1000 + seed)))
    return out


def cm_algebras():
    T1 = polynomial_ring("x")
    (x1,) = T1.gens
    T2 = polynomial_ring("x y")
    x, y = T2.gens
    return [
        ("k[x]/(x^2)", QuotientRing(T1, [x1 ** 2])),
        ("k[x,y]/(xy)", QuotientRing(T2, [x * y])),
        ("k[x,y]/(y^2)", QuotientRing(T2, [y ** 2])),
    ]


def modules_over(A):
    """At least three modules over the quotient ring A."""
    ring = A.ring
    gens = ring.gens
    mods = [("A", A.free([0])), ("A(-1)", A.free([1])), ("k", Presentation.cyclic(ring, gens, algebra=A))]
    if ring.nvars == 2:
        x, y = gens
        mods.append(("A/(x)", Presentation.cyclic(ring, [x], algebra=A)))
        mods.append(("A/(y)", Presentation.cyclic(ring, [y], algebra=A)))
    return mods
