"""Graded Ext over T and over A = T/I, and the canonical module of A.

Ext^i(M, N) is the cohomology of Hom(F_., N) for a minimal free resolution
F_. of M.  Hom(T(-a), N) = N(a), so each term of the Hom complex is a
cokernel on the free module G0 (x) F_k^*, and cohomology is a subquotient
computed with two kernel computations.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import CMRequired, NegativeIndex, ResolutionTooShort
from .groebner import kernel_vectors
from .hilbert import HilbertSeries, dimension, hilbert_series
from .modules import (GradedFree, GradedFreeMap, Presentation, QuotientRing,
                      image_presentation, minimal_generators, minimal_presentation,
                      minimal_subset_of)
from .resolution import FreeResolution, free_resolution
from .ring import dsub


@dataclass(frozen=True)
class DualizingShift:
    """Bookkeeping for omega_T = T(-r) and the duality index."""

    ring: object
    h: int = 0
    d: int = None

    @property
    def r(self):
        """r = sum of the variable degrees, always recomputed from the grading."""
        return self.ring.grading.present(self.ring.grading.total_degree)

    @property
    def s(self) -> int:
        return self.ring.nvars

    def omega_T(self) -> Presentation:
        return Presentation.free(self.ring, [self.ring.grading.total_degree])

    def t_index(self, i: int) -> int:
        """Ext index paired with H^i on the T-side: s - i."""
        return self.s - i

    def a_index(self, i: int) -> int:
        """Ext index paired with H^i on the A-side: d - i."""
        return self.d - i


@dataclass
class ExtModule:
    index: int
    source: Presentation
    coefficient: Presentation
    module: Presentation
    over: QuotientRing = None

    @cached_property
    def hilbert(self) -> HilbertSeries:
        return hilbert_series(self.module)

    def hilbert_function(self, j) -> int:
        return self.hilbert.coefficient(j)

    def is_zero(self) -> bool:
        return self.hilbert.is_zero()


def omega_T(ring) -> Presentation:
    """The canonical module T(-r) of T."""
    return DualizingShift(ring).omega_T()


# -- Hom complexes -------------------------------------------------------------

class _HomComplex:
    """Hom(F_., N) for a free resolution F_. and a T-presentation N."""

    def __init__(self, res: FreeResolution, N: Presentation):
        self.res = res
        self.ring = N.ring
        self.N = N
        self.G0 = N.target
        self.rel = N.relations_T()

    def term(self, k) -> GradedFree:
        """G0 (x) F_k^*: basis (a, l) at index a*g + l, degree b_l - a_k."""
        F = self.res.frees[k] if k < len(self.res.frees) else GradedFree(self.ring, ())
        shifts = tuple(dsub(b, a) for a in F.shifts for b in self.G0.shifts)
        return GradedFree(self.ring, shifts)

    def relations(self, k):
        g = self.G0.rank
        F = self.res.frees[k] if k < len(self.res.frees) else None
        if F is None:
            return []
        out = []
        for a in range(F.rank):
            for r in self.rel:
                out.append({(a * g + l, e): c for (l, e), c in r.items()})
        return out

    def differential(self, k):
        """Columns of delta^k: Hom(F_k, N) -> Hom(F_{k+1}, N), precomposition with d_{k+1}."""
        g = self.G0.rank
        nk = self.res.frees[k].rank
        if k >= len(self.res.maps):
            return [dict() for _ in range(nk * g)]
        d = self.res.maps[k]
        rows = [[] for _ in range(nk)]
        for b, col in enumerate(d.columns):
            for (a, e), c in col.items():
                rows[a].append((b, e, c))
        cols = []
        for a in range(nk):
            for l in range(g):
                cols.append({(b * g + l, e): c for (b, e, c) in rows[a]})
        return cols

    def cohomology(self, k) -> Presentation:
        ring = self.ring
        fld = ring.field
        Hk = self.term(k)
        if Hk.rank == 0:
            return Presentation.zero(ring)
        if k + 1 < len(self.res.frees):
            Hn = self.term(k + 1)
            Z = kernel_vectors(self.differential(k), ring, Hn.wshifts, Hk.wshifts, fld,
                               modulo=self.relations(k + 1))
        else:
            Z = [Hk.basis_vector(p) for p in range(Hk.rank)]
        B = list(self.relations(k))
        if k >= 1:
            B += [c for c in self.differential(k - 1) if c]
        Z = [z for z in Z if z]
        zmod = minimal_subset_of_modulo(Z, Hk, B)
        if not zmod:
            return Presentation.zero(ring)
        FZ = GradedFree(ring, tuple(Hk.vector_degree(z) for z in zmod))
        Zmap = GradedFreeMap(FZ, Hk, zmod, check=False)
        return minimal_presentation(image_presentation(Zmap, modulo=B))


def minimal_subset_of_modulo(vecs, free: GradedFree, modulo):
    from .groebner import minimal_subset
    keep = minimal_subset(vecs, free.ring, free.wshifts, free.ring.field, modulo=modulo)
    return [vecs[k] for k in keep]


# -- Ext -------------------------------------------------------------------------

def ext_over_T(M: Presentation, N: Presentation, i: int) -> ExtModule:
    """Ext^i_T(M, N) with its exact graded structure (both modules viewed over T)."""
    if i < 0:
        raise NegativeIndex(f"Ext index {i} < 0")
    MT = M.push_to_T()
    key = ("extT", i, id(N))
    if key in MT._cache and MT._cache[key][0] is N:
        return MT._cache[key][1]
    res = free_resolution(MT)
    if i >= len(res.frees):
        mod = Presentation.zero(M.ring)
    else:
        mod = _HomComplex(res, N.push_to_T()).cohomology(i)
    E = ExtModule(i, M, N, mod)
    MT._cache[key] = (N, E)
    return E


def ext_over_A(M: Presentation, N: Presentation, i: int, length: int = None) -> ExtModule:
    """Ext^i_A(M, N) from a minimal A-free resolution of M of the given length
    (default dim A + 2 maps)."""
    A = M.algebra
    if A is None or N.algebra is None or A != N.algebra:
        raise ValueError("ext_over_A needs two presentations over the same quotient ring")
    if i < 0:
        raise NegativeIndex(f"Ext index {i} < 0")
    if length is None:
        length = max(dimension(A.as_module()), 0) + 2
    res = free_resolution(M, length)
    if i >= len(res.frees):
        if not res.complete:
            raise ResolutionTooShort(f"resolution of length {res.length} cannot certify Ext^{i}")
        return ExtModule(i, M, N, Presentation.zero(M.ring, A), over=A)
    if i + 1 > res.length and not res.complete:
        raise ResolutionTooShort(f"Ext^{i} needs {i + 1} maps, resolution has {res.length}")
    modT = _HomComplex(res, N).cohomology(i)
    mod = minimal_presentation(Presentation(modT.phi, A))
    return ExtModule(i, M, N, mod, over=A)


# -- canonical module --------------------------------------------------------------

@dataclass
class CanonicalModule(ExtModule):
    h: int = 0
    module_T: Presentation = None
    annihilated: bool = True
    gorenstein_shift: object = None

    @property
    def is_gorenstein(self) -> bool:
        return self.gorenstein_shift is not None


def _annihilated_by(P: Presentation, polys) -> bool:
    fld = P.ring.field
    for g in polys:
        for k in range(P.target.rank):
            v = {(k, e): c for e, c in g.terms.items()}
            if P.normal_form(v):
                return False
    return True


def canonical_module(A: QuotientRing) -> CanonicalModule:
    """omega_A = Ext^h_T(A, T(-r)) with h = s - dim A, as a presentation over A."""
    if "omega" in A.__dict__:
        return A.__dict__["omega"]
    ring = A.ring
    AT = A.as_module()
    h = ring.nvars - dimension(AT)
    E = ext_over_T(AT, omega_T(ring), h)
    annihilated = _annihilated_by(E.module, A.gb)
    if not annihilated:
        raise ArithmeticError("Ext^h_T(A, omega_T) is not annihilated by I")
    modA = minimal_presentation(Presentation(E.module.phi, A))
    gens = minimal_generators(modA)
    shift = None
    if len(gens) == 1:
        a = gens[0]
        shift = -a if isinstance(a, int) else tuple(-x for x in a)
    omega = CanonicalModule(h, AT, omega_T(ring), modA, over=A, h=h, module_T=E.module,
                            annihilated=annihilated, gorenstein_shift=shift)
    A.__dict__["omega"] = omega
    return omega


def is_cohen_macaulay(A: QuotientRing) -> bool:
    """Ext^i_T(A, omega_T) = 0 for every i != h (cached on A)."""
    if "cm" in A.__dict__:
        return A.__dict__["cm"]
    ring = A.ring
    AT = A.as_module()
    h = ring.nvars - dimension(AT)
    res = free_resolution(AT)
    ok = all(ext_over_T(AT, omega_T(ring), i).is_zero()
             for i in range(len(res.frees)) if i != h)
    A.__dict__["cm"] = ok
    return ok


def certify_cm(A: QuotientRing):
    if not is_cohen_macaulay(A):
        raise CMRequired(f"{A} is not Cohen-Macaulay; only the T-side duality is available")
    return canonical_module(A)
