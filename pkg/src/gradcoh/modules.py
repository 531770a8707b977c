"""Graded free modules, homogeneous maps, quotient algebras and presentations.

A finitely presented module is the cokernel of a homogeneous map of graded
free modules F1 -> F0, either over T itself or over A = T/I.  Over A the
matrix entries are kept as normal forms modulo a Groebner basis of I, and the
module is the T-module coker(F1 + I*F0 -> F0).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import NonHomogeneousInput
from .groebner import (Reducer, TermOrder, buchberger, groebner_basis, kernel_vectors,
                       minimal_subset, vec_add_poly_mul, vec_from_polys, vec_to_polys)
from .linalg import sparse_rank
from .ring import PolyRing, Polynomial, dadd, dsub, madd


@dataclass(frozen=True)
class GradedFree:
    """The graded free module sum_j T(-a_j); ``shifts`` are the generator degrees a_j."""

    ring: PolyRing
    shifts: tuple

    def __post_init__(self):
        g = self.ring.grading
        object.__setattr__(self, "shifts", tuple(g.as_degree(a) for a in self.shifts))

    @property
    def rank(self) -> int:
        return len(self.shifts)

    @cached_property
    def wshifts(self) -> tuple:
        g = self.ring.grading
        return tuple(g.weight(a) for a in self.shifts)

    @cached_property
    def torder(self) -> TermOrder:
        return TermOrder(self.ring, self.wshifts)

    def twist(self, d) -> "GradedFree":
        """F(d): generator degrees drop by d."""
        d = self.ring.grading.as_degree(d)
        return GradedFree(self.ring, tuple(dsub(a, d) for a in self.shifts))

    def term_degree(self, t):
        return dadd(self.ring.grading.degree(t[1]), self.shifts[t[0]])

    def vector_degree(self, v):
        degs = {self.term_degree(t) for t in v}
        if len(degs) != 1:
            if not degs:
                return None
            raise NonHomogeneousInput("module element", f"degrees {sorted(degs)}")
        return degs.pop()

    def basis_vector(self, k):
        return {(k, self.ring.zero_exp): self.ring.field.one}

    def __add__(self, other: "GradedFree") -> "GradedFree":
        return GradedFree(self.ring, self.shifts + other.shifts)

    def __repr__(self):
        g = self.ring.grading
        return "GradedFree(" + ", ".join(f"T({_neg(g.present(a))})" for a in self.shifts) + ")"


def _neg(d):
    return -d if isinstance(d, int) else tuple(-x for x in d)


class GradedFreeMap:
    """Homogeneous matrix F_source -> F_target stored column-wise as vectors."""

    def __init__(self, source: GradedFree, target: GradedFree, columns, check=True):
        self.source = source
        self.target = target
        self.columns = [dict(c) for c in columns]
        if len(self.columns) != source.rank:
            raise ValueError("column count does not match the source rank")
        if check:
            for j, col in enumerate(self.columns):
                for t in col:
                    if t[0] >= target.rank:
                        raise ValueError("entry outside the target")
                    if target.term_degree(t) != source.shifts[j]:
                        raise NonHomogeneousInput(f"entry ({t[0]}, {j})",
                                                  f"expected degree {source.shifts[j]}")

    @property
    def ring(self) -> PolyRing:
        return self.target.ring

    @classmethod
    def from_rows(cls, ring: PolyRing, rows, target_shifts, source_shifts=None):
        """Matrix given row by row (Polynomials or strings); column degrees are
        inferred from the first nonzero entry when ``source_shifts`` is omitted."""
        g = ring.grading
        rows = [[ring(e) for e in row] for row in rows]
        target = GradedFree(ring, tuple(target_shifts))
        if rows and len(rows) != target.rank:
            raise ValueError("row count does not match the target shifts")
        ncols = len(rows[0]) if rows else (len(source_shifts) if source_shifts is not None else 0)
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        for row in rows:
            for f in row:
                if f.terms and not f.is_homogeneous():
                    raise NonHomogeneousInput(str(f))
        if source_shifts is None:
            sh = []
            for j in range(ncols):
                d = None
                for i in range(len(rows)):
                    f = rows[i][j]
                    if f.terms:
                        d = dadd(f.degree(), target.shifts[i])
                        break
                sh.append(d if d is not None else g.zero)
            source_shifts = sh
        source = GradedFree(ring, tuple(source_shifts))
        cols = [vec_from_polys([rows[i][j] for i in range(len(rows))]) for j in range(ncols)]
        return cls(source, target, cols)

    def entry(self, i, j) -> Polynomial:
        return Polynomial(self.ring, {e: c for (p, e), c in self.columns[j].items() if p == i},
                          clean=False)

    def rows(self):
        cols = [vec_to_polys(self.ring, c, self.target.rank) for c in self.columns]
        return [[cols[j][i] for j in range(len(cols))] for i in range(self.target.rank)]

    def compose(self, other: "GradedFreeMap") -> "GradedFreeMap":
        """self o other."""
        fld = self.ring.field
        cols = []
        for col in other.columns:
            acc = {}
            for (p, e), c in col.items():
                vec_add_poly_mul(acc, {e: c}, self.columns[p], fld)
            cols.append(acc)
        return GradedFreeMap(other.source, self.target, cols, check=False)

    def is_zero(self) -> bool:
        return all(not c for c in self.columns)

    def __repr__(self):
        return f"GradedFreeMap({self.source} -> {self.target}, rows={self.rows()})"


class QuotientRing:
    """A = T/I for a homogeneous ideal I."""

    def __init__(self, ring: PolyRing, generators):
        gens = [ring(g) for g in generators]
        for g in gens:
            if g.terms and not g.is_homogeneous():
                raise NonHomogeneousInput(str(g))
        self.ring = ring
        self.generators = [g for g in gens if g.terms]
        self.gb = buchberger(self.generators, ring=ring)
        self._reducer = Reducer(TermOrder(ring, (0,)), ring.field)
        for g in self.gb:
            self._reducer.add({(0, e): c for e, c in g.terms.items()})

    def __eq__(self, other):
        return isinstance(other, QuotientRing) and self.ring == other.ring and set(self.gb) == set(other.gb)

    def __hash__(self):
        return hash((self.ring, frozenset(self.gb)))

    def __repr__(self):
        return f"T/({', '.join(map(str, self.gb))})"

    def reduce(self, f: Polynomial) -> Polynomial:
        if not f.terms or not self.gb:
            return f
        r = self._reducer.nf({(0, e): c for e, c in f.terms.items()})
        return Polynomial(self.ring, {e: c for (_, e), c in r.items()}, clean=False)

    def reduce_vec(self, v):
        if not self.gb or not v:
            return dict(v)
        by_pos = {}
        for (p, e), c in v.items():
            by_pos.setdefault(p, {})[(0, e)] = c
        out = {}
        for p, w in by_pos.items():
            for (_, e), c in self._reducer.nf(w).items():
                out[(p, e)] = c
        return out

    def ideal_vectors(self, rank):
        return [{(k, e): c for e, c in g.terms.items()} for g in self.gb for k in range(rank)]

    def as_module(self) -> "Presentation":
        """A as a cyclic T-module T/I."""
        T0 = GradedFree(self.ring, (self.ring.grading.zero,))
        return Presentation(GradedFreeMap.from_rows(self.ring, [list(self.gb)], T0.shifts))

    def free(self, shifts=None) -> "Presentation":
        """The free A-module sum A(-a), as a presentation over A."""
        shifts = shifts if shifts is not None else [self.ring.grading.zero]
        return Presentation.free(self.ring, shifts, algebra=self)


class Presentation:
    """M = coker(phi: F1 -> F0), over T (``algebra`` None) or over A = T/I."""

    def __init__(self, phi: GradedFreeMap, algebra: QuotientRing = None):
        if algebra is not None and algebra.ring != phi.ring:
            raise ValueError("algebra and matrix live over different rings")
        if algebra is not None:
            cols = [algebra.reduce_vec(c) for c in phi.columns]
            phi = GradedFreeMap(phi.source, phi.target, cols, check=False)
        self.phi = phi
        self.algebra = algebra

    # constructors
    @classmethod
    def from_rows(cls, ring, rows, shifts, source_shifts=None, algebra=None):
        return cls(GradedFreeMap.from_rows(ring, rows, shifts, source_shifts), algebra)

    @classmethod
    def free(cls, ring, shifts, algebra=None):
        F0 = GradedFree(ring, tuple(shifts))
        F1 = GradedFree(ring, ())
        return cls(GradedFreeMap(F1, F0, []), algebra)

    @classmethod
    def zero(cls, ring, algebra=None):
        return cls.free(ring, (), algebra)

    @classmethod
    def cyclic(cls, ring, ideal_gens, shift=None, algebra=None):
        """T/J (or A/J), optionally twisted so the generator sits in degree ``shift``."""
        g = ring.grading
        a = g.as_degree(shift) if shift is not None else g.zero
        gens = [ring(f) for f in ideal_gens]
        return cls.from_rows(ring, [gens], [a], algebra=algebra)

    # accessors
    @property
    def ring(self) -> PolyRing:
        return self.phi.ring

    @property
    def target(self) -> GradedFree:
        return self.phi.target

    @property
    def source(self) -> GradedFree:
        return self.phi.source

    @property
    def columns(self):
        return self.phi.columns

    def relations_T(self):
        """Relations of M as a T-module: the columns plus I*F0 over A."""
        rel = [c for c in self.columns if c]
        if self.algebra is not None:
            rel = rel + self.algebra.ideal_vectors(self.target.rank)
        return rel

    @cached_property
    def gb(self):
        """Reduced Groebner basis of the T-relation module in F0."""
        return groebner_basis(self.relations_T(), self.target.torder, self.ring.field)

    @cached_property
    def reducer(self) -> Reducer:
        red = Reducer(self.target.torder, self.ring.field)
        for g in self.gb:
            red.add(g)
        return red

    @cached_property
    def lead_terms(self):
        """Leading terms of the relation basis, grouped by position."""
        out = {p: [] for p in range(self.target.rank)}
        for g in self.gb:
            p, e = self.target.torder.lead(g)
            out[p].append(e)
        return out

    def normal_form(self, v):
        return self.reducer.nf(v) if v else {}

    def push_to_T(self) -> "Presentation":
        if self.algebra is None:
            return self
        rel = self.relations_T()
        F1 = GradedFree(self.ring, tuple(self.target.vector_degree(v) for v in rel))
        return Presentation(GradedFreeMap(F1, self.target, rel, check=False))

    def over(self, algebra: QuotientRing) -> "Presentation":
        """The same matrix read over A (for modules already annihilated by I)."""
        return Presentation(self.phi, algebra)

    def twist(self, d) -> "Presentation":
        """M(d)."""
        F0 = self.target.twist(d)
        F1 = self.source.twist(d)
        return Presentation(GradedFreeMap(F1, F0, self.columns, check=False), self.algebra)

    def rows(self):
        return self.phi.rows()

    def __repr__(self):
        over = "T" if self.algebra is None else repr(self.algebra)
        g = self.ring.grading
        shifts = [g.present(a) for a in self.target.shifts]
        rows = [[str(f) for f in row] for row in self.phi.rows()]
        return f"Presentation(over {over}: coker {rows} shifts {shifts})"

    @cached_property
    def _cache(self):
        return {}


# -- module operations ---------------------------------------------------------

def _vec_degrees(free: GradedFree, vecs):
    return tuple(free.vector_degree(v) for v in vecs)


def minimal_subset_of(vecs, free: GradedFree, algebra: QuotientRing = None):
    """Minimal generating subsequence of ``vecs`` (submodule of F, modulo I*F over A)."""
    mod = algebra.ideal_vectors(free.rank) if algebra is not None else ()
    vecs = [v for v in vecs if v]
    keep = minimal_subset(vecs, free.ring, free.wshifts, free.ring.field, modulo=mod)
    return [vecs[k] for k in keep]


def kernel_map(phi: GradedFreeMap, algebra: QuotientRing = None) -> GradedFreeMap:
    """Minimal generators of ker(phi) as the columns of a map into phi.source."""
    ring = phi.ring
    mod = algebra.ideal_vectors(phi.target.rank) if algebra is not None else ()
    gens = kernel_vectors(phi.columns, ring, phi.target.wshifts, phi.source.wshifts,
                          ring.field, modulo=mod)
    if algebra is not None:
        gens = [algebra.reduce_vec(v) for v in gens]
    gens = minimal_subset_of(gens, phi.source, algebra)
    gens = sorted(gens, key=lambda v: (phi.source.torder.weight(next(iter(v))),
                                       phi.source.torder.key(phi.source.torder.lead(v))))
    K = GradedFree(ring, _vec_degrees(phi.source, gens))
    return GradedFreeMap(K, phi.source, gens, check=False)


def image_presentation(K: GradedFreeMap, algebra: QuotientRing = None,
                       modulo=()) -> Presentation:
    """Presentation of the submodule generated by the columns of K (modulo ``modulo``
    and, over A, modulo I times the target)."""
    ring = K.ring
    mod = list(modulo)
    if algebra is not None:
        mod += algebra.ideal_vectors(K.target.rank)
    rel = kernel_vectors(K.columns, ring, K.target.wshifts, K.source.wshifts, ring.field,
                         modulo=mod)
    if algebra is not None:
        rel = [algebra.reduce_vec(v) for v in rel]
    rel = minimal_subset_of(rel, K.source, algebra)
    R = GradedFree(ring, _vec_degrees(K.source, rel))
    P = Presentation(GradedFreeMap(R, K.source, rel, check=False), algebra)
    return P


def kernel(phi: GradedFreeMap, over: QuotientRing = None) -> Presentation:
    """Presentation of ker(phi) on its minimal generators; ``.inclusion`` holds them."""
    K = kernel_map(phi, over)
    P = image_presentation(K, over)
    P.inclusion = K
    return P


def minimal_generators(M: Presentation):
    """Degrees of a k-basis of M / mM (with multiplicity, sorted)."""
    g = M.ring.grading
    F0 = M.target
    zero = M.ring.zero_exp
    out = []
    rel = M.relations_T()
    by_deg = {}
    for p, a in enumerate(F0.shifts):
        by_deg.setdefault(a, []).append(p)
    for a, positions in by_deg.items():
        pos_index = {p: k for k, p in enumerate(positions)}
        rows = []
        for v in rel:
            row = {pos_index[p]: c for (p, e), c in v.items() if e == zero and p in pos_index}
            if row:
                rows.append(row)
        r = sparse_rank(rows, M.ring.field)
        out.extend([a] * (len(positions) - r))
    out.sort(key=lambda d: (g.weight(d), d))
    return [g.present(d) for d in out]


def is_zero(M: Presentation) -> bool:
    return not minimal_generators(M)


def _find_unit(columns, zero):
    for q, col in enumerate(columns):
        for (p, e), c in col.items():
            if e == zero:
                return p, q, c
    return None


def prune_map(phi: GradedFreeMap, algebra: QuotientRing = None):
    """Cancel unit entries of phi.  Returns (new map, removed rows, removed columns),
    where removed indices refer to the original numbering."""
    ring = phi.ring
    fld = ring.field
    zero = ring.zero_exp
    cols = [dict(c) for c in phi.columns]
    row_ids = list(range(phi.target.rank))
    col_ids = list(range(phi.source.rank))
    removed_rows, removed_cols = [], []
    while True:
        hit = _find_unit(cols, zero)
        if hit is None:
            break
        p, q, u = hit
        uinv = fld.inv(u)
        pivot = cols[q]
        for c in range(len(cols)):
            if c == q:
                continue
            b = {e: co for (pp, e), co in cols[c].items() if pp == p}
            if b:
                neg = {e: fld.reduce(-co * uinv) for e, co in b.items()}
                vec_add_poly_mul(cols[c], neg, pivot, fld)
                if algebra is not None:
                    cols[c] = algebra.reduce_vec(cols[c])
        del cols[q]
        removed_cols.append(col_ids.pop(q))
        removed_rows.append(row_ids.pop(p))
        cols = [{((pp if pp < p else pp - 1), e): co for (pp, e), co in c.items() if pp != p}
                for c in cols]
    target = GradedFree(ring, tuple(phi.target.shifts[i] for i in row_ids))
    source = GradedFree(ring, tuple(phi.source.shifts[j] for j in col_ids))
    return GradedFreeMap(source, target, cols, check=False), removed_rows, removed_cols


def minimal_presentation(M: Presentation) -> Presentation:
    """Minimal presentation: no unit entries and a minimal set of relations."""
    phi, _, _ = prune_map(M.phi, M.algebra)
    cols = minimal_subset_of(phi.columns, phi.target, M.algebra)
    cols = sorted(cols, key=lambda v: (phi.target.torder.weight(next(iter(v))),
                                       phi.target.torder.key(phi.target.torder.lead(v))))
    F1 = GradedFree(M.ring, _vec_degrees(phi.target, cols))
    return Presentation(GradedFreeMap(F1, phi.target, cols, check=False), M.algebra)


def standard_basis(M: Presentation, deg):
    """Standard monomials (position, exponent) of M in multidegree ``deg``: a k-basis of M_deg."""
    from .hilbert import monomials_of_degree
    g = M.ring.grading
    deg = g.as_degree(deg)
    out = []
    for p, a in enumerate(M.target.shifts):
        lts = M.lead_terms[p]
        for e in monomials_of_degree(g, dsub(deg, a)):
            if not any(all(x <= y for x, y in zip(le, e)) for le in lts):
                out.append((p, e))
    return out


def direct_sum(*mods: Presentation) -> Presentation:
    ring = mods[0].ring
    algebra = mods[0].algebra
    shifts, sshifts, cols = [], [], []
    off = 0
    for M in mods:
        shifts.extend(M.target.shifts)
        sshifts.extend(M.source.shifts)
        for c in M.columns:
            cols.append({(p + off, e): v for (p, e), v in c.items()})
        off += M.target.rank
    F0 = GradedFree(ring, tuple(shifts))
    F1 = GradedFree(ring, tuple(sshifts))
    return Presentation(GradedFreeMap(F1, F0, cols, check=False), algebra)


def multiply_vec(ring, exp, v):
    return {(p, madd(e, exp)): c for (p, e), c in v.items()}
