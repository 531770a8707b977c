"""Graded local cohomology H^i_m(M) with respect to the irrelevant ideal.

Three independent routes:

* graded local duality on T: dim H^i(M)_j = dim Ext^{s-i}_T(M, T(-r))_{-j}
  (exact, every degree), and its A-side form for Cohen-Macaulay A;
* module saturation for H^0 (exact, returns the torsion submodule);
* the degree-j strand of the Koszul complex K(x_1^t, ..., x_s^t; M), whose
  cohomology approximates H^i_j as t grows (a truncated colimit).
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from math import ceil

from .errors import NotZGraded
from .groebner import basis_signature, colon_vectors, groebner_basis
from .hilbert import (HilbertSeries, depth_dim, dimension, hilbert_polynomial, hilbert_series,
                      monomials_of_degree)
from .homological import certify_cm, ext_over_A, ext_over_T, omega_T
from .linalg import sparse_rank
from .modules import (GradedFree, GradedFreeMap, Presentation, image_presentation,
                      minimal_presentation, standard_basis)
from .ring import dadd, dneg


class GradedDimensions:
    """j -> dim_k H_j for a module that is the graded dual of a finitely generated E,
    i.e. dim H_j = dim E_{-j}."""

    def __init__(self, ext, index, method="duality"):
        self.ext = ext
        self.index = index
        self.method = method

    @property
    def series(self) -> HilbertSeries:
        return self.ext.hilbert

    @property
    def grading(self):
        return self.series.grading

    def __call__(self, j) -> int:
        g = self.grading
        return self.series.coefficient(dneg(g.as_degree(j)))

    def is_zero(self) -> bool:
        return self.series.is_zero()

    @property
    def top_degree(self):
        """Largest j with H_j != 0 (None when H = 0): minus the least generator degree of E."""
        from .modules import minimal_generators
        gens = minimal_generators(self.ext.module)
        if not gens:
            return None
        g = self.grading
        if g.rank != 1:
            raise NotZGraded("top degree needs a Z-grading")
        return -min(gens)

    def table(self, window):
        lo, hi = window
        return {j: self(j) for j in range(lo, hi + 1) if self(j)}


@dataclass
class LocalCohomologyTable:
    module: Presentation
    entries: dict                          # (i, j) -> dim, nonzero entries only
    top_degrees: dict                      # i -> a_i, None for H^i = 0
    method: str = "duality"
    window: tuple = None

    def dim(self, i, j) -> int:
        return self.entries.get((i, j), 0)

    def row(self, i):
        return {j: d for (ii, j), d in sorted(self.entries.items()) if ii == i}


def _as_T(M: Presentation) -> Presentation:
    return M.push_to_T()


def local_cohomology_duality(M: Presentation, i: int) -> GradedDimensions:
    """Dimensions of H^i_m(M) in every degree, via Ext^{s-i}_T(M, T(-r))."""
    MT = _as_T(M)
    s = MT.ring.nvars
    if i < 0 or i > s:
        return GradedDimensions(_zero_ext(MT, i), i)
    E = ext_over_T(MT, _omega_cached(MT.ring), s - i)
    return GradedDimensions(E, i)


def local_cohomology_duality_over_A(M: Presentation, i: int) -> GradedDimensions:
    """Dimensions of H^i_m(M) via Ext^{d-i}_A(M, omega_A); A must be Cohen-Macaulay."""
    A = M.algebra
    if A is None:
        return local_cohomology_duality(M, i)
    omega = certify_cm(A)
    d = dimension(A.as_module())
    if i < 0 or i > d:
        return GradedDimensions(_zero_ext(_as_T(M), i), i, method="duality-A")
    E = ext_over_A(M, omega.module, d - i, length=max(d - i + 1, d + 2))
    return GradedDimensions(E, i, method="duality-A")


_OMEGA = {}


def _omega_cached(ring):
    w = _OMEGA.get(ring)
    if w is None:
        w = _OMEGA[ring] = omega_T(ring)
    return w


def _zero_ext(MT, i):
    from .homological import ExtModule
    return ExtModule(i, MT, None, Presentation.zero(MT.ring))


def local_cohomology_table(M: Presentation, window, method="duality") -> LocalCohomologyTable:
    """Table of dim H^i_m(M)_j for 0 <= i <= s and j in the window."""
    MT = _as_T(M)
    s = MT.ring.nvars
    lo, hi = window
    entries, tops = {}, {}
    for i in range(s + 1):
        H = (local_cohomology_duality_over_A(M, i) if method == "duality-A"
             else local_cohomology_duality(M, i))
        tops[i] = H.top_degree
        for j in range(lo, hi + 1):
            v = H(j)
            if v:
                entries[(i, j)] = v
    return LocalCohomologyTable(M, entries, tops, method, (lo, hi))


# -- H^0 by saturation ----------------------------------------------------------

@dataclass
class TorsionSubmodule:
    """H^0_m(M) = (U : m^inf)/U inside F0/U."""

    module: Presentation            # presentation of the torsion submodule
    generators: list                # its generators as vectors of F0
    saturation: list                # Groebner basis of (U : m^inf)
    stabilized_at: int              # colon steps until the basis repeated
    series: HilbertSeries

    def __call__(self, j) -> int:
        return self.series.coefficient(j)

    def table(self):
        lp = self.series.laurent_polynomial()
        return dict(sorted(lp.items())) if lp else {}


def h0_saturation(M: Presentation) -> TorsionSubmodule:
    MT = _as_T(M)
    ring = MT.ring
    F0 = MT.target
    torder = F0.torder
    fld = ring.field
    cur = list(MT.gb)
    steps = 0
    while True:
        nxt = groebner_basis(colon_vectors(ring, fld, F0.wshifts, cur, ring.gens),
                             torder, fld)
        steps += 1
        if basis_signature(nxt) == basis_signature(cur):
            break
        cur = nxt
    sat = cur
    # generators of the torsion part: saturation elements that are nonzero in M
    gens = [v for v in sat if MT.normal_form(v)]
    sat_pres = Presentation(GradedFreeMap(
        GradedFree(ring, tuple(F0.vector_degree(v) for v in sat)), F0, sat, check=False))
    series = hilbert_series(MT) - hilbert_series(sat_pres)
    if gens:
        K = GradedFreeMap(GradedFree(ring, tuple(F0.vector_degree(v) for v in gens)), F0,
                          gens, check=False)
        mod = minimal_presentation(image_presentation(K, modulo=MT.relations_T()))
    else:
        mod = Presentation.zero(ring)
    return TorsionSubmodule(mod, gens, sat, steps, series)


# -- Koszul oracle ---------------------------------------------------------------

class KoszulStrands:
    """Degree strands of K(x_1^t, ..., x_s^t; M) with cached normal forms."""

    def __init__(self, M: Presentation):
        self.M = _as_T(M)
        self.ring = self.M.ring
        self.s = self.ring.nvars
        self._basis = {}
        self._nf = {}

    def basis(self, deg):
        deg = tuple(deg)
        b = self._basis.get(deg)
        if b is None:
            terms = standard_basis(self.M, deg)
            b = self._basis[deg] = (terms, {t: n for n, t in enumerate(terms)})
        return b

    def _times(self, term, k, t):
        key = (term, k, t)
        v = self._nf.get(key)
        if v is None:
            p, e = term
            e2 = list(e)
            e2[k] += t
            v = self._nf[key] = self.M.normal_form({(p, tuple(e2)): self.ring.field.one})
        return v

    def dims(self, j, t):
        """[dim H^i(K(x^t; M))_j for i = 0..s]."""
        g = self.ring.grading
        j = g.as_degree(j)
        fld = self.ring.field
        s = self.s
        xdeg = g.degrees
        blocks = {}
        for i in range(s + 1):
            for S in combinations(range(s), i):
                d = j
                for k in S:
                    d = dadd(d, tuple(t * c for c in xdeg[k]))
                blocks[S] = self.basis(d)
        sizes = [0] * (s + 1)
        offsets = {}
        for i in range(s + 1):
            for S in combinations(range(s), i):
                offsets[S] = sizes[i]
                sizes[i] += len(blocks[S][0])
        ranks = [0] * (s + 1)       # ranks[i] = rank of d^i : K^i -> K^{i+1}
        for i in range(s):
            rows = []
            for S in combinations(range(s), i):
                terms, _ = blocks[S]
                for term in terms:
                    row = {}
                    for k in range(s):
                        if k in S:
                            continue
                        sign = -1 if sum(1 for l in S if l < k) % 2 else 1
                        T2 = tuple(sorted(S + (k,)))
                        _, idx = blocks[T2]
                        off = offsets[T2]
                        for tm, c in self._times(term, k, t).items():
                            col = off + idx[tm]
                            row[col] = fld.reduce(row.get(col, 0) + sign * c)
                    row = {c: v for c, v in row.items() if v}
                    if row:
                        rows.append(row)
            ranks[i] = sparse_rank(rows, fld)
        out = []
        for i in range(s + 1):
            prev = ranks[i - 1] if i > 0 else 0
            out.append(sizes[i] - ranks[i] - prev)
        return out


@dataclass
class KoszulEstimate:
    value: int
    stable: bool
    values: tuple


def koszul_oracle(M: Presentation, i: int, j, t_max: int, strands: KoszulStrands = None):
    """dim H^i(K(x^t; M))_j for t = t_max-2, t_max-1, t_max; stable iff all agree."""
    if t_max < 3:
        raise ValueError("t_max must be at least 3")
    strands = strands or KoszulStrands(M)
    vals = tuple(strands.dims(j, t)[i] for t in (t_max - 2, t_max - 1, t_max))
    return KoszulEstimate(vals[-1], len(set(vals)) == 1, vals)


# -- Grothendieck-Serre ---------------------------------------------------------

@dataclass
class SerreReport:
    rows: list          # (j, HF - P, sum_i (-1)^i dim H^i_j, ok)
    passed: bool


def grothendieck_serre_check(M: Presentation, window) -> SerreReport:
    MT = _as_T(M)
    if MT.ring.grading.rank != 1:
        raise NotZGraded("the Grothendieck-Serre check needs a Z-grading")
    s = MT.ring.nvars
    hs = hilbert_series(MT)
    P = hilbert_polynomial(MT)
    H = [local_cohomology_duality(MT, i) for i in range(s + 1)]
    rows = []
    lo, hi = window
    for j in range(lo, hi + 1):
        lhs = hs.coefficient(j) - P(j)
        rhs = sum((-1) ** i * H[i](j) for i in range(s + 1))
        rows.append((j, lhs, rhs, lhs == rhs))
    return SerreReport(rows, all(r[3] for r in rows))


# -- full cross-check --------------------------------------------------------------

@dataclass
class DualityRow:
    i: int
    j: int
    dim_duality: int
    dim_oracle: int
    stable: bool
    dim_saturation: int = None
    passed: bool = True

    def as_tuple(self):
        return (self.i, self.j, self.dim_duality, self.dim_oracle, self.stable, self.passed)


@dataclass
class DualityReport:
    module: Presentation
    window: tuple
    t_max: int
    rows: list = dc_field(default_factory=list)
    serre: SerreReport = None
    depth: int = None
    dim: int = None
    vanishing_ok: bool = True
    top_degrees: dict = dc_field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return (all(r.passed for r in self.rows) and self.vanishing_ok
                and (self.serre is None or self.serre.passed))

    def table(self, i):
        return {r.j: r.dim_duality for r in self.rows if r.i == i and r.dim_duality}


def default_window(M: Presentation):
    g = M.ring.grading
    r_total = g.weight(g.total_degree)
    return (-(r_total + M.ring.nvars + 8), 4)


def oracle_t(M: Presentation, j: int, t_max: int) -> int:
    """Truncation parameter used at degree j: at least t_max, and past the largest
    shift R of the minimal resolution of M by the distance from j, t >= (R - j)/w_min + 2.
    A fixed t reports stable but wrong values once -j exceeds about t."""
    MT = _as_T(M)
    g = MT.ring.grading
    from .resolution import free_resolution
    top = max(free_resolution(MT).max_shift_weight(), 0)
    wmin = min(g.weights)
    return max(t_max, ceil((top - j) / wmin) + 2)


def verify_local_duality(M: Presentation, window=None, t_max: int = 6) -> DualityReport:
    MT = _as_T(M)
    g = MT.ring.grading
    if g.rank != 1:
        raise NotZGraded("windowed verification needs a Z-grading")
    s = MT.ring.nvars
    window = tuple(window) if window is not None else default_window(MT)
    lo, hi = window
    report = DualityReport(M, window, t_max)
    H = [local_cohomology_duality(MT, i) for i in range(s + 1)]
    report.top_degrees = {i: H[i].top_degree for i in range(s + 1)}
    if hilbert_series(MT).is_zero():
        report.serre = SerreReport([], True)
        return report
    depth, dim, _ = depth_dim(MT)
    report.depth, report.dim = depth, dim
    nonzero = [not H[i].is_zero() for i in range(s + 1)]
    report.vanishing_ok = (all(not nonzero[i] for i in range(s + 1) if i < depth or i > dim)
                           and nonzero[depth] and nonzero[dim])
    h0 = h0_saturation(MT)
    strands = KoszulStrands(MT)
    for j in range(lo, hi + 1):
        t = oracle_t(MT, j, t_max)
        runs = [strands.dims(j, tt) for tt in (t - 2, t - 1, t)]
        for i in range(s + 1):
            dual = H[i](j)
            vals = [r[i] for r in runs]
            stable = len(set(vals)) == 1
            ok = (not stable) or vals[-1] == dual
            sat = None
            if i == 0:
                sat = h0(j)
                ok = ok and sat == dual
            report.rows.append(DualityRow(i, j, dual, vals[-1], stable, sat, ok))
    report.serre = grothendieck_serre_check(MT, window)
    return report
