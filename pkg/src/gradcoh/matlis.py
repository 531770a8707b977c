"""Finite-length graded modules as explicit linear algebra, and Matlis duality.

A finite-length module is stored degree by degree: a dimension m_d for each
active degree d and, for every variable x_i, the matrix of multiplication
M_d -> M_{d + deg x_i} (rows index the target basis).  The graded dual is
then pure transposition.
"""
from __future__ import annotations

import random as _random
from dataclasses import dataclass, field as dc_field

from .errors import InputNotExact, NotFiniteLength, WindowExceedsTruncation
from .hilbert import hilbert_series
from .linalg import inverse, nullspace, rank as _rank, rref
from .modules import Presentation, QuotientRing
from .ring import dadd, dneg, dsub


# -- shape-safe dense helpers ------------------------------------------------------

def _zeros(m, n, fld):
    return [[fld.zero] * n for _ in range(m)]


def _eye(n, fld):
    out = _zeros(n, n, fld)
    for k in range(n):
        out[k][k] = fld.one
    return out


def _mul(A, B, n, fld):
    """A (m x k) B (k x n) with the column count n given explicitly."""
    red = fld.reduce
    out = []
    for row in A:
        acc = [0] * n
        for t, a in enumerate(row):
            if a:
                for j, b in enumerate(B[t]):
                    if b:
                        acc[j] += a * b
        out.append([red(v) for v in acc])
    return out


def _T(A, ncols):
    """Transpose of an (m x ncols) matrix."""
    return [[row[j] for row in A] for j in range(ncols)]


def _rk(A, fld):
    return _rank(A, fld) if A and A[0] else 0


def _is_zero(A):
    return all(not v for row in A for v in row)


@dataclass
class CheckResult:
    ok: bool
    witness: object = None
    rows: list = dc_field(default_factory=list)

    def __bool__(self):
        return self.ok


# -- finite-length modules -----------------------------------------------------------

class FiniteLengthModule:
    """Degreewise vector spaces with variable actions (degrees are internal tuples)."""

    def __init__(self, ring, dims, action=None, relations=(), check=True):
        self.ring = ring
        self.field = ring.field
        self.dims = {tuple(d): m for d, m in dims.items() if m > 0}
        self.action = {}
        for (i, d), X in (action or {}).items():
            d = tuple(d)
            if d in self.dims and dadd(d, ring.grading.degrees[i]) in self.dims:
                self.action[(i, d)] = [[self.field(v) for v in row] for row in X]
        self.relations = list(relations)
        if check:
            bad = self.commutativity_defect()
            if bad is not None:
                raise ValueError(f"variable actions do not commute at {bad}")

    # basic data
    @property
    def length(self) -> int:
        return sum(self.dims.values())

    def dim(self, d) -> int:
        return self.dims.get(self.ring.grading.as_degree(d), 0)

    def profile(self):
        g = self.ring.grading
        return {g.present(d): m for d, m in sorted(self.dims.items(), key=lambda t: (g.weight(t[0]), t[0]))}

    def matrix(self, i, d):
        """Matrix of x_i: M_d -> M_{d + deg x_i}."""
        d = tuple(d)
        X = self.action.get((i, d))
        if X is not None:
            return X
        tgt = dadd(d, self.ring.grading.degrees[i])
        return _zeros(self.dims.get(tgt, 0), self.dims.get(d, 0), self.field)

    def monomial_matrix(self, exp, d):
        """Matrix of x^exp: M_d -> M_{d + deg x^exp}."""
        d = tuple(d)
        cur = _eye(self.dims.get(d, 0), self.field)
        deg = d
        for i, a in enumerate(exp):
            for _ in range(a):
                X = self.matrix(i, deg)
                cur = _mul(X, cur, self.dims.get(d, 0), self.field)
                deg = dadd(deg, self.ring.grading.degrees[i])
        return cur

    def polynomial_matrix(self, f, d):
        """Matrix of a homogeneous polynomial f on M_d."""
        d = tuple(d)
        n = self.dims.get(d, 0)
        tgt = dadd(d, f.degree()) if f.terms else d
        out = _zeros(self.dims.get(tgt, 0), n, self.field)
        for e, c in f.terms.items():
            X = self.monomial_matrix(e, d)
            for r, row in enumerate(X):
                for k, v in enumerate(row):
                    if v:
                        out[r][k] = self.field.reduce(out[r][k] + c * v)
        return out

    # axioms
    def commutativity_defect(self):
        degs = self.ring.grading.degrees
        s = self.ring.nvars
        for d in self.dims:
            n = self.dims[d]
            for i in range(s):
                for k in range(i + 1, s):
                    a = _mul(self.matrix(k, dadd(d, degs[i])), self.matrix(i, d), n, self.field)
                    b = _mul(self.matrix(i, dadd(d, degs[k])), self.matrix(k, d), n, self.field)
                    if a != b:
                        return (i, k, self.ring.grading.present(d))
        return None

    def relations_hold(self, polys=None) -> bool:
        for f in (self.relations if polys is None else polys):
            for d in self.dims:
                if not _is_zero(self.polynomial_matrix(f, d)):
                    return False
        return True

    def annihilator_power(self) -> int:
        """Least n with m^n M = 0, computed from images of the variable actions."""
        fld = self.field
        degs = self.ring.grading.degrees
        # current subspace per degree as a list of spanning columns
        cur = {d: [row[:] for row in _T(_eye(m, fld), m)] for d, m in self.dims.items()}
        n = 0
        while any(cur.values()):
            nxt = {}
            for d, vecs in cur.items():
                if not vecs:
                    continue
                for i in range(self.ring.nvars):
                    tgt = dadd(d, degs[i])
                    if tgt not in self.dims:
                        continue
                    X = self.matrix(i, d)
                    for v in vecs:
                        w = [fld.reduce(sum(x * y for x, y in zip(row, v))) for row in X]
                        if any(w):
                            nxt.setdefault(tgt, []).append(w)
            cur = {d: _basis_rows(v, fld) for d, v in nxt.items()}
            n += 1
        return n

    def is_zero(self) -> bool:
        return not self.dims

    # serialization
    def to_dict(self):
        g = self.ring.grading
        fld = self.field

        def ent(v):
            return list(fld.to_pair(v)) if fld.p == 0 else int(v)

        return {
            "degrees": [g.present(d) for d in sorted(self.dims)],
            "dims": [self.dims[d] for d in sorted(self.dims)],
            "action": [
                {"var": self.ring.names[i], "degree": g.present(d),
                 "matrix": [[ent(v) for v in row] for row in X]}
                for (i, d), X in sorted(self.action.items())
            ],
        }

    def __eq__(self, other):
        if not isinstance(other, FiniteLengthModule) or self.dims != other.dims:
            return False
        keys = {(i, d) for i in range(self.ring.nvars) for d in self.dims}
        return all(self.matrix(i, d) == other.matrix(i, d) for i, d in keys)

    def __repr__(self):
        return f"FiniteLengthModule(dims={self.profile()})"


def _basis_rows(vecs, fld):
    if not vecs:
        return []
    R, piv = rref(vecs, fld)
    return [R[k] for k in range(len(piv))]


# -- from presentations ----------------------------------------------------------

def _standard_monomials(M: Presentation, limit=100000):
    """All standard monomials when finitely many, else raise NotFiniteLength."""
    lead = M.lead_terms
    s = M.ring.nvars
    out = []
    for p in range(M.target.rank):
        lts = lead[p]
        if any(not any(le) for le in lts):
            continue                # the generator itself is a leading term
        for i in range(s):
            if not any(le[i] > 0 and all(le[k] == 0 for k in range(s) if k != i) for le in lts):
                raise NotFiniteLength((p, M.ring.names[i]))
        seen = {M.ring.zero_exp}
        stack = [M.ring.zero_exp]
        while stack:
            e = stack.pop()
            out.append((p, e))
            for i in range(s):
                e2 = list(e)
                e2[i] += 1
                e2 = tuple(e2)
                if e2 in seen:
                    continue
                seen.add(e2)
                if not any(all(a <= b for a, b in zip(le, e2)) for le in lts):
                    stack.append(e2)
            if len(out) > limit:
                raise RuntimeError("finite-length module too large")
    return out


def finite_length_profile(M: Presentation) -> FiniteLengthModule:
    """Explicit components and actions of a finite-length module (NotFiniteLength otherwise)."""
    MT = M.push_to_T()
    ring = MT.ring
    g = ring.grading
    terms = _standard_monomials(MT)
    F0 = MT.target
    by_deg = {}
    for t in terms:
        by_deg.setdefault(F0.term_degree(t), []).append(t)
    for d in by_deg:
        by_deg[d].sort()
    index = {d: {t: k for k, t in enumerate(ts)} for d, ts in by_deg.items()}
    dims = {d: len(ts) for d, ts in by_deg.items()}
    action = {}
    for d, ts in by_deg.items():
        for i in range(ring.nvars):
            tgt = dadd(d, g.degrees[i])
            if tgt not in dims:
                continue
            X = _zeros(dims[tgt], dims[d], ring.field)
            for k, (p, e) in enumerate(ts):
                e2 = list(e)
                e2[i] += 1
                nf = MT.normal_form({(p, tuple(e2)): ring.field.one})
                for tm, c in nf.items():
                    X[index[tgt][tm]][k] = c
            action[(i, d)] = X
    rel = list(M.algebra.gb) if M.algebra is not None else []
    return FiniteLengthModule(ring, dims, action, relations=rel, check=False)


def has_finite_length(M: Presentation) -> bool:
    """Hilbert-series criterion: the series is a Laurent polynomial."""
    return hilbert_series(M.push_to_T()).is_laurent_polynomial()


def annihilated_by_power(M: Presentation, bound=None):
    """Least n with m^n M = 0 from the presentation (None if no n <= bound works).

    m^n M = 0 iff every monomial of weight n (times each generator) lies in the
    relation module; checked through the Groebner basis.
    """
    MT = M.push_to_T()
    ring = MT.ring
    g = ring.grading
    if hilbert_series(MT).is_zero():
        return 0
    lts = MT.lead_terms
    bound = bound if bound is not None else 64
    s = ring.nvars
    # m^n M = 0 iff every monomial of total exponent n is a leading term multiple
    for n in range(1, bound + 1):
        ok = True
        for p in range(MT.target.rank):
            for e in _exponents_of_total(s, n):
                if not any(all(a <= b for a, b in zip(le, e)) for le in lts[p]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return n
    return None


def _exponents_of_total(s, n):
    if s == 1:
        yield (n,)
        return
    for a in range(n + 1):
        for rest in _exponents_of_total(s - 1, n - a):
            yield (a,) + rest


# -- duality ---------------------------------------------------------------------------

def matlis_dual(M: FiniteLengthModule) -> FiniteLengthModule:
    """D(M)_j = (M_{-j})^*, with x_i acting by the transpose of x_i on M_{-j-deg x_i}."""
    degs = M.ring.grading.degrees
    dims = {dneg(d): m for d, m in M.dims.items()}
    action = {}
    for j in dims:
        for i in range(M.ring.nvars):
            src = dsub(dneg(j), degs[i])        # -j - deg x_i
            if src in M.dims:
                X = M.matrix(i, src)             # M_src -> M_{-j}
                action[(i, j)] = _T(X, M.dims[src])
    return FiniteLengthModule(M.ring, dims, action, relations=M.relations, check=False)


@dataclass
class GradedDualProfile:
    values: dict                 # degree -> dim
    provenance: str = ""

    def __call__(self, j) -> int:
        return self.values.get(j, 0)


def dual_profile(M: FiniteLengthModule, provenance="M") -> GradedDualProfile:
    return GradedDualProfile({-j: m for j, m in M.profile().items()}, f"dual of {provenance}")


def evaluation_map(M: FiniteLengthModule):
    """The map M_d -> D(D(M))_d, a |-> (phi |-> phi(a)), in the induced dual bases."""
    fld = M.field
    out = {}
    for d, m in M.dims.items():
        dual_basis = _eye(m, fld)        # coordinate functionals on M_d
        # entry (b, a) = phi_b(e_a)
        out[d] = [[sum(fld.reduce(phi[k] * ea[k]) for k in range(m)) for ea in _eye(m, fld)]
                  for phi in dual_basis]
    return out


def double_dual_check(M: FiniteLengthModule) -> CheckResult:
    DD = matlis_dual(matlis_dual(M))
    if DD.dims != M.dims:
        return CheckResult(False, ("dims", None))
    ev = evaluation_map(M)
    fld = M.field
    g = M.ring.grading
    for d, m in M.dims.items():
        if _rk(ev[d], fld) != m:
            return CheckResult(False, (None, g.present(d)))
    for d, m in M.dims.items():
        for i in range(M.ring.nvars):
            tgt = dadd(d, g.degrees[i])
            if tgt not in M.dims:
                continue
            lhs = _mul(ev[tgt], M.matrix(i, d), m, fld)
            rhs = _mul(DD.matrix(i, d), ev[d], m, fld)
            if lhs != rhs:
                return CheckResult(False, (i, g.present(d)))
    return CheckResult(True)


# -- exact sequences ---------------------------------------------------------------------

@dataclass
class ShortExactSequence:
    """0 -> A --f--> B --g--> C -> 0 with degreewise matrices f[d], g[d]."""

    A: FiniteLengthModule
    B: FiniteLengthModule
    C: FiniteLengthModule
    f: dict
    g: dict

    def fmat(self, d):
        return self.f.get(d) or _zeros(self.B.dims.get(d, 0), self.A.dims.get(d, 0), self.B.field)

    def gmat(self, d):
        return self.g.get(d) or _zeros(self.C.dims.get(d, 0), self.B.dims.get(d, 0), self.B.field)


def _is_module_map(X, Y, F, deg_of):
    fld = X.field
    degs = X.ring.grading.degrees
    for d in set(X.dims) | set(Y.dims):
        for i in range(X.ring.nvars):
            tgt = dadd(d, degs[i])
            lhs = _mul(Y.matrix(i, d), F(d), X.dims.get(d, 0), fld) if Y.dims.get(d) else None
            rhs = _mul(F(tgt), X.matrix(i, d), X.dims.get(d, 0), fld)
            if lhs is None:
                lhs = _zeros(Y.dims.get(tgt, 0), X.dims.get(d, 0), fld)
            if lhs != rhs:
                return False
    return True


def _is_exact_at(ses: ShortExactSequence) -> bool:
    fld = ses.B.field
    degs = set(ses.A.dims) | set(ses.B.dims) | set(ses.C.dims)
    for d in degs:
        a, b, c = ses.A.dims.get(d, 0), ses.B.dims.get(d, 0), ses.C.dims.get(d, 0)
        F, G = ses.fmat(d), ses.gmat(d)
        rf = _rk(F, fld) if a and b else 0
        rg = _rk(G, fld) if b and c else 0
        if rf != a or rg != c or a + c != b:
            return False
        if a and c and not _is_zero(_mul(G, F, a, fld)):
            return False
    return (_is_module_map(ses.A, ses.B, ses.fmat, None)
            and _is_module_map(ses.B, ses.C, ses.gmat, None))


def is_exact(ses: ShortExactSequence) -> bool:
    return _is_exact_at(ses)


def dual_sequence(ses: ShortExactSequence) -> ShortExactSequence:
    """0 -> D(C) --D(g)--> D(B) --D(f)--> D(A) -> 0."""
    DA, DB, DC = matlis_dual(ses.A), matlis_dual(ses.B), matlis_dual(ses.C)
    f2 = {}
    for j in DB.dims:
        d = dneg(j)
        if ses.C.dims.get(d):
            f2[j] = _T(ses.gmat(d), ses.B.dims[d])
    g2 = {}
    for j in DA.dims:
        d = dneg(j)
        if ses.B.dims.get(d):
            g2[j] = _T(ses.fmat(d), ses.A.dims[d])
    return ShortExactSequence(DC, DB, DA, f2, g2)


def matlis_exactness_check(ses: ShortExactSequence) -> bool:
    if not is_exact(ses):
        raise InputNotExact("the given sequence is not a short exact sequence of modules")
    return is_exact(dual_sequence(ses))


def submodule_sequence(M: FiniteLengthModule, vectors) -> ShortExactSequence:
    """0 -> N -> M -> M/N -> 0 for the submodule N generated by ``vectors``
    (a list of (degree, coordinate list))."""
    fld = M.field
    degs = M.ring.grading.degrees
    span = {d: [] for d in M.dims}
    queue = [(tuple(d), list(v)) for d, v in vectors]
    while queue:
        d, v = queue.pop()
        cand = _basis_rows(span[d] + [v], fld)
        if len(cand) == len(span[d]):
            continue
        span[d] = cand
        for i in range(M.ring.nvars):
            tgt = dadd(d, degs[i])
            if tgt in M.dims:
                X = M.matrix(i, d)
                w = [fld.reduce(sum(x * y for x, y in zip(row, v))) for row in X]
                if any(w):
                    queue.append((tgt, w))
    # per degree: basis B of N_d (columns), complement C, and the inverse of [B | C]
    Bm, Cm, Inv = {}, {}, {}
    for d, m in M.dims.items():
        rows = span[d]
        R, piv = (rref(rows, fld) if rows else ([], []))
        comp = [k for k in range(m) if k not in piv]
        Bcols = [list(r) for r in rows]
        Ccols = [[fld.one if t == k else fld.zero for t in range(m)] for k in comp]
        full = _T(Bcols + Ccols, m) if m else []
        Bm[d], Cm[d] = Bcols, Ccols
        Inv[d] = inverse(full, fld) if m else []
    dimsN = {d: len(Bm[d]) for d in M.dims}
    dimsQ = {d: len(Cm[d]) for d in M.dims}
    actN, actQ = {}, {}
    for d in M.dims:
        for i in range(M.ring.nvars):
            tgt = dadd(d, degs[i])
            if tgt not in M.dims:
                continue
            X = M.matrix(i, d)
            r = dimsN[tgt]
            if dimsN[d] and r:
                img = _mul(Inv[tgt], _mul(X, _T(Bm[d], M.dims[d]), dimsN[d], fld), dimsN[d], fld)
                actN[(i, d)] = img[:r]
            if dimsQ[d] and dimsQ[tgt]:
                img = _mul(Inv[tgt], _mul(X, _T(Cm[d], M.dims[d]), dimsQ[d], fld), dimsQ[d], fld)
                actQ[(i, d)] = img[r:]
    N = FiniteLengthModule(M.ring, dimsN, actN, relations=M.relations, check=False)
    Q = FiniteLengthModule(M.ring, dimsQ, actQ, relations=M.relations, check=False)
    f = {d: _T(Bm[d], M.dims[d]) for d in M.dims if dimsN[d]}
    g = {d: Inv[d][dimsN[d]:] for d in M.dims if dimsQ[d]}
    return ShortExactSequence(N, M, Q, f, g)


def split_sequence(A: FiniteLengthModule, C: FiniteLengthModule) -> ShortExactSequence:
    """0 -> A -> A (+) C -> C -> 0."""
    fld = A.field
    degs = set(A.dims) | set(C.dims)
    dims = {d: A.dims.get(d, 0) + C.dims.get(d, 0) for d in degs}
    act = {}
    for d in degs:
        for i in range(A.ring.nvars):
            tgt = dadd(d, A.ring.grading.degrees[i])
            if tgt not in dims:
                continue
            X = _zeros(dims[tgt], dims[d], fld)
            a, at = A.dims.get(d, 0), A.dims.get(tgt, 0)
            XA = A.matrix(i, d) if a and at else []
            XC = C.matrix(i, d) if C.dims.get(d) and C.dims.get(tgt) else []
            for r, row in enumerate(XA):
                for k, v in enumerate(row):
                    X[r][k] = v
            for r, row in enumerate(XC):
                for k, v in enumerate(row):
                    X[at + r][a + k] = v
            act[(i, d)] = X
    B = FiniteLengthModule(A.ring, dims, act, check=False)
    f = {d: [[fld.one if r == k else fld.zero for k in range(A.dims[d])] for r in range(dims[d])]
         for d in A.dims}
    g = {d: [[fld.one if k == A.dims.get(d, 0) + r else fld.zero for k in range(dims[d])]
             for r in range(C.dims[d])] for d in C.dims}
    return ShortExactSequence(A, B, C, f, g)


def random_submodule_sequence(M: FiniteLengthModule, rng: _random.Random, ngens=None):
    """A short exact sequence 0 -> N -> M -> M/N -> 0 for a random submodule N."""
    fld = M.field
    degs = sorted(M.dims)
    if not degs:
        return submodule_sequence(M, [])
    ngens = ngens if ngens is not None else rng.randint(1, 2)
    vecs = []
    for _ in range(ngens):
        d = rng.choice(degs)
        v = [fld.random(rng, 3) for _ in range(M.dims[d])]
        if not any(v):
            v[rng.randrange(len(v))] = fld.one
        vecs.append((d, v))
    return submodule_sequence(M, vecs)


# -- E_A and *Hom -----------------------------------------------------------------------

def E_A_profile(A, window) -> GradedDualProfile:
    """Dimensions of A^v = E_A in the window: HF(A)(-j)."""
    if isinstance(A, QuotientRing):
        hs = hilbert_series(A)
        name = repr(A)
    elif isinstance(A, Presentation):
        hs = hilbert_series(A.push_to_T())
        name = "module"
    else:
        A = QuotientRing(A, [])
        hs = hilbert_series(A)
        name = repr(A)
    lo, hi = window
    vals = {}
    for j in range(lo, hi + 1):
        v = hs.coefficient(-j)
        if v:
            vals[j] = v
    return GradedDualProfile(vals, f"dual of {name}")


def truncated_dual(A: QuotientRing, N: int) -> FiniteLengthModule:
    """(A / A_{>N})^v, the part of A^v in degrees >= -N, as a finite-length module."""
    ring = A.ring
    g = ring.grading
    w = g.weights
    extra = []
    for e in _exponents_upto(w, N + max(w)):
        wt = sum(a * b for a, b in zip(e, w))
        if wt > N:
            extra.append(ring.monomial(e))
    B = QuotientRing(ring, list(A.gb) + extra)
    F = finite_length_profile(B.as_module())
    F.relations = list(A.gb)
    return matlis_dual(F)


def _exponents_upto(w, top):
    s = len(w)
    e = [0] * s

    def rec(i, rem):
        if i == s:
            yield tuple(e)
            return
        for a in range(rem // w[i] + 1):
            e[i] = a
            yield from rec(i + 1, rem - a * w[i])
        e[i] = 0

    yield from rec(0, top)


def graded_hom_dim(M: Presentation, E: FiniteLengthModule, n) -> int:
    """dim_k Hom(M, E)_n for a presentation M and a finite-length module E."""
    MT = M.push_to_T()
    g = MT.ring.grading
    fld = MT.ring.field
    n = g.as_degree(n)
    gens = MT.target.shifts
    blocks = []
    off = 0
    for a in gens:
        d = dadd(a, n)
        m = E.dims.get(d, 0)
        blocks.append((d, off, m))
        off += m
    nvars = off
    if nvars == 0:
        return 0
    rows = []
    for col, b in zip(MT.columns, MT.source.shifts):
        tgt = dadd(b, n)
        mt = E.dims.get(tgt, 0)
        if not mt:
            continue
        eqs = _zeros(mt, nvars, fld)
        for (p, e), c in col.items():
            d, o, m = blocks[p]
            if not m:
                continue
            X = E.monomial_matrix(e, d)
            for r in range(mt):
                for k in range(m):
                    if X[r][k]:
                        eqs[r][o + k] = fld.reduce(eqs[r][o + k] + c * X[r][k])
        rows.extend(eqs)
    return nvars - (_rk(rows, fld) if rows else 0)


def star_hom_check(M: Presentation, window, N: int) -> CheckResult:
    """Hom_A(M, A^v)_n has dimension HF(M)(-n), tested with (A/A_{>N})^v on the window."""
    A = M.algebra
    ring = M.ring
    g = ring.grading
    if A is None:
        A = QuotientRing(ring, [])
    MT = M.push_to_T()
    lo, hi = window
    gmin = min((g.weight(a) for a in MT.target.shifts), default=0)
    faithful = -N - gmin
    if lo < faithful:
        raise WindowExceedsTruncation(
            f"window starts at {lo} but the truncation at N={N} is faithful only from {faithful}")
    E = truncated_dual(A, N)
    hs = hilbert_series(MT)
    rows = []
    for n in range(lo, hi + 1):
        got = graded_hom_dim(MT, E, n)
        want = hs.coefficient(-n)
        rows.append((n, got, want, got == want))
    ok = all(r[3] for r in rows)
    bad = next((r[0] for r in rows if not r[3]), None)
    return CheckResult(ok, bad, rows)


def random_finite_length_presentation(ring, rng: _random.Random, max_length=12, tries=50):
    """A seeded random cyclic or two-generator module killed by a power of m, of length <= max_length."""
    from .hilbert import monomials_of_degree
    g = ring.grading
    fld = ring.field
    for _ in range(tries):
        ngen = rng.randint(1, 2)
        shifts = [rng.randint(-2, 2) for _ in range(ngen)]
        power = rng.randint(2, 3)
        rel = []
        # m^power kills every generator
        for p, a in enumerate(shifts):
            for e in _exponents_of_total(ring.nvars, power):
                rel.append({(p, e): fld.one})
        # a few random homogeneous relations
        for _ in range(rng.randint(0, 3)):
            deg = rng.choice(shifts) + rng.randint(1, 2)
            v = {}
            for p, a in enumerate(shifts):
                for e in monomials_of_degree(g, (deg - a,)):
                    c = fld.random(rng, 3)
                    if c:
                        v[(p, e)] = c
            if v:
                rel.append(v)
        from .modules import GradedFree, GradedFreeMap
        F0 = GradedFree(ring, tuple((a,) for a in shifts))
        F1 = GradedFree(ring, tuple(F0.vector_degree(v) for v in rel))
        P = Presentation(GradedFreeMap(F1, F0, rel, check=False))
        L = hilbert_series(P).laurent_polynomial()
        if L is not None and 0 < sum(L.values()) <= max_length:
            return P
    raise RuntimeError("could not generate a small finite-length module")
