"""Division, Buchberger's algorithm and syzygies for graded submodules of free modules.

A module element ("vector") is a dict mapping terms ``(position, exponent)`` to
nonzero coefficients.  Ideals are the rank-one case (position 0).  All input
must be homogeneous; the algorithm processes S-pairs degree by degree, which
also lets it report which input generators were actually needed.
"""
from __future__ import annotations

import heapq
from math import inf

from .errors import NonHomogeneousInput
from .ring import MonomialOrder, Polynomial, PolyRing, madd, mdivides, mlcm, msub


class TermOrder:
    """Monomial order on terms of a free module with integer-weighted shifts.

    Terms compare first by elimination block (larger block wins), then by
    weighted degree, then by the ring's monomial order, then by position
    (lower position wins).  ``key`` is a descending key: smaller = larger term.
    """

    def __init__(self, ring: PolyRing, wshifts, blocks=None, order: MonomialOrder = None):
        self.ring = ring
        self.wshifts = tuple(wshifts)
        self.blocks = tuple(blocks) if blocks is not None else None
        mono = (order or ring.order).descending_key(ring.grading)
        w = ring.grading.weights
        ws = self.wshifts

        def weight(t):
            p, e = t
            return ws[p] + sum(a * b for a, b in zip(w, e))

        if self.blocks is None:
            def key(t):
                return (-weight(t), mono(t[1]), t[0])
        else:
            bl = self.blocks

            def key(t):
                return (-bl[t[0]], -weight(t), mono(t[1]), t[0])
        self.key = key
        self.weight = weight

    def lead(self, v):
        return min(v, key=self.key)

    def vector_weight(self, v):
        return self.weight(next(iter(v)))


# -- vector helpers ----------------------------------------------------------

def vec_from_polys(polys, zero_exp=None):
    """Column of Polynomials -> vector dict."""
    out = {}
    for p, f in enumerate(polys):
        for e, c in f.terms.items():
            out[(p, e)] = c
    return out


def vec_to_polys(ring, v, rank):
    cols = [dict() for _ in range(rank)]
    for (p, e), c in v.items():
        cols[p][e] = c
    return [Polynomial(ring, d, clean=False) for d in cols]


def vec_scale(v, c, field):
    red = field.reduce
    return {t: red(a * c) for t, a in v.items()}


def vec_monic(v, torder, field):
    lt = torder.lead(v)
    c = v[lt]
    if c == 1:
        return v
    return vec_scale(v, field.inv(c), field)


def vec_mul_term(v, c, exp, field):
    red = field.reduce
    return {(p, madd(e, exp)): red(a * c) for (p, e), a in v.items()}


def vec_axpy(acc, v, c, field):
    """acc += c * v in place (c a scalar)."""
    p = field.p
    for t, a in v.items():
        nc = acc.get(t, 0) + a * c
        if p:
            nc %= p
        if nc:
            acc[t] = nc
        else:
            acc.pop(t, None)
    return acc


def vec_add_poly_mul(acc, poly_terms, v, field):
    """acc += poly * v in place."""
    p = field.p
    for pe, pc in poly_terms.items():
        for (q, e), a in v.items():
            t = (q, madd(e, pe))
            nc = acc.get(t, 0) + pc * a
            if p:
                nc %= p
            if nc:
                acc[t] = nc
            else:
                acc.pop(t, None)
    return acc


def vec_is_homogeneous(v, torder):
    ws = {torder.weight(t) for t in v}
    return len(ws) <= 1


# -- reduction ---------------------------------------------------------------

class Reducer:
    """Divisor lookup over a growing list of monic basis vectors."""

    def __init__(self, torder: TermOrder, field):
        self.torder = torder
        self.field = field
        self.elems = []      # monic vectors
        self.leads = []      # leading terms
        self.by_pos = {}     # pos -> list of (exp, index)

    def add(self, v):
        lt = self.torder.lead(v)
        idx = len(self.elems)
        self.elems.append(v)
        self.leads.append(lt)
        self.by_pos.setdefault(lt[0], []).append((lt[1], idx))
        return idx

    def divisor(self, term, skip=None):
        lst = self.by_pos.get(term[0])
        if not lst:
            return None
        e = term[1]
        for le, idx in lst:
            if idx != skip and mdivides(le, e):
                return idx
        return None

    def nf(self, v, full=True, quotients=None, skip=None):
        """Normal form of v.  ``quotients`` (dict idx -> {exp: coeff}) records v - nf."""
        key = self.torder.key
        p = self.field.p
        v = dict(v)
        heap = [(key(t), t) for t in v]
        heapq.heapify(heap)
        rem = {}
        elems, leads = self.elems, self.leads
        while heap:
            _, t = heapq.heappop(heap)
            c = v.pop(t, None)
            if c is None:
                continue
            idx = self.divisor(t, skip)
            if idx is None:
                rem[t] = c
                if not full:
                    rem.update(v)
                    return rem
                continue
            g = elems[idx]
            glt = leads[idx]
            m = msub(t[1], glt[1])
            if quotients is not None:
                q = quotients.setdefault(idx, {})
                nq = q.get(m, 0) + c
                if p:
                    nq %= p
                if nq:
                    q[m] = nq
                else:
                    q.pop(m, None)
            for (gp, ge), gc in g.items():
                if (gp, ge) == glt:
                    continue
                nt = (gp, madd(ge, m))
                old = v.get(nt)
                nc = (0 if old is None else old) - c * gc
                if p:
                    nc %= p
                if nc:
                    if old is None:
                        heapq.heappush(heap, (key(nt), nt))
                    v[nt] = nc
                elif old is not None:
                    del v[nt]
        return rem


# -- Buchberger ----------------------------------------------------------------

def groebner_basis(gens, torder: TermOrder, field, modulo=(), rank_one=False,
                   want_kept=False, reduced=True):
    """Reduced Groebner basis of the submodule generated by ``gens`` and ``modulo``.

    Generators are processed in increasing degree, ``modulo`` before ``gens``
    within a degree.  With ``want_kept`` the indices of the ``gens`` that did
    not reduce to zero are returned as well: they form a minimal generating
    set of the image of the submodule modulo ``<modulo>``.
    """
    items = []
    for phase, lst in ((0, modulo), (1, gens)):
        for k, v in enumerate(lst):
            if v:
                if not vec_is_homogeneous(v, torder):
                    raise NonHomogeneousInput("module element")
                items.append((torder.vector_weight(v), phase, k, v))
    items.sort(key=lambda it: (it[0], it[1], it[2]))

    red = Reducer(torder, field)
    pairs = []
    pending = set()
    kept = []
    weights = torder.ring.grading.weights

    def add(r):
        r = vec_monic(r, torder, field)
        idx = red.add(r)
        lt = red.leads[idx]
        for j, (le, jdx) in enumerate(red.by_pos[lt[0]]):
            if jdx == idx:
                continue
            if rank_one and all(a == 0 or b == 0 for a, b in zip(le, lt[1])):
                continue
            l = mlcm(le, lt[1])
            d = torder.wshifts[lt[0]] + sum(a * b for a, b in zip(weights, l))
            pr = (jdx, idx)
            heapq.heappush(pairs, (d, jdx, idx))
            pending.add(pr)

    def chain_skip(i, j):
        ti, tj = red.leads[i], red.leads[j]
        l = mlcm(ti[1], tj[1])
        for le, k in red.by_pos[ti[0]]:
            if k == i or k == j:
                continue
            if mdivides(le, l):
                a = (i, k) if i < k else (k, i)
                b = (j, k) if j < k else (k, j)
                if a not in pending and b not in pending:
                    return True
        return False

    ii = 0
    n_items = len(items)
    while ii < n_items or pairs:
        d_item = items[ii][0] if ii < n_items else inf
        d_pair = pairs[0][0] if pairs else inf
        delta = min(d_item, d_pair)
        while pairs and pairs[0][0] == delta:
            _, i, j = heapq.heappop(pairs)
            pending.discard((i, j))
            if chain_skip(i, j):
                continue
            gi, gj = red.elems[i], red.elems[j]
            ti, tj = red.leads[i], red.leads[j]
            l = mlcm(ti[1], tj[1])
            s = vec_mul_term(gi, 1, msub(l, ti[1]), field)
            vec_axpy(s, vec_mul_term(gj, 1, msub(l, tj[1]), field), -1, field)
            if s:
                r = red.nf(s)
                if r:
                    add(r)
        while ii < n_items and items[ii][0] == delta:
            _, phase, k, v = items[ii]
            ii += 1
            r = red.nf(v)
            if r:
                add(r)
                if phase == 1:
                    kept.append(k)

    basis = red.elems
    if reduced:
        out = []
        for idx, g in enumerate(basis):
            lt = red.leads[idx]
            tail = {t: c for t, c in g.items() if t != lt}
            tail = red.nf(tail, skip=idx) if tail else {}
            tail[lt] = g[lt]
            out.append(tail)
        basis = out
    basis = sorted(basis, key=lambda v: torder.key(torder.lead(v)))
    if want_kept:
        return basis, kept
    return basis


def basis_signature(basis):
    """Hashable canonical form of a reduced basis (for equality tests)."""
    return frozenset(frozenset(v.items()) for v in basis)


def kernel_vectors(columns, ring: PolyRing, target_w, source_w, field, modulo=()):
    """Generators of {a in F1 : sum_l a_l * columns[l] in <modulo>}.

    Elimination: the graph vectors (column_l, e_l) live in F0 + F1 with every
    F0 term above every F1 term; basis elements led by F1 terms generate the
    kernel.  The result is not minimized.
    """
    m = len(target_w)
    zero = ring.zero_exp
    aug = []
    for l, col in enumerate(columns):
        v = dict(col)
        v[(m + l, zero)] = field.one
        aug.append(v)
    torder = TermOrder(ring, tuple(target_w) + tuple(source_w), [1] * m + [0] * len(source_w))
    G = groebner_basis(aug, torder, field, modulo=modulo)
    out = []
    for g in G:
        lt = torder.lead(g)
        if lt[0] >= m:
            out.append({(p - m, e): c for (p, e), c in g.items()})
    return out


def minimal_subset(vectors, ring, wshifts, field, modulo=()):
    """Indices of a minimal generating subset of vectors modulo <modulo>."""
    torder = TermOrder(ring, wshifts)
    _, kept = groebner_basis(vectors, torder, field, modulo=modulo, want_kept=True, reduced=False)
    return sorted(kept)


# -- polynomial-level operations ------------------------------------------------

def _ideal_order(ring, order):
    return TermOrder(ring, (0,), order=order)


def _as_vecs(polys):
    return [{(0, e): c for e, c in f.terms.items()} for f in polys if f.terms]


def _to_polys(ring, vecs):
    return [Polynomial(ring, {e: c for (_, e), c in v.items()}, clean=False) for v in vecs]


def normal_form(f: Polynomial, G, order: MonomialOrder = None) -> Polynomial:
    """Remainder of multivariate division of f by the list G (any order given)."""
    ring = f.ring
    torder = _ideal_order(ring, order)
    red = Reducer(torder, ring.field)
    for v in _as_vecs(G):
        red.add(vec_monic(v, torder, ring.field))
    if not f.terms:
        return f
    r = red.nf({(0, e): c for e, c in f.terms.items()})
    return _to_polys(ring, [r])[0]


def buchberger(gens, order: MonomialOrder = None, ring: PolyRing = None):
    """Reduced Groebner basis of a homogeneous ideal, sorted by leading term."""
    gens = list(gens)
    for g in gens:
        if g.terms and not g.is_homogeneous():
            raise NonHomogeneousInput(str(g))
    if ring is None:
        if not gens:
            return []
        ring = gens[0].ring
    torder = _ideal_order(ring, order)
    basis = groebner_basis(_as_vecs(gens), torder, ring.field, rank_one=True)
    return _to_polys(ring, basis)


def spoly(f: Polynomial, g: Polynomial, order: MonomialOrder = None) -> Polynomial:
    ef, cf = f.lead(order)
    eg, cg = g.lead(order)
    l = mlcm(ef, eg)
    ring = f.ring
    fld = ring.field
    return (ring.monomial(msub(l, ef), fld.inv(cf)) * f
            - ring.monomial(msub(l, eg), fld.inv(cg)) * g)


def syzygies(G, order: MonomialOrder = None):
    """Schreyer syzygies of a Groebner basis G (list of Polynomials).

    Returns a list of columns (lists of Polynomials, one per element of G)
    generating {v : sum v_k G_k = 0}; redundant columns are dropped.
    """
    G = [g for g in G]
    if not G:
        return []
    ring = G[0].ring
    fld = ring.field
    torder = _ideal_order(ring, order)
    red = Reducer(torder, fld)
    vecs = _as_vecs(G)
    if len(vecs) != len(G):
        raise ValueError("syzygies expects nonzero generators")
    leads = []
    for v in vecs:
        lt = torder.lead(v)
        leads.append((lt, v[lt]))
        red.add(vec_monic(v, torder, fld))
    cols = []
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            (ti, ci), (tj, cj) = leads[i], leads[j]
            l = mlcm(ti[1], tj[1])
            mi, mj = msub(l, ti[1]), msub(l, tj[1])
            ii, ij = fld.inv(ci), fld.inv(cj)
            s = vec_mul_term(vecs[i], ii, mi, fld)
            vec_axpy(s, vec_mul_term(vecs[j], ij, mj, fld), -1, fld)
            quot = {}
            r = red.nf(s, quotients=quot)
            if r:
                raise ValueError("syzygies: input is not a Groebner basis")
            # sum_k quot_k * monic(G_k) = s; monic(G_k) = G_k / lc_k
            col = {}
            col[(i, mi)] = ii
            t = (j, mj)
            col[t] = fld.reduce(col.get(t, 0) - ij)
            for k, q in quot.items():
                ik = fld.inv(leads[k][1])
                for e, c in q.items():
                    t = (k, e)
                    nc = fld.reduce(col.get(t, 0) - c * ik)
                    if nc:
                        col[t] = nc
                    else:
                        col.pop(t, None)
            col = {t: c for t, c in col.items() if c}
            if col:
                cols.append(col)
    wshifts = [ring.grading.weight(g.degree()) for g in G]
    keep = minimal_subset(cols, ring, wshifts, fld)
    return [vec_to_polys(ring, cols[k], len(G)) for k in keep]


def colon_vectors(ring, field, wshifts, U, polys):
    """Generators of (U : J) inside the free module with the given weighted shifts.

    J is generated by the homogeneous polynomials ``polys``; the colon is the
    kernel of v -> (g v)_g into (F/U)^|J|.
    """
    m = len(wshifts)
    polys = [g for g in polys if g.terms]
    if not polys:
        # (U : 0) is everything
        return [{(p, ring.zero_exp): field.one} for p in range(m)]
    target_w = []
    mod = []
    for b, g in enumerate(polys):
        wg = ring.grading.weight(g.degree())
        target_w.extend(w - wg for w in wshifts)
        for u in U:
            mod.append({(b * m + p, e): c for (p, e), c in u.items()})
    columns = []
    for p in range(m):
        col = {}
        for b, g in enumerate(polys):
            for e, c in g.terms.items():
                col[(b * m + p, e)] = c
        columns.append(col)
    return kernel_vectors(columns, ring, target_w, wshifts, field, modulo=mod)


def colon_step(I, J, ring: PolyRing = None):
    """(I : J) for homogeneous ideals given by generator lists; reduced GB."""
    I = [f for f in I if f.terms]
    J = [f for f in J if f.terms]
    ring = ring or (I or J)[0].ring
    homog = [f for f in I + J if not f.is_homogeneous()]
    if homog:
        raise NonHomogeneousInput(str(homog[0]))
    U = buchberger(I, ring=ring)
    gens = colon_vectors(ring, ring.field, (0,), _as_vecs(U), J)
    return buchberger(_to_polys(ring, gens), ring=ring)


def saturation_colon(I, J, ring: PolyRing = None, with_steps=False):
    """(I : J^infinity): iterate colon steps until the reduced basis repeats."""
    ring = ring or ([f for f in list(I) + list(J) if f.terms] or [None])[0].ring
    cur = buchberger(I, ring=ring)
    steps = 0
    while True:
        nxt = colon_step(cur, J, ring=ring)
        steps += 1
        if set(nxt) == set(cur):
            return (cur, steps) if with_steps else cur
        cur = nxt
