"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line."""
import random
import time

import pytest

from corpus import cm_algebras, modules_over, named_corpus, random_cokernel
from gradcoh import (E_A_profile, Presentation, QuotientRing, certify_cm, depth_dim,
                     double_dual_check, ext_over_A, ext_over_T, finite_length_profile,
                     free_resolution, grothendieck_serre_check, hilbert_function, is_cohen_macaulay,
                     is_graded_artinian, is_zero, local_cohomology_duality, matlis_dual,
                     matlis_exactness_check, omega_T, polynomial_ring, star_hom_check,
                     verify_local_duality)
from gradcoh.groebner import vec_to_polys
from gradcoh.hilbert import dimension, hilbert_function_direct
from gradcoh.localcoh import default_window
from gradcoh.matlis import (annihilated_by_power, has_finite_length, is_exact,
                            random_finite_length_presentation, random_submodule_sequence)
from gradcoh.modules import GradedFree, GradedFreeMap


@pytest.fixture
def announce(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'} ({detail})")
        return ok
    return emit


def _acceptance_corpus():
    corpus = named_corpus()
    names = {n for n, _ in corpus}
    for required in ("T=k[x,y]", "T/(x^2) over k[x]", "T/(xy)", "T/(x^2,xy)", "T/(x,y)^2",
                     "twisted cubic quotient (1,2,3)"):
        assert required in names
    assert sum(n.startswith("random cokernel") for n in names) == 5
    return corpus


def test_criterion_1_local_duality(announce):
    corpus = _acceptance_corpus()
    assert len(corpus) >= 12
    assert all(M.ring.nvars <= 3 and max(M.ring.grading.weights) <= 3 for _, M in corpus)
    start = time.perf_counter()
    rows = failures = unstable = 0
    for name, M in corpus:
        rep = verify_local_duality(M)
        assert rep.window == default_window(M)
        assert {r.i for r in rep.rows} == set(range(M.ring.nvars + 1))
        for r in rep.rows:
            rows += 1
            unstable += not r.stable
            agree = (not r.stable or r.dim_oracle == r.dim_duality)
            if r.i == 0:
                agree = agree and r.dim_saturation == r.dim_duality
            failures += not agree
    elapsed = time.perf_counter() - start
    ok = failures == 0 and elapsed < 120
    announce(1, ok, f"{len(corpus)} modules, {rows} (i,j) rows, {failures} mismatches, "
                    f"{unstable} unstable oracle rows, {elapsed:.1f}s")
    assert failures == 0
    assert elapsed < 120


def test_criterion_2_change_of_rings(announce):
    pairs = mismatches = 0
    for an, A in cm_algebras():
        w = certify_cm(A)
        s = A.ring.nvars
        d = dimension(A.as_module())
        mods = modules_over(A)
        assert len(mods) >= 3
        for mn, M in mods:
            pairs += 1
            lo, hi = default_window(M)
            for i in range(d + 1):
                EA = ext_over_A(M, w.module, d - i)
                ET = ext_over_T(M, omega_T(A.ring), s - i)
                for j in range(-hi, -lo + 1):
                    mismatches += EA.hilbert_function(j) != ET.hilbert_function(j)
    ok = mismatches == 0
    announce(2, ok, f"{pairs} (A, M) pairs over 3 CM algebras, {mismatches} degree mismatches")
    assert ok


def test_criterion_3_grothendieck_serre(announce):
    checked = bad = 0
    for name, M in _acceptance_corpus():
        rep = grothendieck_serre_check(M, (-15, 10))
        checked += len(rep.rows)
        bad += sum(not r[3] for r in rep.rows)
    ok = bad == 0
    announce(3, ok, f"{checked} (M, j) identities on [-15, 10], {bad} failures")
    assert ok


def _finite_length_family():
    mods = []
    T1, T2, T3 = polynomial_ring("x"), polynomial_ring("x y"), polynomial_ring("x y z")
    x, y = T2.gens
    mods.append(Presentation.cyclic(T1, [T1.gens[0] ** 2]))
    mods.append(Presentation.cyclic(T2, [x**2, x * y, y**2]))
    mods.append(Presentation.cyclic(T2, [x**2, y**2]))
    mods.append(Presentation.cyclic(T2, [x, y]))
    rng = random.Random(20240601)
    for k in range(20):
        T = (T1, T2, T3, T2)[k % 4]
        mods.append(random_finite_length_presentation(T, rng))
    return [finite_length_profile(M) for M in mods]


def test_criterion_4_matlis(announce):
    start = time.perf_counter()
    family = _finite_length_family()
    assert len(family) >= 20 and all(F.length <= 12 for F in family)
    dd = sum(bool(double_dual_check(F)) for F in family)
    flips = 0
    for F in family:
        D = matlis_dual(F)
        degs = set(F.profile()) | {-j for j in D.profile()}
        flips += all(D.profile().get(-j, 0) == F.profile().get(j, 0) for j in degs)
    rng = random.Random(7)
    exact = 0
    for k in range(30):
        ses = random_submodule_sequence(family[k % len(family)], rng)
        assert is_exact(ses)
        exact += bool(matlis_exactness_check(ses))
    elapsed = time.perf_counter() - start
    ok = dd == len(family) and flips == len(family) and exact == 30 and elapsed < 30
    announce(4, ok, f"{len(family)} modules: double dual {dd}, profile flip {flips}; "
                    f"{exact}/30 dual sequences exact, {elapsed:.1f}s")
    assert ok


def test_criterion_5_E_A_and_star_hom(announce):
    algebras = [A for _, A in cm_algebras()]
    for name, M in _acceptance_corpus():
        if M.target.rank == 1 and M.target.shifts[0] == M.ring.grading.zero:
            algebras.append(QuotientRing(M.ring, [vec_to_polys(M.ring, c, 1)[0]
                                                  for c in M.phi.columns]))
    window = (-15, 10)
    prof_bad = 0
    for A in algebras:
        prof = E_A_profile(A, window)
        AT = A.as_module()
        prof_bad += sum(prof(j) != hilbert_function_direct(AT, -j) for j in range(*window))
    pairs = []
    for A in algebras[:6]:
        for mn, M in modules_over(A)[:3]:
            pairs.append(M)
    passed = sum(bool(star_hom_check(M, (-4, 4), 8)) for M in pairs)
    ok = prof_bad == 0 and len(pairs) >= 10 and passed == len(pairs)
    announce(5, ok, f"E_A profile on {len(algebras)} algebras ({prof_bad} mismatches); "
                    f"star_hom {passed}/{len(pairs)} pairs")
    assert ok


def _with_unit_relations(M):
    """Kill every generator of M by adding the unit columns e_p."""
    F0 = M.target
    fld = M.ring.field
    zero = tuple(0 for _ in range(M.ring.nvars))
    cols = list(M.phi.columns) + [{(p, zero): fld.one} for p in range(F0.rank)]
    F1 = GradedFree(M.ring, tuple(F0.vector_degree(v) for v in cols))
    return Presentation(GradedFreeMap(F1, F0, cols, check=False))


def _random_presentations():
    rng = random.Random(6)
    out = [random_cokernel(5000 + k) for k in range(25)]
    T2, T3 = polynomial_ring("x y"), polynomial_ring("x y z", weights=(1, 1, 2))
    out += [random_finite_length_presentation((T2, T3)[k % 2], rng) for k in range(20)]
    out += [_with_unit_relations(random_cokernel(6000 + k)) for k in range(5)]
    return out


def test_criterion_6_nakayama_and_finite_length(announce):
    mods = _random_presentations()
    assert len(mods) == 50
    nak = fl = 0
    for M in mods:
        g = M.ring.grading
        degs = [g.weight(a) for a in M.target.shifts] + [g.weight(b) for b in M.source.shifts]
        hi = max(degs) + M.ring.nvars
        vanishes = all(hilbert_function_direct(M, j) == 0 for j in range(min(degs), hi + 1))
        nak += is_zero(M) == vanishes
        fl += has_finite_length(M) == (annihilated_by_power(M, bound=16) is not None)
    ok = nak == 50 and fl == 50
    announce(6, ok, f"is_zero agrees {nak}/50, finite length vs m-power annihilation {fl}/50")
    assert ok


def test_criterion_7_structure(announce):
    corpus = list(_acceptance_corpus())
    corpus += [(n, A.as_module()) for n, A in cm_algebras()]
    T2 = polynomial_ring("x y")
    x, y = T2.gens
    artinian = [QuotientRing(T2, [x**2, y**2]), QuotientRing(T2, [x**2, x * y, y**3]),
                QuotientRing(polynomial_ring("x"), [polynomial_ring("x").gens[0] ** 3])]
    corpus += [("artinian", A.as_module()) for A in artinian]
    problems = []
    for name, M in corpus:
        s = M.ring.nvars
        res = free_resolution(M)
        if not res.composition_is_zero() or res.length > s:
            problems.append((name, "resolution"))
        if any(hilbert_function(M, j) != hilbert_function_direct(M, j) for j in range(11)):
            problems.append((name, "hilbert"))
        depth, dim, cm = depth_dim(M)
        least = min(i for i in range(s + 1) if not local_cohomology_duality(M, i).is_zero())
        if depth != s - res.projective_dimension or depth != least:
            problems.append((name, "depth"))
    for A in artinian:
        depth, dim, cm = depth_dim(A)
        if not (is_graded_artinian(A) and depth == dim == 0 and cm and is_cohen_macaulay(A)):
            problems.append((repr(A), "artinian"))
    ok = not problems
    announce(7, ok, f"{len(corpus)} instances, problems: {problems or 'none'}")
    assert ok
