"""Minimal graded free resolutions over T and (to finite length) over A = T/I."""
from __future__ import annotations

from dataclasses import dataclass, field

from .groebner import vec_add_poly_mul
from .modules import (GradedFree, GradedFreeMap, Presentation, QuotientRing, kernel_map,
                      minimal_presentation, prune_map)


@dataclass
class FreeResolution:
    """F_0 <- F_1 <- ... <- F_l with maps d_1, ..., d_l (``maps[i-1]`` is d_i)."""

    frees: list
    maps: list
    algebra: QuotientRing = None
    minimal: bool = True
    complete: bool = True

    @property
    def ring(self):
        return self.frees[0].ring

    @property
    def length(self) -> int:
        return len(self.maps)

    @property
    def projective_dimension(self):
        """Length of the resolution when it is known to terminate, else None."""
        if not self.complete:
            return None
        if self.frees[0].rank == 0:
            return -1
        return len(self.maps)

    def betti(self):
        """{(i, degree): count}; degrees are ints for Z-gradings."""
        g = self.ring.grading
        out = {}
        for i, F in enumerate(self.frees):
            for a in F.shifts:
                key = (i, g.present(a))
                out[key] = out.get(key, 0) + 1
        return out

    def betti_rows(self):
        g = self.ring.grading
        rows = []
        for i, F in enumerate(self.frees):
            counts = {}
            for a in F.shifts:
                counts[a] = counts.get(a, 0) + 1
            for a in sorted(counts, key=lambda d: (g.weight(d), d)):
                rows.append((i, g.present(a), counts[a]))
        return rows

    def max_shift_weight(self) -> int:
        return max((w for F in self.frees for w in F.wshifts), default=0)

    def composition_is_zero(self) -> bool:
        """d_i o d_{i+1} == 0 for all consecutive maps (modulo I over A)."""
        for a, b in zip(self.maps, self.maps[1:]):
            comp = a.compose(b)
            for col in comp.columns:
                if self.algebra is not None:
                    col = self.algebra.reduce_vec(col)
                if col:
                    return False
        return True

    def has_unit_entries(self) -> bool:
        zero = self.ring.zero_exp
        return any(e == zero for d in self.maps for col in d.columns for (_, e) in col)


def _drop_columns(phi: GradedFreeMap, idx):
    keep = [j for j in range(phi.source.rank) if j not in set(idx)]
    src = GradedFree(phi.ring, tuple(phi.source.shifts[j] for j in keep))
    return GradedFreeMap(src, phi.target, [phi.columns[j] for j in keep], check=False)


def free_resolution(M: Presentation, length=None) -> FreeResolution:
    """Minimal graded free resolution of M.

    Over T ``length=None`` resolves until the kernel vanishes (at most s steps
    by the syzygy theorem).  Over A a finite ``length`` (number of maps) is
    required since resolutions there need not terminate.
    """
    algebra = M.algebra
    if algebra is not None and length is None:
        raise ValueError("resolutions over a quotient ring need a finite length")
    if length is not None and length < 1:
        raise ValueError("length must be at least 1")
    cache_key = ("res", length)
    if cache_key in M._cache:
        return M._cache[cache_key]

    s = M.ring.nvars
    d1 = minimal_presentation(M).phi
    frees = [d1.target]
    maps = []
    complete = False
    if d1.target.rank == 0 or d1.source.rank == 0:
        complete = True
    else:
        maps.append(d1)
        frees.append(d1.source)
    while not complete and (length is None or len(maps) < length):
        cur = maps[-1]
        K = kernel_map(cur, algebra)
        if K.source.rank == 0:
            complete = True
            break
        K, rows, _ = prune_map(K, algebra)
        if rows:
            # a unit in the new map cancels generators of F_i: drop those columns of d_i
            maps[-1] = _drop_columns(cur, rows)
            frees[-1] = maps[-1].source
            if K.source.rank == 0:
                complete = True
                break
        maps.append(K)
        frees.append(K.source)
        if algebra is None and len(maps) > s + 1:
            raise RuntimeError("resolution over T exceeded the syzygy bound")
    res = FreeResolution(frees, maps, algebra=algebra, minimal=True, complete=complete)
    M._cache[cache_key] = res
    return res
