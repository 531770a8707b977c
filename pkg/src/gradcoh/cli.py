"""Command-line front end: run a session file and print a deterministic report."""
from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field as dc_field

from .errors import GradcohError
from .session import Session, parse_session


@dataclass
class Block:
    command: str
    args: list
    columns: list
    rows: list = dc_field(default_factory=list)
    passed: bool = None          # None for plain computations
    error: str = None

    def to_json(self):
        return {"command": self.command, "args": self.args, "columns": self.columns,
                "rows": [list(r) for r in self.rows], "passed": self.passed, "error": self.error}


@dataclass
class Report:
    blocks: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(b.passed is not False and b.error is None for b in self.blocks)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def to_json(self) -> str:
        return json.dumps({"passed": self.passed, "blocks": [b.to_json() for b in self.blocks]},
                          indent=2, sort_keys=False) + "\n"

    def to_tsv(self) -> str:
        lines = []
        for b in self.blocks:
            head = " ".join([b.command] + b.args)
            status = "error" if b.error else ("-" if b.passed is None else ("pass" if b.passed else "fail"))
            lines.append(f"# {head}\t{status}")
            if b.error:
                lines.append(f"error\t{b.error}")
                continue
            lines.append("\t".join(b.columns))
            for r in b.rows:
                lines.append("\t".join(_cell(v) for v in r))
        return "\n".join(lines) + ("\n" if lines else "")


def _cell(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "-"
    return str(v)


def _int(v):
    """Report numbers are integers; exact rationals with denominator 1 are converted."""
    if hasattr(v, "denominator"):
        if v.denominator != 1:
            raise ValueError(f"non-integer value {v} in report")
        return int(v.numerator)
    return v


@dataclass
class Flags:
    window: tuple = None
    tmax: int = 6
    method: str = "both"
    field: str = None
    seed: int = 0
    format: str = "tsv"


# -- commands ------------------------------------------------------------------------

def _resolve(ctx, M, flags, args):
    from .resolution import free_resolution
    P = ctx.module(args[0])
    if P.algebra is not None:
        from .hilbert import dimension
        res = free_resolution(P, max(dimension(P.algebra.as_module()), 0) + 2)
    else:
        res = free_resolution(P)
    g = P.ring.grading
    rows = []
    for i, F in enumerate(res.frees):
        rows.append((i, F.rank, " ".join(str(g.present(a)) for a in F.shifts)))
    b = Block("resolve", args, ["i", "rank", "generator_degrees"], rows)
    b.passed = res.composition_is_zero()
    return b


def _betti(ctx, M, flags, args):
    from .resolution import free_resolution
    P = ctx.module(args[0])
    if P.algebra is not None:
        from .hilbert import dimension
        res = free_resolution(P, max(dimension(P.algebra.as_module()), 0) + 2)
    else:
        res = free_resolution(P)
    return Block("betti", args, ["i", "degree", "count"],
                 [(i, _deg(d), c) for i, d, c in res.betti_rows()])


def _deg(d):
    return d if isinstance(d, int) else "(" + ",".join(str(x) for x in d) + ")"


def _hilbert(ctx, M, flags, args):
    from .hilbert import depth_dim, hilbert_series
    from .errors import ZeroModule
    P = ctx.module(args[0])
    hs = hilbert_series(P)
    rows = [("numerator", _deg(P.ring.grading.present(d)), c) for d, c in hs.numerator]
    if P.ring.grading.rank == 1:
        lo, hi = flags.window or (0, 10)
        rows += [("hf", j, hs.coefficient(j)) for j in range(lo, hi + 1)]
    rows.append(("dim", "-", hs.pole_order()))
    try:
        depth, dim, cm = depth_dim(P)
        rows.append(("depth", "-", depth))
        rows.append(("cohen_macaulay", "-", cm))
    except ZeroModule:
        pass
    return Block("hilbert", args, ["kind", "degree", "value"], rows)


def _ext(ctx, M, flags, args):
    from .homological import canonical_module, ext_over_A, ext_over_T, omega_T
    P = ctx.module(args[0])
    i = int(args[2])
    A = P.algebra
    if args[1] == "omega":
        N = canonical_module(A).module if A is not None else omega_T(P.ring)
    else:
        N = ctx.module(args[1])
    if A is not None and N.algebra == A:
        E = ext_over_A(P, N, i)
    else:
        E = ext_over_T(P, N, i)
    lo, hi = flags.window or (-10, 10)
    rows = [(j, E.hilbert_function(j)) for j in range(lo, hi + 1)]
    return Block("ext", args, ["degree", "dim"], rows)


def _canonical(ctx, M, flags, args):
    from .homological import canonical_module, is_cohen_macaulay
    from .modules import minimal_generators
    A = ctx.algebras[args[0]]
    w = canonical_module(A)
    rows = [("h", "-", w.h)]
    rows += [("generator", _deg(d), 1) for d in minimal_generators(w.module)]
    rows.append(("gorenstein_shift", "-", _deg(w.gorenstein_shift) if w.gorenstein_shift is not None else None))
    rows.append(("cohen_macaulay", "-", is_cohen_macaulay(A)))
    rows.append(("annihilated_by_I", "-", w.annihilated))
    b = Block("canonical", args, ["kind", "degree", "value"], rows)
    b.passed = w.annihilated
    return b


def _localcoh(ctx, M, flags, args):
    from .localcoh import KoszulStrands, default_window, local_cohomology_duality, oracle_t
    P = ctx.module(args[0])
    s = P.ring.nvars
    lo, hi = flags.window or default_window(P)
    method = flags.method
    H = [local_cohomology_duality(P, i) for i in range(s + 1)] if method != "oracle" else None
    strands = KoszulStrands(P) if method != "duality" else None
    rows = []
    ok = True
    for j in range(lo, hi + 1):
        runs = None
        if strands is not None:
            t = oracle_t(P, j, flags.tmax)
            runs = [strands.dims(j, tt) for tt in (t - 2, t - 1, t)]
        for i in range(s + 1):
            if method == "duality":
                v = H[i](j)
                if v:
                    rows.append((i, j, v))
                continue
            vals = [r[i] for r in runs]
            stable = len(set(vals)) == 1
            if method == "oracle":
                if vals[-1] or not stable:
                    rows.append((i, j, vals[-1], stable))
                continue
            d = H[i](j)
            agree = (not stable) or d == vals[-1]
            ok = ok and agree
            if d or vals[-1] or not agree:
                rows.append((i, j, d, vals[-1], stable, agree))
    cols = {"duality": ["i", "j", "dim"], "oracle": ["i", "j", "dim", "stable"],
            "both": ["i", "j", "dim_duality", "dim_oracle", "stable", "pass"]}[method]
    b = Block("localcoh", args, cols, rows)
    if method == "both":
        b.passed = ok
    return b


def _matlis(ctx, M, flags, args):
    from .matlis import finite_length_profile, matlis_dual
    P = ctx.module(args[0])
    F = finite_length_profile(P)
    D = matlis_dual(F)
    rows = [("M", j, m) for j, m in F.profile().items()]
    rows += [("D(M)", j, m) for j, m in D.profile().items()]
    rows.append(("annihilator_power", "-", F.annihilator_power()))
    rows.append(("length", "-", F.length))
    return Block("matlis", args, ["module", "degree", "dim"], rows)


def _verify_duality(ctx, M, flags, args):
    from .localcoh import local_cohomology_duality_over_A, verify_local_duality
    from .homological import is_cohen_macaulay
    P = ctx.module(args[0])
    rep = verify_local_duality(P, flags.window, flags.tmax)
    rows = [("local", r.i, r.j, r.dim_duality, r.dim_oracle, r.stable, r.passed) for r in rep.rows]
    rows += [("serre", "-", j, _int(l), _int(r), True, ok) for j, l, r, ok in rep.serre.rows]
    rows.append(("vanishing", "-", "-", rep.depth, rep.dim, True, rep.vanishing_ok))
    passed = rep.passed
    if P.algebra is not None and is_cohen_macaulay(P.algebra):
        lo, hi = rep.window
        for i in range(P.ring.nvars + 1):
            HA = local_cohomology_duality_over_A(P, i)
            for j in range(lo, hi + 1):
                a = HA(j)
                t = rep.table(i).get(j, 0)
                if a or t:
                    rows.append(("a-side", i, j, t, a, True, a == t))
                    passed = passed and a == t
    b = Block("verify-duality", args,
              ["check", "i", "j", "dim_duality", "dim_other", "stable", "pass"], rows)
    b.passed = passed
    return b


def _verify_matlis(ctx, M, flags, args):
    from .matlis import (annihilated_by_power, double_dual_check, finite_length_profile, matlis_dual,
                         matlis_exactness_check, random_submodule_sequence, star_hom_check)
    P = ctx.module(args[0])
    F = finite_length_profile(P)
    D = matlis_dual(F)
    rng = random.Random(flags.seed)
    rows = []
    flip = all(D.profile().get(-j, 0) == m for j, m in F.profile().items()) and D.length == F.length
    rows.append(("profile_flip", flip))
    rows.append(("double_dual", double_dual_check(F).ok))
    ex = all(matlis_exactness_check(random_submodule_sequence(F, rng)) for _ in range(3))
    rows.append(("exactness", ex))
    rows.append(("annihilator_power", F.annihilator_power() == annihilated_by_power(P)))
    if P.ring.grading.rank == 1:
        prof = F.profile()
        top = max(prof, default=0)
        low = min(prof, default=0)
        N = max(top, 0) + 2
        window = (-top - 1, -low + 1)
        N = max(N, -window[0] - low)
        rows.append(("star_hom", star_hom_check(P, window, N).ok))
    b = Block("verify-matlis", args, ["check", "pass"], rows)
    b.passed = all(r[1] for r in rows)
    return b


_HANDLERS = {
    "resolve": _resolve, "betti": _betti, "hilbert": _hilbert, "ext": _ext,
    "canonical": _canonical, "localcoh": _localcoh, "matlis": _matlis,
    "verify-duality": _verify_duality, "verify-matlis": _verify_matlis,
}


def run(session: Session, flags: Flags = None) -> Report:
    flags = flags or Flags()
    report = Report()
    if not session.commands:
        return report
    ctx = session.build(flags.field)
    for cmd, args in session.commands:
        try:
            block = _HANDLERS[cmd](ctx, None, flags, list(args))
        except GradcohError as e:
            block = Block(cmd, list(args), [], error=f"{type(e).__name__}: {e}")
        report.blocks.append(block)
    return report


def _window(text):
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError("window must be LO:HI") from None
    if lo > hi:
        raise argparse.ArgumentTypeError("window must satisfy LO <= HI")
    return (lo, hi)


def _tmax(text):
    v = int(text)
    if v < 3:
        raise argparse.ArgumentTypeError("--tmax must be at least 3")
    return v


def build_parser():
    p = argparse.ArgumentParser(prog="gradcoh",
                                description="Graded local cohomology, local duality and Matlis duality.")
    p.add_argument("--input", "-i", default="-", help="session file ('-' for stdin)")
    p.add_argument("--window", type=_window, help="degree window LO:HI")
    p.add_argument("--tmax", type=_tmax, default=6, help="Koszul truncation parameter (default 6)")
    p.add_argument("--method", choices=("duality", "oracle", "both"), default="both")
    p.add_argument("--field", help="q or fp:P (overrides the session's field)")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    return p


def _join_window(argv):
    """Allow '--window -5:3' (argparse would read -5:3 as an option)."""
    out = []
    it = iter(argv)
    for a in it:
        if a == "--window":
            nxt = next(it, None)
            out.append(a if nxt is None else f"--window={nxt}")
        else:
            out.append(a)
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_join_window(argv))
    try:
        text = sys.stdin.read() if args.input == "-" else open(args.input, encoding="utf-8").read()
    except OSError as e:
        print(f"gradcoh: {e}", file=sys.stderr)
        return 2
    try:
        session = parse_session(text)
        flags = Flags(args.window, args.tmax, args.method, args.field, args.seed, args.format)
        report = run(session, flags)
    except GradcohError as e:
        print(f"gradcoh: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    sys.stdout.write(report.to_json() if args.format == "json" else report.to_tsv())
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
