"""Session files: a line-oriented language for rings, ideals, modules and commands.

    field q;                       # or: field fp 101;
    vars x:1 y:1 z:2;              # weights (>= 1) or multidegrees x:(1,0)
    ideal I = x*y, x^2;
    algebra A = T/I;
    module M = coker [[x, y]] shifts [0] over A;
    resolve M;  betti M;  hilbert M;  ext M omega 1;  canonical A;
    localcoh M;  matlis M;  verify-duality M;  verify-matlis M;

Statements end with ';'.  '#' starts a comment.  Module shifts are the
degrees of the generators, so ``shifts [1]`` presents a quotient of T(-1).
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field

from .errors import NonHomogeneousInput, ParseError
from .field import Field
from .modules import GradedFree, GradedFreeMap, Presentation, QuotientRing
from .ring import polynomial_ring

COMMANDS = ("resolve", "betti", "hilbert", "ext", "canonical", "localcoh", "matlis",
            "verify-duality", "verify-matlis")


@dataclass
class ModuleDecl:
    rows: list                 # list of rows, each a list of polynomial strings
    shifts: list               # generator degrees (ints or int tuples)
    over: str = None


@dataclass
class Session:
    field: str = "q"
    variables: list = dc_field(default_factory=list)       # [(name, degree)]
    ideals: dict = dc_field(default_factory=dict)          # name -> [polynomial strings]
    algebras: dict = dc_field(default_factory=dict)        # name -> ideal name (None for T)
    modules: dict = dc_field(default_factory=dict)         # name -> ModuleDecl
    commands: list = dc_field(default_factory=list)        # [(command, [args])]

    # -- serialization ------------------------------------------------------------
    def to_text(self) -> str:
        out = [f"field {'q' if self.field == 'q' else 'fp ' + self.field.split(':')[1]};"]
        if self.variables:
            out.append("vars " + " ".join(f"{n}:{_fmt_degree(d)}" for n, d in self.variables) + ";")
        for name, gens in self.ideals.items():
            out.append(f"ideal {name} = {', '.join(gens)};")
        for name, ideal in self.algebras.items():
            out.append(f"algebra {name} = T" + (f"/{ideal}" if ideal else "") + ";")
        for name, m in self.modules.items():
            rows = "[" + ", ".join("[" + ", ".join(r) + "]" for r in m.rows) + "]"
            shifts = "[" + ", ".join(_fmt_degree(d) for d in m.shifts) + "]"
            tail = f" over {m.over}" if m.over else ""
            out.append(f"module {name} = coker {rows} shifts {shifts}{tail};")
        for cmd, args in self.commands:
            out.append(" ".join([cmd] + [str(a) for a in args]) + ";")
        return "\n".join(out) + "\n"

    # -- realization ----------------------------------------------------------------
    def build(self, field_override: str = None):
        """Construct the ring, algebras and presentations; returns a Context."""
        return Context(self, field_override)


def _fmt_degree(d):
    if isinstance(d, tuple):
        return "(" + ",".join(str(x) for x in d) + ")"
    return str(d)


def parse_field(spec: str) -> Field:
    spec = spec.strip().lower()
    if spec in ("q", "qq"):
        return Field(0)
    m = re.fullmatch(r"fp[: ]\s*(\d+)", spec)
    if not m:
        raise ParseError(f"unknown field {spec!r}")
    return Field(int(m.group(1)))


class Context:
    """The mathematical objects named in a session."""

    def __init__(self, session: Session, field_override=None):
        self.session = session
        fld = parse_field(field_override or session.field.replace(":", " "))
        names = [n for n, _ in session.variables]
        degs = [d if isinstance(d, tuple) else (d,) for _, d in session.variables]
        self.ring = polynomial_ring(names, field=fld, degrees=degs)
        self.ideals = {}
        for name, gens in session.ideals.items():
            polys = [self.ring(g) for g in gens]
            for g, p in zip(gens, polys):
                if not p.is_homogeneous():
                    raise NonHomogeneousInput(g, f"generator of ideal {name}")
            self.ideals[name] = polys
        self.algebras = {}
        for name, ideal in session.algebras.items():
            self.algebras[name] = QuotientRing(self.ring, self.ideals[ideal] if ideal else [])
        self.modules = {}
        for name, m in session.modules.items():
            self.modules[name] = self._module(name, m)

    def _module(self, name, m: ModuleDecl) -> Presentation:
        ring = self.ring
        shifts = [d if isinstance(d, tuple) else (d,) for d in m.shifts]
        rows = [[ring(e) for e in row] for row in m.rows]
        if rows and len(rows) != len(shifts):
            raise ParseError(f"module {name}: {len(rows)} rows but {len(shifts)} shifts")
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ParseError(f"module {name}: ragged matrix")
        algebra = self.algebras[m.over] if m.over else None
        F0 = GradedFree(ring, tuple(shifts))
        cols, srcdeg = [], []
        for j in range(ncols):
            col = {}
            deg = None
            for i, row in enumerate(rows):
                f = row[j]
                if not f.terms:
                    continue
                if not f.is_homogeneous():
                    raise NonHomogeneousInput(str(f), f"entry ({i},{j}) of module {name}")
                d = tuple(a + b for a, b in zip(f.degree(), shifts[i]))
                if deg is not None and d != deg:
                    raise NonHomogeneousInput(f"column {j} of module {name}",
                                              "entries have inconsistent degrees")
                deg = d
                for e, c in f.terms.items():
                    col[(i, e)] = c
            cols.append(col)
            srcdeg.append(deg if deg is not None else ring.grading.zero)
        phi = GradedFreeMap(GradedFree(ring, tuple(srcdeg)), F0, cols, check=False)
        return Presentation(phi, algebra)

    def module(self, name) -> Presentation:
        if name in self.modules:
            return self.modules[name]
        if name in self.algebras:
            return self.algebras[name].as_module()
        raise KeyError(name)


# -- parser --------------------------------------------------------------------------

_IDENT = r"[A-Za-z_][A-Za-z0-9_]*"


def _strip_comments(text):
    return "\n".join(line.split("#", 1)[0] for line in text.split("\n"))


def _statements(text):
    """Yield (statement, line, col) for each ';'-terminated statement."""
    text = _strip_comments(text)
    start = 0
    depth = 0
    for k, ch in enumerate(text):
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        elif ch == ";" and depth == 0:
            stmt = text[start:k]
            if stmt.strip():
                lead = len(stmt) - len(stmt.lstrip())
                pos = start + lead
                line = text.count("\n", 0, pos) + 1
                col = pos - (text.rfind("\n", 0, pos) + 1) + 1
                yield stmt.strip(), line, col
            start = k + 1
    if text[start:].strip():
        pos = start + len(text[start:]) - len(text[start:].lstrip())
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        raise ParseError("missing ';' at end of statement", line, col)


def _split_top(s, sep=","):
    parts, depth, cur = [], 0, []
    for ch in s:
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    tail = "".join(cur).strip()
    if tail or parts:
        parts.append(tail)
    return parts


def _parse_degree(tok, line, col):
    tok = tok.strip()
    try:
        if tok.startswith("("):
            if not tok.endswith(")"):
                raise ValueError
            return tuple(int(x) for x in tok[1:-1].split(","))
        return int(tok)
    except ValueError:
        raise ParseError(f"bad degree {tok!r}", line, col) from None


def _bracketed(s, line, col, what):
    s = s.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ParseError(f"expected a bracketed {what}", line, col)
    return s[1:-1]


def _check_poly(ring, text, line, col):
    if ring is None:
        raise ParseError("variables must be declared before polynomials", line, col)
    try:
        return ring(text)
    except ParseError as e:
        raise ParseError(f"in {text!r}: {e}", line, col) from None


def parse_session(text: str) -> Session:
    sess = Session()
    seen_vars = False
    ring = None
    for stmt, line, col in _statements(text):
        head = stmt.split(None, 1)[0]
        rest = stmt[len(head):].strip()
        if head == "field":
            spec = rest.lower().replace(":", " ")
            if spec == "q":
                sess.field = "q"
            else:
                m = re.fullmatch(r"fp\s+(\d+)", spec)
                if not m:
                    raise ParseError(f"bad field declaration {rest!r}", line, col)
                try:
                    Field(int(m.group(1)))
                except ValueError as e:
                    raise ParseError(str(e), line, col) from None
                sess.field = f"fp:{int(m.group(1))}"
        elif head == "vars":
            if seen_vars:
                raise ParseError("variables declared twice", line, col)
            seen_vars = True
            for m in re.finditer(r"(\S+?):(\([^)]*\)|\S+)|(\S+)", rest):
                if m.group(3) is not None:
                    raise ParseError(f"expected name:weight, got {m.group(3)!r}", line, col + len(head) + 1 + m.start())
                name, deg = m.group(1), m.group(2)
                c = col + len(head) + 1 + m.start()
                if not re.fullmatch(_IDENT, name) or name == "T":
                    raise ParseError(f"bad variable name {name!r}", line, c)
                d = _parse_degree(deg, line, c)
                w = d if isinstance(d, int) else None
                if w is not None and w < 1:
                    raise ParseError(f"weight of {name} must be positive", line, c)
                if isinstance(d, tuple) and all(x <= 0 for x in d):
                    raise ParseError(f"degree of {name} must be positive", line, c)
                sess.variables.append((name, d))
            if not sess.variables:
                raise ParseError("no variables declared", line, col)
            degs = [d if isinstance(d, tuple) else (d,) for _, d in sess.variables]
            if len({len(d) for d in degs}) != 1:
                raise ParseError("all variable degrees must have the same length", line, col)
            try:
                ring = polynomial_ring([n for n, _ in sess.variables], degrees=degs)
            except ValueError as e:
                raise ParseError(str(e), line, col) from None
        elif head in ("ideal", "algebra", "module"):
            m = re.fullmatch(rf"({_IDENT})\s*=\s*(.*)", rest, re.S)
            if not m:
                raise ParseError(f"expected '{head} NAME = ...'", line, col)
            name, body = m.group(1), m.group(2).strip()
            if name in sess.ideals or name in sess.algebras or name in sess.modules:
                raise ParseError(f"name {name!r} already defined", line, col)
            if head == "ideal":
                gens = [" ".join(g.split()) for g in _split_top(body) if g]
                for g in gens:
                    if not _check_poly(ring, g, line, col).is_homogeneous():
                        raise NonHomogeneousInput(g, f"generator of ideal {name}")
                sess.ideals[name] = gens
            elif head == "algebra":
                am = re.fullmatch(rf"T(?:\s*/\s*({_IDENT}))?", body)
                if not am:
                    raise ParseError("algebra must be T or T/IDEAL", line, col)
                ideal = am.group(1)
                if ideal is not None and ideal not in sess.ideals:
                    raise ParseError(f"unknown ideal {ideal!r}", line, col)
                sess.algebras[name] = ideal
            else:
                mm = re.fullmatch(r"coker\s*(\[.*\])\s*shifts\s*(\[[^\]]*\])(?:\s*over\s+(" + _IDENT + r"))?",
                                  body, re.S)
                if not mm:
                    raise ParseError("module must be 'coker [[...]] shifts [...] [over A]'", line, col)
                inner = _bracketed(mm.group(1), line, col, "matrix")
                rows = []
                for r in _split_top(inner):
                    if not r:
                        continue
                    entries = _split_top(_bracketed(r, line, col, "row"))
                    row = [" ".join(e.split()) for e in entries if e != ""]
                    for e in row:
                        _check_poly(ring, e, line, col)
                    rows.append(row)
                shifts = [_parse_degree(t, line, col)
                          for t in _split_top(_bracketed(mm.group(2), line, col, "shift list")) if t]
                over = mm.group(3)
                if over is not None and over not in sess.algebras:
                    raise ParseError(f"unknown algebra {over!r}", line, col)
                sess.modules[name] = ModuleDecl(rows, shifts, over)
        elif head in COMMANDS:
            args = rest.split()
            _check_command(sess, head, args, line, col)
            sess.commands.append((head, args))
        else:
            raise ParseError(f"unknown statement {head!r}", line, col)
    # everything must build: names resolve and generators are homogeneous
    if sess.variables:
        sess.build()
    elif sess.ideals or sess.modules or sess.algebras:
        raise ParseError("no variables declared")
    return sess


def _check_command(sess, cmd, args, line, col):
    def known(n):
        return n in sess.modules or n in sess.algebras

    if cmd == "ext":
        if len(args) != 3:
            raise ParseError("ext takes: MODULE COEFFICIENT INDEX", line, col)
        m, n, i = args
        if not known(m) or not (known(n) or n == "omega"):
            raise ParseError(f"unknown name in 'ext {' '.join(args)}'", line, col)
        try:
            int(i)
        except ValueError:
            raise ParseError(f"Ext index must be an integer, got {i!r}", line, col) from None
    elif cmd == "canonical":
        if len(args) != 1 or args[0] not in sess.algebras:
            raise ParseError("canonical takes one algebra name", line, col)
    else:
        if len(args) != 1 or not known(args[0]):
            raise ParseError(f"{cmd} takes one module or algebra name", line, col)
