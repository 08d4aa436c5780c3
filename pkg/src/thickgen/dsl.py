"""Line-oriented script language for rings, ideals, complexes, and maps.

Binding statements construct values immediately (bad literals are parse
errors, with line and column); commands are syntax-checked, stored on
the session, and dispatched later, reporting engine failures separately
so a front end can distinguish the two.  Renderers emit the same
grammar the parser accepts, and re-parsing a rendered complex yields an
equal complex.
"""

import re
from dataclasses import dataclass, field

from .complexes import ChainMap, FreeComplex, koszul
from .errors import ComplexFormatError, EngineError, ParseError
from .generation import (
    level_lower_bound,
    principal_power_witness,
    strong_generation_obstruction,
    thick_member,
    validate_witness,
)
from .homology import ann_total_homology, homology, resolve_primes, supph
from .ideals import Ideal
from .matrices import Matrix
from .rings import GF, QQ, ZZ, RingElem, UniQuotRing, Zmod, poly_ring
from .spectrum import idempotents, nilpotence_lemma_check, spec_description

_TOKEN_RE = re.compile(
    r"""(?P<ws>[ \t\r]+)
      | (?P<comment>\#[^\n]*)
      | (?P<nl>\n)
      | (?P<int>\d+)
      | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
      | (?P<op>->|\.\.|[-+*/^()\[\]{};,=:])
    """,
    re.VERBOSE,
)

COMMANDS = {
    "koszul": 1,
    "homology": 1,
    "ann": 1,
    "support": 1,
    "thick-member": 2,
    "level-lb": 2,
    "witness-principal": None,
    "validate-witness": 3,
    "spec": 1,
    "idempotents": 1,
    "nilpotence": 2,
    "obstruct": 2,
}

BINDERS = ("ring", "ideal", "complex", "map")


@dataclass
class Token:
    kind: str  # "int" | "name" | "op" | "eof"
    text: str
    line: int
    col: int


def tokenize(text):
    out = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        tok = m.group()
        if kind == "nl":
            line += 1
            col = 1
        else:
            if kind not in ("ws", "comment"):
                out.append(Token(kind, tok, line, col))
            col += len(tok)
        pos = m.end()
    out.append(Token("eof", "", line, col))
    return out


# --------------------------------------------------------------- sessions


@dataclass
class Command:
    name: str
    args: tuple
    line: int


@dataclass
class Session:
    bindings: dict = field(default_factory=dict)  # name -> (kind, value)
    commands: list = field(default_factory=list)
    jobs: int = 1

    def bind(self, name, kind, value, line):
        if name in self.bindings:
            raise ParseError(f"name {name!r} is already bound", line, 1)
        self.bindings[name] = (kind, value)

    def get(self, name, want):
        if name not in self.bindings:
            raise EngineError(f"unknown name {name!r}")
        kind, value = self.bindings[name]
        if kind != want:
            raise EngineError(f"{name!r} is bound to a {kind}, expected {want}")
        return value


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.pos = 0

    def peek(self, ahead=0):
        return self.toks[min(self.pos + ahead, len(self.toks) - 1)]

    def next(self):
        tok = self.peek()
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, tok.line, tok.col)

    def expect_op(self, text):
        tok = self.next()
        if tok.kind != "op" or tok.text != text:
            self.fail(f"expected {text!r}, found {tok.text!r}", tok)
        return tok

    def expect_name(self, what="name"):
        tok = self.next()
        if tok.kind != "name":
            self.fail(f"expected {what}, found {tok.text!r}", tok)
        return tok

    def expect_int(self):
        neg = False
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.next()
            neg = True
        tok = self.next()
        if tok.kind != "int":
            self.fail(f"expected integer, found {tok.text!r}", tok)
        return -int(tok.text) if neg else int(tok.text)

    def expect_flag(self, name):
        a = self.next()
        b = self.next()
        tok = self.next()
        ok = (
            a.kind == "op" and a.text == "-"
            and b.kind == "op" and b.text == "-"
            and tok.kind == "name" and tok.text == name
        )
        if not ok:
            self.fail(f"expected --{name}", a)

    # statement keyword, possibly hyphenated (thick-member, level-lb)
    def command_word(self):
        tok = self.expect_name("statement keyword")
        word = tok.text
        while (
            self.peek().kind == "op"
            and self.peek().text == "-"
            and self.peek(1).kind == "name"
            and f"{word}-{self.peek(1).text}" in COMMANDS
        ):
            self.next()
            word = f"{word}-{self.next().text}"
        return word, tok

    # element expressions -------------------------------------------------

    def parse_expr(self):
        node = self.parse_term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.next().text
            node = ("bin", op, node, self.parse_term())
        return node

    def parse_term(self):
        node = self.parse_unary()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.next().text
            node = ("bin", op, node, self.parse_unary())
        return node

    def parse_unary(self):
        if self.peek().kind == "op" and self.peek().text == "-":
            tok = self.next()
            return ("neg", self.parse_unary(), tok)
        return self.parse_power()

    def parse_power(self):
        node = self.parse_atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.next()
            tok = self.peek()
            n = self.expect_int()
            if n < 0:
                self.fail("negative exponent", tok)
            node = ("pow", node, n)
        return node

    def parse_atom(self):
        tok = self.next()
        if tok.kind == "int":
            return ("int", int(tok.text), tok)
        if tok.kind == "name":
            return ("var", tok.text, tok)
        if tok.kind == "op" and tok.text == "(":
            node = self.parse_expr()
            self.expect_op(")")
            return node
        self.fail(f"expected element expression, found {tok.text!r}", tok)

    # literals -------------------------------------------------------------

    def parse_ring_literal(self):
        tok = self.expect_name("ring literal")
        head = tok.text
        if head == "Z":
            return ZZ
        if head == "Q":
            return QQ
        if head == "Zmod":
            return Zmod(self.expect_int())
        if head == "Fp":
            return GF(self.expect_int())
        if head == "poly":
            F = self.parse_coeff_field()
            names = self.parse_var_list()
            order = "grevlex"
            if self.peek().kind == "name" and self.peek().text in ("lex", "grevlex"):
                order = self.next().text
            return poly_ring(F, names, order=order)
        if head == "polyquot":
            F = self.parse_coeff_field()
            names = self.parse_var_list()
            if len(names) != 1:
                self.fail("polyquot takes exactly one variable", tok)
            self.expect_op("(")
            cover = poly_ring(F, names)
            ast = self.parse_expr()
            self.expect_op(")")
            payload = eval_expr(ast, cover)
            return UniQuotRing(F, names[0], payload)
        self.fail(f"unknown ring literal {head!r}", tok)

    def parse_coeff_field(self):
        tok = self.expect_name("coefficient field")
        if tok.text == "Q":
            return QQ
        if tok.text == "Fp":
            return GF(self.expect_int())
        m = re.fullmatch(r"F(\d+)", tok.text)
        if m:
            return GF(int(m.group(1)))
        self.fail(f"expected a coefficient field, found {tok.text!r}", tok)

    def parse_var_list(self):
        self.expect_op("[")
        names = [self.expect_name("variable").text]
        while self.peek().kind == "op" and self.peek().text == ",":
            self.next()
            names.append(self.expect_name("variable").text)
        self.expect_op("]")
        return names

    def parse_ideal_literal(self, ring):
        self.expect_op("(")
        asts = [self.parse_expr()]
        while self.peek().kind == "op" and self.peek().text == ",":
            self.next()
            asts.append(self.parse_expr())
        self.expect_op(")")
        return Ideal(
            ring, [RingElem(ring, eval_expr(a, ring)) for a in asts]
        )

    def parse_matrix(self, ring):
        start = self.expect_op("[")
        rows = []
        if self.peek().kind == "op" and self.peek().text == "]":
            self.next()
            return Matrix(ring, [], 0, 0)
        while True:
            self.expect_op("[")
            row = []
            if not (self.peek().kind == "op" and self.peek().text == "]"):
                row.append(eval_expr(self.parse_expr(), ring))
                while self.peek().kind == "op" and self.peek().text == ",":
                    self.next()
                    row.append(eval_expr(self.parse_expr(), ring))
            self.expect_op("]")
            rows.append(row)
            if self.peek().kind == "op" and self.peek().text == ",":
                self.next()
                continue
            break
        self.expect_op("]")
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            self.fail("matrix rows have unequal lengths", start)
        return Matrix(ring, rows, len(rows), rows and len(rows[0]) or 0)

    def parse_complex_literal(self, ring):
        start = self.expect_op("{")
        head = self.expect_name()
        if head.text != "deg":
            self.fail("complex literal must start with a deg range", head)
        lo = self.expect_int()
        self.expect_op("..")
        hi = self.expect_int()
        if hi < lo:
            self.fail("empty degree range", head)
        diffs = {}
        ranks = {}
        while self.peek().kind == "op" and self.peek().text == ";":
            self.next()
            tok = self.expect_name("d or rank entry")
            if tok.text == "d":
                self.expect_op("(")
                n = self.expect_int()
                self.expect_op(")")
                self.expect_op("=")
                if n in diffs:
                    self.fail(f"duplicate d({n}) block", tok)
                diffs[n] = (self.parse_matrix(ring), tok)
            elif tok.text == "rank":
                self.expect_op("(")
                n = self.expect_int()
                self.expect_op(")")
                self.expect_op("=")
                r = self.expect_int()
                if r < 0:
                    self.fail("ranks are nonnegative", tok)
                if n in ranks:
                    self.fail(f"duplicate rank({n}) entry", tok)
                ranks[n] = (r, tok)
            else:
                self.fail(f"expected d(...) or rank(...), found {tok.text!r}", tok)
        self.expect_op("}")
        return self.build_complex(ring, lo, hi, diffs, ranks, start)

    def build_complex(self, ring, lo, hi, diffs, ranks, start):
        inferred = {}

        def put(n, r, tok):
            if not lo <= n <= hi:
                self.fail(f"degree {n} falls outside deg {lo}..{hi}", tok)
            if inferred.get(n, r) != r:
                self.fail(f"conflicting ranks for degree {n}", tok)
            inferred[n] = r

        for n, (M, tok) in diffs.items():
            put(n, M.ncols, tok)
            put(n + 1, M.nrows, tok)
        for n, (r, tok) in ranks.items():
            put(n, r, tok)
        full = {n: inferred.get(n, 0) for n in range(lo, hi + 1)}
        mats = {}
        for n, (M, tok) in diffs.items():
            if M.nrows and M.ncols:
                mats[n] = M
        try:
            return FreeComplex(ring, full, mats)
        except ComplexFormatError as exc:
            self.fail(str(exc), start)

    def parse_map_literal(self, src, dst):
        start = self.expect_op("{")
        ring = src.ring
        comps = {}
        while not (self.peek().kind == "op" and self.peek().text == "}"):
            tok = self.expect_name("c entry")
            if tok.text != "c":
                self.fail(f"expected c(...), found {tok.text!r}", tok)
            self.expect_op("(")
            n = self.expect_int()
            self.expect_op(")")
            self.expect_op("=")
            if n in comps:
                self.fail(f"duplicate c({n}) block", tok)
            comps[n] = self.parse_matrix(ring)
            if self.peek().kind == "op" and self.peek().text == ";":
                self.next()
        self.expect_op("}")
        try:
            return ChainMap(src, dst, comps)
        except EngineError as exc:
            self.fail(str(exc), start)


def eval_expr(ast, ring):
    env = _var_env(ring)

    def go(node):
        tag = node[0]
        if tag == "int":
            return ring.from_int(node[1])
        if tag == "var":
            name, tok = node[1], node[2]
            if name not in env:
                raise ParseError(f"unknown variable {name!r}", tok.line, tok.col)
            return env[name]
        if tag == "neg":
            return ring.neg(go(node[1]))
        if tag == "pow":
            return ring.pow_(go(node[1]), node[2])
        _, op, a, b = node
        x, y = go(a), go(b)
        if op == "+":
            return ring.add(x, y)
        if op == "-":
            return ring.sub(x, y)
        if op == "*":
            return ring.mul(x, y)
        return ring.exact_div(x, y)

    return go(ast)


def _var_env(ring):
    if ring.kind == "poly1":
        return {ring.var: ring.var_elem().payload}
    if ring.kind == "polyquot":
        return {ring.var: ring.var_elem().payload}
    if ring.kind == "polym":
        return {v: ring.var_elem(i).payload for i, v in enumerate(ring.vars)}
    return {}


# ---------------------------------------------------------------- parsing


def parse_script(text):
    """Build a session: bindings are constructed eagerly, commands are
    stored for run_command."""
    parser = _Parser(tokenize(text))
    session = Session()
    while parser.peek().kind != "eof":
        _parse_statement(parser, session)
    return session


def _parse_statement(parser, session):
    word, tok = parser.command_word()
    if word == "ring":
        name = parser.expect_name("ring name").text
        parser.expect_op("=")
        value = _literal(parser, parser.parse_ring_literal)
        session.bind(name, "ring", value, tok.line)
        return
    if word == "ideal":
        name = parser.expect_name("ideal name").text
        _expect_keyword(parser, "over")
        ring = _bound_ring(parser, session)
        parser.expect_op("=")
        value = _literal(parser, lambda: parser.parse_ideal_literal(ring))
        session.bind(name, "ideal", value, tok.line)
        return
    if word == "complex":
        name = parser.expect_name("complex name").text
        _expect_keyword(parser, "over")
        ring = _bound_ring(parser, session)
        parser.expect_op("=")
        value = _literal(parser, lambda: parser.parse_complex_literal(ring))
        session.bind(name, "complex", value, tok.line)
        return
    if word == "map":
        name = parser.expect_name("map name").text
        parser.expect_op(":")
        src = _bound_complex(parser, session)
        parser.expect_op("->")
        dst = _bound_complex(parser, session)
        parser.expect_op("=")
        value = _literal(parser, lambda: parser.parse_map_literal(src, dst))
        session.bind(name, "map", value, tok.line)
        return
    if word not in COMMANDS:
        parser.fail(f"unknown statement {word!r}", tok)
    _parse_command(parser, session, word, tok)


def _expect_keyword(parser, kw):
    tok = parser.expect_name(kw)
    if tok.text != kw:
        parser.fail(f"expected {kw!r}, found {tok.text!r}", tok)


def _bound_ring(parser, session):
    tok = parser.expect_name("ring name")
    if tok.text not in session.bindings:
        parser.fail(f"unknown name {tok.text!r}", tok)
    kind, value = session.bindings[tok.text]
    if kind != "ring":
        parser.fail(f"{tok.text!r} is bound to a {kind}, expected ring", tok)
    return value


def _bound_complex(parser, session):
    tok = parser.expect_name("complex name")
    if tok.text not in session.bindings:
        parser.fail(f"unknown name {tok.text!r}", tok)
    kind, value = session.bindings[tok.text]
    if kind != "complex":
        parser.fail(f"{tok.text!r} is bound to a {kind}, expected complex", tok)
    return value


def _literal(parser, thunk):
    """Literal construction failures are parse errors, not engine errors."""
    try:
        return thunk()
    except ParseError:
        raise
    except EngineError as exc:
        parser.fail(str(exc))


def _parse_command(parser, session, word, tok):
    if word == "witness-principal":
        ring_name = parser.expect_name("ring name").text
        parser.expect_op("(")
        ast = parser.parse_expr()
        parser.expect_op(")")
        n_tok = parser.peek()
        n = parser.expect_int()
        if n < 1:
            parser.fail("power must be at least 1", n_tok)
        bind_as = _parse_as(parser, session, tok)
        args = (ring_name, ast, n, bind_as)
    elif word in ("nilpotence", "obstruct"):
        a = parser.expect_name("ring name").text
        b = parser.expect_name("ideal name").text
        parser.expect_flag("max")
        n_tok = parser.peek()
        n = parser.expect_int()
        floor = 2 if word == "obstruct" else 1
        if n < floor:
            parser.fail(f"--max must be at least {floor}", n_tok)
        args = (a, b, n)
    elif word == "koszul":
        a = parser.expect_name("ideal name").text
        bind_as = _parse_as(parser, session, tok)
        args = (a, bind_as)
    else:
        arity = COMMANDS[word]
        args = tuple(parser.expect_name("name").text for _ in range(arity))
    session.commands.append(Command(word, args, tok.line))


def _parse_as(parser, session, tok):
    if parser.peek().kind == "name" and parser.peek().text == "as":
        parser.next()
        name = parser.expect_name("binding name").text
        # claim the name now so later statements cannot reuse it
        session.bind(name, "pending result", None, tok.line)
        return name
    return None


# -------------------------------------------------------------- rendering


def render_ring(ring):
    k = ring.kind
    if k == "Z":
        return "Z"
    if k == "Q":
        return "Q"
    if k == "Zmod":
        return f"Zmod {ring.m}"
    if k == "Fp":
        return f"Fp {ring.p}"
    if k == "poly1":
        return f"poly {_coeff_name(ring.F)} [{ring.var}]"
    if k == "polyquot":
        mod = ring.cover_ring.render(ring.modulus)
        return f"polyquot {_coeff_name(ring.F)} [{ring.var}] ({mod})"
    if k == "polym":
        return f"poly {_coeff_name(ring.F)} [{','.join(ring.vars)}] {ring.order}"
    raise EngineError(f"no literal form for ring kind {k!r}")


def _coeff_name(F):
    if F.kind == "Q":
        return "Q"
    if F.kind == "Fp":
        return f"F{F.p}"
    raise EngineError("coefficient fields are Q or Fp")


def render_matrix(M):
    rows = ", ".join(
        "[" + ", ".join(M.ring.render(e) for e in row) + "]" for row in M.rows
    )
    return f"[{rows}]"


def render_complex(X):
    """Canonical literal: d-blocks wherever both ends have rank, rank
    entries only for degrees no block pins down."""
    if X.is_zero_complex():
        return "{ deg 0..0 }"
    lo, hi = X.lo(), X.hi()
    parts = [f"deg {lo}..{hi}"]
    pinned = set()
    for n in range(lo, hi + 1):
        if X.rank(n) and X.rank(n + 1):
            parts.append(f"d({n}) = {render_matrix(X.diff(n))}")
            pinned.add(n)
            pinned.add(n + 1)
    for n in range(lo, hi + 1):
        if X.rank(n) and n not in pinned:
            parts.append(f"rank({n}) = {X.rank(n)}")
    return "{ " + " ; ".join(parts) + " }"


def render_chain_map(f):
    entries = [
        f"c({n}) = {render_matrix(M)}"
        for n, M in sorted(f.comps.items())
        if not M.is_zero()
    ]
    if not entries:
        return "{ }"
    return "{ " + " ; ".join(entries) + " }"


# ------------------------------------------------------------- dispatch


def run_command(session, cmd):
    """Execute one stored command; returns a list of key: value blocks
    (each block a list of lines)."""
    return _DISPATCH[cmd.name](session, cmd)


def _cmd_koszul(session, cmd):
    name, bind_as = cmd.args
    I = session.get(name, "ideal")
    K = koszul(I)
    if bind_as:
        session.bindings[bind_as] = ("complex", K)
    block = [
        "command: koszul",
        f"ideal: {I.render()}",
        f"complex: {render_complex(K)}",
    ]
    if bind_as:
        block.append(f"bound: {bind_as}")
    return [block]


def _cmd_homology(session, cmd):
    X = session.get(cmd.args[0], "complex")
    block = ["command: homology"]
    degs = X.degrees()
    if not degs:
        block.append("trivial: yes")
    for n in degs:
        block.append(f"H({n}): {homology(X, n).render()}")
    return [block]


def _cmd_ann(session, cmd):
    X = session.get(cmd.args[0], "complex")
    return [["command: ann", f"ann: {ann_total_homology(X).render()}"]]


def _cmd_support(session, cmd):
    X = session.get(cmd.args[0], "complex")
    sup = supph(X)
    block = ["command: support", f"support: {sup.render()}"]
    primes = resolve_primes(sup)
    if primes is None:
        block.append("primes: unresolved")
    else:
        block.append("primes: " + " ; ".join(p.render() for p in primes))
    return [block]


def _cmd_thick_member(session, cmd):
    X = session.get(cmd.args[0], "complex")
    G = session.get(cmd.args[1], "complex")
    verdict = thick_member(X, G)
    return [["command: thick-member"] + verdict.lines()]


def _cmd_level_lb(session, cmd):
    X = session.get(cmd.args[0], "complex")
    G = session.get(cmd.args[1], "complex")
    cert = level_lower_bound(X, G)
    return [["command: level-lb"] + cert.lines()]


def _cmd_witness_principal(session, cmd):
    ring_name, ast, n, bind_as = cmd.args
    ring = session.get(ring_name, "ring")
    try:
        x = RingElem(ring, eval_expr(ast, ring))
    except ParseError as exc:
        raise EngineError(str(exc))
    witness, target = principal_power_witness(x, n)
    G = koszul(Ideal(ring, [x]))
    lvl = validate_witness(witness, target, G)
    if bind_as:
        session.bindings[bind_as] = ("witness", (witness, target, G))
    block = [
        "command: witness-principal",
        f"element: {x!r}",
        f"power: {n}",
        f"level: {lvl}",
        f"cones: {lvl - 1}",
        f"target: {render_complex(target)}",
    ]
    if bind_as:
        block.append(f"bound: {bind_as}")
    return [block]


def _cmd_validate_witness(session, cmd):
    W = session.get(cmd.args[0], "witness")
    X = session.get(cmd.args[1], "complex")
    G = session.get(cmd.args[2], "complex")
    lvl = validate_witness(W[0], X, G)
    return [
        [
            "command: validate-witness",
            "valid: yes",
            f"level: {lvl}",
            f"cones: {lvl - 1}",
        ]
    ]


def _cmd_spec(session, cmd):
    R = session.get(cmd.args[0], "ring")
    return [["command: spec"] + spec_description(R).lines()]


def _cmd_idempotents(session, cmd):
    R = session.get(cmd.args[0], "ring")
    elems = idempotents(R)
    rendered = sorted((R.render(e) for e in elems), key=lambda s: (len(s), s))
    return [["command: idempotents", "idempotents: " + " ".join(rendered)]]


def _cmd_nilpotence(session, cmd):
    ring_name, ideal_name, max_n = cmd.args
    R = session.get(ring_name, "ring")
    I = session.get(ideal_name, "ideal")
    if I.ring != R:
        raise EngineError(f"ideal {ideal_name!r} is not defined over {ring_name!r}")
    report = nilpotence_lemma_check(I, max_n)
    return [["command: nilpotence"] + report.lines()]


def _cmd_obstruct(session, cmd):
    ring_name, ideal_name, max_n = cmd.args
    R = session.get(ring_name, "ring")
    I = session.get(ideal_name, "ideal")
    if I.ring != R:
        raise EngineError(f"ideal {ideal_name!r} is not defined over {ring_name!r}")
    report = strong_generation_obstruction(I, max_n, jobs=session.jobs)
    head = [
        "command: obstruct",
        f"ring: {R.describe()}",
        f"ideal: {I.render()}",
        f"max: {max_n}",
        "connected: yes" if report.connected else "connected: no",
    ]
    blocks = [head]
    if report.mode == "degenerate":
        head.append(f"stabilizes: at {report.stabilization_index}")
        head.append(f"nilpotent: index {report.nilpotency_index}")
    else:
        head.append("stabilizes: no")
        for cert in report.certificates:
            blocks.append([f"n: {cert.level}"] + cert.lines())
    tail = [f"verdict: {report.verdict}"]
    if report.note:
        tail.append(f"note: {report.note}")
    blocks.append(tail)
    return blocks


_DISPATCH = {
    "koszul": _cmd_koszul,
    "homology": _cmd_homology,
    "ann": _cmd_ann,
    "support": _cmd_support,
    "thick-member": _cmd_thick_member,
    "level-lb": _cmd_level_lb,
    "witness-principal": _cmd_witness_principal,
    "validate-witness": _cmd_validate_witness,
    "spec": _cmd_spec,
    "idempotents": _cmd_idempotents,
    "nilpotence": _cmd_nilpotence,
    "obstruct": _cmd_obstruct,
}
