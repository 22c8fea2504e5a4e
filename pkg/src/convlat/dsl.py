"""A small declaration language for spaces, topologies, lattices and maps.

    # comments run to the end of the line; items end with ';' or a newline
    space E1 { points x y z; depth finite; arrows z->x, x<->y }
    space E3 {
      points x y s t
      arrows x->y, x->s, y->x, y->t
      lim {x y} -> {}
      ...
    }
    topology S { points 0 1; opens {} {1} {0 1} }
    lattice C3 { elements bot a top; leq bot<a, a<top; lim bot->top, a->top, top->top }
    map f : E1 -> E2 { x->x, y->y, z->z }

Without ``depth finite`` every subset with two or more points needs a ``lim``
line; singleton limits may come from arrows (loops are implicit).
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ConvlatError, MissingEntry
from .fincov import (
    FiniteConvergence,
    FiniteTopology,
    PointSet,
    SpaceMap,
    bits,
    build_convergence,
    build_finite_depth,
)
from .finlat import FiniteConvLattice, build_conv_lattice, lattice_from_covers


class DslError(ConvlatError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col
        self.message = message


class DslSyntaxError(DslError):
    def __init__(self, line: int, col: int, expected: str, found: str = ""):
        msg = f"expected {expected}" + (f", found {found!r}" if found else "")
        super().__init__(msg, line, col)
        self.expected = expected


class DuplicateName(DslError):
    pass


class UnknownPoint(DslError):
    pass


class UnknownName(DslError):
    pass


class ArityError(DslError):
    pass


class StructureError(DslError):
    """The declaration parsed but the structure it describes is invalid."""


# ---------------------------------------------------------------------------
# tokens

@dataclass(frozen=True)
class Token:
    kind: str   # NAME, SYM, NL, EOF
    text: str
    line: int
    col: int


_TOKEN = re.compile(r"(?P<ws>[ \t\r]+)|(?P<comment>#[^\n]*)|(?P<nl>\n)|(?P<sym><->|->|[{};,<:])|(?P<name>[A-Za-z0-9_.'~$^*+]+)")


def tokenize(text: str) -> list[Token]:
    out = []
    line, start = 1, 0
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise DslSyntaxError(line, pos - start + 1, "a token", text[pos])
        kind = m.lastgroup
        col = pos - start + 1
        if kind == "nl":
            out.append(Token("NL", "\n", line, col))
            line += 1
            start = m.end()
        elif kind == "sym":
            out.append(Token("SYM", m.group(), line, col))
        elif kind == "name":
            out.append(Token("NAME", m.group(), line, col))
        pos = m.end()
    out.append(Token("EOF", "", line, pos - start + 1))
    return out


# ---------------------------------------------------------------------------
# documents

@dataclass
class Declaration:
    kind: str   # space | topology | lattice | map
    name: str
    value: object
    line: int
    col: int


@dataclass
class Document:
    declarations: dict[str, Declaration] = field(default_factory=dict)

    def __getitem__(self, name: str):
        return self.declarations[name].value

    def __contains__(self, name: str) -> bool:
        return name in self.declarations

    def names(self, kind: str | None = None) -> list[str]:
        return [n for n, d in self.declarations.items() if kind is None or d.kind == kind]

    def kind(self, name: str) -> str:
        return self.declarations[name].kind


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0
        self.doc = Document()

    # -- helpers --------------------------------------------------------------
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def skip_nl(self):
        while self.tok.kind == "NL" or (self.tok.kind == "SYM" and self.tok.text == ";"):
            self.i += 1

    def expect_sym(self, s: str) -> Token:
        t = self.tok
        if t.kind != "SYM" or t.text != s:
            raise DslSyntaxError(t.line, t.col, repr(s), t.text or "end of input")
        return self.advance()

    def expect_name(self, what: str = "a name") -> Token:
        t = self.tok
        if t.kind != "NAME":
            raise DslSyntaxError(t.line, t.col, what, t.text or "end of input")
        return self.advance()

    def expect_word(self, word: str) -> Token:
        t = self.tok
        if t.kind != "NAME" or t.text != word:
            raise DslSyntaxError(t.line, t.col, repr(word), t.text or "end of input")
        return self.advance()

    def at_sym(self, s: str) -> bool:
        return self.tok.kind == "SYM" and self.tok.text == s

    def end_item(self):
        t = self.tok
        if t.kind == "NL" or self.at_sym(";"):
            self.skip_nl()
        elif not self.at_sym("}"):
            raise DslSyntaxError(t.line, t.col, "';' or end of line", t.text)

    def names_until_end(self) -> list[Token]:
        out = []
        while self.tok.kind == "NAME":
            out.append(self.advance())
        return out

    def subset(self, carrier: PointSet) -> int:
        self.expect_sym("{")
        mask = 0
        while not self.at_sym("}"):
            if self.at_sym(","):
                self.advance()
                continue
            t = self.expect_name("a point name or '}'")
            mask |= 1 << self.point(carrier, t)
        self.expect_sym("}")
        return mask

    def point(self, carrier: PointSet, t: Token) -> int:
        try:
            return carrier.index(t.text)
        except KeyError:
            raise UnknownPoint(f"unknown point {t.text!r}", t.line, t.col) from None

    def points_header(self) -> PointSet:
        self.skip_nl()
        self.expect_word("points")
        toks = self.names_until_end()
        seen = set()
        for t in toks:
            if t.text in seen:
                raise DuplicateName(f"point {t.text!r} declared twice", t.line, t.col)
            seen.add(t.text)
        self.end_item()
        return PointSet(tuple(t.text for t in toks))

    # -- declarations -----------------------------------------------------------
    def parse(self) -> Document:
        self.skip_nl()
        while self.tok.kind != "EOF":
            t = self.expect_name("a declaration")
            if t.text not in ("space", "topology", "lattice", "map"):
                raise DslSyntaxError(t.line, t.col, "'space', 'topology', 'lattice' or 'map'", t.text)
            name = self.expect_name("a declaration name")
            if name.text in self.doc.declarations:
                raise DuplicateName(f"{name.text!r} is already declared", name.line, name.col)
            value = getattr(self, "_" + t.text)(name)
            self.doc.declarations[name.text] = Declaration(t.text, name.text, value, t.line, t.col)
            self.skip_nl()
        return self.doc

    def _wrap(self, at: Token, fn):
        try:
            return fn()
        except DslError:
            raise
        except ConvlatError as exc:
            raise StructureError(str(exc), at.line, at.col) from exc

    def _space(self, name: Token) -> FiniteConvergence:
        self.expect_sym("{")
        carrier = self.points_header()
        finite = False
        arrows: dict[int, int] = {}
        explicit: dict[int, tuple[int, Token]] = {}
        while not self.at_sym("}"):
            t = self.expect_name("'depth', 'arrows' or 'lim'")
            if t.text == "depth":
                self.expect_word("finite")
                finite = True
            elif t.text == "arrows":
                while True:
                    a = self.expect_name("a point name")
                    op = self.tok
                    if not (self.at_sym("->") or self.at_sym("<->")):
                        raise DslSyntaxError(op.line, op.col, "'->' or '<->'", op.text)
                    self.advance()
                    b = self.expect_name("a point name")
                    i, j = self.point(carrier, a), self.point(carrier, b)
                    arrows[i] = arrows.get(i, 0) | 1 << j
                    if op.text == "<->":
                        arrows[j] = arrows.get(j, 0) | 1 << i
                    if not self.at_sym(","):
                        break
                    self.advance()
            elif t.text == "lim":
                a = self.subset(carrier)
                self.expect_sym("->")
                b = self.subset(carrier)
                if a == 0:
                    raise ArityError("the empty set is not a filter base", t.line, t.col)
                if a in explicit and explicit[a][0] != b:
                    raise StructureError(f"two different limits given for {carrier.fmt(a)}", t.line, t.col)
                explicit[a] = (b, t)
            else:
                raise DslSyntaxError(t.line, t.col, "'depth', 'arrows' or 'lim'", t.text)
            self.end_item()
        self.expect_sym("}")

        sing = []
        for i in range(carrier.n):
            bit = 1 << i
            derived = bit | arrows.get(i, 0)
            if bit in explicit:
                given, at = explicit[bit]
                if i in arrows and given != derived:
                    raise StructureError(
                        f"lim {carrier.fmt(bit)} disagrees with the arrows from {carrier.names[i]}",
                        at.line, at.col,
                    )
                sing.append(given)
            else:
                sing.append(derived)

        def build():
            if finite:
                conv = build_finite_depth(carrier, sing)
                for a, (b, at) in explicit.items():
                    if conv.table[a] != b:
                        raise StructureError(
                            f"lim {carrier.fmt(a)} is not the intersection of its points' limits",
                            at.line, at.col,
                        )
                return conv
            table = {}
            for a in carrier.nonempty():
                if a in explicit:
                    table[a] = explicit[a][0]
                elif a.bit_count() == 1:
                    table[a] = sing[a.bit_length() - 1]
                else:
                    raise MissingEntry(carrier.fmt(a))
            return build_convergence(carrier, table)

        return self._wrap(name, build)

    def _topology(self, name: Token) -> FiniteTopology:
        self.expect_sym("{")
        carrier = self.points_header()
        self.expect_word("opens")
        opens = []
        while self.at_sym("{"):
            opens.append(self.subset(carrier))
        self.end_item()
        self.expect_sym("}")
        return self._wrap(name, lambda: FiniteTopology(carrier, frozenset(opens)))

    def _lattice(self, name: Token) -> FiniteConvLattice:
        self.expect_sym("{")
        self.skip_nl()
        self.expect_word("elements")
        elems = self.names_until_end()
        seen = set()
        for t in elems:
            if t.text in seen:
                raise DuplicateName(f"element {t.text!r} declared twice", t.line, t.col)
            seen.add(t.text)
        if not elems:
            raise ArityError("a lattice needs elements", self.tok.line, self.tok.col)
        self.end_item()
        names = [t.text for t in elems]
        pairs: list[tuple[str, str]] = []
        lam: dict[str, str] = {}

        def elem() -> str:
            t = self.expect_name("an element name")
            if t.text not in seen:
                raise UnknownPoint(f"unknown element {t.text!r}", t.line, t.col)
            return t.text

        while not self.at_sym("}"):
            t = self.expect_name("'leq' or 'lim'")
            if t.text == "leq":
                while True:
                    a = elem()
                    self.expect_sym("<")
                    b = elem()
                    pairs.append((a, b))
                    if not self.at_sym(","):
                        break
                    self.advance()
            elif t.text == "lim":
                while True:
                    at = self.tok
                    a = elem()
                    self.expect_sym("->")
                    b = elem()
                    if a in lam and lam[a] != b:
                        raise StructureError(f"two limits given for {a}", at.line, at.col)
                    lam[a] = b
                    if not self.at_sym(","):
                        break
                    self.advance()
            else:
                raise DslSyntaxError(t.line, t.col, "'leq' or 'lim'", t.text)
            self.end_item()
        self.expect_sym("}")
        return self._wrap(name, lambda: build_conv_lattice(lattice_from_covers(names, pairs), lam))

    def _map(self, name: Token) -> tuple[str, str, SpaceMap]:
        self.expect_sym(":")
        src_t = self.expect_name("a source space")
        self.expect_sym("->")
        dst_t = self.expect_name("a target space")
        spaces = {}
        for t in (src_t, dst_t):
            d = self.doc.declarations.get(t.text)
            if d is None or d.kind not in ("space", "topology"):
                raise UnknownName(f"{t.text!r} is not a space declared earlier", t.line, t.col)
            spaces[t.text] = d.value.carrier
        src, dst = spaces[src_t.text], spaces[dst_t.text]
        self.expect_sym("{")
        self.skip_nl()
        table: dict[int, int] = {}
        while not self.at_sym("}"):
            a = self.expect_name("a point name")
            self.expect_sym("->")
            b = self.expect_name("a point name")
            i, j = self.point(src, a), self.point(dst, b)
            if i in table and table[i] != j:
                raise StructureError(f"{a.text} mapped twice", a.line, a.col)
            table[i] = j
            if self.at_sym(","):
                self.advance()
            self.skip_nl()
        end = self.expect_sym("}")
        if len(table) != src.n:
            missing = [src.names[i] for i in range(src.n) if i not in table]
            raise ArityError(f"map is not total: no image for {', '.join(missing)}", end.line, end.col)
        return (src_t.text, dst_t.text, SpaceMap(src, dst, tuple(table[i] for i in range(src.n))))


def parse(text: str) -> Document:
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# rendering (canonical form)

def _subset(carrier: PointSet, mask: int) -> str:
    return "{" + " ".join(carrier.members(mask)) + "}"


_NAME = re.compile(r"[A-Za-z0-9_.'~$^*+]+")


def _printable(carrier: PointSet) -> tuple[PointSet, list[str]]:
    """Carrier with DSL-safe point names, plus comment lines recording any renaming."""
    if all(_NAME.fullmatch(x) for x in carrier.names):
        return carrier, []
    fresh = PointSet(tuple(f"p{i}" for i in range(carrier.n)))
    legend = ", ".join(f"p{i}={x}" for i, x in enumerate(carrier.names))
    return fresh, [f"# renamed points: {legend}"]


def render_space(name: str, conv: FiniteConvergence) -> str:
    c, legend = _printable(conv.carrier)
    lines = legend + [f"space {name} {{", "  points " + " ".join(c.names)]
    arrows = [
        f"{c.names[i]}->{c.names[j]}"
        for i in range(c.n) for j in range(c.n)
        if i != j and conv.singletons[i] >> j & 1
    ]
    if conv.finite_depth_hint:
        lines.append("  depth finite")
        if arrows:
            lines.append("  arrows " + ", ".join(arrows))
    else:
        if arrows:
            lines.append("  arrows " + ", ".join(arrows))
        for a in c.nonempty():
            if a.bit_count() > 1:
                lines.append(f"  lim {_subset(c, a)} -> {_subset(c, conv.table[a])}")
    lines.append("}")
    return "\n".join(lines)


def render_topology(name: str, top: FiniteTopology) -> str:
    c, legend = _printable(top.carrier)
    return "\n".join(legend + [
        f"topology {name} {{",
        "  points " + " ".join(c.names),
        "  opens " + " ".join(_subset(c, o) for o in top.sorted_opens),
        "}",
    ])


def _element_names(L: FiniteConvLattice) -> list[str]:
    names = list(L.lattice.names)
    if all(_NAME.fullmatch(n) for n in names):
        return names
    out = []
    for n in names:
        inner = re.sub(r"[{}\s]", "", n).replace(",", "_")
        out.append(inner or "bot")
    return out if len(set(out)) == len(out) else [f"e{i}" for i in range(len(names))]


def render_lattice(name: str, L: FiniteConvLattice) -> str:
    names = _element_names(L)
    lat = L.lattice
    lines = [f"lattice {name} {{", "  elements " + " ".join(names)]
    if lat.covers:
        lines.append("  leq " + ", ".join(f"{names[a]}<{names[b]}" for a, b in lat.covers))
    lines.append("  lim " + ", ".join(f"{names[e]}->{names[L.lam[e]]}" for e in range(lat.size)))
    lines.append("}")
    return "\n".join(lines)


def render_map(name: str, src: str, dst: str, f: SpaceMap) -> str:
    pairs = ", ".join(f"{f.source.names[i]}->{f.target.names[t]}" for i, t in enumerate(f.table))
    return f"map {name} : {src} -> {dst} {{ {pairs} }}"


def render(doc: Document) -> str:
    chunks = []
    for name, d in doc.declarations.items():
        if d.kind == "space":
            chunks.append(render_space(name, d.value))
        elif d.kind == "topology":
            chunks.append(render_topology(name, d.value))
        elif d.kind == "lattice":
            chunks.append(render_lattice(name, d.value))
        else:
            src, dst, f = d.value
            chunks.append(render_map(name, src, dst, f))
    return "\n\n".join(chunks) + "\n"


def render_dot(name: str, conv: FiniteConvergence) -> str:
    """One node per point, one edge per arrow; loops omitted."""
    c = conv.carrier
    lines = [f'digraph "{name}" {{']
    for x in c.names:
        lines.append(f'  "{x}";')
    for i in range(c.n):
        for j in bits(conv.singletons[i]):
            if i != j:
                lines.append(f'  "{c.names[i]}" -> "{c.names[j]}";')
    lines.append("}")
    return "\n".join(lines)

