"""Text specs for permutation groups.

Grammar::

    expr    := term (('x' term ('@disjoint' | '@product')) | ('wr' term))*
    term    := atom | '(' expr ')'
    atom    := family ':' int (':' int)* | 'perm:' int ':[' cycles (',' cycles)* ']'

Binary operators associate to the left.  The canonical form prints atoms
with their parameters, perm generators in cycle notation, and brackets a
compound right operand.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from twoclosure.constructions import (
    ActionLabel,
    disjoint_direct_product,
    imprimitive_wreath,
    product_action_direct_product,
)
from twoclosure.errors import BadParameter, InputError, ParseError, UnknownFamily
from twoclosure.families import FAMILIES
from twoclosure.groups import PermGroup
from twoclosure.perms import parse_permutation

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<perm>perm:\d+:\[[^\]]*\])"
    r"|(?P<atom>[a-z]+(?::-?\d+)+)"
    r"|(?P<op>@disjoint|@product|wr\b|x\b)"
    r"|(?P<lp>\()|(?P<rp>\))"
    r")"
)


@dataclass(frozen=True)
class Atom:
    family: str
    params: tuple[int, ...]
    generators: tuple[str, ...] = ()

    def canonical(self) -> str:
        if self.family == "perm":
            return f"perm:{self.params[0]}:[{','.join(self.generators)}]"
        return ":".join([self.family, *map(str, self.params)])


@dataclass(frozen=True)
class Binary:
    op: str  # "disjoint", "product" or "wreath"
    left: "Atom | Binary"
    right: "Atom | Binary"

    def canonical(self) -> str:
        right = self.right.canonical()
        if isinstance(self.right, Binary):
            right = f"({right})"
        if self.op == "wreath":
            return f"{self.left.canonical()} wr {right}"
        return f"{self.left.canonical()} x {right} @{self.op}"


GroupSpec = Atom | Binary


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"cannot read spec at position {pos}: {text[pos:pos + 20]!r}")
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
        pos = m.end()
    return out


def _atom(kind: str, text: str) -> Atom:
    if kind == "perm":
        m = re.fullmatch(r"perm:(\d+):\[(.*)\]", text)
        degree = int(m.group(1))
        body = m.group(2).strip()
        gens = []
        if body:
            # split on commas between cycle groups, not inside a cycle
            for piece in re.split(r"\)\s*,\s*\(", body):
                piece = piece.strip()
                if not piece.startswith("("):
                    piece = "(" + piece
                if not piece.endswith(")"):
                    piece = piece + ")"
                gens.append(str(parse_permutation(piece, degree)))
        return Atom("perm", (degree,), tuple(gens))
    name, *params = text.split(":")
    if name not in FAMILIES:
        raise UnknownFamily(f"unknown family {name!r}; known: {', '.join(sorted(FAMILIES))}, perm")
    arity = FAMILIES[name][0]
    if len(params) != arity:
        raise BadParameter(f"{name} takes {arity} parameter(s), got {len(params)}")
    return Atom(name, tuple(int(p) for p in params))


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expr(self):
        left = self.term()
        while True:
            kind, val = self.peek()
            if kind != "op" or val not in ("x", "wr"):
                return left
            self.take()
            right = self.term()
            if val == "wr":
                left = Binary("wreath", left, right)
                continue
            kind, tag = self.take()
            if kind != "op" or tag not in ("@disjoint", "@product"):
                raise ParseError("'x' needs a trailing @disjoint or @product")
            left = Binary(tag[1:], left, right)

    def term(self):
        kind, val = self.take()
        if kind == "lp":
            e = self.expr()
            if self.take()[0] != "rp":
                raise ParseError("missing ')'")
            return e
        if kind in ("atom", "perm"):
            return _atom(kind, val)
        raise ParseError(f"expected a group, got {val!r}")


def parse_group_spec(text: str) -> GroupSpec:
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty spec")
    p = _Parser(tokens)
    spec = p.expr()
    if p.i != len(tokens):
        raise ParseError(f"unexpected {p.peek()[1]!r}")
    return spec


def canonical(text: str) -> str:
    return parse_group_spec(text).canonical()


def materialize(spec: GroupSpec | str) -> PermGroup:
    """Build the group a spec describes, with its action label."""
    if isinstance(spec, str):
        spec = parse_group_spec(spec)
    if isinstance(spec, Atom):
        if spec.family == "perm":
            degree = spec.params[0]
            G = PermGroup(degree, [parse_permutation(g, degree) for g in spec.generators])
            G.label = ActionLabel("natural", degree)
        else:
            try:
                G = FAMILIES[spec.family][1](*spec.params)
            except InputError:
                raise
            except ValueError as exc:
                raise BadParameter(str(exc)) from exc
        G.name = spec.canonical()
        return G
    left, right = materialize(spec.left), materialize(spec.right)
    if spec.op == "disjoint":
        G = disjoint_direct_product(left, right)
    elif spec.op == "product":
        G = product_action_direct_product(left, right)
    else:
        G = imprimitive_wreath(left, right)
    G.name = spec.canonical()
    return G
