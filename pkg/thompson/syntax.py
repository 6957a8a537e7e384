"""Tokenizer and parser shared by every word syntax in the toolkit.

One grammar covers generator words (``x1 x0^-2``), words with variables and
inline constants (``y0^-1 {x0} y0``), HNN words (``t^-1 {x1} t``) and abstract
marking words (``s1 s2^-1``). Callers restrict the accepted letter kinds.

    word    := item*
    item    := primary ('^' integer)?
    primary := letter | '1' | '(' word ')' | '[' word ',' word ']' | '{' text '}'

``[u, v]`` expands to ``u v u^-1 v^-1``.
"""

from __future__ import annotations

from collections.abc import Collection
from dataclasses import dataclass, replace

from thompson.errors import WordSyntaxError

KIND_GENERATOR = "x"
KIND_VARIABLE = "y"
KIND_STABLE = "t"
KIND_POSITION = "s"
KIND_CONSTANT = "const"


@dataclass(frozen=True, slots=True)
class Atom:
    """One letter of a parsed word, possibly raised to a power."""

    kind: str
    index: int
    exponent: int
    text: str = ""
    offset: int = 0

    def inverse(self) -> Atom:
        return replace(self, exponent=-self.exponent)


def invert_atoms(atoms: list[Atom]) -> list[Atom]:
    return [atom.inverse() for atom in reversed(atoms)]


class _Parser:
    def __init__(self, text: str, kinds: Collection[str]) -> None:
        self.text = text
        self.kinds = kinds
        self.pos = 0

    def fail(self, message: str, offset: int | None = None) -> WordSyntaxError:
        return WordSyntaxError(message, self.pos if offset is None else offset)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, char: str) -> None:
        if self.peek() != char:
            raise self.fail(f"expected {char!r}")
        self.pos += 1

    def digits(self) -> str:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return self.text[start : self.pos]

    def parse_word(self, stops: str = "") -> list[Atom]:
        atoms: list[Atom] = []
        while True:
            char = self.peek()
            if not char or char in stops:
                return atoms
            atoms.extend(self.parse_item())

    def parse_item(self) -> list[Atom]:
        group = self.parse_primary()
        if self.peek() != "^":
            return group
        self.pos += 1
        self.skip_ws()
        start = self.pos
        sign = 1
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
        digits = self.digits()
        if not digits:
            raise self.fail("expected an integer exponent", start)
        power = sign * int(digits)
        if len(group) == 1:
            return [replace(group[0], exponent=group[0].exponent * power)] if power else []
        body = group if power > 0 else invert_atoms(group)
        return body * abs(power)

    def parse_primary(self) -> list[Atom]:
        char = self.peek()
        start = self.pos
        if char == "(":
            self.pos += 1
            inner = self.parse_word(")")
            self.expect(")")
            return inner
        if char == "[":
            self.pos += 1
            left = self.parse_word(",]")
            self.expect(",")
            right = self.parse_word("]")
            self.expect("]")
            return left + right + invert_atoms(left) + invert_atoms(right)
        if char == "{":
            if KIND_CONSTANT not in self.kinds:
                raise self.fail("inline constants are not allowed here")
            close = self.text.find("}", self.pos)
            if close < 0:
                raise self.fail("unterminated constant")
            body = self.text[self.pos + 1 : close]
            self.pos = close + 1
            return [Atom(KIND_CONSTANT, 0, 1, body.strip(), start)]
        if char == "1":
            self.pos += 1
            if self.pos < len(self.text) and self.text[self.pos].isalnum():
                raise self.fail("unexpected character", self.pos)
            return []
        if char in (KIND_GENERATOR, KIND_VARIABLE, KIND_STABLE, KIND_POSITION):
            if char not in self.kinds:
                raise self.fail(f"letter {char!r} is not allowed here")
            self.pos += 1
            digits = self.digits()
            if char == KIND_STABLE:
                if digits:
                    raise self.fail("the stable letter takes no index", start)
                return [Atom(char, 0, 1, "", start)]
            if not digits:
                if char != KIND_VARIABLE:
                    raise self.fail(f"letter {char!r} needs an index", start)
                digits = "0"
            index = int(digits)
            if char == KIND_POSITION and index < 1:
                raise self.fail("marking positions start at s1", start)
            return [Atom(char, index, 1, "", start)]
        if not char:
            raise self.fail("unexpected end of input")
        raise self.fail(f"unexpected character {char!r}")


def parse_atoms(text: str, kinds: Collection[str]) -> list[Atom]:
    """Parse ``text`` into a flat list of atoms; only letters in ``kinds`` are accepted."""
    parser = _Parser(text, kinds)
    atoms = parser.parse_word()
    if parser.peek():
        raise parser.fail(f"unexpected character {parser.peek()!r}")
    return atoms
