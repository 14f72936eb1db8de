"""Free-group words over a fixed alphabet.

Conventions used throughout the package::

    [x, y]        = x^-1 y^-1 x y
    x^y           = y^-1 x y
    [x1, ..., xk] = [[x1, ..., x(k-1)], xk]

Words are immutable and always freely reduced.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import AlphabetMismatchError, UnknownGeneratorError, WordSyntaxError

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")

Letter = tuple[int, int]


@dataclass(frozen=True)
class Alphabet:
    """Ordered tuple of distinct generator names."""

    names: tuple[str, ...]

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if not names:
            raise ValueError("alphabet must be nonempty")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names!r}")
        for name in names:
            if not _IDENT.fullmatch(name):
                raise ValueError(f"invalid generator name {name!r}")
        object.__setattr__(self, "names", names)

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownGeneratorError(name, self) from None

    def gen(self, name_or_index: str | int) -> Word:
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        return Word(self, ((i, 1),))

    def gens(self) -> tuple[Word, ...]:
        return tuple(Word(self, ((i, 1),)) for i in range(len(self)))

    def identity(self) -> Word:
        return Word(self, ())

    def __repr__(self) -> str:
        return f"Alphabet({', '.join(self.names)})"


def _reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for g, s in letters:
        if out and out[-1][0] == g and out[-1][1] == -s:
            out.pop()
        else:
            out.append((g, s))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """A freely reduced word; ``letters`` holds ``(generator index, +1/-1)`` pairs."""

    alphabet: Alphabet
    letters: tuple[Letter, ...]

    def __init__(self, alphabet: Alphabet, letters: Iterable[Letter] = ()):
        letters = tuple(letters)
        n = len(alphabet)
        for g, s in letters:
            if not 0 <= g < n or s not in (1, -1):
                raise ValueError(f"bad letter {(g, s)!r} for {alphabet!r}")
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "letters", _reduce(letters))

    @classmethod
    def _trusted(cls, alphabet: Alphabet, letters: tuple[Letter, ...]) -> Word:
        w = object.__new__(cls)
        object.__setattr__(w, "alphabet", alphabet)
        object.__setattr__(w, "letters", letters)
        return w

    def __len__(self) -> int:
        return len(self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def _check(self, other: Word) -> None:
        if not isinstance(other, Word):
            raise TypeError(f"expected Word, got {type(other).__name__}")
        if other.alphabet != self.alphabet:
            raise AlphabetMismatchError(self.alphabet, other.alphabet)

    def __mul__(self, other: Word) -> Word:
        self._check(other)
        a, b = self.letters, other.letters
        k = 0
        while k < len(a) and k < len(b) and a[-1 - k][0] == b[k][0] and a[-1 - k][1] == -b[k][1]:
            k += 1
        return Word._trusted(self.alphabet, a[: len(a) - k] + b[k:])

    def inverse(self) -> Word:
        return Word._trusted(self.alphabet, tuple((g, -s) for g, s in reversed(self.letters)))

    def __invert__(self) -> Word:
        return self.inverse()

    def __pow__(self, n: int) -> Word:
        if n < 0:
            return self.inverse() ** -n
        result = self.alphabet.identity()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self, by: Word) -> Word:
        """``self^by = by^-1 self by``."""
        return by.inverse() * self * by

    def __xor__(self, by: Word) -> Word:
        return self.conjugate(by)

    def exponent_sums(self) -> list[int]:
        sums = [0] * len(self.alphabet)
        for g, s in self.letters:
            sums[g] += s
        return sums

    def syllables(self) -> list[tuple[int, int]]:
        """Run-length encoding ``[(gen, exponent), ...]``."""
        out: list[tuple[int, int]] = []
        for g, s in self.letters:
            if out and out[-1][0] == g:
                out[-1] = (g, out[-1][1] + s)
            else:
                out.append((g, s))
        return out

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        parts = []
        for g, e in self.syllables():
            name = self.alphabet.names[g]
            parts.append(name if e == 1 else f"{name}^{e}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


def multiply(u: Word, v: Word) -> Word:
    return u * v


def inverse(u: Word) -> Word:
    return u.inverse()


def commutator(x: Word, y: Word) -> Word:
    """``[x, y] = x^-1 y^-1 x y``."""
    x._check(y)
    return x.inverse() * y.inverse() * x * y


def left_normed_commutator(args: Sequence[Word]) -> Word:
    if not args:
        raise ValueError("left-normed commutator needs at least one entry")
    result = args[0]
    for a in args[1:]:
        result = commutator(result, a)
    return result


def hall_witt(a: Word, b: Word, c: Word) -> Word:
    """Left side of the Hall-Witt identity; trivial for every a, b, c."""
    return (
        left_normed_commutator([a, b.inverse(), c]).conjugate(b)
        * left_normed_commutator([b, c.inverse(), a]).conjugate(c)
        * left_normed_commutator([c, a.inverse(), b]).conjugate(a)
    )


# --- parser -----------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>\d+)|(?P<op>[\^\*\-\(\)\[\],]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise WordSyntaxError(f"unexpected character {text[col]!r}", col, text)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    # expr  := term ('*'? term)*
    # term  := atom ('^' ['-'] (INT | IDENT | '(' expr ')' | '[' ... ']'))*
    # atom  := IDENT | '1' | '(' expr ')' | '[' expr (',' expr)* ']'

    def __init__(self, text: str, alphabet: Alphabet):
        self.text = text
        self.alphabet = alphabet
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg: str, tok=None) -> WordSyntaxError:
        tok = tok or self.peek()
        return WordSyntaxError(msg, tok[2], self.text)

    def expect(self, value: str) -> None:
        tok = self.take()
        if tok[1] != value or tok[0] == "end":
            raise self.error(f"expected {value!r}", tok)

    def parse(self) -> Word:
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        w = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return w

    def starts_atom(self) -> bool:
        kind, val, _ = self.peek()
        return kind in ("ident", "int") or val in ("(", "[")

    def expr(self) -> Word:
        w = self.term()
        while True:
            if self.peek()[1] == "*" and self.peek()[0] == "op":
                self.take()
                w = w * self.term()
            elif self.starts_atom():
                w = w * self.term()
            else:
                return w

    def term(self) -> Word:
        w = self.atom()
        while self.peek()[1] == "^":
            self.take()
            negate = False
            if self.peek()[1] == "-":
                self.take()
                negate = True
            kind, val, _ = self.peek()
            if kind == "int":
                self.take()
                n = int(val)
                w = w ** (-n if negate else n)
            elif kind == "ident" or val in ("(", "["):
                by = self.atom()
                w = (w.inverse() if negate else w).conjugate(by)
            else:
                raise self.error("expected exponent or conjugating word after '^'")
        return w

    def atom(self) -> Word:
        tok = self.take()
        kind, val, _ = tok
        if kind == "ident":
            try:
                return self.alphabet.gen(val)
            except UnknownGeneratorError as exc:
                exc.position = tok[2]
                raise
        if kind == "int":
            if val != "1":
                raise self.error(f"integer {val} is not a word (only 1 denotes the identity)", tok)
            return self.alphabet.identity()
        if val == "(":
            w = self.expr()
            self.expect(")")
            return w
        if val == "[":
            entries = [self.expr()]
            while self.peek()[1] == ",":
                self.take()
                entries.append(self.expr())
            self.expect("]")
            return left_normed_commutator(entries)
        raise self.error(f"unexpected {val or 'end of input'!r}", tok)


def parse_word(text: str, alphabet: Alphabet | Sequence[str]) -> Word:
    """Parse a word expression, e.g. ``"[a,t,t]^(t^-1) * a^-2"``."""
    if not isinstance(alphabet, Alphabet):
        alphabet = Alphabet(alphabet)
    return _Parser(text, alphabet).parse()
